"""
From weighted graphs to flooding graphs
=======================================

Build flooding graphs from an edge-weighted path and a node-weighted path,
then look at their minima and catchment basins.
"""

from floodgraph import catchment_basins, flooding_graph_from_edges, flooding_graph_from_nodes
from floodgraph.fixtures import f1, f2, overlap
from floodgraph.morphology import closing_nodes, erode_edges_to_nodes

# edge-weighted path a-b-c-d with weights 1, 3, 2
g = f1()
print("node weights by erosion:", erode_edges_to_nodes(g).tolist())

# the middle edge is the lowest edge of neither endpoint, so it goes away
fg = flooding_graph_from_edges(g)
print("edges kept:", sorted(fg.edge_set()))
print("basins:", [sorted(b) for b in catchment_basins(fg).basin_sets()])

# node-weighted path 2, 1, 3: the single-node minimum gets a loop
h = f2()
print("closing without loop:", closing_nodes(h).tolist())
fh = flooding_graph_from_nodes(h)
print("edges with loop:", sorted(fh.edge_set()))
print("closing with loop:", closing_nodes(fh).tolist())

# basins may overlap: the top of 1-2-3-2-1 drains both ways
cover = catchment_basins(flooding_graph_from_nodes(overlap()))
print("overlapping nodes:", cover.overlap)
