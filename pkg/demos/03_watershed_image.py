"""
Watershed of a small image
==========================

Read a synthetic two-basin ramp as a PGM image, build the pixel graph and
compare the five watershed methods.
"""

import numpy as np

from floodgraph import flooding_graph_from_nodes, watershed
from floodgraph.fileio import read_pgm, write_pgm
from floodgraph.fixtures import ramp_image

image = ramp_image(16, 16, ridge=8)
g = read_pgm(write_pgm(image))
fg = flooding_graph_from_nodes(g)

for method in range(1, 6):
    result = watershed(fg, method, k=2)
    labels = result.labels.reshape(image.shape)
    print(f"method {method}: {len(np.unique(labels))} regions, {result.choices} arbitrary choices")

# rows 0-7 go to the top minimum, the ridge row and below to the bottom one
print(watershed(fg, 4).labels.reshape(image.shape)[:, 0])
