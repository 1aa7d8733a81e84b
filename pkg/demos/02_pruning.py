"""
Lexicographic pruning
=====================

Orient a flooding graph downhill and prune it round by round.  Each round
keeps only the arrows that start a steeper descent.
"""

from floodgraph import flooding_graph_from_nodes, lex_prune, orient
from floodgraph.fixtures import LADDER_TIE_NODE, ladder, staircase
from floodgraph.oracle import lex_prune_oracle
from floodgraph.pruning import zeta_states

# three descents from the same node: 4-3-1, 4-3-2 and 4-4-0
og = orient(flooding_graph_from_nodes(ladder()))
for k in (1, 2, 3):
    fast = sorted(lex_prune(og, k).successors(LADDER_TIE_NODE))
    brute = sorted(q for p, q in lex_prune_oracle(og, k) if p == LADDER_TIE_NODE)
    print(f"depth {k}: first arrows {fast} (brute force {brute})")

# a plateau needs several rounds before the arrow set settles
og = orient(flooding_graph_from_nodes(staircase()))
for k, state in zeta_states(og):
    print(f"round {k}: {state.arrow_count} arrows, node weights {state.node_weights.tolist()}")
