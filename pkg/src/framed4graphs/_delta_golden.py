"""Frozen golden diagram of the 3-vertex obstruction graph.

Three crossings, one per 2-cycle pair, all lying on the plain edges
a, b, c (the primed edges stay crossing-free).  The over/under and sign
choices were selected by exhaustive search over all 3-crossing diagrams
so that the plain/primed triangle pair (a,b,c)/(a',b',c') has linking
number 0 while the three mixed triangle pairs all have linking number 1.
"""

from __future__ import annotations

from .core_graph import delta


def build():
    from .spatial_links import Crossing, SpatialDiagram

    edge_arcs = {
        (0, 1): (0, 1, 2),    # a:  P -> x0 -> x1 -> Q
        (2, 3): (3,),         # a'
        (4, 5): (4, 5, 6),    # b:  P -> x0 -> x2 -> R
        (6, 7): (7,),         # b'
        (8, 9): (8, 9, 10),   # c:  Q -> x1 -> x2 -> R
        (10, 11): (11,),      # c'
    }
    crossings = {
        0: Crossing(over_in=0, under_in=4, sign=-1),  # a over b
        1: Crossing(over_in=8, under_in=1, sign=1),   # c over a
        2: Crossing(over_in=5, under_in=9, sign=-1),  # b over c
    }
    return SpatialDiagram.build(delta(), edge_arcs, [], crossings)
