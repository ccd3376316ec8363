"""Chord diagrams of rotating circuits and their realizations.

A chord diagram is an oriented core circle with chords; combinatorially
a cyclic double-occurrence word over the chord labels.  Realizing a
diagram pulls the two endpoints of each chord together into a 4-valent
vertex where the two core strands meet; the incoming core half-edges
form one opposite pair and the outgoing ones the other, so the core
orientation induces a source-sink structure and the core itself stays a
rotating circuit of the realized graph.  Removing a chord is exactly a
smoothing of the realized graph, so subdiagrams give minors.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional

from .core_graph import FramedFourGraph
from .circuits import RotatingCircuit

__all__ = [
    "ChordDiagram",
    "InterlacementGraph",
    "chord_diagram_of",
    "realize",
    "subdiagram",
    "interlacement",
    "polygon_diagram",
    "find_odd_polygon",
    "canonical_word",
    "diagrams_equivalent",
    "enumerate_diagrams",
]


@dataclass(frozen=True)
class ChordDiagram:
    """Cyclic double-occurrence word; the empty word is a bare circle."""

    word: tuple = ()

    def __post_init__(self):
        counts: dict = {}
        for x in self.word:
            counts[x] = counts.get(x, 0) + 1
        bad = [x for x, c in counts.items() if c != 2]
        if bad:
            raise ValueError(
                f"not a double-occurrence word: {bad[0]!r} occurs "
                f"{counts[bad[0]]} time(s)"
            )

    @cached_property
    def labels(self) -> frozenset:
        return frozenset(self.word)

    @cached_property
    def positions(self) -> dict:
        """Label -> its two positions around the core, ascending."""
        pos: dict = {}
        for i, x in enumerate(self.word):
            pos.setdefault(x, []).append(i)
        return {x: tuple(p) for x, p in pos.items()}

    @property
    def num_chords(self) -> int:
        return len(self.word) // 2

    def __str__(self) -> str:
        return " ".join(str(x) for x in self.word)


@dataclass(frozen=True)
class InterlacementGraph:
    """Simple graph on chord labels; edges join interlaced chords."""

    nodes: tuple
    edges: frozenset

    @cached_property
    def adjacency(self) -> dict:
        adj: dict = {x: set() for x in self.nodes}
        for e in self.edges:
            x, y = tuple(e)
            adj[x].add(y)
            adj[y].add(x)
        return adj

    def is_bipartite(self) -> bool:
        color: dict = {}
        for start in self.nodes:
            if start in color:
                continue
            color[start] = 0
            stack = [start]
            while stack:
                u = stack.pop()
                for w in self.adjacency[u]:
                    if w in color:
                        if color[w] == color[u]:
                            return False
                    else:
                        color[w] = color[u] ^ 1
                        stack.append(w)
        return True


def interlaced(d: ChordDiagram, x, y) -> bool:
    i1, i2 = d.positions[x]
    j1, j2 = d.positions[y]
    return (i1 < j1 < i2) != (i1 < j2 < i2)


def interlacement(d: ChordDiagram) -> InterlacementGraph:
    """Edge {x, y} iff the occurrences alternate x..y..x..y on the core."""
    labels = sorted(d.labels, key=str)
    edges = set()
    for i, x in enumerate(labels):
        for y in labels[i + 1 :]:
            if interlaced(d, x, y):
                edges.add(frozenset((x, y)))
    return InterlacementGraph(tuple(labels), frozenset(edges))


# ---------------------------------------------------------------------------
# Diagram <-> graph
# ---------------------------------------------------------------------------


def chord_diagram_of(g: FramedFourGraph, circuit: RotatingCircuit) -> ChordDiagram:
    """The diagram recording the circuit's vertex passages in core order.

    Labels are the vertex ids of ``g``.  A circle yields the empty
    diagram.
    """
    if circuit.is_circle:
        if not 0 <= circuit.circle < len(g.circles):
            raise ValueError("circuit is not a circuit of this graph")
        return ChordDiagram(())
    edges = circuit.edges()
    if any(g.pairing.get(t) != e for t, e in zip(circuit.tails, circuit.entries)):
        raise ValueError("circuit is not a circuit of this graph")
    if edges != set(g.edge_pairing):
        raise ValueError("circuit does not traverse every edge exactly once")
    word = tuple(g.vertex_of[e] for e in circuit.entries)
    return ChordDiagram(word)


def realize(d: ChordDiagram) -> FramedFourGraph:
    """The framed 4-graph restored from a chord diagram.

    Core arcs become edges (arc ``j`` joins positions ``j`` and ``j+1``
    with half-edges ``2j``, ``2j+1``); each chord becomes a vertex where
    the two incoming core half-edges are opposite, as are the two
    outgoing ones.  The empty diagram realizes a single circle.
    """
    n2 = len(d.word)
    if n2 == 0:
        return FramedFourGraph.build({}, [], circles=(1,))
    edges = [(2 * j, 2 * j + 1) for j in range(n2)]

    def enter(j):  # head of the arc arriving at position j
        return 2 * ((j - 1) % n2) + 1

    def leave(j):  # tail of the arc leaving position j
        return 2 * j

    order: list = []
    for x in d.word:
        if x not in order:
            order.append(x)
    vertices = {}
    for vid, x in enumerate(order):
        j1, j2 = d.positions[x]
        vertices[vid] = (enter(j1), leave(j1), enter(j2), leave(j2))
    return FramedFourGraph.build(vertices, edges)


def subdiagram(d: ChordDiagram, keep: Iterable) -> ChordDiagram:
    """Restrict the word to the given chord labels."""
    keep = set(keep)
    unknown = keep - d.labels
    if unknown:
        raise ValueError(f"unknown chord label {sorted(unknown, key=str)[0]!r}")
    return ChordDiagram(tuple(x for x in d.word if x in keep))


# ---------------------------------------------------------------------------
# Odd polygons
# ---------------------------------------------------------------------------


def _letters(m: int) -> list[str]:
    if m <= 26:
        return list(string.ascii_lowercase[:m])
    return [f"c{i + 1}" for i in range(m)]


def polygon_diagram(m: int) -> ChordDiagram:
    """The m-chord diagram whose interlacement graph is the cycle C_m.

    Chord ``i`` occupies core positions ``2i`` and ``2i+3 (mod 2m)``, so
    consecutive chords interlace and non-consecutive ones do not.  Only
    odd m >= 3 yields an odd polygon.
    """
    if m < 3 or m % 2 == 0:
        raise ValueError("polygon diagrams need an odd chord count m >= 3")
    labels = _letters(m)
    word: list[Optional[str]] = [None] * (2 * m)
    for i in range(m):
        word[2 * i] = labels[i]
        word[(2 * i + 3) % (2 * m)] = labels[i]
    return ChordDiagram(tuple(word))


def find_odd_polygon(d: ChordDiagram) -> Optional[frozenset]:
    """Chord set of a shortest odd cycle of the interlacement graph, or
    ``None`` when it is bipartite.  Shortest odd cycles are induced, so
    the corresponding subdiagram is an odd polygon."""
    graph = interlacement(d)
    if graph.is_bipartite():
        return None
    adj = graph.adjacency
    best: Optional[tuple[int, tuple]] = None
    for start in sorted(adj, key=str):
        # BFS in the parity double cover: a (start,0) -> (start,1) path is
        # a shortest odd closed walk through start, necessarily a cycle
        # when minimal.
        dist = {(start, 0): 0}
        parent: dict = {(start, 0): None}
        queue = [(start, 0)]
        while queue:
            nxt = []
            for u, par in queue:
                for w in sorted(adj[u], key=str):
                    node = (w, par ^ 1)
                    if node not in dist:
                        dist[node] = dist[(u, par)] + 1
                        parent[node] = (u, par)
                        nxt.append(node)
            queue = nxt
        goal = (start, 1)
        if goal not in dist:
            continue
        walk = []
        node = goal
        while node is not None:
            walk.append(node[0])
            node = parent[node]
        cycle = tuple(walk[:-1])  # drop the duplicated start
        if len(set(cycle)) != len(cycle):
            continue  # not a simple cycle; a better start will give one
        key = (len(cycle), tuple(str(x) for x in sorted(cycle, key=str)))
        if best is None or key < best[0]:
            best = (key, frozenset(cycle))
    assert best is not None  # non-bipartite graphs always yield a cycle
    return best[1]


# ---------------------------------------------------------------------------
# Combinatorial equivalence and census enumeration
# ---------------------------------------------------------------------------


def canonical_word(d: ChordDiagram, reflect: bool = False) -> tuple:
    """Minimal relabeled word over all rotations (the core is oriented;
    pass ``reflect=True`` to also normalize over reversal)."""
    n2 = len(d.word)
    if n2 == 0:
        return ()
    words = [d.word[i:] + d.word[:i] for i in range(n2)]
    if reflect:
        rev = tuple(reversed(d.word))
        words += [rev[i:] + rev[:i] for i in range(n2)]
    out = []
    for w in words:
        relabel: dict = {}
        coded = []
        for x in w:
            if x not in relabel:
                relabel[x] = len(relabel)
            coded.append(relabel[x])
        out.append(tuple(coded))
    return min(out)


def diagrams_equivalent(d1: ChordDiagram, d2: ChordDiagram, reflect: bool = False) -> bool:
    return canonical_word(d1, reflect) == canonical_word(d2, reflect)


def enumerate_diagrams(num_chords: int) -> Iterator[ChordDiagram]:
    """All chord diagrams with exactly ``num_chords`` chords, one per
    relabeling class (i.e. all perfect matchings of the core positions).
    """
    n2 = 2 * num_chords
    word = [-1] * n2

    def fill(next_label: int) -> Iterator[ChordDiagram]:
        free = [i for i in range(n2) if word[i] < 0]
        if not free:
            yield ChordDiagram(tuple(word))
            return
        i = free[0]
        for j in free[1:]:
            word[i] = word[j] = next_label
            yield from fill(next_label + 1)
            word[i] = word[j] = -1

    yield from fill(0)
