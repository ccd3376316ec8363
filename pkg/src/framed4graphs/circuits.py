"""Rotating loops and circuits.

A loop is a closed edge-injective walk; it is *rotating* when it has no
transverse self-intersection, i.e. at every vertex it passes twice the
two passages use adjacent (non-opposite) half-edge pairs.  A vertex
passed only once may be crossed straight through.  A rotating circuit is
a rotating loop whose image is a whole connected graph; circuits turn at
every vertex.

Loops are stored as the alternating cyclic sequence of half-edges
``(exit0, enter1, exit1, enter2, ...)``: even positions are the tails of
the traversed edges, odd positions the heads, and each (enter, exit)
pair at the same vertex is one passage.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .core_graph import Component, FramedFourGraph, connected_components

__all__ = [
    "RotatingLoop",
    "RotatingCircuit",
    "find_rotating_circuit",
    "enumerate_rotating_loops",
    "loops_transverse_at",
    "transverse_count",
    "loop_from_tails",
    "loop_from_edges",
    "format_loop",
]


@dataclass(frozen=True)
class RotatingLoop:
    """A rotating loop: either a circular component (``circle`` set) or a
    closed walk given by its alternating half-edge sequence."""

    half_edges: tuple[int, ...] = ()
    circle: Optional[int] = None

    @property
    def is_circle(self) -> bool:
        return self.circle is not None

    @property
    def tails(self) -> tuple[int, ...]:
        return self.half_edges[0::2]

    @property
    def entries(self) -> tuple[int, ...]:
        return self.half_edges[1::2]

    def edges(self) -> frozenset[tuple[int, int]]:
        return frozenset(
            (min(t, e), max(t, e)) for t, e in zip(self.tails, self.entries)
        )

    def passages(self, g: FramedFourGraph) -> dict[int, list[tuple[int, int]]]:
        """Vertex -> list of (entry, exit) pairs of this loop."""
        if self.is_circle:
            return {}
        seq = self.half_edges
        out: dict[int, list[tuple[int, int]]] = {}
        k = len(seq)
        for i in range(1, k + 1, 2):
            entry = seq[i % k]
            exit_ = seq[(i + 1) % k]
            out.setdefault(g.vertex_of[entry], []).append((entry, exit_))
        return out

    def canonical(self) -> "RotatingLoop":
        """Normal form under cyclic rotation (by passages) and reversal."""
        if self.is_circle:
            return self
        seq = self.half_edges
        rev = tuple(reversed(seq))
        candidates = []
        for s in (seq, rev):
            for i in range(0, len(s), 2):
                candidates.append(s[i:] + s[:i])
        return RotatingLoop(min(candidates))

    def __len__(self) -> int:
        return len(self.half_edges) // 2


class RotatingCircuit(RotatingLoop):
    """A rotating loop covering every edge of its connected graph."""


def format_loop(loop: RotatingLoop) -> str:
    """Cyclic half-edge sequence, smallest id first, forward direction."""
    if loop.is_circle:
        return f"circle{loop.circle}"
    return " ".join(f"h{h}" for h in loop.canonical().half_edges)


def loop_from_tails(g: FramedFourGraph, tails: Iterable[int]) -> RotatingLoop:
    """Build (and validate) a loop from the tail half-edges in order."""
    tails = tuple(tails)
    seq = []
    for t in tails:
        seq.append(t)
        seq.append(g.pairing[t])
    loop = RotatingLoop(tuple(seq))
    problems = _loop_violations(g, loop)
    if problems:
        raise ValueError("; ".join(problems))
    return loop


def _loop_violations(g: FramedFourGraph, loop: RotatingLoop) -> list[str]:
    if loop.is_circle:
        if not 0 <= loop.circle < len(g.circles):
            return [f"unknown circle index {loop.circle}"]
        return []
    out = []
    seq = loop.half_edges
    k = len(seq)
    if k == 0 or k % 2:
        return ["loop sequence must alternate exit/entry half-edges"]
    seen_edges = set()
    for i in range(0, k, 2):
        t, e = seq[i], seq[i + 1]
        if g.pairing.get(t) != e:
            out.append(f"h{t} h{e} is not an edge")
        edge = (min(t, e), max(t, e))
        if edge in seen_edges:
            out.append(f"edge h{edge[0]}--h{edge[1]} traversed twice")
        seen_edges.add(edge)
        exit_ = seq[(i + 2) % k]
        if g.vertex_of.get(e) != g.vertex_of.get(exit_):
            out.append(f"h{e} and h{exit_} are not at the same vertex")
        if e == exit_:
            out.append(f"passage at h{e} does not move")
    for v, ps in loop.passages(g).items():
        if len(ps) > 2:
            out.append(f"vertex {v} passed more than twice")
        if len(ps) == 2 and all(g.opposite(e) == x for e, x in ps):
            out.append(f"transverse self-intersection at vertex {v}")
    return out


# ---------------------------------------------------------------------------
# Rotating circuits by strand merging
# ---------------------------------------------------------------------------


def _strands(g, verts, turn):
    """Closed strands of the turn pairing restricted to ``verts``."""
    strands = []
    unused = {h for v in verts for h in g.vertex_quads[v]}
    while unused:
        t0 = min(unused)
        tails = []
        t = t0
        while True:
            tails.append(t)
            m = g.pairing[t]
            unused.discard(t)
            unused.discard(m)  # the same edge reversed is the same strand
            t = turn[m]
            if t == t0:
                break
        strands.append(tuple(tails))
    return strands


def find_rotating_circuit(
    g: FramedFourGraph, component: Optional[Component] = None
) -> RotatingCircuit:
    """A rotating circuit of a connected component (the whole graph when
    ``component`` is omitted).

    Starts from the all-"A" turn decomposition into rotating strands and
    repeatedly merges the two lexicographically smallest strands sharing
    a vertex by flipping the turn pairing there.  A circle component is
    its own trivial circuit.
    """
    if component is None:
        comps = connected_components(g)
        if len(comps) != 1:
            raise ValueError("graph is not connected; pass a component")
        component = comps[0]
    if component.is_circle:
        return RotatingCircuit(circle=component.circle)

    verts = component.vertices
    # turn[entry] = exit on the same strand; start with the slot 0-1 / 2-3
    # pairing everywhere (both pairings are adjacent, hence rotating)
    turn: dict[int, int] = {}
    for v in verts:
        q0, q1, q2, q3 = g.vertex_quads[v]
        turn.update({q0: q1, q1: q0, q2: q3, q3: q2})

    while True:
        strands = sorted(_strands(g, verts, turn))
        if len(strands) == 1:
            break
        strand_at: dict[int, set[int]] = {}
        for i, tails in enumerate(strands):
            for t in tails:
                strand_at.setdefault(g.vertex_of[t], set()).add(i)
        merge = min(
            (tuple(sorted(ids)), v)
            for v, ids in strand_at.items()
            if len(ids) == 2
        )
        v = merge[1]
        q0, q1, q2, q3 = g.vertex_quads[v]
        if turn[q0] == q1:
            turn.update({q0: q3, q3: q0, q1: q2, q2: q1})
        else:
            turn.update({q0: q1, q1: q0, q2: q3, q3: q2})

    tails = strands[0]
    seq = []
    for t in tails:
        seq.append(t)
        seq.append(g.pairing[t])
    circuit = RotatingCircuit(tuple(seq))
    assert not _loop_violations(g, circuit)
    return circuit


# ---------------------------------------------------------------------------
# Loop enumeration
# ---------------------------------------------------------------------------


def enumerate_rotating_loops(g: FramedFourGraph) -> list[RotatingLoop]:
    """All rotating loops using each edge at most once, deduplicated up
    to rotation and reversal.  Circular components appear as loops."""
    found: set[tuple] = set()
    loops: list[RotatingLoop] = []
    pairing = g.pairing
    owner = g.vertex_of

    def passage_legal(state_passages, w, entry, exit_):
        prior = state_passages.get(w)
        if prior is None:
            return True
        if len(prior) >= 2:
            return False
        # both passages would be straight: transverse self-intersection
        return g.opposite(entry) != exit_

    def extend(start, tails, used, passages):
        t = tails[-1]
        entry = pairing[t]
        w = owner[entry]
        for exit_ in g.vertex_quads[w]:
            if exit_ == entry:
                continue
            if exit_ == start:
                if passage_legal(passages, w, entry, exit_):
                    loop = RotatingLoop(
                        tuple(x for tt in tails for x in (tt, pairing[tt]))
                    )
                    key = loop.canonical().half_edges
                    if key not in found:
                        found.add(key)
                        loops.append(RotatingLoop(key))
                continue
            if exit_ < start:
                continue  # canonical start is the minimal tail
            edge = (min(exit_, pairing[exit_]), max(exit_, pairing[exit_]))
            if edge in used:
                continue
            if not passage_legal(passages, w, entry, exit_):
                continue
            passages2 = dict(passages)
            passages2[w] = passages.get(w, ()) + ((entry, exit_),)
            extend(start, tails + [exit_], used | {edge}, passages2)

    for start in sorted(g.half_edges):
        edge0 = (min(start, pairing[start]), max(start, pairing[start]))
        extend(start, [start], {edge0}, {})

    loops.sort(key=lambda l: (len(l), l.half_edges))
    loops.extend(RotatingLoop(circle=i) for i in range(len(g.circles)))
    return loops


# ---------------------------------------------------------------------------
# Transversality
# ---------------------------------------------------------------------------


def loops_transverse_at(
    g: FramedFourGraph, l1: RotatingLoop, l2: RotatingLoop, v: int
) -> bool:
    """True iff ``l1`` passes straight through one opposite pair at ``v``
    and ``l2`` straight through the other."""
    p1 = l1.passages(g).get(v)
    p2 = l2.passages(g).get(v)
    if not p1 or not p2:
        raise ValueError(f"vertex {v} is not on both loops")
    if len(p1) != 1 or len(p2) != 1:
        return False
    (e1, x1), (e2, x2) = p1[0], p2[0]
    if len({e1, x1, e2, x2}) != 4:
        return False
    return g.opposite(e1) == x1 and g.opposite(e2) == x2


def transverse_count(g: FramedFourGraph, l1: RotatingLoop, l2: RotatingLoop) -> int:
    """Number of vertices where the two loops cross transversally.

    The loops must be edge-disjoint.
    """
    if l1.edges() & l2.edges():
        raise ValueError("loops share an edge; transverse count undefined")
    common = l1.passages(g).keys() & l2.passages(g).keys()
    return sum(1 for v in common if loops_transverse_at(g, l1, l2, v))


def loop_from_edges(g: FramedFourGraph, edges: Iterable[tuple[int, int]]) -> RotatingLoop:
    """The closed curve through the given edge set (must form one cycle
    where each vertex hosts exactly two of the half-edges)."""
    edges = {tuple(sorted(e)) for e in edges}
    half = sorted(h for e in edges for h in e)
    at_vertex: dict[int, list[int]] = {}
    for h in half:
        at_vertex.setdefault(g.vertex_of[h], []).append(h)
    if any(len(hs) != 2 for hs in at_vertex.values()):
        raise ValueError("edge set does not form a single closed curve")
    tails = [min(half)]
    used = {(min(tails[0], g.pairing[tails[0]]), max(tails[0], g.pairing[tails[0]]))}
    while True:
        entry = g.pairing[tails[-1]]
        v = g.vertex_of[entry]
        others = [h for h in at_vertex[v] if h != entry]
        if len(others) != 1:
            raise ValueError("edge set does not form a single closed curve")
        nxt = others[0]
        if nxt == tails[0]:
            break
        edge = (min(nxt, g.pairing[nxt]), max(nxt, g.pairing[nxt]))
        if edge in used:
            raise ValueError("edge set does not form a single closed curve")
        used.add(edge)
        tails.append(nxt)
    if used != edges:
        raise ValueError("edge set does not form a single closed curve")
    return loop_from_tails(g, tails)
