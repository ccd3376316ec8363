"""Planarity of framed 4-graphs admitting source-sink structures.

Three independent routes are provided and cross-checked by the test
census:

* the chord-diagram criterion: a connected graph is planar iff the
  interlacement graph of (any) rotating circuit is bipartite;
* a brute-force genus oracle minimizing over all framing-compatible
  rotation systems via face tracing;
* explicit minor extraction of the 3-vertex obstruction graph.

Non-planarity also comes with an immersion certificate: three pairwise
edge-disjoint rotating loops that pairwise cross an odd number of
times, forcing at least one extra crossing per pair in any generic
plane immersion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .core_graph import (
    Component,
    FramedFourGraph,
    MinorWitness,
    canonical_form,
    connected_components,
    delta,
    find_source_sink,
    is_minor,
    replay_witness,
    smooth,
)
from .circuits import (
    RotatingLoop,
    enumerate_rotating_loops,
    find_rotating_circuit,
    transverse_count,
)
from .chord_diagram import chord_diagram_of, find_odd_polygon, interlacement

__all__ = [
    "NoSourceSinkError",
    "RotationSystem",
    "genus_oracle",
    "is_planar",
    "find_delta_minor",
    "odd_transverse_triple",
    "component_subgraph",
]


class NoSourceSinkError(ValueError):
    """The graph admits no source-sink structure; the planarity theory
    implemented here does not cover it."""


@dataclass(frozen=True)
class RotationSystem:
    """One cyclic order per vertex compatible with the framing.

    Bit 0 at vertex v means cyclic order (q0, q1, q2, q3); bit 1 means
    (q0, q3, q2, q1).  Both interleave the opposite pairs.
    """

    bits: tuple[tuple[int, int], ...]

    def order(self, quad: tuple[int, int, int, int], v: int) -> tuple[int, ...]:
        if dict(self.bits)[v]:
            return (quad[0], quad[3], quad[2], quad[1])
        return quad


def component_subgraph(g: FramedFourGraph, component: Component) -> FramedFourGraph:
    """The induced framed 4-graph of one connected component."""
    if component.is_circle:
        return FramedFourGraph.build({}, [], circles=(g.circles[component.circle],))
    quads = {v: g.vertex_quads[v] for v in component.vertices}
    keep = {h for q in quads.values() for h in q}
    edges = [e for e in g.edge_pairing if e[0] in keep]
    return FramedFourGraph.build(quads, edges)


def _face_count(g: FramedFourGraph, bits: dict[int, int]) -> int:
    nxt = {}
    for v, quad in g.vertices:
        order = quad if bits[v] == 0 else (quad[0], quad[3], quad[2], quad[1])
        for i in range(4):
            nxt[order[i]] = order[(i + 1) % 4]
    pairing = g.pairing
    faces = 0
    todo = set(g.half_edges)
    while todo:
        d = todo.pop()
        faces += 1
        cur = nxt[pairing[d]]
        while cur != d:
            todo.discard(cur)
            cur = nxt[pairing[cur]]
    return faces


def genus_oracle(g: FramedFourGraph) -> int:
    """Minimum oriented genus over all 2^V framing-compatible rotation
    systems, by face tracing and the Euler formula.  Zero iff planar.

    The graph must be connected and nonempty; a bare circle has genus 0.
    """
    comps = connected_components(g)
    if len(comps) != 1:
        raise ValueError("genus oracle needs a connected nonempty graph")
    if comps[0].is_circle:
        return 0
    vs = sorted(g.vertex_quads)
    ne = len(g.edge_pairing)
    best = None
    for assignment in itertools.product((0, 1), repeat=len(vs)):
        bits = dict(zip(vs, assignment))
        faces = _face_count(g, bits)
        genus2 = 2 - len(vs) + ne - faces
        assert genus2 % 2 == 0
        genus = genus2 // 2
        if best is None or genus < best:
            best = genus
            if best == 0:
                break
    return best


def _require_source_sink(g: FramedFourGraph) -> None:
    if not find_source_sink(g):
        raise NoSourceSinkError(
            "graph admits no source-sink structure; planarity criterion "
            "not applicable"
        )


def _component_nonbipartite(g: FramedFourGraph, comp: Component) -> bool:
    if comp.is_circle:
        return False
    sub = component_subgraph(g, comp)
    circuit = find_rotating_circuit(sub)
    diagram = chord_diagram_of(sub, circuit)
    return not interlacement(diagram).is_bipartite()


def is_planar(g: FramedFourGraph) -> bool:
    """Chord-diagram planarity criterion, component by component.

    Raises :class:`NoSourceSinkError` on graphs without a source-sink
    structure (outside the theory's hypotheses).
    """
    _require_source_sink(g)
    return not any(_component_nonbipartite(g, c) for c in connected_components(g))


# ---------------------------------------------------------------------------
# Minor extraction
# ---------------------------------------------------------------------------

_DELTA_CANON: Optional[bytes] = None


def _delta_canon() -> bytes:
    global _DELTA_CANON
    if _DELTA_CANON is None:
        _DELTA_CANON = canonical_form(delta())
    return _DELTA_CANON


def _keep_only(state: FramedFourGraph, keep: Component) -> tuple[FramedFourGraph, list]:
    """Moves deleting every component except ``keep``; returns new state."""
    moves = []
    for comp in connected_components(state):
        if comp.is_circle or comp.vertices == keep.vertices:
            continue
        moves.append(("delete-component", comp.anchor))
    for i in reversed(range(len(state.circles))):
        moves.append(("delete-circle", i))
    return replay_witness(state, MinorWitness(tuple(moves))), moves


def _chord_removal_choice(g: FramedFourGraph, entry: int, exit_: int) -> str:
    """The smoothing choice joining this circuit passage's entry to its
    exit (and hence the other passage's ends to each other)."""
    quad = g.vertex_quads[g.vertex_of[entry]]
    se, sx = quad.index(entry), quad.index(exit_)
    return "A" if {se, sx} in ({0, 1}, {2, 3}) else "B"


def find_delta_minor(g: FramedFourGraph) -> Optional[MinorWitness]:
    """Witness that the 3-vertex obstruction is a minor, or ``None`` for
    planar input.

    Route: keep one non-planar component, smooth away every chord
    outside a shortest odd polygon of its circuit diagram (leaving the
    odd-polygon graph), then shrink greedily by any smoothing that keeps
    a non-planar component, falling back to the exhaustive minor search
    if no greedy step applies.
    """
    _require_source_sink(g)
    target_comp = None
    for comp in connected_components(g):
        if not comp.is_circle and _component_nonbipartite(g, comp):
            target_comp = comp
            break
    if target_comp is None:
        return None

    state, moves = _keep_only(g, target_comp)
    moves = list(moves)

    # Stage 1: reduce to the odd-polygon graph by deleting chords.
    circuit = find_rotating_circuit(state)
    diagram = chord_diagram_of(state, circuit)
    polygon = find_odd_polygon(diagram)
    passages = {}
    loop_passages = RotatingLoop(circuit.half_edges).passages(state)
    for v, ps in loop_passages.items():
        passages[v] = ps
    for v in sorted(set(diagram.labels) - polygon):
        entry, exit_ = passages[v][0]
        choice = _chord_removal_choice(state, entry, exit_)
        moves.append(("smooth", v, choice))
        state = smooth(state, v, choice)

    # Stage 2: greedy descent keeping non-planarity.
    delta_canon = _delta_canon()
    while True:
        if canonical_form(state) == delta_canon:
            break
        comps = connected_components(state)
        bad = next(
            (c for c in comps if not c.is_circle and _component_nonbipartite(state, c)),
            None,
        )
        assert bad is not None  # invariant: state keeps a non-planar component
        if len(comps) > 1:
            state, extra = _keep_only(state, bad)
            moves.extend(extra)
            continue
        step = None
        for v in sorted(state.vertex_quads):
            for choice in ("A", "B"):
                child = smooth(state, v, choice)
                if any(
                    not c.is_circle and _component_nonbipartite(child, c)
                    for c in connected_components(child)
                ):
                    step = (v, choice, child)
                    break
            if step:
                break
        if step is None:
            # greedy dead end: fall back to the exhaustive search
            tail = is_minor(state, delta())
            assert tail is not None
            moves.extend(tail.moves)
            state = replay_witness(state, tail)
            break
        v, choice, state = step[0], step[1], step[2]
        moves.append(("smooth", v, choice))

    witness = MinorWitness(tuple(moves))
    assert canonical_form(replay_witness(g, witness)) == delta_canon
    return witness


def odd_transverse_triple(
    g: FramedFourGraph,
) -> Optional[tuple[RotatingLoop, RotatingLoop, RotatingLoop]]:
    """Three pairwise edge-disjoint rotating loops, each pair crossing
    transversally an odd number of times.

    Such a triple certifies that every generic plane immersion needs at
    least 3 extra double points: each odd-crossing pair of closed curves
    must pick up one more intersection in the plane, and edge-disjointness
    keeps those three extra points distinct.  ``None`` means no
    certificate was found (not a proof that fewer crossings suffice).
    """
    loops = [l for l in enumerate_rotating_loops(g) if not l.is_circle]
    n = len(loops)
    edge_sets = [l.edges() for l in loops]
    disjoint_odd: dict[tuple[int, int], bool] = {}
    for i in range(n):
        for j in range(i + 1, n):
            if edge_sets[i] & edge_sets[j]:
                continue
            if transverse_count(g, loops[i], loops[j]) % 2 == 1:
                disjoint_odd[(i, j)] = True
    for i, j in sorted(disjoint_odd):
        for k in range(j + 1, n):
            if disjoint_odd.get((i, k)) and disjoint_odd.get((j, k)):
                return (loops[i], loops[j], loops[k])
    return None
