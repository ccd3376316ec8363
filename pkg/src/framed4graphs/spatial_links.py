"""Embeddings in 3-space as planar diagrams with signed crossings.

An embedding of a framed 4-graph is represented knot-theoretically: a
planar projection whose nodes are the graph vertices plus transverse
double points (*crossings*), each crossing carrying an over/under
assignment.  Every graph edge (and every circle) is subdivided into
*arcs* between crossings; arcs are directed intrinsically along their
edge's (lo, hi) half-edge order.

A crossing stores the two arcs arriving on its strands and a sign
relative to the intrinsic strand directions; right-handed crossings are
+1 (the under direction is 90 degrees counterclockwise from the over
direction).  The projection's planarity is checked by face tracing over
the framing-compatible vertex rotations.

Linking numbers of rotating loops are half the signed sum of the
crossings between their images, the images being the loop curves
smoothed apart at every graph vertex.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

from .core_graph import (
    Component,
    FramedFourGraph,
    canonical_form,
    connected_components,
    delete_component,
    delta,
    DELTA_EDGES,
    find_source_sink,
    is_minor,
    smooth,
    smoothing_join,
)
from .circuits import RotatingLoop, enumerate_rotating_loops, loop_from_edges, loop_from_tails, loops_transverse_at
from .planarity import NoSourceSinkError, find_delta_minor

__all__ = [
    "Crossing",
    "SpatialDiagram",
    "LinkPair",
    "validate_spatial",
    "loop_image",
    "linking_number",
    "linking_crossings",
    "crossing_switch",
    "delta_parity",
    "delta_linking_numbers",
    "find_odd_linking_pair",
    "is_linkless_witnessed",
    "flat_diagram",
    "diagram_smooth",
    "diagram_delete",
    "project_faces",
    "crossing_edges",
    "insert_kink",
    "insert_clasp",
    "immersed_diagram",
    "delta_immersion_diagram",
]


@dataclass(frozen=True)
class Crossing:
    """Two strands crossing: the arcs arriving on the over and under
    strand, and the sign w.r.t. the arcs' intrinsic directions."""

    over_in: int
    under_in: int
    sign: int


@dataclass(frozen=True)
class SpatialDiagram:
    base: FramedFourGraph
    edge_arcs: tuple[tuple[tuple[int, int], tuple[int, ...]], ...]
    circle_arcs: tuple[tuple[int, ...], ...] = ()
    crossings: tuple[tuple[int, Crossing], ...] = ()

    @classmethod
    def build(cls, base, edge_arcs, circle_arcs=(), crossings=()) -> "SpatialDiagram":
        ea = tuple(sorted((tuple(sorted(e)), tuple(arcs)) for e, arcs in dict(edge_arcs).items()))
        ca = tuple(tuple(arcs) for arcs in circle_arcs)
        xs = tuple(sorted(dict(crossings).items()))
        return cls(base, ea, ca, xs)

    @cached_property
    def edge_arcs_map(self) -> dict[tuple[int, int], tuple[int, ...]]:
        return dict(self.edge_arcs)

    @cached_property
    def crossings_map(self) -> dict[int, Crossing]:
        return dict(self.crossings)

    @cached_property
    def arc_owner(self) -> dict[int, tuple]:
        owner: dict[int, tuple] = {}
        for edge, arcs in self.edge_arcs:
            for a in arcs:
                owner[a] = ("edge", edge)
        for i, arcs in enumerate(self.circle_arcs):
            for a in arcs:
                owner[a] = ("circle", i)
        return owner

    @cached_property
    def successor(self) -> dict[int, int]:
        """Next arc along each chain (cyclically for circles)."""
        nxt = {}
        for _, arcs in self.edge_arcs:
            for a, b in zip(arcs, arcs[1:]):
                nxt[a] = b
        for arcs in self.circle_arcs:
            if len(arcs) > 1:
                for i, a in enumerate(arcs):
                    nxt[a] = arcs[(i + 1) % len(arcs)]
        return nxt

    @cached_property
    def end_crossing(self) -> dict[int, int]:
        ends = {}
        for xid, c in self.crossings:
            ends[c.over_in] = xid
            ends[c.under_in] = xid
        return ends

    def max_arc(self) -> int:
        return max((a for a in self.arc_owner), default=-1)


@dataclass(frozen=True)
class LinkPair:
    """Two rotating loops with their inter-loop crossings and linking
    number (half the signed crossing sum)."""

    loop1: RotatingLoop
    loop2: RotatingLoop
    crossings: tuple[tuple[int, int], ...]  # (crossing id, oriented sign)
    linking: int


# ---------------------------------------------------------------------------
# Structure checks and face tracing
# ---------------------------------------------------------------------------


def _structure_violations(sd: SpatialDiagram) -> list[str]:
    out = []
    g = sd.base
    edges = set(g.edge_pairing)
    covered = set(sd.edge_arcs_map)
    for e in sorted(edges - covered):
        out.append(f"edge h{e[0]}--h{e[1]} has no arc chain")
    for e in sorted(covered - edges):
        out.append(f"arc chain for unknown edge h{e[0]}--h{e[1]}")
    if len(sd.circle_arcs) != len(g.circles):
        out.append(
            f"{len(sd.circle_arcs)} circle chains for {len(g.circles)} circles"
        )
    seen: set[int] = set()
    for _, arcs in list(sd.edge_arcs) + [(None, c) for c in sd.circle_arcs]:
        if not arcs:
            out.append("empty arc chain")
        for a in arcs:
            if a in seen:
                out.append(f"arc a{a} appears in more than one chain position")
            seen.add(a)

    in_slots = {}
    for xid, c in sd.crossings:
        if c.sign not in (1, -1):
            out.append(f"crossing x{xid} has sign {c.sign}")
        if c.over_in == c.under_in:
            out.append(f"crossing x{xid} uses arc a{c.over_in} on both strands")
        for a in (c.over_in, c.under_in):
            if a not in sd.arc_owner:
                out.append(f"crossing x{xid} references unknown arc a{a}")
            elif a in in_slots:
                out.append(f"arc a{a} terminates at two crossings")
            else:
                in_slots[a] = xid

    # arcs that must terminate at a crossing: all but the last arc of each
    # edge chain; every arc of a circle chain with >= 2 arcs
    need_crossing = set()
    for _, arcs in sd.edge_arcs:
        need_crossing.update(arcs[:-1])
    for arcs in sd.circle_arcs:
        if len(arcs) > 1:
            need_crossing.update(arcs)
    for _, arcs in sd.edge_arcs:
        if arcs and arcs[-1] in in_slots:
            out.append(f"arc a{arcs[-1]} ends at a vertex but also at a crossing")
    for a in sorted(need_crossing - set(in_slots)):
        out.append(f"arc a{a} has no terminating crossing")
    for a in sorted(set(in_slots) - need_crossing):
        out.append(f"arc a{a} terminates at a crossing but its chain disagrees")
    return out


def _crossing_rotation(sd: SpatialDiagram, c: Crossing) -> tuple:
    """CCW cyclic order of the four arc-ends; an arc-end is (arc, bit)
    with bit 0 = the arc's start, 1 = its end."""
    bo = sd.successor[c.over_in]
    bu = sd.successor[c.under_in]
    if c.sign == 1:
        return ((bo, 0), (bu, 0), (c.over_in, 1), (c.under_in, 1))
    return ((bo, 0), (c.under_in, 1), (c.over_in, 1), (bu, 0))


def _node_rotations(sd: SpatialDiagram, vertex_bits: dict[int, int]) -> dict:
    """Node -> CCW tuple of arc-ends, for the given vertex rotation bits."""
    g = sd.base
    rot = {}
    for v, quad in g.vertices:
        ends = []
        for h in quad:
            m = g.pairing[h]
            lo, hi = min(h, m), max(h, m)
            arcs = sd.edge_arcs_map[(lo, hi)]
            ends.append((arcs[0], 0) if h == lo else (arcs[-1], 1))
        if vertex_bits.get(v, 0):
            ends = [ends[0], ends[3], ends[2], ends[1]]
        rot[("v", v)] = tuple(ends)
    for xid, c in sd.crossings:
        rot[("x", xid)] = _crossing_rotation(sd, c)
    return rot


def _trace_faces(sd: SpatialDiagram, vertex_bits: dict[int, int]):
    """Faces of the projection (free-loop circles excluded) as dart
    orbits; darts are (arc, +1/-1)."""
    rot = _node_rotations(sd, vertex_bits)
    loc: dict[tuple, tuple] = {}
    for node, ends in rot.items():
        for i, end in enumerate(ends):
            if end in loc:
                raise ValueError(f"arc end {end} attached twice")
            loc[end] = (node, i)
    faces = []
    todo = set()
    for (a, bit) in loc:
        todo.add((a, 1) if bit == 0 else (a, -1))
    while todo:
        start = min(todo)
        face = []
        d = start
        while True:
            face.append(d)
            todo.discard(d)
            arc, direction = d
            head = (arc, 1) if direction == 1 else (arc, 0)
            node, i = loc[head]
            nxt_end = rot[node][(i + 1) % 4]
            d = (nxt_end[0], 1) if nxt_end[1] == 0 else (nxt_end[0], -1)
            if d == start:
                break
        faces.append(tuple(face))
    return faces, loc


def _projection_planar_bits(sd: SpatialDiagram) -> Optional[dict[int, int]]:
    """First vertex-rotation assignment whose face tracing gives genus 0
    on every connected projection component, or ``None``."""
    g = sd.base
    # connected projection components over nodes, via arcs
    node_of_end: dict[tuple, tuple] = {}
    rot0 = _node_rotations(sd, {})
    for node, ends in rot0.items():
        for end in ends:
            node_of_end[end] = node
    parent: dict = {n: n for n in rot0}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    arc_component = {}
    for end, node in node_of_end.items():
        arc = end[0]
        other = (arc, end[1] ^ 1)
        if other in node_of_end:
            ra, rb = find(node), find(node_of_end[other])
            if ra != rb:
                parent[ra] = rb
    comp_nodes: dict = {}
    for n in rot0:
        comp_nodes.setdefault(find(n), []).append(n)
    comp_arcs: dict = {}
    for end, node in node_of_end.items():
        comp_arcs.setdefault(find(node), set()).add(end[0])

    vs = sorted(g.vertex_quads)
    for assignment in itertools.product((0, 1), repeat=len(vs)):
        bits = dict(zip(vs, assignment))
        faces, loc = _trace_faces(sd, bits)
        face_count: dict = {}
        for face in faces:
            root = find(node_of_end[(face[0][0], 0)])
            face_count[root] = face_count.get(root, 0) + 1
        ok = True
        for root, nodes in comp_nodes.items():
            n_nodes = len(nodes)
            n_arcs = len(comp_arcs.get(root, ()))
            n_faces = face_count.get(root, 0)
            if 2 - n_nodes + n_arcs - n_faces != 0:
                ok = False
                break
        if ok:
            return bits
    return None


def validate_spatial(sd: SpatialDiagram) -> list[str]:
    """Violations of the diagram invariants: chain/crossing consistency
    and planarity of the projection for some framing-compatible vertex
    rotation."""
    out = _structure_violations(sd)
    if out:
        return out
    if _projection_planar_bits(sd) is None:
        out.append("projection is not planar for any framing-compatible rotation")
    return out


def project_faces(sd: SpatialDiagram):
    """(vertex rotation bits, faces) for the first planar rotation."""
    bits = _projection_planar_bits(sd)
    if bits is None:
        raise ValueError("projection is not planar")
    faces, _ = _trace_faces(sd, bits)
    return bits, faces


def crossing_edges(sd: SpatialDiagram, xid: int) -> tuple:
    """The two chain owners (edges or circles) met at a crossing."""
    c = sd.crossings_map[xid]
    return (sd.arc_owner[c.over_in], sd.arc_owner[c.under_in])


# ---------------------------------------------------------------------------
# Loop images and linking numbers
# ---------------------------------------------------------------------------


def loop_image(sd: SpatialDiagram, loop: RotatingLoop) -> tuple[tuple[int, int], ...]:
    """The closed diagram curve of a rotating loop as (arc, direction)
    steps; +1 follows the arc's intrinsic direction."""
    g = sd.base
    if loop.is_circle:
        arcs = sd.circle_arcs[loop.circle]
        return tuple((a, 1) for a in arcs)
    from .circuits import _loop_violations

    problems = _loop_violations(g, loop)
    if problems:
        raise ValueError("not a rotating loop of the base graph: " + problems[0])
    steps = []
    for t in loop.tails:
        m = g.pairing[t]
        lo, hi = min(t, m), max(t, m)
        arcs = sd.edge_arcs_map[(lo, hi)]
        if t == lo:
            steps.extend((a, 1) for a in arcs)
        else:
            steps.extend((a, -1) for a in reversed(arcs))
    return tuple(steps)


def _check_link_pair(g: FramedFourGraph, l1: RotatingLoop, l2: RotatingLoop) -> None:
    if l1 == l2:
        raise ValueError("linking number needs two distinct loops")
    if l1.edges() & l2.edges():
        raise ValueError("loops share an edge; images are not disjoint")
    common = l1.passages(g).keys() & l2.passages(g).keys()
    for v in common:
        if loops_transverse_at(g, l1, l2, v):
            raise ValueError(
                f"loops intersect transversally at vertex {v}; linking undefined"
            )


def linking_crossings(
    sd: SpatialDiagram, l1: RotatingLoop, l2: RotatingLoop
) -> tuple[tuple[int, int], ...]:
    """Inter-image crossings as (crossing id, sign for the loops'
    traversal orientations)."""
    _check_link_pair(sd.base, l1, l2)
    dir1 = dict(loop_image(sd, l1))
    dir2 = dict(loop_image(sd, l2))
    out = []
    for xid, c in sd.crossings:
        for da, db in ((dir1, dir2), (dir2, dir1)):
            if c.over_in in da and c.under_in in db:
                out.append((xid, c.sign * da[c.over_in] * db[c.under_in]))
                break
    return tuple(out)


def linking_number(sd: SpatialDiagram, l1: RotatingLoop, l2: RotatingLoop) -> int:
    """Half the signed sum over crossings between the two loop images."""
    total = sum(s for _, s in linking_crossings(sd, l1, l2))
    assert total % 2 == 0, "closed curves cross an even number of times"
    return total // 2


def crossing_switch(sd: SpatialDiagram, xid: int) -> SpatialDiagram:
    """Swap over/under at one crossing (sign negates, projection kept)."""
    c = sd.crossings_map.get(xid)
    if c is None:
        raise ValueError(f"unknown crossing id {xid}")
    flipped = Crossing(over_in=c.under_in, under_in=c.over_in, sign=-c.sign)
    xs = tuple((i, flipped if i == xid else cc) for i, cc in sd.crossings)
    return SpatialDiagram(sd.base, sd.edge_arcs, sd.circle_arcs, xs)


# ---------------------------------------------------------------------------
# The obstruction graph's four loop pairs
# ---------------------------------------------------------------------------

# The four splittings of the six edges into complementary triangles; the
# parity of the sum of their linking numbers is an invariant of every
# embedding of the obstruction graph.
DELTA_PAIRS = (
    (("a", "b", "c"), ("a'", "b'", "c'")),
    (("a", "b", "c'"), ("a'", "b'", "c")),
    (("a", "b'", "c"), ("a'", "b", "c'")),
    (("a'", "b", "c"), ("a", "b'", "c'")),
)


def _match_delta(g: FramedFourGraph) -> dict[int, int]:
    """Half-edge isomorphism from delta() onto ``g`` (brute force)."""
    ref = delta()
    if (
        g.num_vertices != 3
        or len(g.edge_pairing) != 6
        or g.circles
        or canonical_form(g) != canonical_form(ref)
    ):
        raise ValueError("diagram base is not isomorphic to the obstruction graph")
    ref_vs = sorted(ref.vertex_quads)
    g_vs = sorted(g.vertex_quads)
    edges_g = set(g.edge_pairing)
    from .core_graph import _root_arrangements

    for perm in itertools.permutations(g_vs):
        for arrangements in itertools.product(
            *(list(_root_arrangements(g.vertex_quads[v])) for v in perm)
        ):
            phi = {}
            for rv, arr in zip(ref_vs, arrangements):
                for i, h in enumerate(ref.vertex_quads[rv]):
                    phi[h] = arr[i]
            if all(
                (min(phi[a], phi[b]), max(phi[a], phi[b])) in edges_g
                for a, b in ref.edge_pairing
            ):
                return phi
    raise AssertionError("isomorphism exists but matching failed")


def _delta_pair_loops(g: FramedFourGraph):
    phi = _match_delta(g)

    def edge(label):
        x, y = DELTA_EDGES[label]
        return (min(phi[x], phi[y]), max(phi[x], phi[y]))

    pairs = []
    for names1, names2 in DELTA_PAIRS:
        l1 = loop_from_edges(g, [edge(n) for n in names1])
        l2 = loop_from_edges(g, [edge(n) for n in names2])
        pairs.append((l1, l2))
    return pairs


def delta_linking_numbers(sd: SpatialDiagram) -> tuple[int, int, int, int]:
    """The linking numbers of the four complementary triangle pairs."""
    return tuple(linking_number(sd, l1, l2) for l1, l2 in _delta_pair_loops(sd.base))


def delta_parity(sd: SpatialDiagram) -> int:
    """Parity of the sum of the four pair linking numbers; equals 1 for
    every diagram whose base is the obstruction graph."""
    return sum(delta_linking_numbers(sd)) % 2


# ---------------------------------------------------------------------------
# Diagram-level minor moves
# ---------------------------------------------------------------------------


def _chain_from(sd: SpatialDiagram, start_h: int) -> tuple[list[tuple[int, int]], int]:
    """Arcs (with directions) of the edge containing half-edge
    ``start_h``, traversed away from it; returns (steps, far half-edge).
    """
    g = sd.base
    m = g.pairing[start_h]
    lo, hi = min(start_h, m), max(start_h, m)
    arcs = sd.edge_arcs_map[(lo, hi)]
    if start_h == lo:
        return [(a, 1) for a in arcs], hi
    return [(a, -1) for a in reversed(arcs)], lo


def diagram_smooth(sd: SpatialDiagram, v: int, choice: str) -> SpatialDiagram:
    """Smooth the base at ``v`` and reconnect the arc chains.

    Crossings are untouched geometrically, but arcs whose intrinsic
    direction reverses in the merged chains flip their role at (and the
    stored sign of) their crossings.
    """
    g = sd.base
    quad = g.vertex_quads.get(v)
    if quad is None:
        raise ValueError(f"unknown vertex id {v}")
    join = smoothing_join(quad, choice)
    base2 = smooth(g, v, choice)
    removed = set(quad)
    flip: dict[int, int] = {}
    consumed: set[int] = set()

    def record(steps):
        for a, d in steps:
            flip[a] = d

    new_edge_arcs = {}
    for a, b in base2.edge_pairing:
        if g.pairing.get(a) == b:
            # untouched edge
            new_edge_arcs[(a, b)] = sd.edge_arcs_map[(a, b)]
            continue
        steps = []
        cur = min(a, b)
        while True:
            part, far = _chain_from(sd, cur)
            steps.extend(part)
            if far in removed:
                consumed.add(far)
                consumed.add(join[far])
                cur = join[far]
            else:
                break
        assert far == max(a, b)
        record(steps)
        new_edge_arcs[(min(a, b), max(a, b))] = tuple(x for x, _ in steps)

    # strands closed up entirely at v become circles, discovered in the
    # same smallest-half-edge order smooth() uses for its tokens
    new_circle_arcs = list(sd.circle_arcs)
    leftover = {h for h in removed if g.pairing[h] in removed} - consumed
    done_h: set[int] = set()
    for h0 in sorted(leftover):
        if h0 in done_h:
            continue
        steps = []
        cur = h0
        while True:
            done_h.add(cur)
            part, far = _chain_from(sd, cur)
            steps.extend(part)
            done_h.add(far)
            nxt = join[far]
            if nxt == h0:
                break
            cur = nxt
        record(steps)
        new_circle_arcs.append(tuple(x for x, _ in steps))

    new_crossings = {}
    for xid, c in sd.crossings:
        fo = flip.get(c.over_in, 1)
        fu = flip.get(c.under_in, 1)
        over_in = c.over_in if fo == 1 else sd.successor[c.over_in]
        under_in = c.under_in if fu == 1 else sd.successor[c.under_in]
        new_crossings[xid] = Crossing(over_in, under_in, c.sign * fo * fu)

    return SpatialDiagram.build(base2, new_edge_arcs, new_circle_arcs, new_crossings)


def diagram_delete(sd: SpatialDiagram, component: Component) -> SpatialDiagram:
    """Delete a component of the base; crossings between it and the
    surviving strands disappear and the cut arcs merge back together."""
    g = sd.base
    base2 = delete_component(g, component)
    if component.is_circle:
        dead_arcs = set(sd.circle_arcs[component.circle])
        new_circle_chains = [
            c for i, c in enumerate(sd.circle_arcs) if i != component.circle
        ]
        keep_edges = dict(sd.edge_arcs)
    else:
        dead_h = {h for v in component.vertices for h in g.vertex_quads[v]}
        dead_arcs = set()
        keep_edges = {}
        for e, arcs in sd.edge_arcs:
            if e[0] in dead_h:
                dead_arcs.update(arcs)
            else:
                keep_edges[e] = arcs
        new_circle_chains = list(sd.circle_arcs)

    dead_x = {
        xid
        for xid, c in sd.crossings
        if c.over_in in dead_arcs or c.under_in in dead_arcs
    }

    def merge_open(arcs: tuple[int, ...]):
        """Merge consecutive arcs of an edge chain across dead crossings;
        the boundary after original arc ``prev`` is its end crossing."""
        alias = {}
        out = [arcs[0]]
        for prev, a in zip(arcs, arcs[1:]):
            if sd.end_crossing[prev] in dead_x:
                alias[a] = out[-1]
            else:
                out.append(a)
        return tuple(out), alias

    def merge_cyclic(arcs: tuple[int, ...]):
        alias = {}
        k = len(arcs)
        kept = [i for i, a in enumerate(arcs) if sd.end_crossing[a] not in dead_x]
        if not kept:
            rep = arcs[0]
            for a in arcs[1:]:
                alias[a] = rep
            return (rep,), alias  # every crossing gone: a free loop
        out = []
        for bi, boundary in enumerate(kept):
            start = (kept[bi - 1] + 1) % k  # run begins after the previous kept boundary
            rep = arcs[start]
            i = (start + 1) % k
            while i != (boundary + 1) % k:
                alias[arcs[i]] = rep
                i = (i + 1) % k
            out.append(rep)
        return tuple(out), alias

    alias_all: dict[int, int] = {}
    new_edge_arcs = {}
    for e, arcs in keep_edges.items():
        chain, alias = merge_open(arcs)
        new_edge_arcs[e] = chain
        alias_all.update(alias)
    merged_circles = []
    for arcs in new_circle_chains:
        if len(arcs) == 1:
            merged_circles.append(arcs)
            continue
        chain, alias = merge_cyclic(arcs)
        merged_circles.append(chain)
        alias_all.update(alias)

    def resolve(a):
        while a in alias_all:
            a = alias_all[a]
        return a

    new_crossings = {}
    for xid, c in sd.crossings:
        if xid in dead_x:
            continue
        new_crossings[xid] = Crossing(resolve(c.over_in), resolve(c.under_in), c.sign)

    return SpatialDiagram.build(base2, new_edge_arcs, merged_circles, new_crossings)


# ---------------------------------------------------------------------------
# Witness replay on diagrams and the clause-2 certificate
# ---------------------------------------------------------------------------


def _replay_on_diagram(sd: SpatialDiagram, witness) -> tuple[SpatialDiagram, dict]:
    """Replay a minor witness on the diagram; returns the final diagram
    and the accumulated smoothing joins (for loop lifting)."""
    diag = sd
    joins: dict[int, dict[int, int]] = {}
    for move in witness.moves:
        if move[0] == "smooth":
            v, choice = move[1], move[2]
            joins[v] = smoothing_join(diag.base.vertex_quads[v], choice)
            diag = diagram_smooth(diag, v, choice)
        elif move[0] == "delete-component":
            block = next(
                c
                for c in connected_components(diag.base)
                if not c.is_circle and move[1] in c.vertices
            )
            diag = diagram_delete(diag, block)
        elif move[0] == "delete-circle":
            diag = diagram_delete(diag, Component(circle=move[1]))
        else:
            raise ValueError(f"unknown witness move {move!r}")
    return diag, joins


def _lift_loop(
    g: FramedFourGraph, joins: dict[int, dict[int, int]], loop: RotatingLoop
) -> RotatingLoop:
    """Pull a loop of a smoothed minor back to the original graph by
    reinserting the turning passages through smoothed vertices."""
    tails = []
    for t in loop.tails:
        tails.append(t)
        m = g.pairing[t]
        while g.vertex_of[m] in joins:
            ex = joins[g.vertex_of[m]][m]
            tails.append(ex)
            m = g.pairing[ex]
    return loop_from_tails(g, tails)


def find_odd_linking_pair(sd: SpatialDiagram) -> Optional[LinkPair]:
    """A pair of rotating loops with odd linking number, when the base
    contains the obstruction graph as a minor; ``None`` otherwise.

    The minor witness is replayed on the diagram, one of the four
    triangle pairs with odd linking number is selected there, and its
    loops are lifted back through the smoothings.
    """
    try:
        witness = find_delta_minor(sd.base)
    except NoSourceSinkError:
        witness = is_minor(sd.base, delta())
    if witness is None:
        return None
    final, joins = _replay_on_diagram(sd, witness)
    for l1, l2 in _delta_pair_loops(final.base):
        lk = linking_number(final, l1, l2)
        if lk % 2 == 1:
            big1 = _lift_loop(sd.base, joins, l1)
            big2 = _lift_loop(sd.base, joins, l2)
            crossings = linking_crossings(sd, big1, big2)
            lk_big = sum(s for _, s in crossings) // 2
            assert lk_big % 2 == 1
            return LinkPair(big1, big2, crossings, lk_big)
    raise AssertionError("parity invariant guarantees an odd pair")


def is_linkless_witnessed(sd: SpatialDiagram) -> bool:
    """True iff every pair of edge-disjoint, non-transverse rotating
    loops has linking number 0 (exhaustive over all rotating loops)."""
    g = sd.base
    loops = enumerate_rotating_loops(g)
    for i, l1 in enumerate(loops):
        for l2 in loops[i + 1 :]:
            if l1.edges() & l2.edges():
                continue
            common = l1.passages(g).keys() & l2.passages(g).keys()
            if any(loops_transverse_at(g, l1, l2, v) for v in common):
                continue
            if linking_number(sd, l1, l2) != 0:
                return False
    return True


# ---------------------------------------------------------------------------
# Constructors and surgeries
# ---------------------------------------------------------------------------


def flat_diagram(g: FramedFourGraph) -> SpatialDiagram:
    """The crossing-free diagram of a planar graph (one arc per edge,
    one closed arc per circle)."""
    nxt = 0
    edge_arcs = {}
    for e in g.edge_pairing:
        edge_arcs[e] = (nxt,)
        nxt += 1
    circle_arcs = []
    for _ in g.circles:
        circle_arcs.append((nxt,))
        nxt += 1
    return SpatialDiagram.build(g, edge_arcs, circle_arcs, {})


def insert_kink(
    sd: SpatialDiagram, arc: int, over_first: bool = True, sign: int = 1
) -> SpatialDiagram:
    """Add a small curl on one arc: a new self-crossing of its edge."""
    if arc not in sd.arc_owner:
        raise ValueError(f"unknown arc a{arc}")
    n1 = sd.max_arc() + 1
    n2 = n1 + 1
    xid = max(sd.crossings_map, default=-1) + 1

    def rewrite(arcs):
        out = []
        for a in arcs:
            if a == arc:
                out.extend((arc, n1, n2))
            else:
                out.append(a)
        return tuple(out)

    edge_arcs = {e: rewrite(arcs) for e, arcs in sd.edge_arcs}
    circle_arcs = [rewrite(arcs) for arcs in sd.circle_arcs]
    crossings = dict(sd.crossings)
    # the split's last piece inherits the old terminating crossing
    for i, c in list(crossings.items()):
        crossings[i] = Crossing(
            n2 if c.over_in == arc else c.over_in,
            n2 if c.under_in == arc else c.under_in,
            c.sign,
        )
    strands = (arc, n1) if over_first else (n1, arc)
    crossings[xid] = Crossing(over_in=strands[0], under_in=strands[1], sign=sign)
    out = SpatialDiagram.build(sd.base, edge_arcs, circle_arcs, crossings)
    if _structure_violations(out):
        raise AssertionError("kink insertion broke the diagram structure")
    return out


def insert_clasp(sd: SpatialDiagram, arc1: int, arc2: int, over: int = 1) -> SpatialDiagram:
    """Push a finger of ``arc1``'s strand across ``arc2``'s strand,
    adding two cancelling crossings between their edges.

    The two arcs must bound a common face of the projection; the
    concrete layout (crossing order and signs) is chosen as the first of
    the four candidate R2 layouts whose projection stays planar.  With
    ``over=1`` the finger strand passes over at both new crossings.
    """
    if arc1 == arc2:
        raise ValueError("clasp needs two distinct arcs")
    bits, faces = project_faces(sd)
    if not any(
        any(d[0] == arc1 for d in face) and any(d[0] == arc2 for d in face)
        for face in faces
    ):
        raise ValueError(f"arcs a{arc1} and a{arc2} do not bound a common face")

    base_arc = sd.max_arc() + 1
    p, q = base_arc, base_arc + 1  # arc1 -> arc1, p, q
    s, t = base_arc + 2, base_arc + 3  # arc2 -> arc2, s, t
    x1 = max(sd.crossings_map, default=-1) + 1
    x2 = x1 + 1

    def rewrite(arcs):
        out = []
        for a in arcs:
            if a == arc1:
                out.extend((arc1, p, q))
            elif a == arc2:
                out.extend((arc2, s, t))
            else:
                out.append(a)
        return tuple(out)

    edge_arcs = {e: rewrite(arcs) for e, arcs in sd.edge_arcs}
    circle_arcs = [rewrite(arcs) for arcs in sd.circle_arcs]
    crossings0 = {}
    for i, c in sd.crossings:
        over_in = {arc1: q, arc2: t}.get(c.over_in, c.over_in)
        under_in = {arc1: q, arc2: t}.get(c.under_in, c.under_in)
        crossings0[i] = Crossing(over_in, under_in, c.sign)

    # candidate layouts: crossing order along strand2 and the sign split
    finger_in = (arc1, p)  # strand1 arrives at the two crossings via these
    for order in ((arc2, s), (s, arc2)):
        for s1 in (1, -1):
            crossings = dict(crossings0)
            pairs = ((finger_in[0], order[0], s1), (finger_in[1], order[1], -s1))
            for xid, (f_in, o_in, sg) in zip((x1, x2), pairs):
                if over == 1:
                    crossings[xid] = Crossing(over_in=f_in, under_in=o_in, sign=sg)
                else:
                    crossings[xid] = Crossing(over_in=o_in, under_in=f_in, sign=sg)
            out = SpatialDiagram.build(sd.base, edge_arcs, circle_arcs, crossings)
            if not validate_spatial(out):
                return out
    raise AssertionError("no planar clasp layout found on a shared face")


def immersed_diagram(diagram, jitter: int = 0) -> SpatialDiagram:
    """A spatial diagram of ``realize(diagram)`` from a concrete drawing.

    The core circle is drawn round with the chord endpoints slightly
    jittered (seeded, to break symmetric chord concurrences); each chord
    vertex sits at its chord's midpoint and the four edge ends run as
    straight spurs from the circle to the midpoints.  Spur pairs of
    interlaced chords intersect; those intersections become crossings,
    with the lower-numbered edge arbitrarily on top.
    """
    import math
    import random

    from .chord_diagram import realize

    word = diagram.word
    n2 = len(word)
    base = realize(diagram)
    if n2 == 0:
        return flat_diagram(base)

    order: list = []
    for x in word:
        if x not in order:
            order.append(x)
    vid = {x: i for i, x in enumerate(order)}

    for attempt in range(32):
        rng = random.Random(jitter * 1000003 + attempt)
        gap = 2 * math.pi / n2
        angles = [i * gap + rng.uniform(-0.3, 0.3) * gap for i in range(n2)]
        pts = [(math.cos(t), math.sin(t)) for t in angles]
        mids = {}
        for x in diagram.labels:
            j1, j2 = diagram.positions[x]
            mids[vid[x]] = (
                (pts[j1][0] + pts[j2][0]) / 2,
                (pts[j1][1] + pts[j2][1]) / 2,
            )
        delta_ang = 0.25 * gap
        out_pt = [
            (math.cos(t + delta_ang), math.sin(t + delta_ang)) for t in angles
        ]
        in_pt = [
            (math.cos(t - delta_ang), math.sin(t - delta_ang)) for t in angles
        ]
        # per edge j: spur out of position j, circle arc, spur into j+1
        segs = []  # (edge index, leg 0|1, start point, end point)
        for j in range(n2):
            segs.append((j, 0, mids[vid[word[j]]], out_pt[j]))
            k = (j + 1) % n2
            segs.append((j, 1, in_pt[k], mids[vid[word[k]]]))

        def cross(p, q, a, b):
            # proper intersection of segments pq and ab, or None
            d1 = (q[0] - p[0], q[1] - p[1])
            d2 = (b[0] - a[0], b[1] - a[1])
            den = d1[0] * d2[1] - d1[1] * d2[0]
            if abs(den) < 1e-12:
                return None
            t = ((a[0] - p[0]) * d2[1] - (a[1] - p[1]) * d2[0]) / den
            u = ((a[0] - p[0]) * d1[1] - (a[1] - p[1]) * d1[0]) / den
            eps = 1e-9
            if eps < t < 1 - eps and eps < u < 1 - eps:
                return (t, u)
            return None

        hits = []  # (seg index 1, t1, seg index 2, t2, sign of det)
        degenerate = False
        points = []
        for i in range(len(segs)):
            for k in range(i + 1, len(segs)):
                e1, _, p, q = segs[i]
                e2, _, a, b = segs[k]
                shared = {tuple(p), tuple(q)} & {tuple(a), tuple(b)}
                if shared:
                    continue
                hit = cross(p, q, a, b)
                if hit is None:
                    continue
                t, u = hit
                if min(t, u, 1 - t, 1 - u) < 1e-4:
                    degenerate = True
                    break
                z = (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))
                for w in points:
                    if math.hypot(z[0] - w[0], z[1] - w[1]) < 1e-6:
                        degenerate = True
                points.append(z)
                d1 = (q[0] - p[0], q[1] - p[1])
                d2 = (b[0] - a[0], b[1] - a[1])
                hits.append((i, t, k, u, 1 if d1[0] * d2[1] - d1[1] * d2[0] > 0 else -1))
            if degenerate:
                break
        if degenerate:
            continue

        # order crossings along each edge: leg 0 ascending, then leg 1
        # (keyed per passage, since an edge's two spurs may cross each other)
        per_edge: dict[int, list] = {j: [] for j in range(n2)}
        for xid, (i, t, k, u, s) in enumerate(hits):
            for seg_idx, par in ((i, t), (k, u)):
                e, leg, _, _ = segs[seg_idx]
                per_edge[e].append((leg, par, xid, seg_idx))
        arc = 0
        edge_arcs = {}
        in_arc: dict[tuple[int, int], int] = {}  # (crossing, segment) -> in arc
        for j in range(n2):
            xs = sorted(per_edge[j])
            arcs = tuple(range(arc, arc + len(xs) + 1))
            arc += len(xs) + 1
            edge_arcs[(2 * j, 2 * j + 1)] = arcs
            for pos, (_, _, xid, seg_idx) in enumerate(xs):
                in_arc[(xid, seg_idx)] = arcs[pos]
        crossings = {}
        for xid, (i, t, k, u, s) in enumerate(hits):
            a1, a2 = in_arc[(xid, i)], in_arc[(xid, k)]
            if (segs[i][0], i) <= (segs[k][0], k):
                crossings[xid] = Crossing(over_in=a1, under_in=a2, sign=s)
            else:
                crossings[xid] = Crossing(over_in=a2, under_in=a1, sign=-s)
        sd = SpatialDiagram.build(base, edge_arcs, [], crossings)
        if not validate_spatial(sd):
            return sd
    raise AssertionError("no generic drawing found; increase jitter attempts")


def delta_immersion_diagram() -> SpatialDiagram:
    """The golden 3-crossing diagram of the obstruction graph.

    Three round circles drawn as a Venn diagram: each pair of circles
    meets at one graph vertex (outer intersection) and one crossing
    (inner intersection).  Over/under choices are fixed so that the
    (a,b,c)/(a',b',c') pair has linking number 0 and the other three
    pairs are odd.  Derived from the explicit drawing; frozen here.
    """
    from . import _delta_golden

    return _delta_golden.build()
