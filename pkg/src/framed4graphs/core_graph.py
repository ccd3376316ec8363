"""Framed 4-valent graphs and their minor operations.

A framed 4-graph is a 4-valent multigraph together with a *framing*: at
every vertex the four incident half-edges are split into two "opposite"
pairs.  Disjoint oriented circles (vertex-free components) are allowed.
The minor operations are vertex smoothings, which reconnect the four
half-edges into two *adjacent* (non-opposite) pairs, and deletions of
whole connected components.

Half-edges are integers.  A vertex is an ordered quadruple
``(h0, h1, h2, h3)``; the opposite pairs sit at slot positions {0, 2}
and {1, 3}.  The two smoothings are position-defined:

* choice ``"A"`` joins h0-h1 and h2-h3,
* choice ``"B"`` joins h0-h3 and h1-h2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Optional

__all__ = [
    "FramedFourGraph",
    "SourceSinkOrientation",
    "MinorWitness",
    "Component",
    "validate",
    "delta",
    "DELTA_EDGES",
    "z_odd",
    "smooth",
    "delete_component",
    "connected_components",
    "find_source_sink",
    "is_minor",
    "is_isomorphic",
    "canonical_form",
    "canonical_relabel",
    "disjoint_union",
    "replay_witness",
    "smoothing_join",
]

SMOOTHING_CHOICES = ("A", "B")


@dataclass(frozen=True)
class FramedFourGraph:
    """Immutable framed 4-graph.

    ``vertices`` maps vertex id -> half-edge quadruple (stored as a sorted
    tuple of items so the value is hashable).  ``edge_pairing`` is the set
    of edges, each a sorted pair of half-edge ids.  ``circles`` holds one
    orientation token (+1/-1) per circular component.
    """

    vertices: tuple[tuple[int, tuple[int, int, int, int]], ...]
    edge_pairing: tuple[tuple[int, int], ...]
    circles: tuple[int, ...] = ()

    @classmethod
    def build(
        cls,
        vertices: Mapping[int, Iterable[int]],
        edges: Iterable[Iterable[int]],
        circles: Iterable[int] = (),
    ) -> "FramedFourGraph":
        vs = tuple(sorted((v, tuple(quad)) for v, quad in vertices.items()))
        es = tuple(sorted(tuple(sorted(e)) for e in edges))
        return cls(vs, es, tuple(circles))

    @cached_property
    def vertex_quads(self) -> dict[int, tuple[int, int, int, int]]:
        return dict(self.vertices)

    @cached_property
    def pairing(self) -> dict[int, int]:
        p = {}
        for a, b in self.edge_pairing:
            p[a] = b
            p[b] = a
        return p

    @cached_property
    def vertex_of(self) -> dict[int, int]:
        owner = {}
        for v, quad in self.vertices:
            for h in quad:
                owner[h] = v
        return owner

    @cached_property
    def slot_of(self) -> dict[int, int]:
        slots = {}
        for _, quad in self.vertices:
            for i, h in enumerate(quad):
                slots[h] = i
        return slots

    @cached_property
    def half_edges(self) -> frozenset[int]:
        return frozenset(self.vertex_of)

    def opposite(self, h: int) -> int:
        """The half-edge opposite ``h`` at its vertex."""
        quad = self.vertex_quads[self.vertex_of[h]]
        return quad[(self.slot_of[h] + 2) % 4]

    def are_opposite(self, h1: int, h2: int) -> bool:
        return self.vertex_of[h1] == self.vertex_of[h2] and self.opposite(h1) == h2

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return (
            f"FramedFourGraph({len(self.vertices)} vertices, "
            f"{len(self.edge_pairing)} edges, {len(self.circles)} circles)"
        )


@dataclass(frozen=True)
class SourceSinkOrientation:
    """Edge directions where, at every vertex, one opposite pair comes in
    and the other goes out.

    ``direction`` maps each edge (sorted pair) to ``(tail, head)``;
    ``circles`` carries one orientation token per circular component.
    """

    direction: tuple[tuple[tuple[int, int], tuple[int, int]], ...]
    circles: tuple[int, ...] = ()

    @cached_property
    def direction_map(self) -> dict[tuple[int, int], tuple[int, int]]:
        return dict(self.direction)

    def is_tail(self, h: int) -> bool:
        for edge, (tail, _) in self.direction:
            if h in edge:
                return tail == h
        raise ValueError(f"half-edge {h} not covered by this orientation")


@dataclass(frozen=True)
class Component:
    """A connected component: either a set of vertices or one circle."""

    vertices: frozenset[int] = frozenset()
    circle: Optional[int] = None

    @property
    def is_circle(self) -> bool:
        return self.circle is not None

    @property
    def anchor(self) -> int:
        """Smallest vertex id; identifies a vertexed component in witnesses."""
        return min(self.vertices)


@dataclass(frozen=True)
class MinorWitness:
    """Replayable move list proving a minor containment.

    Moves are tuples:

    * ``("smooth", vertex_id, "A"|"B")``
    * ``("delete-component", anchor_vertex_id)``
    * ``("delete-circle", circle_index)``
    """

    moves: tuple[tuple, ...] = ()

    def __len__(self) -> int:
        return len(self.moves)

    def extended(self, *moves: tuple) -> "MinorWitness":
        return MinorWitness(self.moves + tuple(moves))


# ---------------------------------------------------------------------------
# Validation and constructors
# ---------------------------------------------------------------------------


def validate(g: FramedFourGraph) -> list[str]:
    """Check the type invariants; return human-readable violations.

    An empty list means the graph is well formed.
    """
    violations = []
    seen: dict[int, int] = {}
    for v, quad in g.vertices:
        if len(quad) != 4 or len(set(quad)) != 4:
            violations.append(f"vertex {v} does not have 4 distinct half-edge slots")
        for h in quad:
            if h in seen:
                violations.append(
                    f"half-edge {h} occurs at both vertex {seen[h]} and vertex {v}"
                )
            seen[h] = v
    in_vertices = set(seen)
    paired = set()
    for a, b in g.edge_pairing:
        if a == b:
            violations.append(f"edge pairing maps half-edge {a} to itself")
            continue
        for h in (a, b):
            if h in paired:
                violations.append(f"half-edge {h} appears in more than one edge")
            paired.add(h)
            if h not in in_vertices:
                violations.append(f"edge half-edge {h} does not appear at any vertex")
    for h in sorted(in_vertices - paired):
        violations.append(f"half-edge {h} is not covered by the edge pairing")
    for token in g.circles:
        if token not in (1, -1):
            violations.append(f"circle orientation token {token} is not +1/-1")
    return violations


# Edge labels of the excluded graph: three vertices P,Q,R; each pair of
# vertices is joined by two parallel edges that are opposite at both ends.
DELTA_EDGES = {
    "a": (0, 1),
    "a'": (2, 3),
    "b": (4, 5),
    "b'": (6, 7),
    "c": (8, 9),
    "c'": (10, 11),
}


def delta() -> FramedFourGraph:
    """The 3-vertex excluded minor for planarity.

    Vertices P=0, Q=1, R=2.  Edges a,a' join P-Q, b,b' join P-R, c,c'
    join Q-R; each parallel pair is opposite at both of its endpoints.
    """
    return FramedFourGraph.build(
        {0: (0, 4, 2, 6), 1: (1, 8, 3, 10), 2: (5, 9, 7, 11)},
        DELTA_EDGES.values(),
    )


def z_odd(n: int) -> FramedFourGraph:
    """The graph realized from the (2n+1)-gon chord diagram."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    from .chord_diagram import polygon_diagram, realize

    return realize(polygon_diagram(2 * n + 1))


# ---------------------------------------------------------------------------
# Minor moves
# ---------------------------------------------------------------------------


def smoothing_join(quad, choice):
    """The half-edge reconnection of a smoothing choice at a quadruple."""
    q0, q1, q2, q3 = quad
    if choice == "A":
        return {q0: q1, q1: q0, q2: q3, q3: q2}
    if choice == "B":
        return {q0: q3, q3: q0, q1: q2, q2: q1}
    raise ValueError(f"unknown smoothing choice {choice!r}")


def smooth(g: FramedFourGraph, v: int, choice: str) -> FramedFourGraph:
    """Remove vertex ``v``, reconnecting its half-edges into two adjacent
    pairs (choice "A": slots 0-1/2-3, choice "B": slots 0-3/1-2).

    Strands both of whose ends vanish close up into new circles, which
    get the positive orientation token.
    """
    quad = g.vertex_quads.get(v)
    if quad is None:
        raise ValueError(f"unknown vertex id {v}")
    join = smoothing_join(quad, choice)
    removed = set(quad)
    pairing = g.pairing

    new_edges = []
    consumed: set[int] = set()
    # Open strands: trace from each outside half-edge whose partner dies.
    for a in sorted(g.half_edges - removed):
        x = pairing[a]
        if x not in removed:
            if a < x:
                new_edges.append((a, x))
            continue
        if x in consumed:
            continue  # strand already traced from its other end
        while True:
            consumed.add(x)
            y = join[x]
            consumed.add(y)
            b = pairing[y]
            if b not in removed:
                break
            x = b
        new_edges.append((min(a, b), max(a, b)))
    # Closed strands among the removed half-edges become circles.
    new_circles = list(g.circles)
    leftover = removed - consumed
    while leftover:
        x = min(leftover)
        while x in leftover:
            leftover.discard(x)
            y = join[x]
            leftover.discard(y)
            x = pairing[y]
        new_circles.append(1)

    new_vertices = {u: q for u, q in g.vertices if u != v}
    return FramedFourGraph.build(new_vertices, new_edges, new_circles)


def connected_components(g: FramedFourGraph) -> tuple[Component, ...]:
    """Partition into vertexed components (via edge adjacency) and circles."""
    quads = g.vertex_quads
    pairing = g.pairing
    owner = g.vertex_of
    unseen = set(quads)
    comps = []
    while unseen:
        start = min(unseen)
        stack = [start]
        unseen.discard(start)
        block = {start}
        while stack:
            u = stack.pop()
            for h in quads[u]:
                w = owner[pairing[h]]
                if w in unseen:
                    unseen.discard(w)
                    block.add(w)
                    stack.append(w)
        comps.append(Component(vertices=frozenset(block)))
    comps.extend(Component(circle=i) for i in range(len(g.circles)))
    return tuple(comps)


def delete_component(g: FramedFourGraph, component: Component) -> FramedFourGraph:
    """Remove one connected component (a vertex block or a circle)."""
    if component.is_circle:
        i = component.circle
        if not 0 <= i < len(g.circles):
            raise ValueError(f"unknown circle index {i}")
        circles = g.circles[:i] + g.circles[i + 1 :]
        return FramedFourGraph(g.vertices, g.edge_pairing, circles)

    block = component.vertices
    if not block or not block <= set(g.vertex_quads):
        raise ValueError(f"unknown component {sorted(block)}")
    actual = _component_of_vertex(g, min(block))
    if actual != block:
        raise ValueError(f"{sorted(block)} is not a connected component")
    keep = {v: q for v, q in g.vertices if v not in block}
    dead = {h for v in block for h in g.vertex_quads[v]}
    edges = [e for e in g.edge_pairing if e[0] not in dead]
    return FramedFourGraph.build(keep, edges, g.circles)


def _component_of_vertex(g: FramedFourGraph, v: int) -> frozenset[int]:
    for comp in connected_components(g):
        if not comp.is_circle and v in comp.vertices:
            return comp.vertices
    raise ValueError(f"unknown vertex id {v}")


def disjoint_union(g: FramedFourGraph, h: FramedFourGraph) -> FramedFourGraph:
    """Disjoint union, relabeling ``h`` above ``g``'s ids."""
    off_h = max(g.half_edges, default=-1) + 1
    off_v = max(g.vertex_quads, default=-1) + 1
    vertices = dict(g.vertices)
    for v, quad in h.vertices:
        vertices[v + off_v] = tuple(x + off_h for x in quad)
    edges = list(g.edge_pairing) + [(a + off_h, b + off_h) for a, b in h.edge_pairing]
    return FramedFourGraph.build(vertices, edges, g.circles + h.circles)


def replay_witness(g: FramedFourGraph, witness: MinorWitness) -> FramedFourGraph:
    """Apply a witness move list; raises if any move is undefined."""
    current = g
    for move in witness.moves:
        kind = move[0]
        if kind == "smooth":
            current = smooth(current, move[1], move[2])
        elif kind == "delete-component":
            block = _component_of_vertex(current, move[1])
            current = delete_component(current, Component(vertices=block))
        elif kind == "delete-circle":
            current = delete_component(current, Component(circle=move[1]))
        else:
            raise ValueError(f"unknown witness move {move!r}")
    return current


# ---------------------------------------------------------------------------
# Source-sink structures
# ---------------------------------------------------------------------------


def find_source_sink(g: FramedFourGraph) -> list[SourceSinkOrientation]:
    """All orientations where each vertex has one opposite pair incoming
    and the other outgoing.  Circles contribute both orientations.

    Empty list = the graph admits no source-sink structure.  A connected
    graph either admits none or exactly two (global reversal).
    """
    slot = g.slot_of
    # Per vertex choose bit b: b=0 means slots {0,2} are tails (outgoing).
    # out(h) = 1 ^ b[v] ^ s(h) with s(h)=0 for slots {0,2} else 1; every
    # edge needs exactly one tail, an XOR constraint solved by BFS.
    def s(h):
        return 0 if slot[h] % 2 == 0 else 1

    comps = [c for c in connected_components(g) if not c.is_circle]
    comp_assignments = []
    for comp in comps:
        adj: dict[int, list[tuple[int, int]]] = {v: [] for v in comp.vertices}
        internal_ok = True
        for a, b in g.edge_pairing:
            va, vb = g.vertex_of[a], g.vertex_of[b]
            if va not in adj:
                continue
            parity = 1 ^ s(a) ^ s(b)
            if va == vb:
                if parity != 0:
                    internal_ok = False
            else:
                adj[va].append((vb, parity))
                adj[vb].append((va, parity))
        if not internal_ok:
            return []
        root = min(comp.vertices)
        bit = {root: 0}
        stack = [root]
        consistent = True
        while stack:
            u = stack.pop()
            for w, parity in adj[u]:
                want = bit[u] ^ parity
                if w in bit:
                    if bit[w] != want:
                        consistent = False
                else:
                    bit[w] = want
                    stack.append(w)
        if not consistent:
            return []
        comp_assignments.append((bit, {v: b ^ 1 for v, b in bit.items()}))

    results = []
    circle_options = list(itertools.product((1, -1), repeat=len(g.circles)))
    for chosen in itertools.product(*comp_assignments) if comp_assignments else [()]:
        bits: dict[int, int] = {}
        for assignment in chosen:
            bits.update(assignment)
        direction = []
        for a, b in g.edge_pairing:
            out_a = 1 ^ bits[g.vertex_of[a]] ^ s(a)
            direction.append(((a, b), (a, b) if out_a else (b, a)))
        for circ in circle_options:
            results.append(SourceSinkOrientation(tuple(direction), circ))
    return results


# ---------------------------------------------------------------------------
# Canonical forms and isomorphism
# ---------------------------------------------------------------------------

_canon_cache: dict[tuple, tuple] = {}


def _vertex_invariant(g: FramedFourGraph, v: int) -> tuple:
    quad = g.vertex_quads[v]
    neighbors: dict[int, int] = {}
    loops = [0, 0]  # adjacent-slot loops, opposite-slot loops
    for i, h in enumerate(quad):
        m = g.pairing[h]
        w = g.vertex_of[m]
        if w == v:
            kind = 1 if g.slot_of[m] == (i + 2) % 4 else 0
            loops[kind] += 1
        else:
            neighbors[w] = neighbors.get(w, 0) + 1
    return (tuple(loops), tuple(sorted(neighbors.values())))


def _root_arrangements(quad):
    for start in range(4):
        e = quad[start]
        opp = quad[(start + 2) % 4]
        x = quad[(start + 1) % 4]
        y = quad[(start + 3) % 4]
        yield (e, x, opp, y)
        yield (e, y, opp, x)


def _component_code(g: FramedFourGraph, verts: frozenset[int]) -> tuple:
    """Minimal traversal code of one vertexed component.

    Half-edges are numbered four at a time as vertices are first reached;
    processing each number in order emits one event: either the number of
    the already-seen partner or -1 for a jump into a fresh vertex.  The
    code is minimized over all roots, 8 framing-preserving root
    arrangements, and the binary ordering choice at every later vertex.
    """
    pairing = g.pairing
    quads = g.vertex_quads
    owner = g.vertex_of
    slots = g.slot_of

    inv = {v: _vertex_invariant(g, v) for v in verts}
    best_inv = min(inv.values())
    roots = sorted(v for v in verts if inv[v] == best_inv)

    best: list[Optional[tuple]] = [None]
    best_numbering: list[Optional[dict[int, int]]] = [None]
    total = 4 * len(verts)

    # Branch-and-bound DFS.  A frame only mutates `best` via recursive
    # calls, after which it returns, so within a frame's loop `best[0]`
    # is constant; `tight` is recomputed at frame entry to stay sound
    # when a sibling branch improved the bound.
    def run(num: dict[int, int], rev: list[int], events: list[int]) -> None:
        ref = best[0]
        n = len(events)
        tight = ref is not None and list(ref[:n]) == events
        while n < total:
            h = rev[n]
            m = pairing[h]
            t = num.get(m)
            if t is not None:
                events.append(t)
                if tight:
                    cb = ref[n]
                    if t > cb:
                        return
                    if t < cb:
                        tight = False
                n += 1
                continue
            # fresh vertex: branch on the ordering of its non-opposite pair
            events.append(-1)
            if tight:
                cb = ref[n]
                if -1 > cb:
                    return
                if -1 < cb:
                    tight = False
            w = owner[m]
            quad = quads[w]
            sm = slots[m]
            opp = quad[(sm + 2) % 4]
            x = quad[(sm + 1) % 4]
            y = quad[(sm + 3) % 4]
            base = len(rev)
            for first, second in ((x, y), (y, x)):
                num2 = dict(num)
                for i, hh in enumerate((m, first, opp, second)):
                    num2[hh] = base + i
                run(num2, rev + [m, first, opp, second], list(events))
            return
        code = tuple(events)
        if best[0] is None or code < best[0]:
            best[0] = code
            best_numbering[0] = num

    for root in roots:
        for arrangement in _root_arrangements(quads[root]):
            num = {h: i for i, h in enumerate(arrangement)}
            run(num, list(arrangement), [])

    code = best[0]
    _relabel_store[code] = best_numbering[0]
    return code


_relabel_store: dict[tuple, dict[int, int]] = {}


def canonical_form(g: FramedFourGraph) -> bytes:
    """Byte string equal exactly for isomorphic framed 4-graphs.

    Isomorphism respects the framing and the number of circles (circle
    orientations are ignored).
    """
    key = (g.vertices, g.edge_pairing, len(g.circles))
    cached = _canon_cache.get(key)
    if cached is None:
        comps = [c.vertices for c in connected_components(g) if not c.is_circle]
        codes = sorted(_component_code(g, verts) for verts in comps)
        cached = (tuple(codes), len(g.circles))
        _canon_cache[key] = cached
    codes, ncircles = cached
    body = ";".join(",".join(map(str, code)) for code in codes)
    return f"f4g[{body}]circles={ncircles}".encode()


def canonical_relabel(g: FramedFourGraph) -> FramedFourGraph:
    """An isomorphic copy with canonical ids (stable across relabelings).

    Circle orientations are normalized to +1.
    """
    canonical_form(g)  # populate caches
    comps = [c.vertices for c in connected_components(g) if not c.is_circle]
    coded = sorted(
        ((_component_code(g, verts), min(verts)), verts) for verts in comps
    )
    vertices: dict[int, tuple[int, int, int, int]] = {}
    edges = []
    offset = 0
    for (code, _), verts in coded:
        numbering = _relabel_store[code]
        for v in verts:
            quad = g.vertex_quads[v]
            # the numbering fills blocks of four in a framing-respecting
            # arrangement, so ascending order keeps opposite pairs at
            # slots {0,2} and {1,3}
            new_quad = tuple(sorted(numbering[h] + offset for h in quad))
            vertices[new_quad[0] // 4] = new_quad
        for a, b in g.edge_pairing:
            if g.vertex_of[a] in verts:
                edges.append((numbering[a] + offset, numbering[b] + offset))
        offset += 4 * len(verts)
    return FramedFourGraph.build(vertices, edges, (1,) * len(g.circles))


def is_isomorphic(g: FramedFourGraph, h: FramedFourGraph) -> bool:
    return canonical_form(g) == canonical_form(h)


# ---------------------------------------------------------------------------
# Minor search
# ---------------------------------------------------------------------------


def is_minor(g: FramedFourGraph, h: FramedFourGraph) -> Optional[MinorWitness]:
    """Search for a replayable witness that ``h`` is a minor of ``g``.

    Breadth-first over smoothing/deletion sequences, memoized so that
    isomorphic intermediate states are explored once.  Returns ``None``
    when ``h`` is not a minor.
    """
    target = canonical_form(h)
    if canonical_form(g) == target:
        return MinorWitness(())
    h_comps = connected_components(h)
    if len(h_comps) == 1:
        return _minor_connected_target(g, h, target)
    return _minor_general(g, h, target)


def _delete_rest_moves(g: FramedFourGraph, keep: Optional[frozenset[int]]) -> list[tuple]:
    """Moves deleting every component except the ``keep`` vertex block."""
    moves = []
    for comp in connected_components(g):
        if comp.is_circle:
            continue
        if keep is None or comp.vertices != keep:
            moves.append(("delete-component", comp.anchor))
    # circle indices shift as circles are deleted; delete from the top
    ncircles = len(g.circles)
    keep_circles = 0
    for i in reversed(range(keep_circles, ncircles)):
        moves.append(("delete-circle", i))
    return moves


def _subgraph(g: FramedFourGraph, verts: frozenset[int]) -> FramedFourGraph:
    quads = {v: g.vertex_quads[v] for v in verts}
    keep_h = {h for q in quads.values() for h in q}
    edges = [e for e in g.edge_pairing if e[0] in keep_h]
    return FramedFourGraph.build(quads, edges)


def _minor_connected_target(
    g: FramedFourGraph, h: FramedFourGraph, target: bytes
) -> Optional[MinorWitness]:
    """Minor search specialized to a connected target.

    Deletions can always be postponed past smoothings, so it suffices to
    search smoothing sequences and test whether some component matches
    the target; the witness then deletes everything else.
    """
    nv_h = h.num_vertices
    ne_h = len(h.edge_pairing)
    h_is_circle = nv_h == 0

    def match_component(state: FramedFourGraph) -> Optional[list[tuple]]:
        if h_is_circle:
            if not state.circles:
                return None
            moves = _delete_rest_moves(state, None)
            # keep exactly one circle: drop the last delete-circle move
            moves = [m for m in moves if m != ("delete-circle", 0)]
            return moves
        for comp in connected_components(state):
            if comp.is_circle or len(comp.vertices) != nv_h:
                continue
            sub = _subgraph(state, comp.vertices)
            if len(sub.edge_pairing) != ne_h:
                continue
            if canonical_form(sub) == target:
                return _delete_rest_moves(state, comp.vertices)
        return None

    start_key = (g.vertices, g.edge_pairing, len(g.circles))
    frontier: dict[tuple, tuple[FramedFourGraph, tuple]] = {start_key: (g, ())}
    seen = {start_key}
    while frontier:
        for state, moves in frontier.values():
            tail = match_component(state)
            if tail is not None:
                return MinorWitness(moves + tuple(tail))
        next_frontier: dict[tuple, tuple[FramedFourGraph, tuple]] = {}
        for state, moves in frontier.values():
            if state.num_vertices <= nv_h:
                continue  # smoothing further can only undershoot the target
            for v in state.vertex_quads:
                for choice in SMOOTHING_CHOICES:
                    child = smooth(state, v, choice)
                    key = (child.vertices, child.edge_pairing, len(child.circles))
                    if key in seen:
                        continue
                    seen.add(key)
                    next_frontier[key] = (child, moves + (("smooth", v, choice),))
        frontier = next_frontier
    return None


def _minor_general(
    g: FramedFourGraph, h: FramedFourGraph, target: bytes
) -> Optional[MinorWitness]:
    nv_h = h.num_vertices
    frontier = [(g, ())]
    seen = {canonical_form(g)}
    while frontier:
        next_frontier = []
        for state, moves in frontier:
            children: list[tuple[FramedFourGraph, tuple]] = []
            for v in state.vertex_quads:
                for choice in SMOOTHING_CHOICES:
                    children.append(
                        (smooth(state, v, choice), moves + (("smooth", v, choice),))
                    )
            for comp in connected_components(state):
                if comp.is_circle:
                    move = ("delete-circle", comp.circle)
                else:
                    move = ("delete-component", comp.anchor)
                children.append((delete_component(state, comp), moves + (move,)))
            for child, child_moves in children:
                if child.num_vertices < nv_h:
                    continue
                key = canonical_form(child)
                if key == target:
                    return MinorWitness(child_moves)
                if key in seen:
                    continue
                seen.add(key)
                next_frontier.append((child, child_moves))
        frontier = next_frontier
    return None
