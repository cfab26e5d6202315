"""The lattice of all FC sets of a ring."""

from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from .errors import JoinFormulaMismatch, LatticeTooLarge, PreconditionError
from .fcset import FCSet, blocks, classes, closure, dual, trivial_fcset
from .ring import FusionRing

MAX_ELEMENTS = 512


@dataclass(frozen=True, eq=False)
class FCLattice:
    ring: FusionRing = field(repr=False)
    elements: tuple[FCSet, ...]
    leq: np.ndarray
    meet_table: np.ndarray
    join_table: np.ndarray
    dual_map: tuple[int, ...] | None
    _pos: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_pos", {g.members: i for i, g in enumerate(self.elements)})

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, g: FCSet) -> int:
        return self._pos[g.members]

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.elements) - 1

    def meet(self, g: FCSet, h: FCSet) -> FCSet:
        return self.elements[self.meet_table[self.index(g), self.index(h)]]

    def join(self, g: FCSet, h: FCSet) -> FCSet:
        return self.elements[self.join_table[self.index(g), self.index(h)]]

    def below(self, g: FCSet) -> list[FCSet]:
        """All FC sets contained in ``g`` (canonical order)."""
        return [h for h in self.elements if h <= g]


def _saturate(ring: FusionRing, max_elements: int) -> list[FCSet]:
    found = {trivial_fcset(ring)} | {closure(ring, {p}) for p in ring.primaries}
    frontier = list(found)
    while frontier:
        fresh = []
        for a in frontier:
            for b in list(found):
                j = closure(ring, a.members | b.members)
                if j not in found:
                    found.add(j)
                    fresh.append(j)
                    if len(found) > max_elements:
                        raise LatticeTooLarge(
                            f"more than {max_elements} FC sets; raise max_elements to continue")
        frontier = fresh
    return sorted(found, key=lambda g: g.key)


def enumerate_fcsets(ring: FusionRing, max_elements: int = MAX_ELEMENTS) -> FCLattice:
    """All FC sets, as joins of the cyclic ones ``closure({p})``.

    Joins are computed as closures of unions; when the ring has an S-matrix
    they are also computed as the dual of the intersection of the duals and
    the two must agree.
    """
    elements = _saturate(ring, max_elements)
    pos = {g.members: i for i, g in enumerate(elements)}
    L = len(elements)
    leq = np.array([[a <= b for b in elements] for a in elements], dtype=bool)
    meet = np.empty((L, L), dtype=np.int64)
    join = np.empty((L, L), dtype=np.int64)
    for i, a in enumerate(elements):
        for j in range(i, L):
            b = elements[j]
            meet[i, j] = meet[j, i] = pos[a.members & b.members]
            join[i, j] = join[j, i] = pos[closure(ring, a.members | b.members).members]

    dual_map = None
    if ring.characters.labelled:
        duals = [dual(g) for g in elements]
        dual_map = tuple(pos[d.members] for d in duals)
        for i in range(L):
            for j in range(i, L):
                via_duals = dual(duals[i] & duals[j])
                if pos[via_duals.members] != join[i, j]:
                    raise JoinFormulaMismatch(
                        f"join of {elements[i]!r} and {elements[j]!r}: closure gives "
                        f"{elements[join[i, j]]!r}, dual of meet of duals gives {via_duals!r}")
    for arr in (leq, meet, join):
        arr.setflags(write=False)
    return FCLattice(ring, tuple(elements), leq, meet, join, dual_map)


@dataclass(frozen=True)
class ModularityReport:
    size: int
    violations: tuple[tuple[int, int, int], ...]
    distributive: bool
    complemented: bool
    height: int
    width: int

    @property
    def modular(self) -> bool:
        return not self.violations


def _height(lat: FCLattice) -> int:
    # elements are sorted by size, so strict inclusion implies a smaller index
    longest = [0] * len(lat)
    for j in range(len(lat)):
        below = [longest[i] + 1 for i in range(j) if lat.leq[i, j]]
        longest[j] = max(below, default=0)
    return longest[-1]


def _width(lat: FCLattice) -> int:
    L = len(lat)
    graph = nx.Graph()
    left = [("lo", i) for i in range(L)]
    graph.add_nodes_from(left)
    graph.add_nodes_from(("hi", i) for i in range(L))
    graph.add_edges_from(
        (("lo", i), ("hi", j)) for i in range(L) for j in range(L) if i != j and lat.leq[i, j])
    matching = nx.bipartite.hopcroft_karp_matching(graph, top_nodes=left)
    return L - len(matching) // 2


def check_modularity(lat: FCLattice) -> ModularityReport:
    """Exhaustive modular-law check, plus descriptive lattice statistics."""
    M, J = lat.meet_table, lat.join_table
    idx = np.arange(len(lat))
    # a v (x ^ b)  vs  (a v x) ^ b, indexed [a, b, x]
    lhs = J[idx[:, None, None], M.T[None, :, :]]
    rhs = M[J[:, None, :], idx[None, :, None]]
    bad = np.argwhere((lhs != rhs) & lat.leq[:, :, None])
    # a ^ (b v c)  vs  (a ^ b) v (a ^ c)
    dl = M[idx[:, None, None], J[None, :, :]]
    dr = J[M[:, :, None], M[:, None, :]]
    complemented = all(
        any(M[a, b] == lat.bottom and J[a, b] == lat.top for b in idx) for a in idx)
    return ModularityReport(
        size=len(lat),
        violations=tuple(tuple(int(v) for v in row) for row in bad),
        distributive=bool(np.array_equal(dl, dr)),
        complemented=complemented,
        height=_height(lat),
        width=_width(lat),
    )


@dataclass(frozen=True)
class IntervalReport:
    classes_in_dual: int
    blocks_in_g: int
    classes_refine: bool
    blocks_refine: bool

    @property
    def ok(self) -> bool:
        return self.classes_in_dual == self.blocks_in_g and self.classes_refine and self.blocks_refine


def _is_union_of(parts, pieces) -> bool:
    pieces = [set(p) for p in pieces]
    return all(all(piece <= set(part) or not piece & set(part) for piece in pieces)
               for part in parts)


def interval_counting_check(h: FCSet, g: FCSet) -> IntervalReport:
    """For h inside g: count g-classes in the dual of h and h-blocks in g."""
    if not h <= g:
        raise PreconditionError(f"{h!r} is not contained in {g!r}")
    h_dual = dual(h).members
    g_classes = classes(g).classes
    h_blocks = blocks(h).blocks
    return IntervalReport(
        classes_in_dual=sum(set(c) <= h_dual for c in g_classes),
        blocks_in_g=sum(set(b) <= g.members for b in h_blocks),
        classes_refine=_is_union_of(classes(h).classes, g_classes),
        blocks_refine=_is_union_of(blocks(g).blocks, h_blocks),
    )
