"""FC sets, their classes, duals and blocks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union

import numpy as np

from .errors import (
    BlockClassMismatch,
    InvariantBreach,
    MissingSMatrix,
    NonIntegralOverlap,
    NotFusionClosed,
    OverlapMismatch,
    PreconditionError,
    ToleranceAmbiguity,
)
from .ring import VACUUM, FusionRing

AMBIGUITY_FACTOR = 10.0


def is_fusion_closed(ring: FusionRing, subset: Iterable[int]) -> bool:
    s = sorted(set(subset))
    if VACUUM not in s:
        return False
    inside = np.zeros(ring.n, dtype=bool)
    inside[s] = True
    reach = ring.fusion[np.ix_(s, s)].sum(axis=(0, 1)) > 0
    return bool(np.all(inside[reach]))


@dataclass(frozen=True, eq=False)
class FCSet:
    """A vacuum-containing, fusion-closed set of primaries of ``ring``."""

    ring: FusionRing = field(repr=False)
    members: frozenset

    def __post_init__(self):
        m = frozenset(int(x) for x in self.members)
        object.__setattr__(self, "members", m)
        bad = [x for x in m if not 0 <= x < self.ring.n]
        if bad:
            raise PreconditionError(f"primaries {sorted(bad)} out of range [0, {self.ring.n})")
        if not is_fusion_closed(self.ring, m):
            raise NotFusionClosed(f"{sorted(m)} is not a fusion-closed set containing the vacuum")

    @property
    def elements(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    @property
    def key(self) -> tuple:
        return (len(self.members), self.elements)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, p) -> bool:
        return p in self.members

    def __eq__(self, other) -> bool:
        if not isinstance(other, FCSet):
            return NotImplemented
        return self.ring is other.ring and self.members == other.members

    def __hash__(self) -> int:
        return hash(self.members)

    def __le__(self, other: "FCSet") -> bool:
        return self.members <= other.members

    def __lt__(self, other: "FCSet") -> bool:
        return self.members < other.members

    def __and__(self, other: "FCSet") -> "FCSet":
        return FCSet(self.ring, self.members & other.members)

    def __repr__(self) -> str:
        return "{" + ",".join(self.ring.label(p) for p in self.elements) + "}"


def trivial_fcset(ring: FusionRing) -> FCSet:
    return FCSet(ring, {VACUUM})


def full_fcset(ring: FusionRing) -> FCSet:
    return FCSet(ring, range(ring.n))


def closure(ring: FusionRing, seed: Iterable[int]) -> FCSet:
    """Smallest FC set containing ``seed``."""
    current = {VACUUM, *map(int, seed)}
    if not all(0 <= p < ring.n for p in current):
        return FCSet(ring, current)  # raises with the offending indices
    inside = np.zeros(ring.n, dtype=bool)
    inside[list(current)] = True
    support = ring.fusion > 0
    while True:
        idx = np.flatnonzero(inside)
        grown = inside | support[np.ix_(idx, idx)].any(axis=(0, 1))
        if np.array_equal(grown, inside):
            return FCSet(ring, np.flatnonzero(inside).tolist())
        inside = grown


def extent(ring: FusionRing, subset: Iterable[int]) -> float:
    """``sum_p d_p^2 / sum_{p in subset} d_p^2`` for a non-empty set of primaries."""
    idx = sorted(set(subset))
    if not idx:
        raise PreconditionError("extent of an empty set is undefined")
    return ring.total_dim_sq / float(np.sum(ring.dims[idx] ** 2))


# -- classes -------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ClassPartition:
    """Partition of the character rows into g-classes.

    With an S-matrix the rows are primaries, so ``classes`` partitions the
    primaries.  ``char_table[i, c]`` is the value of the i-th element of
    ``owner`` (in sorted order) on class ``c``.
    """

    owner: FCSet
    classes: tuple[tuple[int, ...], ...]
    char_table: np.ndarray
    extents: np.ndarray
    class_of: tuple[int, ...]
    trivial_class_index: int = 0

    @property
    def trivial(self) -> tuple[int, ...]:
        return self.classes[self.trivial_class_index]

    @property
    def trivial_extent(self) -> float:
        return float(self.extents[self.trivial_class_index])

    def __len__(self) -> int:
        return len(self.classes)

    def value(self, alpha: int, c: int) -> complex:
        return complex(self.char_table[self.owner.elements.index(alpha), c])

    def column(self, c: int) -> np.ndarray:
        return self.char_table[:, c]


def _group_rows(vectors: np.ndarray, tol: float) -> list[list[int]]:
    dist = np.abs(vectors[:, None, :] - vectors[None, :, :]).max(axis=2, initial=0.0)
    ambiguous = np.argwhere((dist > tol) & (dist <= AMBIGUITY_FACTOR * tol))
    if len(ambiguous):
        i, j = ambiguous[0]
        raise ToleranceAmbiguity(
            f"character rows {i} and {j} differ by {dist[i, j]:.3g}, inside the guard band "
            f"({tol:.1g}, {AMBIGUITY_FACTOR * tol:.1g}]; adjust the tolerance")
    groups: list[list[int]] = []
    for i in range(len(vectors)):
        for grp in groups:
            if dist[grp[0], i] <= tol:
                grp.append(i)
                break
        else:
            groups.append([i])
    for grp in groups:
        if dist[np.ix_(grp, grp)].max() > tol:
            raise ToleranceAmbiguity(f"rows {grp} are not uniformly close; adjust the tolerance")
    return groups


def classes(g: FCSet) -> ClassPartition:
    ring = g.ring
    table = ring.characters
    cols = list(g.elements)
    restricted = table.chars[:, cols]
    groups = _group_rows(restricted, ring.tol)
    if len(groups) != len(g):
        raise InvariantBreach(f"{g!r} has {len(groups)} classes but {len(g)} elements")
    class_of = [0] * table.size
    for c, grp in enumerate(groups):
        for i in grp:
            class_of[i] = c
    char_table = np.array([restricted[grp[0]] for grp in groups]).T
    char_table.setflags(write=False)
    extents = np.array([ring.total_dim_sq / table.formal_dims_sq[grp].sum() for grp in groups])
    extents.setflags(write=False)
    spread = float(np.sum(ring.dims[cols] ** 2))
    if abs(extents[0] - spread) > ring.tol * spread:
        raise InvariantBreach(
            f"trivial class extent {extents[0]!r} differs from sum of d^2 over {g!r} ({spread!r})")
    return ClassPartition(
        owner=g,
        classes=tuple(tuple(grp) for grp in groups),
        char_table=char_table,
        extents=extents,
        class_of=tuple(class_of),
    )


def _require_labelled(ring: FusionRing, what: str) -> None:
    if not ring.characters.labelled:
        raise MissingSMatrix(
            f"{what} needs characters labelled by primaries; {ring.name or 'this ring'} "
            "has no S-matrix")


def dual(g: FCSet) -> FCSet:
    """The trivial class of ``g``, itself an FC set."""
    _require_labelled(g.ring, "the dual")
    trivial = classes(g).trivial
    try:
        return FCSet(g.ring, trivial)
    except NotFusionClosed as exc:
        raise InvariantBreach(f"trivial class of {g!r} is not fusion closed") from exc


# -- blocks --------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class BlockPartition:
    owner: FCSet
    blocks: tuple[tuple[int, ...], ...]
    block_of: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.blocks)


def _components(n: int, edges: Iterable[tuple[int, int]]) -> list[list[int]]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p, q in edges:
        rp, rq = find(p), find(q)
        if rp != rq:
            parent[max(rp, rq)] = min(rp, rq)
    comps: dict[int, list[int]] = {}
    for x in range(n):
        comps.setdefault(find(x), []).append(x)
    return sorted(comps.values(), key=lambda c: c[0])


def blocks(g: FCSet, *, cross_check: bool = True) -> BlockPartition:
    """Connected components of the primaries under fusion with elements of g."""
    ring = g.ring
    reach = ring.fusion[list(g.elements)].sum(axis=0) > 0
    comps = _components(ring.n, map(tuple, np.argwhere(reach)))
    block_of = [0] * ring.n
    for i, comp in enumerate(comps):
        for p in comp:
            block_of[p] = i
    part = BlockPartition(g, tuple(tuple(c) for c in comps), tuple(block_of))
    if cross_check and ring.characters.labelled:
        expected = classes(dual(g)).classes
        if expected != part.blocks:
            raise BlockClassMismatch(
                f"blocks of {g!r} {part.blocks} differ from classes of its dual {expected}")
    return part


# -- orthogonality ---------------------------------------------------------------

@dataclass(frozen=True)
class OrthogonalityReport:
    row_residual: float
    column_residual: float

    @property
    def max_residual(self) -> float:
        return max(self.row_residual, self.column_residual)


def orthogonality_report(g: FCSet, part: ClassPartition | None = None) -> OrthogonalityReport:
    part = part or classes(g)
    A = part.char_table
    rows = (A / part.extents[None, :]) @ A.conj().T - np.eye(A.shape[0])
    cols = A.T @ A.conj() - np.diag(part.extents)
    return OrthogonalityReport(float(np.abs(rows).max()), float(np.abs(cols).max()))


# -- block representations and overlaps -------------------------------------------

def block_representation(g: FCSet, b: Iterable[int]) -> dict[int, np.ndarray]:
    """Fusion matrices of the elements of g restricted to the block ``b``."""
    ring = g.ring
    b = sorted(set(b))
    outside = [p for p in ring.primaries if p not in b]
    for a in g.elements:
        if outside and ring.fusion[a][np.ix_(b, outside)].any():
            raise PreconditionError(f"{b} is not stable under fusion with {ring.label(a)}")
    rep = {a: ring.fusion[a][np.ix_(b, b)].astype(np.int64) for a in g.elements}
    for a in g.elements:
        for c in g.elements:
            expected = sum(ring.fusion[a, c, e] * rep[e] for e in g.elements)
            if not np.array_equal(rep[a] @ rep[c], expected):
                raise InvariantBreach(f"restriction to {b} is not multiplicative at ({a}, {c})")
    return rep


ClassRef = Union[int, Iterable[int]]


def _class_index(part: ClassPartition, c: ClassRef) -> int:
    if isinstance(c, (int, np.integer)):
        return int(c)
    members = tuple(sorted(set(c)))
    try:
        return part.classes.index(members)
    except ValueError:
        raise PreconditionError(f"{members} is not a class of {part.owner!r}") from None


def _multiplicity(g: FCSet, part: ClassPartition, b: list[int], c: int) -> complex:
    traces = np.array([np.trace(g.ring.fusion[a][np.ix_(b, b)]) for a in g.elements], dtype=float)
    return complex(traces @ part.column(c).conj()) / part.extents[c]


def overlap(g: FCSet, b: Iterable[int], c: ClassRef, part: ClassPartition | None = None) -> int:
    """Multiplicity of the class character of ``c`` in the block representation of ``b``.

    Computed from traces and the orthogonality relations, and, when the ring
    has an S-matrix, also as the sum of ``|S_pq|^2`` over the rectangle.
    """
    ring = g.ring
    part = part or classes(g)
    b = sorted(set(b))
    ci = _class_index(part, c)
    mult = _multiplicity(g, part, b, ci)
    m = round(mult.real)
    if abs(mult - m) > ring.tol or m < 0:
        raise NonIntegralOverlap(f"multiplicity of class {ci} in block {b} is {mult:.6g}")
    if ring.smatrix is not None:
        s = float(np.sum(np.abs(ring.smatrix[np.ix_(b, part.classes[ci])]) ** 2))
        if abs(s - round(s)) > ring.tol:
            raise NonIntegralOverlap(f"S-matrix overlap of {b} with class {ci} is {s!r}")
        if round(s) != m:
            raise OverlapMismatch(
                f"block {b}, class {part.classes[ci]}: S-matrix route gives {s:.6g}, "
                f"multiplicity route gives {m}")
    return int(m)


def overlap_matrix(g: FCSet) -> np.ndarray:
    part = classes(g)
    bl = blocks(g)
    return np.array([[overlap(g, b, c, part) for c in range(len(part))] for b in bl.blocks],
                    dtype=np.int64)
