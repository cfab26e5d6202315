"""Centers, central quotients and central extensions of FC sets."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import prod
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    AbelianCriteriaMismatch,
    CenterCriteriaMismatch,
    IllDefinedAction,
    InvariantBreach,
    NoSuchExtension,
    NotASubgroup,
    NotFusionClosed,
    QuotientDualMismatch,
)
from .fcset import ClassPartition, FCSet, classes, dual

Subgroup = frozenset


@dataclass(frozen=True, eq=False)
class CenterGroup:
    """The abelian group of central classes of an FC set.

    Group elements are class indices of ``partition``; ``action`` maps
    ``(z, C)`` to the class ``zC`` for every central ``z`` and every class ``C``.
    """

    owner: FCSet
    partition: ClassPartition = field(repr=False)
    central: tuple[int, ...]
    action: dict = field(repr=False)
    inverse: dict = field(repr=False)
    identity: int = 0

    @property
    def order(self) -> int:
        return len(self.central)

    @property
    def elements(self) -> Subgroup:
        return frozenset(self.central)

    def multiply(self, a: int, b: int) -> int:
        return self.action[a, b]

    def power(self, z: int, k: int) -> int:
        out = self.identity
        for _ in range(k):
            out = self.multiply(out, z)
        return out

    def element_order(self, z: int) -> int:
        k, x = 1, z
        while x != self.identity:
            x = self.multiply(x, z)
            k += 1
        return k

    def generate(self, gens: Iterable[int]) -> Subgroup:
        """Subgroup generated by ``gens``."""
        gens = list(gens)
        for z in gens:
            if z not in self.central:
                raise NotASubgroup(f"class {z} is not central in {self.owner!r}")
        group = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for z in gens:
                    y = self.multiply(x, z)
                    if y not in group:
                        group.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(group)

    def is_subgroup(self, Z: Iterable[int]) -> bool:
        Z = set(Z)
        if self.identity not in Z or not Z <= set(self.central):
            return False
        return all(self.multiply(a, b) in Z for a in Z for b in Z)

    def invariant_factors(self, Z: Iterable[int] | None = None) -> tuple[int, ...]:
        Z = self.elements if Z is None else frozenset(Z)
        return _invariant_factors_of(Z, self)


def _class_matching(part: ClassPartition, column: np.ndarray, tol: float) -> list[int]:
    scale = max(1.0, float(np.abs(part.char_table).max()))
    dist = np.abs(part.char_table - column[:, None]).max(axis=0)
    return [int(c) for c in np.flatnonzero(dist <= tol * scale)]


def center(g: FCSet, part: ClassPartition | None = None) -> CenterGroup:
    """Classes of maximal extent, with multiplication and action on classes.

    Centrality is decided both by extent and by ``|alpha(z)| = d_alpha``.
    The action ``zC`` is computed from characters (``alpha(zC) =
    alpha(z) alpha(C) / d_alpha``) and, with an S-matrix, also by fusing
    representatives; every choice of representatives must agree.
    """
    ring = g.ring
    tol = ring.tol
    part = part or classes(g)
    d = ring.dims[list(g.elements)]
    top = part.trivial_extent
    by_extent = {c for c in range(len(part)) if abs(part.extents[c] - top) <= tol * top}
    by_chars = {c for c in range(len(part))
                if np.all(np.abs(np.abs(part.column(c)) - d) <= tol * d)}
    if by_extent != by_chars:
        raise CenterCriteriaMismatch(
            f"{g!r}: classes of maximal extent {sorted(by_extent)} differ from classes with "
            f"|alpha(z)| = d_alpha {sorted(by_chars)}")
    central = tuple(sorted(by_extent))

    action = {}
    for z in central:
        phase = part.column(z) / d
        for c in range(len(part)):
            hits = _class_matching(part, phase * part.column(c), tol)
            if len(hits) != 1:
                raise IllDefinedAction(f"{g!r}: class {z} times class {c} matches classes {hits}")
            action[z, c] = hits[0]

    inverse = {}
    for z in central:
        hits = _class_matching(part, part.column(z).conj(), tol)
        if len(hits) != 1:
            raise IllDefinedAction(f"{g!r}: no unique inverse for central class {z}")
        inverse[z] = hits[0]

    if ring.characters.labelled:
        _check_product_rule(g, part, central, action, inverse)

    for a in central:
        if action[a, inverse[a]] != part.trivial_class_index:
            raise InvariantBreach(f"{g!r}: z * z^-1 is not trivial for class {a}")
        for b in central:
            if action[a, b] not in central or action[a, b] != action[b, a]:
                raise InvariantBreach(f"{g!r}: central classes {a}, {b} do not multiply as a group")
    return CenterGroup(g, part, central, action, inverse, part.trivial_class_index)


def _check_product_rule(g, part, central, action, inverse) -> None:
    ring = g.ring
    for z in central:
        for c, members in enumerate(part.classes):
            landed = {part.class_of[r]
                      for p in members for q in part.classes[z] for r in ring.products(p, q)}
            if landed != {action[z, c]}:
                raise IllDefinedAction(
                    f"{g!r}: fusing class {c} with central class {z} lands in classes "
                    f"{sorted(landed)}, characters predict {action[z, c]}")
        conj_classes = {part.class_of[ring.conj[p]] for p in part.classes[z]}
        if conj_classes != {inverse[z]}:
            raise IllDefinedAction(f"{g!r}: conjugates of class {z} lie in {sorted(conj_classes)}")


def is_abelian(g: FCSet) -> bool:
    cg = center(g)
    all_central = cg.order == len(cg.partition)
    simple_currents = all(abs(g.ring.dims[a] - 1) <= g.ring.tol for a in g.elements)
    if all_central != simple_currents:
        raise AbelianCriteriaMismatch(
            f"{g!r}: all classes central is {all_central}, all dimensions 1 is {simple_currents}")
    return all_central


# -- abelian group bookkeeping --------------------------------------------------

def _factorize(n: int) -> Counter:
    out = Counter()
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] += 1
            n //= p
        p += 1
    if n > 1:
        out[n] += 1
    return out


def _from_elementary(divisors: dict[int, list[int]]) -> tuple[int, ...]:
    """Prime -> exponents  to  invariant factors d1 | d2 | ... (ascending)."""
    length = max((len(v) for v in divisors.values()), default=0)
    factors = []
    for i in range(length):
        factors.append(prod(p ** sorted(exps, reverse=True)[i]
                            for p, exps in divisors.items() if i < len(exps)))
    return tuple(sorted(factors))


def invariant_factors(cyclic_orders: Sequence[int]) -> tuple[int, ...]:
    """Invariant factors of a direct product of cyclic groups of the given orders."""
    divisors: dict[int, list[int]] = {}
    for m in cyclic_orders:
        if m < 1:
            raise ValueError(f"cyclic order must be positive, got {m}")
        for p, e in _factorize(m).items():
            divisors.setdefault(p, []).append(e)
    return _from_elementary(divisors)


def _invariant_factors_of(Z: Subgroup, cg: CenterGroup) -> tuple[int, ...]:
    n = len(Z)
    divisors: dict[int, list[int]] = {}
    for p, top in _factorize(n).items():
        # rank of the p^k-torsion gives the number of p-divisors of exponent >= k
        log_sizes = [0]
        for k in range(1, top + 1):
            size = sum(cg.power(z, p**k) == cg.identity for z in Z)
            log_sizes.append(round(np.log(size) / np.log(p)))
        at_least = [log_sizes[k] - log_sizes[k - 1] for k in range(1, top + 1)]
        exps = []
        for k in range(1, top + 1):
            more = at_least[k] if k < top else 0
            exps.extend([k] * (at_least[k - 1] - more))
        divisors[p] = exps
    return _from_elementary(divisors)


def subgroups(cg: CenterGroup) -> list[Subgroup]:
    """All subgroups, ordered by size then by sorted elements."""
    found = {frozenset({cg.identity})}
    frontier = list(found)
    while frontier:
        nxt = []
        for H in frontier:
            for z in cg.central:
                if z in H:
                    continue
                K = cg.generate(H | {z})
                if K not in found:
                    found.add(K)
                    nxt.append(K)
        frontier = nxt
    return sorted(found, key=lambda H: (len(H), sorted(H)))


# -- quotients and extensions -----------------------------------------------------

def central_quotient(g: FCSet, Z: Iterable[int], cg: CenterGroup | None = None) -> FCSet:
    """Elements of g on which every class in Z takes its dimension value."""
    cg = cg or center(g)
    Z = frozenset(Z)
    if not cg.is_subgroup(Z):
        raise NotASubgroup(f"{sorted(Z)} is not a subgroup of the center of {g!r}")
    ring, part = g.ring, cg.partition
    members = []
    for i, a in enumerate(g.elements):
        d = ring.dims[a]
        if all(abs(part.char_table[i, z] - d) <= ring.tol * d for z in Z):
            members.append(a)
    try:
        q = FCSet(ring, members)
    except NotFusionClosed as exc:
        raise InvariantBreach(f"central quotient of {g!r} by {sorted(Z)} is not closed") from exc
    if ring.characters.labelled:
        union = frozenset(p for z in Z for p in part.classes[z])
        if dual(q).members != union:
            raise QuotientDualMismatch(
                f"dual of {q!r} is {dual(q)!r}, but the classes of {sorted(Z)} cover {sorted(union)}")
    return q


def quotient_subgroup(cg: CenterGroup, h: FCSet) -> Subgroup | None:
    """The subgroup H of the center with owner/H == h, if there is one."""
    for H in subgroups(cg):
        if central_quotient(cg.owner, H, cg) == h:
            return H
    return None


def central_extensions(g: FCSet, cyclic_orders: Sequence[int]) -> list[FCSet]:
    """All A-extensions of g, one per subgroup of Z(dual g) isomorphic to A."""
    target = invariant_factors(cyclic_orders)
    gd = dual(g)
    cgd = center(gd)
    out = []
    for Zp in subgroups(cgd):
        if cgd.invariant_factors(Zp) != target:
            continue
        h = dual(central_quotient(gd, Zp, cgd))
        ch = center(h)
        if not any(ch.invariant_factors(H) == target and central_quotient(h, H, ch) == g
                   for H in subgroups(ch)):
            raise InvariantBreach(f"{g!r} is not a central quotient of its extension {h!r}")
        out.append(h)
    if not out:
        raise NoSuchExtension(
            f"the center of the dual of {g!r} has no subgroup with invariant factors {target}")
    return out


def maximal_central_extension(g: FCSet) -> FCSet:
    gd = dual(g)
    cgd = center(gd)
    h = dual(central_quotient(gd, cgd.central, cgd))
    if quotient_subgroup(center(h), g) is None:
        raise InvariantBreach(f"{g!r} is not a central quotient of {h!r}")
    return h
