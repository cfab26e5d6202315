"""Locality, twisters, Ramond classes, nilpotency and character-ring properties."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional

from .center import center, central_quotient
from .errors import (
    AmbiguousRamondClass,
    InvariantBreach,
    LocalityCriteriaMismatch,
    MissingSMatrix,
    MissingWeights,
    NoRamondClass,
    NonIntegralInputs,
    PreconditionError,
    RamondCriteriaViolation,
)
from .fcset import FCSet, blocks, classes, dual
from .lattice import FCLattice, enumerate_fcsets

HALF = Fraction(1, 2)


def _weights(g: FCSet) -> tuple[Fraction, ...]:
    if g.ring.weights is None:
        raise MissingWeights(f"{g.ring.name or 'ring'} carries no conformal weights")
    return g.ring.weights


def _is_int(x: Fraction) -> bool:
    return x.denominator == 1


def is_local(g: FCSet) -> bool:
    """g inside its dual; cross-checked against classes being unions of blocks."""
    local = g.members <= dual(g).members
    block_sets = [set(b) for b in blocks(g).blocks]
    unions = all(all(b <= set(c) or not b & set(c) for b in block_sets)
                 for c in classes(g).classes)
    if local != unions:
        raise LocalityCriteriaMismatch(
            f"{g!r}: contained in its dual is {local}, classes are unions of blocks is {unions}")
    return local


def is_twister(g: FCSet) -> bool:
    """All conformal weights in g are integers (which forces locality)."""
    integral = all(_is_int(_weights(g)[a]) for a in g.elements)
    if integral and not is_local(g):
        raise InvariantBreach(f"{g!r} has integral conformal weights but is not local")
    return integral


@dataclass(frozen=True)
class RamondClass:
    index: int
    members: tuple[int, ...]
    boson_blocks: int
    fermion_blocks: int


def ramond_class(g: FCSet) -> RamondClass:
    """The central class of order two whose central quotient is a twister."""
    if not is_local(g):
        raise PreconditionError(f"{g!r} is not local")
    if is_twister(g):
        raise PreconditionError(f"{g!r} is a twister and has no Ramond class")
    h = _weights(g)
    cg = center(g)
    part = cg.partition
    candidates = []
    for z in cg.central:
        if z == cg.identity or cg.multiply(z, z) != cg.identity:
            continue
        q = central_quotient(g, {cg.identity, z}, cg)
        if all(_is_int(h[a]) for a in q.elements):
            candidates.append(z)
    if not candidates:
        raise NoRamondClass(f"no central class of {g!r} has a twister as central quotient")
    if len(candidates) > 1:
        raise AmbiguousRamondClass(f"{g!r}: classes {candidates} all qualify as Ramond class")
    z = candidates[0]
    ramond, trivial = set(part.classes[z]), set(part.trivial)

    for b in blocks(g).blocks:
        inside = set(b) <= ramond
        congruent = all(_is_int(h[p] - h[b[0]]) for p in b)
        if inside != congruent:
            raise RamondCriteriaViolation(
                f"{g!r}: block {b} inside Ramond class is {inside}, "
                f"weights congruent mod 1 is {congruent}")
    bl = blocks(g).blocks
    bosons = sum(set(b) <= trivial for b in bl)
    fermions = sum(set(b) <= ramond for b in bl)
    if bosons != fermions:
        raise RamondCriteriaViolation(
            f"{g!r}: {bosons} blocks in the trivial class but {fermions} in the Ramond class")
    return RamondClass(z, part.classes[z], bosons, fermions)


@dataclass(frozen=True)
class WeightReport:
    violations: tuple[tuple[int, int, int, Fraction], ...]
    not_half_integral: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return not self.violations and not self.not_half_integral


def weight_congruence_report(g: FCSet) -> WeightReport:
    """h_c - h_a - h_b must be an integer whenever c appears in a x b, for a, b in g."""
    h = _weights(g)
    if not is_local(g):
        raise PreconditionError(f"{g!r} is not local")
    bad = []
    elems = g.elements
    for i, a in enumerate(elems):
        for b in elems[i:]:
            for c in g.ring.products(a, b):
                diff = h[c] - h[a] - h[b]
                if not _is_int(diff):
                    bad.append((a, b, c, diff))
    halves = tuple(a for a in elems if not _is_int(h[a] / HALF))
    return WeightReport(tuple(bad), halves)


def is_nilpotent(g: FCSet) -> tuple[bool, list[FCSet]]:
    """Iterate the maximal central quotient; nilpotent iff it reaches the vacuum.

    Returns the chain ``g = g_0 > g_1 > ...`` as far as it goes.
    """
    chain = [g]
    current = g
    while len(current) > 1:
        cg = center(current)
        if cg.order == 1:
            return False, chain
        nxt = central_quotient(current, cg.central, cg)
        if len(nxt) >= len(current):
            raise InvariantBreach(f"central quotient of {current!r} by its center did not shrink")
        chain.append(nxt)
        current = nxt
    return True, chain


def is_integral(g: FCSet) -> bool:
    ring = g.ring
    return all(ring.is_integer(ring.dims[a]) for a in g.elements)


# -- character-ring properties -------------------------------------------------------

@dataclass(frozen=True)
class PropertyCheck:
    prop: int
    subject: str
    passed: Optional[bool]  # None: skipped, quantities not integral
    detail: str


@dataclass(frozen=True)
class PropertyReport:
    fcset: FCSet
    integral: bool
    checks: tuple[PropertyCheck, ...]

    @property
    def mode(self) -> str:
        return "contract" if self.integral else "informational"

    def status(self, prop: int) -> str:
        results = [c.passed for c in self.checks if c.prop == prop]
        if any(r is False for r in results):
            return "fail"
        if any(r is None for r in results):
            return "skipped"
        return "pass"

    @property
    def failures(self) -> list[PropertyCheck]:
        return [c for c in self.checks if c.passed is False]

    @property
    def hard_failures(self) -> list[PropertyCheck]:
        return self.failures if self.integral else []


def verify_character_properties(g: FCSet, strict: bool = False) -> PropertyReport:
    """Evaluate the four divisibility / vanishing properties of character rings.

    They are contracts for integral FC sets and informational otherwise.
    With ``strict`` a non-integral trivial-class extent raises instead of
    marking the divisibility checks as skipped.
    """
    ring = g.ring
    tol = ring.tol
    part = classes(g)
    cg = center(g, part)
    label = ring.label
    top = part.trivial_extent
    top_int = ring.is_integer(top)
    if strict and not top_int:
        raise NonIntegralInputs(f"[[dual]] = {top:.12g} of {g!r} is not an integer")
    T = round(top)
    dims = {a: float(ring.dims[a]) for a in g.elements}
    checks: list[PropertyCheck] = []

    def cls(c):
        return "{" + ",".join(label(p) for p in part.classes[c]) + "}" if part.classes[c] \
            else str(c)

    for c, e in enumerate(part.extents):
        if not top_int:
            checks.append(PropertyCheck(1, cls(c), None, f"[[dual]] = {top:.9g} not integral"))
        elif not ring.is_integer(e):
            checks.append(PropertyCheck(1, cls(c), False, f"extent {e:.9g} not an integer"))
        else:
            ok = T % round(e) == 0
            checks.append(PropertyCheck(1, cls(c), ok, f"{round(e)} | {T}" if ok
                                        else f"{round(e)} does not divide {T}"))

    quotient = top / cg.order
    for a, d in dims.items():
        if not ring.is_integer(quotient):
            if strict:
                raise NonIntegralInputs(f"[[dual]]/|Z| = {quotient:.12g} is not an integer")
            checks.append(PropertyCheck(2, label(a), None, f"[[dual]]/|Z| = {quotient:.9g}"))
        elif not ring.is_integer(d):
            checks.append(PropertyCheck(2, label(a), False, f"d = {d:.9g} not an integer"))
        else:
            ok = round(quotient) % round(d) == 0
            checks.append(PropertyCheck(2, label(a), ok, f"{round(d)} | {round(quotient)}" if ok
                                        else f"{round(d)} does not divide {round(quotient)}"))

    for i, (a, d) in enumerate(dims.items()):
        if d <= 1 + tol:
            continue
        zeros = [c for c in range(len(part)) if abs(part.char_table[i, c]) < tol]
        checks.append(PropertyCheck(3, label(a), bool(zeros),
                                    f"vanishes on {cls(zeros[0])}" if zeros else "never vanishes"))

    for i, (a, d) in enumerate(dims.items()):
        for c, e in enumerate(part.extents):
            ratio = top / e
            if not (ring.is_integer(ratio) and ring.is_integer(d)):
                checks.append(PropertyCheck(4, f"{label(a)}@{cls(c)}", None,
                                            f"[[dual]]/[[C]] = {ratio:.9g}, d = {d:.9g}"))
                continue
            if gcd(round(ratio), round(d)) != 1:
                continue
            v = abs(part.char_table[i, c])
            ok = abs(v - d) <= tol * d or v < tol
            checks.append(PropertyCheck(4, f"{label(a)}@{cls(c)}", ok, f"|alpha(C)| = {v:.9g}"))
    return PropertyReport(g, is_integral(g), tuple(checks))


@dataclass(frozen=True)
class DivisorScan:
    total: int
    witnesses: dict = field(default_factory=dict)

    @property
    def missing(self) -> list[int]:
        return [d for d, w in self.witnesses.items() if not w]


def nilpotent_divisor_scan(g: FCSet, lattice: FCLattice | None = None) -> DivisorScan:
    """For each divisor d of [[dual g]], the FC sets h inside g with [[dual h]] = d."""
    ring = g.ring
    top = classes(g).trivial_extent
    if not ring.is_integer(top):
        raise PreconditionError(f"[[dual]] = {top:.12g} of {g!r} is not an integer")
    if not is_nilpotent(g)[0]:
        raise PreconditionError(f"{g!r} is not nilpotent")
    lattice = lattice or enumerate_fcsets(ring)
    T = round(top)
    spreads = [(h, classes(h).trivial_extent) for h in lattice.below(g)]
    witnesses = {d: tuple(h for h, s in spreads if abs(s - d) <= ring.tol * d)
                 for d in range(1, T + 1) if T % d == 0}
    return DivisorScan(T, witnesses)


# -- profile -------------------------------------------------------------------------

@dataclass(frozen=True)
class LocalityProfile:
    fcset: FCSet
    is_local: Optional[bool]
    is_twister: Optional[bool]
    ramond_class: Optional[int]
    is_nilpotent: bool
    nilpotency_chain: tuple[FCSet, ...]
    is_integral: bool
    property_report: PropertyReport


def locality_profile(g: FCSet) -> LocalityProfile:
    """Everything above for one FC set; ``None`` where the ring lacks the data."""
    try:
        local = is_local(g)
    except MissingSMatrix:
        local = None
    twister = ramond = None
    if local is not None and g.ring.weights is not None:
        twister = is_twister(g)
        if local and not twister:
            ramond = ramond_class(g).index
    nil, chain = is_nilpotent(g)
    return LocalityProfile(
        fcset=g,
        is_local=local,
        is_twister=twister,
        ramond_class=ramond,
        is_nilpotent=nil,
        nilpotency_chain=tuple(chain) if nil else (),
        is_integral=is_integral(g),
        property_report=verify_character_properties(g),
    )


@dataclass(frozen=True)
class LocalMeetJoinReport:
    local: tuple[int, ...]
    meets_local: bool
    nonlocal_joins: tuple[tuple[int, int], ...]


def local_meet_join_report(lat: FCLattice) -> LocalMeetJoinReport:
    """Local FC sets are closed under meets; joins may leave the local ones."""
    local = tuple(i for i, g in enumerate(lat.elements) if is_local(g))
    loc = set(local)
    meets = all(int(lat.meet_table[i, j]) in loc for i in local for j in local)
    joins = tuple((i, j) for i in local for j in local
                  if i < j and int(lat.join_table[i, j]) not in loc)
    return LocalMeetJoinReport(local, meets, joins)


def spread_is_integral(g: FCSet) -> bool:
    return g.ring.is_integer(classes(g).trivial_extent)


def dims_squared_integral(g: FCSet) -> bool:
    ring = g.ring
    return all(ring.is_integer(float(ring.dims[a]) ** 2) for a in g.elements)


__all__ = [
    "DivisorScan",
    "LocalMeetJoinReport",
    "LocalityProfile",
    "PropertyCheck",
    "PropertyReport",
    "RamondClass",
    "WeightReport",
    "dims_squared_integral",
    "is_integral",
    "is_local",
    "is_nilpotent",
    "is_twister",
    "local_meet_join_report",
    "locality_profile",
    "nilpotent_divisor_scan",
    "ramond_class",
    "spread_is_integral",
    "verify_character_properties",
    "weight_congruence_report",
]
