"""Independent reference computations used to freeze expected values.

None of these import the package under test except to hand raw arrays back
to it; they use plain Python loops or exact sympy arithmetic.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
import sympy as sp


def brute_force_fcsets(N: np.ndarray) -> set[frozenset]:
    """Every vacuum-containing subset closed under fusion, by exhaustive search."""
    n = N.shape[0]
    found = set()
    for mask in range(1 << (n - 1)):
        s = {0} | {i + 1 for i in range(n - 1) if mask >> i & 1}
        closed = all(r in s for p in s for q in s for r in range(n) if N[p][q][r] > 0)
        if closed:
            found.add(frozenset(s))
    return found


def pointed_fusion(orders) -> np.ndarray:
    """Fusion tensor of the group ring of Z_{m1} x Z_{m2} x ... (mixed-radix labels)."""
    elems = list(itertools.product(*[range(m) for m in orders]))
    index = {e: i for i, e in enumerate(elems)}
    n = len(elems)
    N = np.zeros((n, n, n), dtype=np.int64)
    for a, b in itertools.product(elems, repeat=2):
        c = tuple((x + y) % m for x, y, m in zip(a, b, orders))
        N[index[a], index[b], index[c]] = 1
    return N


def pointed_smatrix(orders) -> np.ndarray:
    """Character-pairing S-matrix of a product of cyclic groups (a unitary, symmetric S)."""
    elems = list(itertools.product(*[range(m) for m in orders]))
    n = len(elems)
    S = np.empty((n, n), dtype=complex)
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            phase = sum(Fraction(x * y, m) for x, y, m in zip(a, b, orders))
            S[i, j] = np.exp(2j * np.pi * float(phase))
    return S / np.sqrt(n)


def subgroup_count(orders) -> int:
    """Number of subgroups of a finite abelian group, by brute force on generated subgroups."""
    elems = list(itertools.product(*[range(m) for m in orders]))

    def add(a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, orders))

    zero = tuple(0 for _ in orders)
    found = {frozenset({zero})}
    frontier = list(found)
    while frontier:
        nxt = []
        for H in frontier:
            for g in elems:
                if g in H:
                    continue
                K = set(H)
                while True:
                    new = {add(h, g) for h in K} | K
                    if new == K:
                        break
                    K = new
                K = frozenset(K)
                if K not in found:
                    found.add(K)
                    nxt.append(K)
        frontier = nxt
    return len(found)


# -- exact modular data -----------------------------------------------------------

def ising_exact():
    r2 = sp.sqrt(2)
    S = sp.Rational(1, 2) * sp.Matrix([[1, 1, r2], [1, 1, -r2], [r2, -r2, 0]])
    return S


def toric_exact():
    """Charges 1, e, m, f as (e-charge, m-flux); S_ab = (-1)^(a_e b_m + a_m b_e) / 2."""
    anyons = [(0, 0), (1, 0), (0, 1), (1, 1)]
    return sp.Matrix(4, 4, lambda i, j: sp.Rational(1, 2) * (-1) ** (
        anyons[i][0] * anyons[j][1] + anyons[i][1] * anyons[j][0]))


def exact_classes(S: sp.Matrix, members):
    """Classes and extents from exact characters S_ap / S_0p restricted to ``members``."""
    n = S.shape[0]
    rows = {}
    for p in range(n):
        key = tuple(sp.nsimplify(sp.simplify(S[a, p] / S[0, p])) for a in sorted(members))
        rows.setdefault(key, []).append(p)
    dims = [sp.simplify(S[0, p] / S[0, 0]) for p in range(n)]
    total = sp.simplify(sum(d**2 for d in dims))
    out = []
    for grp in rows.values():
        out.append((tuple(grp), sp.simplify(total / sum(dims[p] ** 2 for p in grp))))
    return sorted(out)


# -- S3 ---------------------------------------------------------------------------

S3_CLASS_SIZES = {"e": 1, "transpositions": 3, "three-cycles": 2}
S3_ORDER = 6

# standard fusion table of the quantum double of S3 (A, B, C: pure charges;
# D, E: transposition fluxes; F, G, H: three-cycle fluxes)
DOUBLE_S3_TABLE = {
    ("B", "B"): "A", ("B", "C"): "C", ("B", "D"): "E", ("B", "E"): "D",
    ("B", "F"): "F", ("B", "G"): "G", ("B", "H"): "H",
    ("C", "C"): "A+B+C", ("C", "D"): "D+E", ("C", "E"): "D+E",
    ("C", "F"): "G+H", ("C", "G"): "F+H", ("C", "H"): "F+G",
    ("D", "D"): "A+C+F+G+H", ("D", "E"): "B+C+F+G+H",
    ("D", "F"): "D+E", ("D", "G"): "D+E", ("D", "H"): "D+E",
    ("E", "E"): "A+C+F+G+H", ("E", "F"): "D+E", ("E", "G"): "D+E", ("E", "H"): "D+E",
    ("F", "F"): "A+B+F", ("F", "G"): "C+H", ("F", "H"): "C+G",
    ("G", "G"): "A+B+G", ("G", "H"): "C+F", ("H", "H"): "A+B+H",
}

# (conjugacy class size) * (centralizer irrep degree) for A..H
DOUBLE_S3_DIMS = (1 * 1, 1 * 1, 1 * 2, 3 * 1, 3 * 1, 2 * 1, 2 * 1, 2 * 1)
