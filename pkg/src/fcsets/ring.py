"""Fusion rings: validation, quantum dimensions and Verlinde characters."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    AssociativityViolation,
    CommutativityViolation,
    ConjugationViolation,
    DegenerateSpectrum,
    DimensionViolation,
    NegativeEntry,
    NonIntegerEntry,
    SMatrixInconsistent,
    SMatrixViolation,
    UnitViolation,
)

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-9
VACUUM = 0


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


def round_key(values: Iterable[complex], tol: float) -> tuple:
    """Hashable, sign-of-zero-free rounding of a complex vector."""
    digits = max(1, int(round(-np.log10(tol))) - 2)
    key = []
    for v in values:
        v = complex(v)
        key.append(round(v.real, digits) + 0.0)
        key.append(round(v.imag, digits) + 0.0)
    return tuple(key)


@dataclass(frozen=True, eq=False)
class CharacterTable:
    """One-dimensional characters of the Verlinde algebra.

    ``chars[i, a]`` is the value of the i-th character on the fusion matrix
    of primary ``a``.  When the ring carries an S-matrix the rows are
    labelled by primaries (``labelled`` is true and row ``p`` belongs to
    primary ``p``).  Otherwise rows are abstract, in canonical order with the
    dimension character first.
    """

    chars: np.ndarray
    labelled: bool
    formal_dims_sq: np.ndarray
    tol: float

    @property
    def size(self) -> int:
        return self.chars.shape[0]

    def plancherel_weights(self) -> np.ndarray:
        """``1 / sum_a |chi(a)|^2`` for every character row."""
        return 1.0 / np.sum(np.abs(self.chars) ** 2, axis=1)


@dataclass(frozen=True, eq=False)
class FusionRing:
    fusion: np.ndarray
    conj: tuple[int, ...]
    dims: np.ndarray
    total_dim_sq: float
    characters: CharacterTable
    smatrix: Optional[np.ndarray] = None
    weights: Optional[tuple[Fraction, ...]] = None
    labels: tuple[str, ...] = ()
    name: str = ""
    tol: float = DEFAULT_TOL
    seed: int = 0
    warnings: tuple[str, ...] = field(default=())

    vacuum = VACUUM

    @property
    def n(self) -> int:
        return self.fusion.shape[0]

    @property
    def modular(self) -> bool:
        return self.smatrix is not None

    @property
    def primaries(self) -> range:
        return range(self.n)

    def label(self, p: int) -> str:
        return self.labels[p] if self.labels else str(p)

    def fusion_matrix(self, p: int) -> np.ndarray:
        return fusion_matrix(self, p)

    def products(self, p: int, q: int) -> tuple[int, ...]:
        """Primaries r with N_pq^r > 0."""
        return tuple(int(r) for r in np.flatnonzero(self.fusion[p, q]))

    def is_integer(self, x: float) -> bool:
        return abs(x - round(x)) < self.tol

    def __repr__(self) -> str:
        return f"FusionRing({self.name or '?'}, n={self.n})"


def fusion_matrix(ring: FusionRing, p: int) -> np.ndarray:
    """N(p) with ``[N(p)]_q^r = N_pq^r`` (row q, column r)."""
    return np.array(ring.fusion[p], dtype=np.int64)


# -- validation ---------------------------------------------------------------

def _check_tensor(fusion) -> np.ndarray:
    raw = np.asarray(fusion)
    if raw.ndim != 3 or len(set(raw.shape)) != 1 or raw.shape[0] == 0:
        raise NonIntegerEntry(f"fusion tensor must have shape (n, n, n), got {raw.shape}")
    if not np.issubdtype(raw.dtype, np.integer):
        as_float = raw.astype(float)
        bad = np.argwhere(as_float != np.round(as_float))
        if len(bad):
            p, q, r = bad[0]
            raise NonIntegerEntry(f"N[{p}][{q}][{r}] = {raw[p, q, r]} is not an integer")
    t = raw.astype(np.int64)
    neg = np.argwhere(t < 0)
    if len(neg):
        p, q, r = neg[0]
        raise NegativeEntry(f"N[{p}][{q}][{r}] = {t[p, q, r]} is negative")
    return t


def _check_axioms(N: np.ndarray) -> tuple[int, ...]:
    n = N.shape[0]
    eye = np.eye(n, dtype=np.int64)
    for q, r in np.argwhere(N[VACUUM] != eye):
        raise UnitViolation(f"N[0][{q}][{r}] = {N[0, q, r]}, expected {int(q == r)}")
    asym = np.argwhere(N != N.transpose(1, 0, 2))
    if len(asym):
        p, q, r = asym[0]
        raise CommutativityViolation(
            f"N[{p}][{q}][{r}] = {N[p, q, r]} but N[{q}][{p}][{r}] = {N[q, p, r]}")
    conj = []
    for p in range(n):
        duals = np.flatnonzero(N[p, :, VACUUM])
        if len(duals) != 1 or N[p, duals[0], VACUUM] != 1:
            raise ConjugationViolation(
                f"primary {p}: N[{p}][q][0] nonzero for q in {duals.tolist()} "
                f"(values {N[p, duals, VACUUM].tolist()}); need exactly one q with value 1")
        conj.append(int(duals[0]))
    # (p q) r  vs  p (q r)
    left = np.einsum("pqs,srt->pqrt", N, N)
    right = np.einsum("qrs,pst->pqrt", N, N)
    bad = np.argwhere(left != right)
    if len(bad):
        p, q, r, t = bad[0]
        raise AssociativityViolation(
            f"(N({p}) N({q})) N({r}) and N({p}) (N({q}) N({r})) differ at output {t}: "
            f"{left[p, q, r, t]} != {right[p, q, r, t]}")
    return tuple(conj)


def perron_frobenius_dims(N: np.ndarray) -> np.ndarray:
    """Spectral radius of every fusion matrix."""
    return np.array([max(abs(np.linalg.eigvals(N[p].astype(float)))) for p in range(N.shape[0])])


def _check_dims(N: np.ndarray, dims: np.ndarray, tol: float) -> None:
    n = N.shape[0]
    for p in range(n):
        for q in range(n):
            lhs = float(N[p, q] @ dims)
            rhs = dims[p] * dims[q]
            if abs(lhs - rhs) > tol * rhs:
                raise DimensionViolation(
                    f"sum_r N[{p}][{q}][r] d_r = {lhs!r} but d_{p} d_{q} = {rhs!r}")


def _check_smatrix(S: np.ndarray, dims: np.ndarray, tol: float) -> None:
    n = len(dims)
    if S.shape != (n, n):
        raise SMatrixViolation(f"S-matrix has shape {S.shape}, expected {(n, n)}")
    unit = np.abs(S @ S.conj().T - np.eye(n))
    if unit.max() > tol:
        p, q = np.unravel_index(np.argmax(unit), unit.shape)
        raise SMatrixViolation(f"S is not unitary: (S S^dagger)[{p}][{q}] off by {unit[p, q]:.3g}")
    sym = np.abs(S - S.T)
    if sym.max() > tol:
        p, q = np.unravel_index(np.argmax(sym), sym.shape)
        raise SMatrixViolation(f"S is not symmetric: S[{p}][{q}] != S[{q}][{p}]")
    if abs(S[0, 0].imag) > tol or S[0, 0].real <= tol:
        raise SMatrixViolation(f"S[0][0] = {S[0, 0]} must be real and positive")
    ratio = S[0] / S[0, 0]
    for p in range(n):
        if abs(ratio[p] - dims[p]) > tol * max(1.0, dims[p]):
            raise SMatrixViolation(
                f"S[0][{p}]/S[0][0] = {ratio[p]:.12g} disagrees with the Perron-Frobenius "
                f"dimension d_{p} = {dims[p]:.12g}")


def _characters_from_smatrix(N, S, dims, tol) -> CharacterTable:
    n = N.shape[0]
    chars = (S / S[0][None, :]).T  # chars[p, a] = S[a, p] / S[0, p]
    worst = 0.0
    for a in range(n):
        resid = N[a].astype(float) @ S - S * chars[:, a][None, :]
        worst = max(worst, float(np.abs(resid).max()))
    if worst > tol * max(1.0, float(dims.max())):
        raise SMatrixInconsistent(
            f"columns of S are not joint eigenvectors of the fusion matrices "
            f"(max residual {worst:.3g})")
    return CharacterTable(_frozen(chars), True, _frozen(dims**2), tol)


def _characters_from_fusion(N, dims, tol, seed, attempts: int = 12) -> CharacterTable:
    n = N.shape[0]
    mats = N.astype(float)
    rng = np.random.default_rng(seed)
    separation = max(1e-6, 100 * tol)
    for attempt in range(attempts):
        coeffs = rng.standard_normal(n)
        combo = np.tensordot(coeffs, mats, axes=1)
        vals, vecs = np.linalg.eig(combo)
        gaps = np.abs(vals[:, None] - vals[None, :])
        np.fill_diagonal(gaps, np.inf)
        if n > 1 and gaps.min() < separation:
            log.debug("attempt %d: eigenvalues collide (gap %.3g), retrying", attempt, gaps.min())
            continue
        vecs = vecs / np.linalg.norm(vecs, axis=0)[None, :]
        chars = np.einsum("iv,aij,jv->va", vecs.conj(), mats, vecs)
        resid = max(
            float(np.abs(mats[a] @ vecs - vecs * chars[:, a][None, :]).max()) for a in range(n))
        if resid > tol:
            log.debug("attempt %d: eigenvector residual %.3g, retrying", attempt, resid)
            continue
        break
    else:
        raise DegenerateSpectrum(
            f"could not separate the joint eigenspaces after {attempts} random combinations")

    dim_row = int(np.argmin(np.abs(chars - dims[None, :]).max(axis=1)))
    if np.abs(chars[dim_row] - dims).max() > tol * max(1.0, float(dims.max())):
        raise DegenerateSpectrum("no joint eigenvector reproduces the dimension character")
    rest = sorted((i for i in range(n) if i != dim_row), key=lambda i: round_key(chars[i], tol))
    chars = chars[[dim_row] + rest]
    chars[0] = dims  # exact dimension row
    total = float(np.sum(dims**2))
    formal = total / np.sum(np.abs(chars) ** 2, axis=1)
    return CharacterTable(_frozen(chars), False, _frozen(formal), tol)


def global_characters(ring: FusionRing) -> CharacterTable:
    return ring.characters


def _weight_warnings(weights, conj) -> list[str]:
    notes = []
    if weights[0] != 0:
        notes.append(f"vacuum conformal weight is {weights[0]}, expected 0")
    for p, pc in enumerate(conj):
        if (weights[p] - weights[pc]).denominator != 1:
            notes.append(f"h_{p} and h_{pc} (conjugates) differ by a non-integer")
    return notes


def validate_ring(
    fusion,
    smatrix=None,
    weights: Optional[Sequence] = None,
    labels: Optional[Sequence[str]] = None,
    *,
    name: str = "",
    tol: float = DEFAULT_TOL,
    seed: int = 0,
) -> FusionRing:
    """Validate raw fusion data and precompute everything derived from it.

    Quantum dimensions are the Perron-Frobenius eigenvalues of the fusion
    matrices; an S-matrix, if given, is only used as a cross-check and to
    label the Verlinde characters by primaries.
    """
    N = _check_tensor(fusion)
    n = N.shape[0]
    conj = _check_axioms(N)
    dims = perron_frobenius_dims(N)
    _check_dims(N, dims, tol)

    notes: list[str] = []
    S = None
    if smatrix is not None:
        S = np.asarray(smatrix, dtype=complex)
        _check_smatrix(S, dims, tol)
        chars = _characters_from_smatrix(N, S, dims, tol)
    else:
        chars = _characters_from_fusion(N, dims, tol, seed)

    w = None
    if weights is not None:
        if len(weights) != n:
            raise ValueError(f"expected {n} conformal weights, got {len(weights)}")
        w = tuple(Fraction(x) for x in weights)
        notes.extend(_weight_warnings(w, conj))
    if labels is not None and len(labels) != n:
        raise ValueError(f"expected {n} labels, got {len(labels)}")
    for note in notes:
        log.warning("%s: %s", name or "ring", note)

    total = float(np.sum(dims**2))
    if S is not None and abs(total - 1 / abs(S[0, 0]) ** 2) > tol * total:
        raise SMatrixViolation(f"sum d^2 = {total!r} but 1/|S_00|^2 = {1 / abs(S[0, 0]) ** 2!r}")
    return FusionRing(
        fusion=_frozen(N),
        conj=conj,
        dims=_frozen(dims),
        total_dim_sq=total,
        characters=chars,
        smatrix=None if S is None else _frozen(S),
        weights=w,
        labels=tuple(labels) if labels is not None else (),
        name=name,
        tol=tol,
        seed=seed,
        warnings=tuple(notes),
    )


@dataclass(frozen=True)
class VerlindeReport:
    max_deviation: float
    worst: tuple[int, int, int]

    def ok(self, tol: float = DEFAULT_TOL) -> bool:
        return self.max_deviation < tol


def verlinde_consistency(fusion, smatrix) -> VerlindeReport:
    """Compare N_pq^r with the Verlinde formula evaluated on ``smatrix``.

    Accepts raw arrays so that corrupted S-matrices can be inspected before
    (or instead of) validation.
    """
    if isinstance(fusion, FusionRing):
        fusion = fusion.fusion
    N = np.asarray(fusion, dtype=float)
    S = np.asarray(smatrix, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        verlinde = np.einsum("ps,qs,rs->pqr", S, S, S.conj() / S[0][None, :])
    dev = np.abs(verlinde - N)
    dev[~np.isfinite(dev)] = np.inf
    idx = np.unravel_index(np.argmax(dev), dev.shape)
    return VerlindeReport(float(dev[idx]), tuple(int(i) for i in idx))
