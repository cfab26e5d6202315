"""Regenerate the bundled model files under src/fcsets/models/.

Every modular model is specified by a closed-form S-matrix and conformal
weights; fusion rules are obtained from the Verlinde formula and must come
out as non-negative integers.  The quantum double of S3 is built from the
group itself, and Rep(S3) from its character table.

    python tools/make_models.py
"""

from __future__ import annotations

import itertools
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from fcsets.modelfile import model_from_ring_data, serialize_model  # noqa: E402

OUT = ROOT / "src" / "fcsets" / "models"


def verlinde(S: np.ndarray) -> np.ndarray:
    N = np.einsum("ps,qs,rs->pqr", S, S, S.conj() / S[0][None, :])
    R = np.round(N.real).astype(np.int64)
    assert np.abs(N - R).max() < 1e-10, "Verlinde formula is not integral"
    assert (R >= 0).all()
    return R


def clean(S) -> np.ndarray:
    S = np.asarray(S, dtype=complex)
    re, im = S.real.copy(), S.imag.copy()
    re[np.abs(re) < 1e-14] = 0.0
    im[np.abs(im) < 1e-14] = 0.0
    return re + 1j * im


def cyclic(k: int, weights) -> np.ndarray:
    """Pointed Z_k model with theta_a = exp(2 pi i h_a)."""
    h = np.array([float(w) for w in weights])
    theta = np.exp(2j * np.pi * h)
    S = np.empty((k, k), dtype=complex)
    for a in range(k):
        for b in range(k):
            S[a, b] = theta[(b - a) % k] / (theta[a] * theta[b])
    return S / np.sqrt(k)


# -- S3 --------------------------------------------------------------------------

def compose(x, y):
    """(x*y)(i) = x(y(i))."""
    return tuple(x[y[i]] for i in range(3))


def inverse(x):
    inv = [0] * 3
    for i, xi in enumerate(x):
        inv[xi] = i
    return tuple(inv)


S3 = sorted(itertools.permutations(range(3)))
E = (0, 1, 2)
TAU = (1, 0, 2)
SIGMA = (1, 2, 0)
OMEGA = np.exp(2j * np.pi / 3)


def cycle_type(x):
    fixed = sum(x[i] == i for i in range(3))
    return {3: "e", 1: "tau", 0: "sigma"}[fixed]


def centralizer(a):
    return [g for g in S3 if compose(g, a) == compose(a, g)]


def power(x, k):
    out = E
    for _ in range(k):
        out = compose(out, x)
    return out


def char_e(kind):
    table = {"triv": {"e": 1, "tau": 1, "sigma": 1},
             "sgn": {"e": 1, "tau": -1, "sigma": 1},
             "std": {"e": 2, "tau": 0, "sigma": -1}}[kind]
    return lambda x: table[cycle_type(x)]


def char_tau(s):
    return lambda x: 1 if x == E else s


def char_sigma(k):
    def chi(x):
        j = next(j for j in range(3) if power(SIGMA, j) == x)
        return OMEGA ** (k * j)
    return chi


DOUBLE_S3 = [
    ("A", E, char_e("triv")),
    ("B", E, char_e("sgn")),
    ("C", E, char_e("std")),
    ("D", TAU, char_tau(1)),
    ("E", TAU, char_tau(-1)),
    ("F", SIGMA, char_sigma(0)),
    ("G", SIGMA, char_sigma(1)),
    ("H", SIGMA, char_sigma(2)),
]


def double_s3():
    """Modular data of D(S3): S from the standard double formula, theta = chi(a)/chi(1)."""
    n = len(DOUBLE_S3)
    S = np.zeros((n, n), dtype=complex)
    for i, (_, a, chi) in enumerate(DOUBLE_S3):
        for j, (_, b, psi) in enumerate(DOUBLE_S3):
            total = 0
            for g in S3:
                gbg = compose(compose(g, b), inverse(g))
                if compose(a, gbg) != compose(gbg, a):
                    continue
                gag = compose(compose(inverse(g), a), g)
                total += np.conj(chi(gbg)) * np.conj(psi(gag))
            S[i, j] = total / (len(centralizer(a)) * len(centralizer(b)))
    theta = np.array([chi(a) / chi(E) for _, a, chi in DOUBLE_S3])
    weights = []
    for t in theta:
        frac = Fraction(float(np.angle(t) / (2 * np.pi))).limit_denominator(12) % 1
        weights.append(frac)
    return S, weights


def rep_s3_fusion():
    classes = [(E, 1), (TAU, 3), (SIGMA, 2)]
    irreps = [char_e("triv"), char_e("sgn"), char_e("std")]
    N = np.zeros((3, 3, 3), dtype=np.int64)
    for p, q, r in itertools.product(range(3), repeat=3):
        m = sum(size * irreps[p](x) * irreps[q](x) * np.conj(irreps[r](x)) for x, size in classes) / 6
        N[p, q, r] = int(round(float(np.real(m))))
    return N


def build():
    models = []
    models.append(model_from_ring_data(
        "trivial", np.ones((1, 1, 1), dtype=int), labels=["1"], smatrix=[[1]], weights=[0],
        metadata={"description": "the trivial fusion ring (one primary)"}))

    r2 = np.sqrt(2)
    S = 0.5 * np.array([[1, 1, r2], [1, 1, -r2], [r2, -r2, 0]])
    w = [Fraction(0), Fraction(1, 2), Fraction(1, 16)]
    models.append(model_from_ring_data(
        "ising", verlinde(S), labels=["1", "eps", "sigma"], smatrix=clean(S), weights=w,
        metadata={"description": "Ising model, Virasoro minimal model of central charge 1/2"}))

    phi = (1 + np.sqrt(5)) / 2
    S = np.array([[1, phi], [phi, -1]]) / np.sqrt(2 + phi)
    models.append(model_from_ring_data(
        "fibonacci", verlinde(S), labels=["1", "tau"], smatrix=clean(S),
        weights=[Fraction(0), Fraction(2, 5)],
        metadata={"description": "Fibonacci / Lee-Yang-type fusion tau x tau = 1 + tau"}))

    for k, w, desc in [
        (2, [Fraction(0), Fraction(1, 4)], "semion, Z2 simple currents"),
        (3, [Fraction(0), Fraction(1, 3), Fraction(1, 3)], "SU(3) level 1, Z3 simple currents"),
        (4, [Fraction(a * a, 8) for a in range(4)], "U(1) at radius giving Z4, h_a = a^2/8"),
    ]:
        models.append(model_from_ring_data(
            f"z{k}", verlinde(cyclic(k, w)), labels=[str(a) for a in range(k)],
            smatrix=clean(cyclic(k, w)), weights=w, metadata={"description": desc}))

    S = 0.5 * np.array([[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]])
    models.append(model_from_ring_data(
        "toric", verlinde(S), labels=["1", "e", "m", "f"], smatrix=clean(S),
        weights=[Fraction(0), Fraction(0), Fraction(0), Fraction(1, 2)],
        metadata={"description": "toric code, D(Z2)"}))

    models.append(model_from_ring_data(
        "rep_s3", rep_s3_fusion(), labels=["triv", "sgn", "std"],
        metadata={"description": "tensor products of S3 irreducibles (no S-matrix: not modular)"}))

    S, w = double_s3()
    models.append(model_from_ring_data(
        "double_s3_like", verlinde(S), labels=[name for name, _, _ in DOUBLE_S3],
        smatrix=clean(S), weights=w,
        metadata={"description": "quantum double D(S3), 8 primaries, all dimensions integral"}))
    return models


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for model in build():
        path = OUT / f"{model.name}.json"
        path.write_text(serialize_model(model), encoding="utf-8")
        print(f"wrote {path.relative_to(ROOT)} (n={model.n}, {len(model.fusion)} fusion entries)")


if __name__ == "__main__":
    main()
