from fractions import Fraction

import numpy as np
import pytest

from fcsets import errors
from fcsets.ring import global_characters, perron_frobenius_dims, round_key, validate_ring, \
    verlinde_consistency

from conftest import ring
from oracles import DOUBLE_S3_DIMS, pointed_fusion, pointed_smatrix

PHI = (1 + 5**0.5) / 2


def ising_fusion():
    return ring("ising").fusion.copy()


def test_perron_frobenius_dims_closed_forms():
    assert np.allclose(ring("ising").dims, [1, 1, 2**0.5], atol=1e-12)
    assert np.allclose(ring("fibonacci").dims, [1, PHI], atol=1e-12)
    assert np.allclose(ring("double_s3_like").dims, DOUBLE_S3_DIMS, atol=1e-12)
    assert np.allclose(ring("rep_s3").dims, [1, 1, 2], atol=1e-12)


def test_total_dimension():
    assert ring("ising").total_dim_sq == pytest.approx(4, abs=1e-12)
    assert ring("fibonacci").total_dim_sq == pytest.approx(2 + PHI, abs=1e-12)
    assert ring("double_s3_like").total_dim_sq == pytest.approx(36, abs=1e-10)
    assert ring("trivial").total_dim_sq == 1


def test_conjugation():
    assert ring("z3").conj == (0, 2, 1)
    assert ring("z4").conj == (0, 3, 2, 1)
    assert ring("ising").conj == (0, 1, 2)


def test_pf_dims_standalone():
    assert np.allclose(perron_frobenius_dims(np.ones((1, 1, 1), dtype=int)), [1])


@pytest.mark.parametrize("mutate, exc", [
    (lambda N: N.__setitem__((1, 1, 0), -1), errors.NegativeEntry),
    (lambda N: N.__setitem__((0, 1, 2), 1), errors.UnitViolation),
])
def test_axiom_violations(mutate, exc):
    N = ising_fusion()
    mutate(N)
    with pytest.raises(exc):
        validate_ring(N)


def test_non_integer_entry():
    N = ising_fusion().astype(float)
    N[2, 2, 1] = 0.5
    with pytest.raises(errors.NonIntegerEntry):
        validate_ring(N)


def test_commutativity_violation():
    N = ising_fusion()
    N[1, 2, 1] = 1
    with pytest.raises(errors.CommutativityViolation):
        validate_ring(N)


def test_conjugation_violation():
    N = ising_fusion()
    N[2, 2, 0] = 0
    with pytest.raises(errors.ConjugationViolation):
        validate_ring(N)


def test_associativity_violation():
    # eps x eps = sigma is commutative and unital but not associative with the rest
    N = ising_fusion()
    N[1, 1, 0] = 1
    N[1, 1, 1] = 1
    with pytest.raises(errors.AssociativityViolation):
        validate_ring(N)


def test_bad_shape():
    with pytest.raises(errors.FusionRingError):
        validate_ring(np.zeros((2, 2, 3), dtype=int))


def test_smatrix_must_diagonalize_fusion():
    S = np.array(ring("ising").smatrix)
    S[:, [1, 2]] = S[:, [2, 1]]
    S[[1, 2], :] = S[[2, 1], :]
    with pytest.raises(errors.FusionRingError):
        validate_ring(ising_fusion(), smatrix=S)


def test_non_unitary_smatrix():
    S = np.array(ring("ising").smatrix) * 1.1
    with pytest.raises(errors.FusionRingError):
        validate_ring(ising_fusion(), smatrix=S)


def test_weight_count_checked():
    with pytest.raises(ValueError):
        validate_ring(ising_fusion(), weights=[0, Fraction(1, 2)])


def test_verlinde_consistency_bundled():
    for name in ("ising", "fibonacci", "z2", "z3", "z4", "toric", "double_s3_like"):
        r = ring(name)
        assert verlinde_consistency(r, r.smatrix).ok(1e-9), name


def test_verlinde_consistency_raw_arrays_detects_mismatch():
    r = ring("ising")
    rep = verlinde_consistency(r.fusion, r.smatrix)
    assert rep.max_deviation < 1e-12
    N = np.array(r.fusion)
    N[2, 2, 1] = 0
    assert not verlinde_consistency(N, r.smatrix).ok(1e-9)


def test_characters_with_and_without_smatrix_agree():
    """Fusion-only joint diagonalization must find the S-matrix rows."""
    r = ring("ising")
    free = validate_ring(r.fusion, seed=3)
    assert not free.characters.labelled
    with_s = global_characters(r).chars
    rows_s = sorted(round_key(row, 1e-9) for row in with_s)
    rows_f = sorted(round_key(row, 1e-9) for row in free.characters.chars)
    assert rows_s == rows_f
    # every S row has a fusion-only partner within 1e-9, and the pairing is a bijection
    dist = np.abs(with_s[:, None, :] - free.characters.chars[None, :, :]).max(axis=2)
    partner = dist.argmin(axis=1)
    assert sorted(partner) == list(range(r.n))
    assert dist.min(axis=1).max() < 1e-9


@pytest.mark.parametrize("name", ["double_s3_like", "toric", "z4", "fibonacci"])
def test_fusion_only_formal_dims_match(name):
    r = ring(name)
    free = validate_ring(r.fusion, seed=11)
    assert sorted(free.characters.formal_dims_sq.round(8)) == \
        sorted(r.characters.formal_dims_sq.round(8))


def test_fusion_only_characters_seed_independent():
    r = ring("double_s3_like")
    a = validate_ring(r.fusion, seed=1).characters.chars
    b = validate_ring(r.fusion, seed=99).characters.chars
    assert np.abs(a - b).max() < 1e-9


def test_character_orthogonality_global():
    for name in ("ising", "double_s3_like", "rep_s3", "z4"):
        t = ring(name).characters
        X = t.chars
        w = t.plancherel_weights()
        gram = (X.conj() * w[:, None]).T @ X
        assert np.abs(gram - np.eye(X.shape[1])).max() < 1e-9, name


def test_dimension_row_first():
    for name in ("rep_s3", "ising"):
        r = ring(name)
        t = r.characters
        assert np.allclose(t.chars[0], r.dims)


def test_pointed_products_validate():
    orders = (2, 4)
    r = validate_ring(pointed_fusion(orders), smatrix=pointed_smatrix(orders))
    assert r.n == 8 and np.allclose(r.dims, 1)


def test_products_and_labels():
    r = ring("ising")
    assert r.products(2, 2) == (0, 1)
    assert r.label(2) == "sigma"
    assert r.fusion_matrix(2)[2].tolist() == [1, 1, 0]
    assert r.is_integer(2.0 + 1e-12) and not r.is_integer(2**0.5)
