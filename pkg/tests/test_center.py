import importlib
import itertools

import numpy as np
import pytest

from fcsets import errors
from fcsets.center import (
    center,
    central_extensions,
    central_quotient,
    invariant_factors,
    is_abelian,
    maximal_central_extension,
    quotient_subgroup,
    subgroups,
)
from fcsets.fcset import full_fcset, trivial_fcset
from fcsets.lattice import enumerate_fcsets
from fcsets.modelfile import BUNDLED
from fcsets.ring import validate_ring

from conftest import MODULAR, all_fcsets, fc, fcset_ids, lattice, ring
from oracles import pointed_fusion, pointed_smatrix, subgroup_count


@pytest.mark.parametrize("orders, expected", [
    ((), ()), ((1,), ()), ((2,), (2,)), ((2, 2), (2, 2)), ((2, 3), (6,)),
    ((4, 2, 6), (2, 2, 12)), ((9, 3, 3), (3, 3, 9)), ((12, 18), (6, 36)),
])
def test_invariant_factors(orders, expected):
    assert invariant_factors(orders) == expected


def test_invariant_factors_rejects_zero():
    with pytest.raises(ValueError):
        invariant_factors([0])


@pytest.mark.parametrize("model, labels, order, factors", [
    ("ising", ("eps",), 2, (2,)),
    ("ising", ("eps", "sigma"), 2, (2,)),
    ("fibonacci", ("tau",), 1, ()),
    ("rep_s3", ("sgn", "std"), 1, ()),
    ("rep_s3", ("sgn",), 2, (2,)),
    ("toric", ("e", "m", "f"), 4, (2, 2)),
    ("z4", ("1", "2", "3"), 4, (4,)),
    ("double_s3_like", tuple("BCDEFGH"), 2, (2,)),
    ("double_s3_like", ("B", "C"), 1, ()),
    ("trivial", (), 1, ()),
])
def test_center_orders(model, labels, order, factors):
    cg = center(fc(model, *labels))
    assert cg.order == order
    assert cg.invariant_factors() == factors


def test_ising_full_center():
    cg = center(full_fcset(ring("ising")))
    assert cg.central == (0, 1)
    assert [cg.partition.classes[z] for z in cg.central] == [(0,), (1,)]
    assert cg.element_order(1) == 2 and cg.power(1, 2) == 0


def test_double_s3_full_center():
    cg = center(full_fcset(ring("double_s3_like")))
    assert [cg.partition.classes[z] for z in cg.central] == [(0,), (1,)]
    assert sorted(np.round(cg.partition.extents).astype(int)) == [4, 4, 9, 9, 9, 9, 36, 36]


def test_double_s3_charge_sector_matches_rep_s3():
    a = classes_of("double_s3_like", ("B", "C"))
    b = classes_of("rep_s3", ("sgn", "std"))
    assert sorted(np.round(a).astype(int)) == sorted(np.round(b).astype(int)) == [2, 3, 6]


def classes_of(model, labels):
    from fcsets.fcset import classes

    return classes(fc(model, *labels)).extents


@pytest.mark.parametrize("name,g", all_fcsets(), ids=fcset_ids(all_fcsets()))
def test_simple_current_classes_are_central(name, g):
    cg = center(g)
    r = g.ring
    part = cg.partition
    units = [p for p in range(part.owner.ring.characters.size)
             if r.characters.labelled and abs(r.dims[p] - 1) < 1e-9]
    for p in units:
        assert part.class_of[p] in cg.central
    # the center is a group: closed, with inverses
    for a, b in itertools.product(cg.central, repeat=2):
        assert cg.multiply(a, b) in cg.central
    assert cg.is_subgroup(cg.central)


@pytest.mark.parametrize("name,g", all_fcsets(), ids=fcset_ids(all_fcsets()))
def test_action_is_a_group_action(name, g):
    cg = center(g)
    k = len(cg.partition)
    for c in range(k):
        assert cg.action[cg.identity, c] == c
        for a, b in itertools.product(cg.central, repeat=2):
            assert cg.action[a, cg.action[b, c]] == cg.action[cg.multiply(a, b), c]
    for z in cg.central:
        # acting is a permutation of classes that preserves extents
        image = [cg.action[z, c] for c in range(k)]
        assert sorted(image) == list(range(k))
        assert np.allclose(cg.partition.extents[image], cg.partition.extents)


def test_toric_subgroups_and_quotients():
    g = full_fcset(ring("toric"))
    cg = center(g)
    subs = subgroups(cg)
    assert len(subs) == 5
    quotients = sorted(repr(central_quotient(g, H, cg)) for H in subs)
    assert quotients == sorted(["{1,e,m,f}", "{1,e}", "{1,m}", "{1,f}", "{1}"])


@pytest.mark.parametrize("name", ["ising", "toric", "z4", "double_s3_like"])
def test_correspondence_bijective_order_reversing(name):
    for g in lattice(name).elements:
        cg = center(g)
        subs = subgroups(cg)
        image = {H: central_quotient(g, H, cg) for H in subs}
        assert len(set(image.values())) == len(subs)
        for H, K in itertools.product(subs, repeat=2):
            if H <= K:
                assert image[K] <= image[H]
        for H, h in image.items():
            assert quotient_subgroup(cg, h) == H


def test_quotient_requires_subgroup():
    g = full_fcset(ring("toric"))
    with pytest.raises(errors.NotASubgroup):
        central_quotient(g, {1})
    cg = center(fc("ising", "eps", "sigma"))
    with pytest.raises(errors.NotASubgroup):
        cg.generate([2])


def test_quotient_dual_mismatch_detected(monkeypatch):
    mod = importlib.import_module("fcsets.center")

    g = full_fcset(ring("toric"))
    monkeypatch.setattr(mod, "dual", lambda q: trivial_fcset(q.ring))
    with pytest.raises(errors.QuotientDualMismatch):
        mod.central_quotient(g, {0, 1})


def test_central_quotient_on_rep_s3():
    g = fc("rep_s3", "sgn")
    assert repr(central_quotient(g, center(g).central)) == "{triv}"


def test_extensions():
    t = trivial_fcset(ring("toric"))
    assert [repr(h) for h in central_extensions(t, [2])] == ["{1,e}", "{1,m}", "{1,f}"]
    assert repr(central_extensions(t, [2, 2])[0]) == "{1,e,m,f}"
    assert repr(maximal_central_extension(t)) == "{1,e,m,f}"
    assert repr(maximal_central_extension(trivial_fcset(ring("ising")))) == "{1,eps}"
    big = fc("double_s3_like", "B", "C", "F", "G", "H")
    assert repr(maximal_central_extension(big)) == "{A,B,C,D,E,F,G,H}"
    with pytest.raises(errors.NoSuchExtension):
        central_extensions(trivial_fcset(ring("ising")), [3])
    with pytest.raises(errors.MissingSMatrix):
        central_extensions(trivial_fcset(ring("rep_s3")), [2])


@pytest.mark.parametrize("name,g", all_fcsets(MODULAR), ids=fcset_ids(all_fcsets(MODULAR)))
def test_maximal_extension_has_g_as_quotient(name, g):
    h = maximal_central_extension(g)
    assert g <= h
    ch = center(h)
    assert quotient_subgroup(ch, g) is not None


@pytest.mark.parametrize("orders", [(2, 2), (4,), (2, 4), (3, 3)])
def test_pointed_rings_are_abelian(orders):
    r = validate_ring(pointed_fusion(orders), smatrix=pointed_smatrix(orders))
    g = full_fcset(r)
    assert is_abelian(g)
    cg = center(g)
    assert cg.invariant_factors() == invariant_factors(orders)
    assert len(subgroups(cg)) == subgroup_count(orders)
    assert len(enumerate_fcsets(r)) == subgroup_count(orders)


def test_non_abelian_examples():
    assert not is_abelian(full_fcset(ring("ising")))
    assert not is_abelian(full_fcset(ring("rep_s3")))
    assert is_abelian(fc("rep_s3", "sgn"))


def test_product_rule_violation_detected(monkeypatch):
    mod = importlib.import_module("fcsets.center")

    g = full_fcset(ring("toric"))
    real = mod._class_matching

    def shifted(part, column, tol):
        hits = real(part, column, tol)
        return [(h + 1) % len(part) for h in hits]

    monkeypatch.setattr(mod, "_class_matching", shifted)
    with pytest.raises(errors.InvariantBreach):
        mod.center(g)


@pytest.mark.parametrize("name", BUNDLED)
def test_every_bundled_center_well_defined(name):
    for g in lattice(name).elements:
        center(g)
