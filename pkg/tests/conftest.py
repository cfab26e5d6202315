from __future__ import annotations

from functools import lru_cache

import pytest

from fcsets.lattice import enumerate_fcsets
from fcsets.modelfile import BUNDLED, load_bundled

MODULAR = tuple(name for name in BUNDLED if name != "rep_s3")


@lru_cache(maxsize=None)
def ring(name: str):
    return load_bundled(name).to_ring()


@lru_cache(maxsize=None)
def lattice(name: str):
    return enumerate_fcsets(ring(name))


def fc(name: str, *labels):
    """FC set of a bundled model given by primary labels (vacuum implied)."""
    from fcsets.fcset import FCSet

    r = ring(name)
    return FCSet(r, {0} | {r.labels.index(x) for x in labels})


def all_fcsets(names=BUNDLED):
    return [(name, g) for name in names for g in lattice(name).elements]


def fcset_ids(pairs):
    return [f"{name}:{g!r}" for name, g in pairs]


@pytest.fixture
def ising():
    return ring("ising")


@pytest.fixture
def toric():
    return ring("toric")


# -- acceptance summary ---------------------------------------------------------

ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
