from __future__ import annotations

import pytest

from topoaware import ArgumentError, SizeGuardError, run_verify
from topoaware.verify import CHECK_NAMES


def test_all_checks_pass_on_healthy_library():
    results = run_verify(rng_seed=0, graphs=10, n_max=15)
    assert [r.name for r in results] == list(CHECK_NAMES)
    assert all(r.passed for r in results)
    assert all(r.cases >= 1 for r in results)


@pytest.mark.parametrize("name", CHECK_NAMES)
def test_injected_fault_fails_only_its_check(name):
    results = run_verify(rng_seed=1, graphs=8, n_max=12, inject_fault=name)
    by_name = {r.name: r for r in results}
    assert not by_name[name].passed
    assert by_name[name].detail, "failing check should carry a counterexample"
    for other in CHECK_NAMES:
        if other != name:
            assert by_name[other].passed


def test_run_verify_is_reproducible():
    a = run_verify(rng_seed=42, graphs=5, n_max=10)
    b = run_verify(rng_seed=42, graphs=5, n_max=10)
    assert a == b


def test_size_guards():
    with pytest.raises(SizeGuardError):
        run_verify(rng_seed=0, graphs=0)
    with pytest.raises(SizeGuardError):
        run_verify(rng_seed=0, graphs=501)
    with pytest.raises(SizeGuardError):
        run_verify(rng_seed=0, n_max=3)
    with pytest.raises(SizeGuardError):
        run_verify(rng_seed=0, n_max=61)
    with pytest.raises(ArgumentError):
        run_verify(rng_seed=0, inject_fault="everything")
