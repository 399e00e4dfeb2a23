"""The verification runner itself: suites pass, and tampering is caught."""

import pytest

from tropibary.verify import (
    SCALES,
    SUITES,
    Row,
    clear_tamper,
    run_all,
    run_suite,
    set_tamper,
    _final_bound,
)


@pytest.fixture(autouse=True)
def untampered():
    clear_tamper()
    yield
    clear_tamper()


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_passes_at_tiny_scale(name):
    result = run_suite(name, seed=7, scale="tiny")
    assert result.name == name
    assert result.rows
    assert result.ok, [r for r in result.rows if not r.ok]


def test_run_all_covers_every_suite():
    results = run_all(seed=3, scale="tiny")
    assert [r.name for r in results] == list(SUITES)


def test_rows_are_deterministic_for_a_seed():
    a = run_suite("affinity", seed=7, scale="tiny")
    b = run_suite("affinity", seed=7, scale="tiny")
    assert a.rows == b.rows


def test_unknown_names_raise():
    with pytest.raises(KeyError, match="unknown suite"):
        run_suite("nonsense")
    with pytest.raises(KeyError, match="unknown scale"):
        run_suite("measures", scale="huge")


def test_row_ok_property():
    assert Row("s", "c", "pass", "").ok
    assert not Row("s", "c", "fail", "boom").ok


def test_final_bound_meets_the_tolerance():
    # depth-20 targets must land within 1e-6 of exact
    assert _final_bound(20) < 1e-6
    assert _final_bound(7) > _final_bound(12) > _final_bound(20) > 0


class TestTamperHook:
    def test_swapped_params_fail_the_affinity_suite(self):
        set_tamper("swap-params")
        try:
            result = run_suite("affinity", seed=7, scale="tiny")
        finally:
            clear_tamper()
        assert not result.ok
        bad = [r for r in result.rows if not r.ok]
        assert bad
        assert any("failed" in r.detail for r in bad)

    def test_clearing_restores_green(self):
        set_tamper("swap-params")
        clear_tamper()
        assert run_suite("affinity", seed=7, scale="tiny").ok


def test_crash_inside_a_suite_becomes_a_row(monkeypatch):
    import tropibary.sampling as sampling

    def boom(rng, bound):
        raise RuntimeError("forced crash")

    monkeypatch.setattr(sampling, "random_space", boom)
    result = run_suite("measures", seed=7, scale="tiny")
    assert not result.ok
    assert result.rows[0].case == "unexpected-error"
    assert "forced crash" in result.rows[0].detail


def test_scales_expose_default_and_tiny():
    assert {"default", "tiny"} <= set(SCALES)
    for knob, small in SCALES["tiny"].items():
        if isinstance(small, int):  # fiber_lo is a grid bound, not a count
            assert small <= SCALES["default"][knob]
