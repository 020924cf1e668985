import math

import numpy as np
import pytest

from qgauss.bounds import (
    BudgetConfig,
    BudgetGuard,
    NormCertifier,
    certify_norm,
    direct_product,
    direct_upper,
    doubling_schedule,
    haagerup_constant,
    largest_block_dim,
    powered_bounds,
    rd_upper,
)
from qgauss.errors import BudgetExceeded, DomainError
from qgauss.fock import FockSpace, LeveledVector, wick_operator
from qgauss.ncpoly import NcPolynomial, constant, parse, variable
from qgauss.spectra import compression_norm, q_edge


def test_haagerup_constant_at_zero_is_exact():
    constant = haagerup_constant(0.0)

    assert constant.value == 1.0
    assert constant.certified_value == 1.0
    assert constant.truncation_terms == 0


@pytest.mark.parametrize("q", [-0.5, 0.5])
def test_haagerup_constant_matches_direct_product(q):
    constant = haagerup_constant(q)

    assert constant.value == pytest.approx(3.462746, abs=1e-6)
    assert constant.value == pytest.approx(direct_product(q, 200), abs=1e-6)
    assert constant.value <= constant.certified_value <= constant.value * (1 + 1e-11)


def test_haagerup_constant_monotone_in_abs_q():
    grid = [0.05 * k for k in range(17)]

    values = [haagerup_constant(q).value for q in grid]

    assert all(a < b for a, b in zip(values, values[1:]))
    assert [haagerup_constant(-q).value for q in grid] == values


def test_haagerup_constant_rejects_closed_endpoints():
    with pytest.raises(DomainError):
        haagerup_constant(1.0)
    with pytest.raises(DomainError):
        haagerup_constant(0.5, rel_tol=0.0)


def test_haagerup_inequality_on_random_wick_vectors():
    rng = np.random.default_rng(2024)
    for _ in range(100):
        k = int(rng.integers(1, 5))
        q = float(rng.uniform(-0.8, 0.8))
        words = [tuple(int(x) for x in rng.integers(1, 3, size=k)) for _ in range(3)]
        coefficients = {word: float(rng.normal()) for word in words}
        X = wick_operator(coefficients, q).with_dimension(2)
        space = FockSpace(q)
        l2 = space.norm(LeveledVector.from_terms(coefficients, q, 2))

        bound = (k + 1) * haagerup_constant(q).value ** 1.5 * l2
        observed = compression_norm(X, q, k + 2, space=space)

        assert observed <= bound + 1e-6


def test_rd_upper_formula():
    P = parse("X1*X2")

    value = rd_upper(2.0, 1.5, P, 3, 10.0)

    assert value == pytest.approx((2.0 * 13**1.5) ** (1 / 6) * 10.0 ** (1 / 6))
    with pytest.raises(DomainError):
        rd_upper(-1.0, 1.5, P, 3, 10.0)
    with pytest.raises(DomainError):
        rd_upper(1.0, 1.5, P, 0, 10.0)


def test_direct_upper_variants():
    P = parse("X1*X2 + X2*X1 + 0.5*X1 - 2")
    q = 0.3

    per_level = direct_upper(P, q)
    aggregated = direct_upper(P, q, variant="aggregated")

    assert 0 < per_level <= aggregated
    assert direct_upper(variable(1), 0.0) == 2.0
    with pytest.raises(DomainError):
        direct_upper(P, q, variant="other")


def test_powered_bounds_reference_values():
    X = variable(1)

    first = powered_bounds(X, 0.0, 1)
    second = powered_bounds(X, 0.0, 2)

    assert first.lower == pytest.approx(1.0, abs=1e-12)
    assert first.upper == pytest.approx(3**0.75 * 2**0.25, abs=1e-12)
    assert first.upper == pytest.approx(2.711, abs=1e-3)
    assert second.lower == pytest.approx(2**0.25, abs=1e-12)
    assert powered_bounds(constant(1.0), 0.3, 1).lower == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("q, n", [(0.0, 1), (0.4, 2), (-0.3, 4)])
def test_powered_upper_is_rd_upper_with_haagerup_constant(q, n):
    P = parse("X1 + 0.5*X1*X1")
    bounds = powered_bounds(P, q, n)
    C = haagerup_constant(q).certified_value

    assert bounds.upper == rd_upper(C**1.5, 1.5, P, n, bounds.power_l2)


def test_rd_upper_without_prefactor_is_l4n_norm():
    X = variable(1)
    values = []
    for n in (1, 2, 4, 8):
        bounds = powered_bounds(X, 0.0, n)
        value = rd_upper(1.0, 0.0, X, n, bounds.power_l2)
        assert value == bounds.lp_lower
        values.append(value)

    # tau(X^{4n})^{1/(4n)} climbs toward the norm 2
    assert values[0] == pytest.approx(2**0.25, abs=1e-12)
    assert all(left <= right + 1e-12 for left, right in zip(values, values[1:]))
    assert values[-1] <= 2.0


def test_direct_upper_reference_values():
    C = haagerup_constant(0.5).certified_value

    assert direct_upper(variable(1), 0.5) == pytest.approx(2 * C**1.5, rel=1e-12)
    assert direct_upper(variable(1), 0.5) == pytest.approx(12.886, abs=2e-3)
    for q in (-0.7, 0.0, 0.5):
        assert direct_upper(constant(1.0), q) == pytest.approx(
            haagerup_constant(q).certified_value ** 1.5, rel=1e-15
        )


@pytest.mark.parametrize("q", [-0.5, 0.0, 0.5])
def test_single_variable_norm_brackets_support_edge(q):
    certificate = certify_norm(variable(1), q, None, n_max=64)

    assert certificate.n_used == 64
    assert certificate.level_used == 128
    assert not certificate.exhausted_budget
    assert certificate.lower <= q_edge(q) <= certificate.upper
    assert certificate.gap <= 0.35


def test_free_sum_contains_two_sqrt_two():
    certificate = certify_norm(parse("X1 + X2"), 0.0, None, n_max=4)

    assert certificate.n_used == 4
    assert certificate.contains(2 * math.sqrt(2))


def test_certificate_history_is_monotone():
    certificate = certify_norm(parse("X1*X2 + X2*X1"), 0.2, None, n_max=2)

    lowers = [step.lower for step in certificate.steps]
    uppers = [step.upper for step in certificate.steps]
    assert [step.n for step in certificate.steps] == [1, 2]
    assert lowers == sorted(lowers)
    assert uppers == sorted(uppers, reverse=True)
    assert certificate.upper <= certificate.upper_direct
    assert certificate.lower <= certificate.upper


def test_gap_target_stops_escalation():
    certificate = certify_norm(variable(1), 0.0, 0.8)

    assert certificate.n_used == 2
    assert certificate.gap <= 0.8
    assert certificate.contains(2.0)
    assert not certificate.exhausted_budget


def test_budget_exhaustion_keeps_partial_results():
    guard = BudgetGuard(BudgetConfig(max_level=8, max_block_dim=4096))

    certificate = certify_norm(parse("X1 + X2"), 0.1, 1e-6, guard=guard)

    assert certificate.exhausted_budget
    assert certificate.n_used == 4
    assert certificate.lower > 0
    assert certificate.lower <= certificate.upper


def test_unreachable_gap_marks_budget_exhausted():
    certificate = certify_norm(variable(1), 0.5, 1e-9, n_max=4)

    assert certificate.exhausted_budget
    assert certificate.n_used == 4


def test_zero_polynomial():
    certificate = certify_norm(NcPolynomial({}), 0.4, 0.1)

    assert (certificate.lower, certificate.upper, certificate.n_used) == (0.0, 0.0, 0)
    assert not certificate.exhausted_budget


def test_powered_bounds_respect_guard():
    guard = BudgetGuard(BudgetConfig(max_level=8, max_block_dim=4096))
    P = parse("X1*X2")

    bounds = powered_bounds(P, 0.3, 2, guard=guard)
    assert bounds.lower <= bounds.lp_lower <= bounds.upper

    with pytest.raises(BudgetExceeded) as excinfo:
        powered_bounds(P, 0.3, 3, guard=guard)
    assert excinfo.value.report.required_level == 12


def test_guard_block_dimension_limit():
    guard = BudgetGuard(BudgetConfig(max_level=256, max_block_dim=100))

    allowed = guard.evaluate(parse("X1 + X2"), 4)
    refused = guard.evaluate(parse("X1 + X2 + X3"), 4)

    assert not allowed.blocked
    assert allowed.report.largest_block_dim == 70
    assert refused.blocked
    assert "block" in refused.reason
    assert largest_block_dim(6, 3) == 90
    assert largest_block_dim(10, 1) == 1


def test_fixed_n_runs_one_step():
    certifier = NormCertifier()

    certificate = certifier.certify(variable(1), 0.5, n=4)

    assert certificate.n_used == 4
    assert len(certificate.steps) == 1
    assert certificate.contains(q_edge(0.5))


def test_doubling_schedule():
    assert doubling_schedule(64) == [1, 2, 4, 8, 16, 32, 64]
    assert doubling_schedule(5) == [1, 2, 4]
    with pytest.raises(DomainError):
        doubling_schedule(0)
