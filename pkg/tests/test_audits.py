import numpy as np
import pytest

from skmlab.risk_lab.audits import peter_paul_check, reciprocal_bound_check, set_peter_paul_check


def test_point_inequality_boundary_equality_case():
    # collinear equal split at eps = 1: 4 <= 2*1 + 2*1 holds with equality
    x, z, y = 0.0, 1.0, 2.0
    lhs = (x - y) ** 2
    rhs = 2.0 * (x - z) ** 2 + 2.0 * (z - y) ** 2
    assert lhs == rhs


def test_reciprocal_hand_case():
    # P = delta = 0.5, eps = 0.1: bound 0.8; worst admissible empirical mass 0.4
    assert abs(1 / 0.4 - 1 / 0.5) == pytest.approx(0.5)
    assert 0.5 <= 2 * 0.1 / 0.5**2


def test_point_audit_no_violations():
    assert peter_paul_check(10**4, [0.1, 1.0, 10.0], seed=0) == 0


def test_set_audit_no_violations():
    assert set_peter_paul_check(2000, [0.1, 1.0, 10.0], seed=1) == 0


def test_reciprocal_audit_no_violations():
    assert reciprocal_bound_check(10**4, seed=2) == 0


def test_rejects_nonpositive_eps():
    with pytest.raises(ValueError):
        peter_paul_check(10, [0.0], seed=0)
    with pytest.raises(ValueError):
        set_peter_paul_check(10, [-1.0], seed=0)


def test_audits_deterministic():
    assert peter_paul_check(500, [0.5], seed=9) == peter_paul_check(500, [0.5], seed=9)
