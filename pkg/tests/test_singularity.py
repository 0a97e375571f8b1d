"""Test cases for ages and the Reid-Tai classification."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from moduli_divisors.core.errors import InvalidContextError
from moduli_divisors.core.state import ActionClass
from moduli_divisors.tools.singularity import (
    DiagonalAction,
    age,
    classify,
    describe_action,
    hyperelliptic_tangent_action,
    inverse_action,
    nonhyperelliptic_involution_action,
    unit_ages,
)


def test_age_of_explicit_action():
    """Ages are taken with respect to zeta^u."""
    action = DiagonalAction(5, (1, 2, 0))
    assert age(action) == Fraction(3, 5)
    assert age(action, 2) == Fraction(6, 5)
    with pytest.raises(InvalidContextError):
        age(DiagonalAction(4, (1,)), 2)


def test_classification_basics():
    """Identity, quasireflection, junior and senior actions."""
    assert classify(DiagonalAction(3, (0, 0))) is ActionClass.identity
    assert classify(DiagonalAction(3, (0, 1))) is ActionClass.quasireflection
    assert classify(DiagonalAction(3, (1, 1))) is ActionClass.junior
    assert classify(DiagonalAction(2, (1, 1))) is ActionClass.senior


def test_exponents_out_of_range():
    """Exponents must lie in 0..m-1."""
    with pytest.raises(InvalidContextError):
        DiagonalAction(3, (3,))
    assert DiagonalAction.reduced(3, (4, -1)).exponents == (1, 2)


def test_genus_two_involution_is_a_quasireflection():
    """x -> -x in genus 2 moves a single quadratic differential."""
    action = hyperelliptic_tangent_action(2, 2)
    assert action.exponents == (0, 1, 0)
    assert classify(action) is ActionClass.quasireflection


def test_genus_two_order_four_is_junior():
    """zeta^3 has age 3/4 for the order four automorphism in genus 2."""
    action = hyperelliptic_tangent_action(2, 4)
    ages = unit_ages(action)
    assert ages[1] == Fraction(5, 4)
    assert ages[3] == Fraction(3, 4)
    assert classify(action) is ActionClass.junior


def test_hyperelliptic_involution_is_trivial():
    """The hyperelliptic involution acts trivially on the locus."""
    action = hyperelliptic_tangent_action(3, 2, hyperelliptic_involution=True)
    assert classify(action) is ActionClass.identity
    with pytest.raises(InvalidContextError):
        hyperelliptic_tangent_action(3, 4, hyperelliptic_involution=True)


def test_order_ten_in_genus_four():
    """Exponents 2..8 of order ten sum to 35."""
    action = hyperelliptic_tangent_action(4, 10)
    assert age(action) == Fraction(7, 2)
    assert classify(action) is ActionClass.senior


def test_nonhyperelliptic_involution():
    """Alternating exponents give age (g-1)/2."""
    action = nonhyperelliptic_involution_action(4)
    assert action.exponents == (0, 1, 0, 1, 0, 1, 0)
    assert describe_action(action) == {
        "order": 2,
        "exponents": [0, 1, 0, 1, 0, 1, 0],
        "age": "3/2",
        "classification": "Senior",
    }


def test_order_out_of_range():
    """Orders above 2g+2 are rejected."""
    with pytest.raises(InvalidContextError):
        hyperelliptic_tangent_action(3, 9)


@pytest.mark.parametrize("g", range(3, 21))
def test_every_action_is_senior_from_genus_three(g):
    """No junior elements or quasireflections once g >= 3."""
    for m in range(2, 2 * g + 3):
        assert classify(hyperelliptic_tangent_action(g, m)) is ActionClass.senior, (g, m)


@given(
    st.integers(min_value=2, max_value=12).flatmap(
        lambda m: st.tuples(
            st.just(m), st.lists(st.integers(min_value=0, max_value=m - 1), min_size=1, max_size=8)
        )
    )
)
def test_age_plus_inverse_age(data):
    """age(g) + age(g^-1) counts the nontrivial eigenvalues."""
    m, exponents = data
    action = DiagonalAction(m, tuple(exponents))
    nonzero = sum(1 for a in exponents if a)
    assert age(action) + age(inverse_action(action)) == nonzero


def test_all_units_in_description():
    """describe_action lists every unit when asked."""
    data = describe_action(hyperelliptic_tangent_action(2, 4), all_units=True)
    assert data["unit_ages"] == {"1": "5/4", "3": "3/4"}
    assert data["classification"] == "Junior"
