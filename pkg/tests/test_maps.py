"""Test cases for pullbacks, base changes and orbit bookkeeping."""

from fractions import Fraction

import pytest

from moduli_divisors.core.errors import InvalidSymbolError, UnsupportedPullbackError
from moduli_divisors.core.picard_basis import (
    DivisorClass,
    delta,
    delta_irr,
    delta_orbit,
    delta_pair,
    eta0,
    lam,
    omega,
    psi,
    psi_class,
    psi_total,
)
from moduli_divisors.core.state import GroupDescriptor, GroupKind, Level, SpaceContext
from moduli_divisors.tools.catalog import canonical_class, rational_quotient_canonical
from moduli_divisors.tools.certify import reduced_coordinates
from moduli_divisors.tools.maps import (
    collapse_orbits,
    expand_orbits,
    forgetful_orbit_sum,
    forgetful_pullback,
    glue_map,
    glue_pullback,
    group_generators,
    hyperelliptic_restrict,
    multi_forgetful_pullback,
    omega_basechange,
    permute_class,
    pullback_from_unpointed,
    rational_quotient_pullback,
    restrict_orbits,
    restriction_map,
    restriction_support,
    symmetrize,
    unpointed_map,
)


def _terms(ctx, terms):
    return DivisorClass.from_terms(ctx, terms).as_dict()


def test_forgetful_pullback_of_psi(pointed_3_1):
    """psi_1 pulls back to psi_1 - delta_{0,{1,2}}."""
    pulled = forgetful_pullback(DivisorClass.of(pointed_3_1, psi(1)))
    expected = _terms(SpaceContext.pointed(3, 2), [(psi(1), 1), (delta(0, (1, 2)), -1)])
    assert pulled.as_dict() == expected


def test_forgetful_pullback_of_boundary(pointed_3_1):
    """delta_1 pulls back to the two ways of placing the new point."""
    pulled = forgetful_pullback(DivisorClass.of(pointed_3_1, delta(1, ())))
    expected = _terms(SpaceContext.pointed(3, 2), [(delta(1, ()), 1), (delta(1, (2,)), 1)])
    assert pulled.as_dict() == expected


def test_forgetful_pullback_keeps_lambda(pointed_3_1):
    """lambda and delta_irr are pulled back to themselves."""
    cls = DivisorClass.from_terms(pointed_3_1, [(lam(), 3), (delta_irr(), -1)])
    pulled = forgetful_pullback(cls)
    assert pulled.coeff(lam()) == 3
    assert pulled.coeff(delta_irr()) == -1


def test_multi_forgetful_pullback(pointed_3_1):
    """Forgetting two points at once corrects psi_1 by every rational tail through 1."""
    pulled = multi_forgetful_pullback(DivisorClass.of(pointed_3_1, psi(1)), (1,), 3)
    expected = _terms(
        SpaceContext.pointed(3, 3),
        [
            (psi(1), 1),
            (delta(0, (1, 2)), -1),
            (delta(0, (1, 3)), -1),
            (delta(0, (1, 2, 3)), -1),
        ],
    )
    assert pulled.as_dict() == expected


def test_glue_pullback_of_delta_one():
    """delta_1 of genus g+n splits into the pair and the single tail classes."""
    pulled = glue_pullback(DivisorClass.of(SpaceContext.pointed(6, 0), delta(1, ())), 2)
    expected = _terms(
        SpaceContext.nodal(4, 2), [(delta_pair(1, 0, 0), 1), (delta_pair(0, 1, 0), 1)]
    )
    assert pulled.as_dict() == expected


def test_glue_pullback_of_lambda():
    """lambda is pulled back to lambda along the gluing map."""
    pulled = glue_pullback(DivisorClass.of(SpaceContext.pointed(6, 0), lam()), 2)
    assert pulled.coeff(lam()) == 1


def test_unpointed_pullback_to_nodal():
    """Forgetting every point keeps lambda and delta_irr."""
    source = SpaceContext.pointed(5, 0)
    cls = DivisorClass.from_terms(source, [(lam(), 8), (delta_irr(), -1)])
    pulled = pullback_from_unpointed(cls, SpaceContext.nodal(5, 3))
    assert pulled.coeff(lam()) == 8
    assert pulled.coeff(delta_irr()) == -1
    assert pulled.coeff(psi_total()) == 0


def test_omega_basechange():
    """omega_1 = psi_1 - delta_{0,{1,2}} with two points."""
    ctx = SpaceContext.pointed(3, 2)
    changed = omega_basechange(DivisorClass.of(ctx, omega(1)))
    assert changed.as_dict() == _terms(ctx, [(psi(1), 1), (delta(0, (1, 2)), -1)])


def test_omega_basechange_inverse():
    """The inverse base change undoes the forward one."""
    ctx = SpaceContext.pointed(3, 3)
    start = DivisorClass.of(ctx, omega(2))
    assert omega_basechange(omega_basechange(start), inverse=True) == start


def test_hyperelliptic_restriction_of_lambda():
    """lambda restricts to (eta_0 + 2 delta_1) / 10 in genus 2."""
    restricted = hyperelliptic_restrict(DivisorClass.of(SpaceContext.pointed(2, 0), lam()))
    assert restricted.coeff(eta0()) == Fraction(1, 10)
    assert restricted.coeff(delta(1, ())) == Fraction(1, 5)


def test_hyperelliptic_restriction_of_delta_irr():
    """delta_irr restricts to eta_0 plus twice the eta classes."""
    restricted = hyperelliptic_restrict(DivisorClass.of(SpaceContext.pointed(2, 0), delta_irr()))
    assert restricted.coeff(eta0()) == 1


@pytest.mark.parametrize("g", [2, 3, 4, 5, 6])
def test_rational_quotient_pullback_matches_canonical(g):
    """K of M_{0,2g+2}/S_{2g+2} pulls back to K of the coarse hyperelliptic locus."""
    pulled = rational_quotient_pullback(rational_quotient_canonical(g))
    target = canonical_class(SpaceContext.hyperelliptic(g, 0, level=Level.coarse))
    assert pulled.as_dict() == target.as_dict()


def test_permute_class():
    """Relabeling moves the boundary set."""
    ctx = SpaceContext.pointed(3, 3)
    moved = permute_class(DivisorClass.of(ctx, delta(0, (1, 2))), {1: 3, 2: 2, 3: 1})
    assert moved == DivisorClass.of(ctx, delta(0, (2, 3)))


def test_symmetrize_and_collapse():
    """The S_3 orbit of delta_{0,{1,2}} collapses to one orbit class."""
    full = SpaceContext.pointed(3, 3)
    summed = symmetrize(DivisorClass.of(full, delta(0, (1, 2))))
    assert [summed.coeff(delta(0, s)) for s in ((1, 2), (1, 3), (2, 3))] == [1, 1, 1]
    collapsed = collapse_orbits(summed, SpaceContext.pointed(3, 3, symmetric=True))
    assert collapsed.coeff(delta_orbit(0, 2)) == 1


def test_collapse_requires_invariance():
    """A class that is not symmetric has no orbit form."""
    full = SpaceContext.pointed(3, 3)
    with pytest.raises(InvalidSymbolError):
        collapse_orbits(DivisorClass.of(full, psi(1)), SpaceContext.pointed(3, 3, symmetric=True))


def test_expand_orbits():
    """psi_total expands to the sum of the psi_i."""
    expanded = expand_orbits(psi_class(SpaceContext.pointed(3, 3, symmetric=True)))
    assert [expanded.coeff(psi(i)) for i in (1, 2, 3)] == [1, 1, 1]


def test_symmetrize_rejects_orbit_classes():
    """Orbit classes are already invariant."""
    with pytest.raises(UnsupportedPullbackError):
        symmetrize(psi_class(SpaceContext.pointed(3, 3, symmetric=True)))


def test_pair_group_generators():
    """The pair group swaps i with n+i and moves pairs together."""
    gens = group_generators(GroupDescriptor(GroupKind.nodal_pair), 4)
    assert {1: 3, 2: 2, 3: 1, 4: 4} in gens
    assert {1: 2, 2: 1, 3: 4, 4: 3} in gens


def test_restrict_orbits_to_nodal():
    """A symmetric class splits over the pair orbits of the nodal quotient."""
    source = SpaceContext.pointed(5, 4, symmetric=True)
    restricted = restrict_orbits(DivisorClass.of(source, delta_orbit(0, 2)), SpaceContext.nodal(5, 2))
    assert restricted.coeff(delta_pair(0, 1, 0)) == 1
    assert restricted.coeff(delta_pair(0, 0, 2)) == 1


def test_forgetful_orbit_sum_of_psi():
    """Summing over the three forgetful maps doubles psi and subtracts 2 delta_{0,2}."""
    summed = forgetful_orbit_sum(psi_class(SpaceContext.pointed(3, 2, symmetric=True)))
    assert summed.coeff(psi_total()) == 2
    assert summed.coeff(delta_orbit(0, 2)) == -2


def test_windowed_maps_equal_restricted_maps():
    """A window only drops coefficients outside it."""
    window = frozenset(reduced_coordinates(SpaceContext.nodal(9, 3)))
    unpointed = canonical_class(SpaceContext.pointed(12, 0))
    full_glue = glue_map(unpointed.ctx, 3)(unpointed)
    assert glue_map(unpointed.ctx, 3, window)(unpointed) == full_glue.restrict(window)

    genus_nine = canonical_class(SpaceContext.pointed(9, 0))
    nodal = SpaceContext.nodal(9, 3)
    full_forget = unpointed_map(genus_nine.ctx, nodal)(genus_nine)
    assert unpointed_map(genus_nine.ctx, nodal, window)(genus_nine) == full_forget.restrict(window)

    sym = canonical_class(SpaceContext.pointed(9, 6, symmetric=True))
    full_restrict = restriction_map(sym.ctx, nodal)(sym)
    assert restriction_map(sym.ctx, nodal, window)(sym) == full_restrict.restrict(window)


def test_restriction_support_and_known_symbols():
    """Both node-pair coordinates come from delta_{0,2} on the symmetric cover."""
    source = SpaceContext.pointed(9, 6, symmetric=True)
    window = frozenset(reduced_coordinates(SpaceContext.nodal(9, 3)))
    support = restriction_support(source, window)
    assert support == {lam(), psi_total(), delta_irr(), delta_orbit(0, 2)}

    restrict = restriction_map(source, SpaceContext.nodal(9, 3), window)
    assert restrict.support == support
    assert restrict.push_known(support) == window
    known = restrict.push_known(frozenset([lam(), psi_total(), delta_irr()]))
    assert known == {lam(), psi_total(), delta_irr()}
