"""Test cases for basis symbols, contexts and divisor classes."""

from fractions import Fraction

import pytest

from moduli_divisors.core.errors import (
    InvalidContextError,
    InvalidSymbolError,
    MixedContextError,
)
from moduli_divisors.core.picard_basis import (
    DivisorClass,
    boundary_total,
    canonicalize,
    combine,
    covers_basis,
    delta,
    delta_irr,
    delta_orbit,
    delta_pair,
    fraction_to_str,
    lam,
    orbit_basis,
    parse_fraction,
    parse_symbol,
    psi,
    psi_class,
    psi_total,
)
from moduli_divisors.core.state import Level, SpaceContext


def test_unpointed_basis():
    """M_2 is generated by lambda, delta_irr and delta_1."""
    names = [sym.name for sym in orbit_basis(SpaceContext.pointed(2, 0))]
    assert names == ["lambda", "delta_irr", "delta[1;{}]"]


def test_one_pointed_basis(pointed_3_1):
    """M_{3,1} has one psi class and two boundary divisors of genus 1."""
    names = [sym.name for sym in orbit_basis(pointed_3_1)]
    assert names == ["lambda", "psi_1", "delta_irr", "delta[1;{}]", "delta[1;{1}]"]


def test_symmetric_basis_uses_psi_total():
    """Orbit bases carry a single psi class."""
    basis = orbit_basis(SpaceContext.pointed(3, 4, symmetric=True))
    assert psi_total() in basis
    assert psi(1) not in basis
    assert delta_orbit(0, 2) in basis


def test_canonicalize_drops_unstable_boundary():
    """delta_{0,S} with |S| = 1 is not a divisor."""
    assert canonicalize(delta(0, (3,)), SpaceContext.pointed(5, 4)) is None


def test_canonicalize_picks_complement():
    """delta_{4,{1}} on M_{5,2} is the same divisor as delta_{1,{2}}."""
    ctx = SpaceContext.pointed(5, 2)
    assert canonicalize(delta(4, (1,)), ctx) == delta(1, (2,))


def test_parse_symbol_inverts_name():
    """Every basis symbol survives a trip through its name."""
    for ctx in (SpaceContext.pointed(3, 2), SpaceContext.pointed(4, 5, symmetric=True)):
        for sym in orbit_basis(ctx):
            assert parse_symbol(sym.name) == sym


def test_parse_symbol_rejects_garbage():
    """Unknown names raise InvalidSymbolError."""
    with pytest.raises(InvalidSymbolError):
        parse_symbol("kappa_1")


def test_class_arithmetic(pointed_3_1):
    """Addition merges coefficients and drops zeros."""
    a = DivisorClass.from_terms(pointed_3_1, [(lam(), 2), (psi(1), 1)])
    b = DivisorClass.from_terms(pointed_3_1, [(lam(), -2), (delta_irr(), Fraction(1, 3))])
    total = a + b
    assert total.coeff(lam()) == 0
    assert lam() not in total.symbols()
    assert total.coeff(delta_irr()) == Fraction(1, 3)
    assert (a - a).is_zero()
    assert (3 * a).coeff(lam()) == 6


def test_complement_terms_are_merged():
    """Two names of one boundary divisor add up on the canonical symbol."""
    ctx = SpaceContext.pointed(5, 2)
    cls = DivisorClass.from_terms(ctx, [(delta(4, (1,)), 1), (delta(1, (2,)), 2)])
    assert cls.coeff(delta(1, (2,))) == 3


def test_mixed_contexts_are_rejected(pointed_3_1):
    """Classes on different spaces cannot be combined."""
    other = DivisorClass.of(SpaceContext.pointed(3, 2), lam())
    with pytest.raises(MixedContextError):
        DivisorClass.of(pointed_3_1, lam()) + other


def test_levels_share_one_space(pointed_3_1):
    """Stack and coarse classes of the same space can be mixed."""
    coarse = pointed_3_1.with_level(Level.coarse)
    total = DivisorClass.of(pointed_3_1, lam()) + DivisorClass.of(coarse, lam())
    assert total.coeff(lam()) == 2


def test_combine():
    """combine forms exact linear combinations."""
    ctx = SpaceContext.pointed(4, 0)
    cls = combine([(Fraction(1, 2), DivisorClass.of(ctx, lam())), (3, boundary_total(ctx))])
    assert cls.coeff(lam()) == Fraction(1, 2)
    assert cls.coeff(delta(2, ())) == 3


def test_psi_class_full_basis():
    """psi on a full context is the sum of the psi_i."""
    cls = psi_class(SpaceContext.pointed(3, 3))
    assert [cls.coeff(psi(i)) for i in (1, 2, 3)] == [1, 1, 1]


def test_class_serialization(pointed_3_1):
    """to_dict and from_dict agree on coefficients and context."""
    cls = DivisorClass.from_terms(pointed_3_1, [(lam(), Fraction(-7, 3)), (delta(1, (1,)), 2)])
    assert DivisorClass.from_dict(cls.to_dict()) == cls


def test_fraction_helpers():
    """Rationals are written as p/q."""
    assert fraction_to_str(Fraction(3)) == "3/1"
    assert parse_fraction("-9/14") == Fraction(-9, 14)
    with pytest.raises(InvalidSymbolError):
        parse_fraction("x/2")


def test_invalid_contexts():
    """Low genus and inconsistent partitions are rejected."""
    with pytest.raises(InvalidContextError):
        SpaceContext.pointed(1, 2)
    with pytest.raises(InvalidContextError):
        SpaceContext.partitioned(5, (2, 0))
    with pytest.raises(InvalidContextError):
        SpaceContext.nodal(5, 0)


def test_full_basis_cap():
    """The S-indexed basis is refused above the configured cap."""
    with pytest.raises(InvalidContextError):
        orbit_basis(SpaceContext.pointed(3, 13))
    assert orbit_basis(SpaceContext.pointed(3, 13, symmetric=True))


def test_restrict_keeps_listed_symbols(pointed_3_1):
    """restrict drops every other coefficient."""
    cls = DivisorClass.from_terms(pointed_3_1, [(lam(), 13), (psi(1), 1), (delta(1, (1,)), -3)])
    kept = cls.restrict([lam(), delta(1, (1,))])
    assert kept.as_dict() == {lam(): 13, delta(1, (1,)): -3}
    assert cls.restrict([]).is_zero()


def test_windowed_boundary_total():
    """A window writes out delta_irr and the listed boundary symbols only."""
    ctx = SpaceContext.nodal(9, 3)
    window = [lam(), delta_pair(0, 1, 0), delta_pair(0, 0, 2)]
    total = boundary_total(ctx, window)
    assert total.as_dict() == {delta_irr(): 1, delta_pair(0, 1, 0): 1, delta_pair(0, 0, 2): 1}
    assert boundary_total(ctx).restrict(total.symbols()) == total


def test_covers_basis():
    """Only the whole orbit basis covers a context."""
    ctx = SpaceContext.nodal(9, 3)
    basis = orbit_basis(ctx)
    assert covers_basis(ctx, basis)
    assert covers_basis(ctx, basis + [psi_total()])
    assert not covers_basis(ctx, basis[:-1])
    assert not covers_basis(ctx, [lam(), psi_total(), delta_irr(), delta_pair(0, 1, 0)])
    assert not covers_basis(SpaceContext.nodal(23, 90), [lam(), psi_total(), delta_irr()])
