"""Test cases for the inequality systems, the solver and certificate checking."""

import json
from dataclasses import replace
from fractions import Fraction

import pytest
from sympy import isprime

from moduli_divisors.core.config import AppConfig
from moduli_divisors.core.errors import MixedContextError, ReducedCoordinateError
from moduli_divisors.core.picard_basis import (
    DivisorClass,
    delta_irr,
    delta_pair,
    lam,
    psi,
    psi_class,
    psi_total,
)
from moduli_divisors.core.state import Mode, SpaceContext, Verdict
from moduli_divisors.campaigns.nodal import certify_names
from moduli_divisors.tools.catalog import (
    Generator,
    canonical_class,
    gieseker_petri_pullback,
    resolve_generator,
)
from moduli_divisors.tools.certify import (
    build_system,
    certificate_from_dict,
    certify,
    cutoff_polynomial,
    reduced_coordinates,
    reduced_nodal_system,
    solve,
    verify,
    verify_stored,
)


def test_effective_but_not_big(pointed_3_1):
    """K = 1 * K leaves no room for psi."""
    K = canonical_class(pointed_3_1)
    cert = certify(K, [K])
    assert cert.verdict is Verdict.effective
    assert cert.epsilon == 0
    assert cert.sup_epsilon == 0
    assert cert.multipliers == {"G1": Fraction(1)}
    assert cert.residual.is_zero()
    assert verify(cert, K, [K])


def test_general_type_takes_largest_epsilon(pointed_3_1):
    """With G = K - psi every eps up to 1 works."""
    K = canonical_class(pointed_3_1)
    G = K - psi_class(pointed_3_1)
    cert = certify(K, [G])
    assert cert.verdict is Verdict.general_type
    assert cert.epsilon == 1
    assert cert.sup_epsilon == 1
    assert cert.mode is Mode.full
    assert not cert.conditional
    assert verify(cert, K, [G])


def test_infeasible_system():
    """lambda alone cannot cover a negative delta_irr coefficient."""
    ctx = SpaceContext.pointed(3, 0)
    K = canonical_class(ctx)
    G = DivisorClass.of(ctx, lam())
    cert = certify(K, [G])
    assert cert.verdict is Verdict.infeasible
    assert cert.epsilon == 0
    assert all(x == 0 for x in cert.multipliers.values())
    assert verify(cert, K, [G])


def test_build_system_rows(pointed_3_1):
    """One row per coordinate plus one sign row per variable."""
    K = canonical_class(pointed_3_1)
    system = build_system(K, [K])
    assert system.variables == ("epsilon", "G1")
    assert len(system.rows) == 5 + 2
    assert system.mode is Mode.full


def test_excluded_coordinates_become_equalities(pointed_3_1):
    """Excluded coordinates add a reversed row and must end up at zero."""
    K = canonical_class(pointed_3_1)
    G = K - psi_class(pointed_3_1)
    config = AppConfig(excluded_effective=("psi_1",))
    system = build_system(K, [G], config=config)
    assert len(system.rows) == 5 + 1 + 2
    cert = solve(system)
    assert cert.verdict is Verdict.general_type
    assert cert.epsilon == 1
    assert cert.residual.coeff(psi(1)) == 0


def test_duplicate_generator_names_are_numbered(pointed_3_1):
    """Repeated names get a #k suffix."""
    K = canonical_class(pointed_3_1)
    system = build_system(K, [Generator("K", K), Generator("K", K)])
    assert system.variables == ("epsilon", "K", "K#2")


def test_mixed_context_generators(pointed_3_1):
    """Generators must live on the space of K."""
    K = canonical_class(pointed_3_1)
    other = canonical_class(SpaceContext.pointed(3, 2))
    with pytest.raises(MixedContextError):
        build_system(K, [other])


def test_reduced_generator_needs_known_coordinates():
    """A Reduced generator cannot be used on the full basis."""
    K = canonical_class(SpaceContext.nodal(22, 1))
    E = gieseker_petri_pullback(SpaceContext.nodal(22, 1))
    with pytest.raises(ReducedCoordinateError):
        build_system(K, [E])


def test_nodal_cell_certificate(nodal_certificate):
    """N_{23,1} is of general type from B, D and W on the reduced coordinates."""
    cert = nodal_certificate
    assert cert.verdict is Verdict.general_type
    assert cert.epsilon > 0
    assert cert.conditional
    assert list(cert.multipliers) == ["B", "D", "W"]
    assert "psi_total" in cert.coordinates
    assert verify_stored(cert)


def test_tampering_breaks_verification(nodal_certificate):
    """Changing eps or a multiplier invalidates the certificate."""
    cert = nodal_certificate
    assert not verify_stored(replace(cert, epsilon=cert.epsilon + 1))
    bumped = dict(cert.multipliers)
    bumped["B"] += 1
    assert not verify_stored(replace(cert, multipliers=bumped))


def test_certificate_survives_json(nodal_certificate):
    """A stored certificate can be re-verified from its JSON form."""
    data = json.loads(json.dumps(nodal_certificate.to_dict()))
    restored = certificate_from_dict(data)
    assert restored.verdict is Verdict.general_type
    assert restored.epsilon == nodal_certificate.epsilon
    assert verify_stored(restored)


def test_certificate_without_inputs_cannot_be_checked(nodal_certificate):
    """verify_stored needs the canonical class and generators."""
    data = nodal_certificate.to_dict(include_inputs=False)
    assert not verify_stored(certificate_from_dict(data))


def test_reduced_coordinates():
    """delta_{0;0,2} only exists with two node pairs."""
    one = reduced_coordinates(SpaceContext.nodal(9, 1))
    two = reduced_coordinates(SpaceContext.nodal(9, 2))
    assert delta_pair(0, 0, 2) not in one
    assert two == [lam(), psi_total(), delta_irr(), delta_pair(0, 1, 0), delta_pair(0, 0, 2)]


def test_cutoff_polynomial_values():
    """Spot values of the cutoff polynomial."""
    assert cutoff_polynomial(7, 7) == 93
    assert cutoff_polynomial(7, 10) == 18
    assert cutoff_polynomial(7, 11) == -15


@pytest.mark.parametrize("g", range(7, 24))
def test_cutoff_polynomial_decides_reduced_system(g):
    """The three-row system is GeneralType exactly when the cutoff is positive."""
    for n in range((g + 1) // 2, 2 * g - 1):
        cert = solve(reduced_nodal_system(g, n))
        assert (cert.verdict is Verdict.general_type) == (cutoff_polynomial(g, n) > 0), (g, n)
        if cert.verdict is Verdict.general_type:
            assert cert.epsilon > 0
        assert verify_stored(cert), (g, n)
    assert solve(reduced_nodal_system(g, 2 * g - 4)).verdict is Verdict.general_type
    assert solve(reduced_nodal_system(g, 2 * g - 3)).verdict is not Verdict.general_type


def test_system_without_epsilon_is_never_general_type(pointed_3_1):
    """Without eps a strict psi row only shows effectivity."""
    K = canonical_class(pointed_3_1)
    G = K - psi_class(pointed_3_1)
    system = build_system(K, [G], epsilon=False, strict=[psi(1)])
    cert = solve(system)
    assert cert.verdict is Verdict.effective
    assert cert.epsilon == 0
    assert cert.strict == ("psi_1",)
    assert verify(cert, K, [G])
    assert not verify(replace(cert, verdict=Verdict.general_type), K, [G])


def test_strict_system_without_epsilon_can_fail(pointed_3_1):
    """A strict row that no multiple can satisfy gives Infeasible."""
    K = canonical_class(pointed_3_1)
    system = build_system(K, [K], epsilon=False, strict=[psi(1)])
    cert = solve(system)
    assert cert.verdict is Verdict.infeasible
    assert verify(cert, K, [K])


def test_general_type_needs_positive_epsilon(nodal_certificate):
    """A GeneralType certificate with eps = 0 is rejected."""
    cert = nodal_certificate
    residual = cert.canonical
    for cls, x in zip(cert.generator_classes, cert.multipliers.values()):
        residual = residual - cls * x
    assert residual.coeff(psi_total()) > 0
    forged = replace(cert, epsilon=Fraction(0), residual=residual, strict=("psi_total",))
    assert not verify_stored(forged)


def test_system_mode_follows_coordinates():
    """The whole basis gives a Full system, the five coordinates a Reduced one."""
    ctx = SpaceContext.nodal(9, 5)
    K = canonical_class(ctx)
    W = resolve_generator("W", ctx)
    assert build_system(K, [W]).mode is Mode.full
    assert build_system(K, [W], reduced_coordinates(ctx)).mode is Mode.reduced


def _full_names(g, n):
    names = []
    if not isprime(g + 1):
        names.append("B")
    if not isprime(g + n + 1):
        names.append("D")
    return tuple(names) + ("W",)


@pytest.mark.parametrize(
    "g, n", [(g, n) for g in range(5, 9) for n in range((g + 1) // 2, g + 1)]
)
def test_reduced_verdict_matches_full_basis(g, n):
    """On five coordinates the verdict equals the one on the whole basis."""
    names = _full_names(g, n)
    ctx = SpaceContext.nodal(g, n)
    full = solve(
        build_system(canonical_class(ctx), [resolve_generator(name, ctx) for name in names])
    )
    reduced = certify_names(g, n, names)
    assert full.mode is Mode.full
    assert reduced.mode is Mode.reduced
    assert reduced.verdict is full.verdict, (g, n, names)


def test_tight_row_multiplier_change_is_rejected(nodal_certificate):
    """Moving a multiplier against a tight row makes the residual negative there."""
    cert = nodal_certificate
    ctx = cert.canonical.ctx
    names = list(cert.multipliers)
    changed = None
    for sym in reduced_coordinates(ctx):
        if sym.name in cert.excluded or cert.residual.coeff(sym) != 0:
            continue
        for j, name in enumerate(names):
            coeff = cert.generator_classes[j].coeff(sym)
            x = cert.multipliers[name]
            if coeff > 0:
                changed = (name, x + 1)
            elif coeff < 0 and x > 0:
                changed = (name, x / 2)
            if changed:
                break
        if changed:
            break
    assert changed is not None

    multipliers = dict(cert.multipliers)
    multipliers[changed[0]] = changed[1]
    residual = cert.canonical - psi_class(ctx) * cert.epsilon
    for cls, x in zip(cert.generator_classes, multipliers.values()):
        residual = residual - cls * x
    mutated = replace(cert, multipliers=multipliers, residual=residual)
    assert min(residual.coeff(sym) for sym in reduced_coordinates(ctx)) < 0
    assert not verify_stored(mutated)
