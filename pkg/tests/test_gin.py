import pytest

from gintail.borel import MonomialIdeal, ek_betti, hilbert_function, is_borel_fixed
from gintail.gin import (GinCertificate, certificate_for_borel_ideal,
                         compute_gin, generic_section_gin,
                         random_generic_change)
from gintail.groebner import (hilbert_function_rank_oracle,
                              saturate_by_general_linear_form)
from gintail.errors import NotBorelFixedError
from gintail.ring import (Polynomial, PolyIdeal, QQ, RingCtx,
                          apply_linear_change, matrix_det,
                          seeded_invertible_matrix)

R3 = RingCtx(3)
R4 = RingCtx(4)

QUINTIC_GIN = (
    (2, 0, 0, 0), (1, 3, 0, 0), (0, 4, 0, 0), (1, 2, 1, 0), (0, 3, 1, 0))


def P(ring, d):
    return Polynomial.from_dict(ring, {m: ring.field.of(c) for m, c in d.items()})


def monomial_poly_ideal(J: MonomialIdeal, field=QQ) -> PolyIdeal:
    ring = RingCtx(J.num_vars, field)
    return PolyIdeal.make(
        ring, [Polynomial.from_dict(ring, {m: field.of(1)}) for m in J.min_gens])


# --- random coordinate changes -----------------------------------------------

def test_change_deterministic_and_invertible():
    a = random_generic_change(4, 123)
    b = random_generic_change(4, 123)
    assert a == b
    assert matrix_det(a, QQ) != QQ.of(0)


def test_changes_distinct_across_seeds():
    seen = {random_generic_change(3, s) for s in range(1000)}
    assert len(seen) == 1000


# --- compute_gin -------------------------------------------------------------

def test_quintic_gin_exact(quintic_cert):
    assert quintic_cert.gin.min_gens == QUINTIC_GIN
    assert quintic_cert.borel_verified
    assert quintic_cert.agreements == 2
    assert quintic_cert.certified
    assert not quintic_cert.saturation_defect


def test_gin_bit_reproducible(quintic_ideal):
    a = compute_gin(quintic_ideal, seed=314, trials=2)
    b = compute_gin(quintic_ideal, seed=314, trials=2)
    assert a == b


def test_adding_trials_keeps_earlier_seeds(quintic_ideal):
    a = compute_gin(quintic_ideal, seed=314, trials=2)
    b = compute_gin(quintic_ideal, seed=314, trials=3)
    assert b.trial_seeds[:2] == a.trial_seeds
    assert b.gin == a.gin


def test_trials_minimum_enforced(quintic_ideal):
    with pytest.raises(ValueError):
        compute_gin(quintic_ideal, seed=1, trials=1)


def test_borel_fixed_ideal_is_its_own_gin():
    J = MonomialIdeal.make(4, [
        (3, 0, 0, 0), (2, 1, 0, 0), (1, 2, 0, 0), (0, 3, 0, 0), (2, 0, 1, 0)])
    cert = compute_gin(monomial_poly_ideal(J), seed=21, trials=2)
    assert cert.gin == J


def test_gin_idempotent_on_gin_output(quintic_cert):
    again = compute_gin(monomial_poly_ideal(quintic_cert.gin), seed=77, trials=2)
    assert again.gin == quintic_cert.gin


def test_hilbert_function_preserved(quintic_ideal, quintic_cert):
    assert quintic_cert.hf_checked
    for t in range(7):
        assert hilbert_function(quintic_cert.gin, t) == \
            hilbert_function_rank_oracle(quintic_ideal, t)


def test_unsaturated_input_flagged_not_fixed():
    R2 = RingCtx(2)
    I = PolyIdeal.make(R2, [P(R2, {(2, 0): 1}), P(R2, {(1, 1): 1})])
    cert = compute_gin(I, seed=8, trials=2)
    assert cert.saturation_defect
    S = saturate_by_general_linear_form(I, seed=9)
    cert2 = compute_gin(S, seed=10, trials=2)
    assert not cert2.saturation_defect
    assert cert2.gin.min_gens == ((1, 0),)


def test_cancellation_bound_on_known_tables(quintic_cert):
    # published Betti numbers of the ideal itself never exceed the Gin's
    table = ek_betti(quintic_cert.gin)
    published = {(1, 1): 1, (1, 3): 4, (2, 3): 6, (3, 3): 2}
    for key, value in published.items():
        assert value <= table.entry(*key)
    from gintail.fixtures import ci_three_quadrics
    cert = compute_gin(ci_three_quadrics(1), seed=101, trials=2)
    ci_table = ek_betti(cert.gin)
    for key, value in {(1, 1): 3, (2, 2): 3, (3, 3): 1}.items():
        assert value <= ci_table.entry(*key)


def test_direct_borel_certificate_requires_borel():
    with pytest.raises(NotBorelFixedError):
        certificate_for_borel_ideal(MonomialIdeal.make(2, [(0, 1)]))
    J = MonomialIdeal.make(3, [(2, 0, 0)])
    cert = certificate_for_borel_ideal(J)
    assert cert.method == "borel-fixed" and cert.gin == J


# --- generic sections --------------------------------------------------------

def test_section_of_nonreduced_monomial_fixture():
    J = MonomialIdeal.make(4, [
        (3, 0, 0, 0), (2, 1, 0, 0), (1, 2, 0, 0), (0, 3, 0, 0), (2, 0, 1, 0)])
    cert = certificate_for_borel_ideal(J)
    section = generic_section_gin(cert, 2)
    assert section.min_gens == ((2, 0, 0), (1, 2, 0), (0, 3, 0))
    assert is_borel_fixed(section)


def test_section_at_top_dimension_is_identity(quintic_cert):
    assert generic_section_gin(quintic_cert, 3) == quintic_cert.gin
    with pytest.raises(ValueError):
        generic_section_gin(quintic_cert, 4)


def _polynomial_level_section(I: PolyIdeal, seed: int) -> PolyIdeal:
    """Cut by a general hyperplane at the polynomial level: move by a random
    change and substitute the last variable by zero."""
    M = seeded_invertible_matrix(I.ring.num_vars, seed, 1000, I.ring.field)
    S = RingCtx(I.ring.num_vars - 1, I.ring.field)
    gens = []
    for g in I.gens:
        moved = apply_linear_change(g, M)
        d = {}
        for m, c in moved.terms:
            if m[-1] == 0:
                d[m[:-1]] = c
        if d:
            gens.append(Polynomial.from_dict(S, d))
    return PolyIdeal.make(S, gens)


@pytest.mark.parametrize("fixture_name,seed", [
    ("quintic", 1234), ("twisted_cubic", 777)])
def test_hyperplane_restriction_dual_path(fixture_name, seed):
    # polynomial-level section vs combinatorial restriction of the Gin, and
    # the saturated versions of both
    from gintail.fixtures import load_bundled_ideal
    I = load_bundled_ideal(fixture_name)
    cert = compute_gin(I, seed=42, trials=2)
    Ibar = _polynomial_level_section(I, seed)
    cert_bar = compute_gin(Ibar, seed=seed + 1, trials=2)
    assert cert_bar.gin == cert.gin.restrict_last_to_zero()
    Ibar_sat = saturate_by_general_linear_form(Ibar, seed=seed + 2)
    cert_sat = compute_gin(Ibar_sat, seed=seed + 3, trials=2)
    assert cert_sat.gin == cert.gin.restrict_last_to_zero().saturate_last()


def test_saturatedness_detection_via_sections(quintic_cert):
    # saturated input: no generator involves the last variable
    assert all(g[-1] == 0 for g in quintic_cert.gin.min_gens)


def test_concurrent_certificates_match_sequential():
    # all values are immutable; concurrent trials must not perturb results
    from concurrent.futures import ThreadPoolExecutor
    from gintail.fixtures import ci_three_quadrics
    ideals = [ci_three_quadrics(s) for s in (1, 2, 3, 4)]
    sequential = [compute_gin(I, seed=100 + k, trials=2)
                  for k, I in enumerate(ideals)]
    with ThreadPoolExecutor(max_workers=4) as pool:
        concurrent = list(pool.map(
            lambda kv: compute_gin(kv[1], seed=100 + kv[0], trials=2),
            enumerate(ideals)))
    assert concurrent == sequential


def test_prime_field_gin_agrees_with_rationals(quintic_cert):
    from gintail.cli import parse_ideal
    from gintail.fixtures import bundled_ideal_text
    from gintail.ring import PrimeField
    I = parse_ideal(bundled_ideal_text("quintic"),
                    field_override=PrimeField(32003))
    cert = compute_gin(I, seed=42, trials=2)
    assert cert.gin == quintic_cert.gin
    assert not cert.certified and cert.field_mode == "GF(32003)"


def test_certificate_validation():
    J = MonomialIdeal.make(3, [(2, 0, 0)])
    with pytest.raises(ValueError):
        GinCertificate(gin=J, ring=RingCtx(3), trial_seeds=(1,), agreements=1,
                       borel_verified=True, method="trials")
    with pytest.raises(NotBorelFixedError):
        GinCertificate(gin=J, ring=RingCtx(3), trial_seeds=(1, 2), agreements=2,
                       borel_verified=False, method="trials")
