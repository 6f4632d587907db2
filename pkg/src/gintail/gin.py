"""Seeded, certificate-producing reverse-lex generic initial ideals.

Zariski-open genericity cannot be decided algorithmically, so the certificate
is probabilistic: several independent seeded coordinate changes must yield
the same initial ideal, which must then pass the Borel-fixedness check.  Over
the rationals with coefficient bound 1000 an accidental agreement on a
non-generic ideal is not a practical concern at this scale, but the
certificate records that it is a surrogate, not a proof.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from . import borel
from .borel import MonomialIdeal, is_borel_fixed
from .errors import GenericityError, NotBorelFixedError
from .groebner import (_buchberger_raw, _mix_seed, GREVLEX,
                       hilbert_function_rank_oracle, initial_ideal)
from .ring import (PolyIdeal, QQ, RingCtx, apply_linear_change,
                   seeded_invertible_matrix)

#: Degree-d pieces larger than this skip the exact rank cross-check (the
#: check is quadratic in this size); every bundled fixture stays well below.
HF_CHECK_LIMIT = 400


def random_generic_change(num_vars: int, seed: int, bound: int = 1000, field=QQ):
    """Seeded invertible matrix with integer entries in [-bound, bound];
    bit-reproducible for a fixed seed."""
    return seeded_invertible_matrix(num_vars, seed, bound, field)


@dataclass(frozen=True)
class GinCertificate:
    """A generic initial ideal together with how it was certified.

    method "trials": `agreements` independent coordinate changes produced the
    same Borel-fixed initial ideal.  method "borel-fixed": the input was
    already a Borel-fixed monomial ideal, which is its own Gin, so no trials
    were run.
    """

    gin: MonomialIdeal
    ring: RingCtx
    trial_seeds: tuple = ()
    agreements: int = 0
    borel_verified: bool = False
    field_mode: str = "QQ"
    certified: bool = True      # False in prime-field fast mode
    method: str = "trials"
    hf_checked: bool = False
    warnings: tuple = ()

    def __post_init__(self):
        if self.method == "trials" and self.agreements < 2:
            raise ValueError("a trial certificate needs at least 2 agreeing trials")
        if not self.borel_verified:
            raise NotBorelFixedError("certificate requires a Borel-fixed result")

    @property
    def n(self) -> int:
        """Ambient projective dimension (one less than the variable count)."""
        return self.gin.num_vars - 1

    @property
    def saturation_defect(self) -> bool:
        return any("saturation" in w for w in self.warnings)


def compute_gin(I: PolyIdeal, seed: int = 0, trials: int = 2,
                bound: int = 1000) -> GinCertificate:
    """Generic initial ideal of a homogeneous ideal, grevlex, with trial
    certification.

    The caller is expected to pass a saturated ideal (saturate first via
    groebner.saturate_by_general_linear_form); unsaturated input is not fixed
    up silently, it is detected afterwards through minimal generators
    involving the last variable and reported as a warning, since the
    hyperplane-restriction identities read differently for unsaturated
    ideals.
    """
    if trials < 2:
        raise ValueError("need at least 2 trials for a genericity certificate")
    ring = I.ring
    nv = ring.num_vars
    seeds = tuple(_mix_seed(seed, k) for k in range(trials))
    results = []
    for s in seeds:
        M = random_generic_change(nv, s, bound, ring.field)
        moved = [apply_linear_change(g, M) for g in I.gens]
        results.append(initial_ideal(_buchberger_raw(ring, moved, GREVLEX)))
    first = results[0]
    if any(r != first for r in results[1:]):
        raise GenericityError(
            f"initial ideals disagree across trials (seeds {seeds}); "
            "retry with a new master seed or a larger coefficient bound",
            seeds=seeds)
    if not is_borel_fixed(first):
        raise GenericityError(
            f"agreed initial ideal is not Borel fixed (seeds {seeds}); "
            "the changes were not generic", seeds=seeds)

    warnings = ["genericity certificate is probabilistic (trial agreement)"]
    if any(g[nv - 1] > 0 for g in first.min_gens):
        top = max(sum(g) for g in first.min_gens if g[nv - 1] > 0)
        warnings.append(
            f"saturation defect: generators involve x{nv - 1} up to degree {top}; "
            "input ideal was not saturated")

    # cross-check the Hilbert function against exact linear algebra on the
    # original generators, degree by degree up to reg + 2
    reg = first.max_gen_degree()
    hf_checked = True
    for t in range(reg + 3):
        if comb(nv - 1 + t, nv - 1) > HF_CHECK_LIMIT:
            hf_checked = False
            warnings.append(
                f"Hilbert-function cross-check skipped from degree {t} (size)")
            break
        if borel.hilbert_function(first, t) != hilbert_function_rank_oracle(I, t):
            raise GenericityError(
                f"Hilbert function of the initial ideal differs from the input "
                f"ideal at degree {t} (seeds {seeds}); this indicates a "
                "non-generic change or an engine bug", seeds=seeds)

    return GinCertificate(
        gin=first, ring=ring, trial_seeds=seeds, agreements=trials,
        borel_verified=True, field_mode=ring.field.name,
        certified=ring.field.certified, method="trials",
        hf_checked=hf_checked, warnings=tuple(warnings))


def certificate_for_borel_ideal(J: MonomialIdeal, field=QQ) -> GinCertificate:
    """Certificate for an already Borel-fixed monomial ideal.

    A Borel-fixed ideal is its own generic initial ideal, so the exact route
    is to verify Borel-fixedness and skip the trials; compute_gin on small
    Borel-fixed inputs is exercised separately to validate that shortcut.
    """
    if not is_borel_fixed(J):
        raise NotBorelFixedError(
            "direct certification requires a Borel-fixed monomial ideal")
    nv = J.num_vars
    warnings = []
    if any(g[nv - 1] > 0 for g in J.min_gens):
        warnings.append(
            f"saturation defect: generators involve x{nv - 1}; "
            "ideal is not saturated")
    return GinCertificate(
        gin=J, ring=RingCtx(nv, field), trial_seeds=(), agreements=0,
        borel_verified=True, field_mode="monomial", certified=True,
        method="borel-fixed", hf_checked=True, warnings=tuple(warnings))


def generic_section_gin(cert: GinCertificate, j: int) -> MonomialIdeal:
    """Gin of the ideal of X cut by a general linear subspace of dimension j,
    read off combinatorially: restrict x_{j+1},..,x_n to zero, then saturate
    in x_j.  For j = n this is X itself and the Gin is returned unchanged."""
    n = cert.n
    if not 0 <= j <= n:
        raise ValueError(f"section dimension {j} out of range 0..{n}")
    J = cert.gin
    if j == n:
        return J
    for _ in range(n - j):
        J = J.restrict_last_to_zero()
    return J.saturate_last()
