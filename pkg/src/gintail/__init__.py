"""Exact computational commutative algebra for reverse-lex generic initial
ideals of low-regularity projective subschemes: Buchberger bases, Borel-fixed
combinatorics, Eliahou-Kervaire Betti tables, ND(1) section analysis, and the
tailing-Betti / sectional-1-normality transform."""

from .borel import (BettiTable, GeneratorStratum, MonomialIdeal, borel_closure,
                    ek_betti, hilbert_function, is_borel_fixed, minimalize,
                    stratum)
from .errors import (GenericityError, GintailError, HypothesisError,
                     InhomogeneousError, InternalCheckError, NotBorelFixedError,
                     ParseError, RegularityError, RingMismatchError,
                     SaturationRetryError, SingularMatrixError, UnitIdealError)
from .gin import (GinCertificate, certificate_for_borel_ideal, compute_gin,
                  generic_section_gin, random_generic_change)
from .groebner import (GroebnerBasis, buchberger, hilbert_function_rank_oracle,
                       ideals_equal, initial_ideal, is_member, reduce,
                       saturate_by_general_linear_form, spoly, spoly_certificate)
from .invariants import (HilbertPolynomial, SchemeProfile, depth_pd, h1_oracle,
                         h1_twist, hilbert_polynomial, marginal_betti,
                         nd1_check, regularity, scheme_profile)
from .ring import (Monomial, Polynomial, PolyIdeal, PrimeField, QQ, RingCtx,
                   apply_linear_change, compare_grevlex, poly_add, poly_mul,
                   poly_scale)
from .tailing import (TailingReport, XiMatrix, betti_from_normality,
                      build_tailing_report, cohomology_from_tailing,
                      degree_genus_from_tailing, hilbert_from_tailing,
                      normality_from_betti, rigidity_and_bounds,
                      sectional_normality, structure_check, tailing_from_gin,
                      vector_report, xi_inverse, xi_matrix)

__version__ = "0.1.0"
