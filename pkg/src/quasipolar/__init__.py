"""Finite general rings: quasi-inverses, quasinilpotents and quasipolarity."""
from __future__ import annotations

from .bitset import Bitset
from .classification import (NOTIONS, Certificate, Pseudopolar, Quasipolar, Semiregular,
                             StronglyClean, StronglyPiRadClean, StronglyPiRegular,
                             StronglyRegular, UnitalQuasipolar, classify, decompose_qp,
                             decompose_spr, everywhere, gdrazin_inverse, pseudopolar,
                             quasipolar, semiregular, strongly_clean, strongly_pi_rad_clean,
                             strongly_pi_regular, strongly_regular, unital_quasipolar)
from .constructions import (BimoduleAction, corner, direct_product, dorroh,
                            dorroh_embedding, find_isomorphism, is_isomorphic, matrix_index,
                            matrix_ring, pair_ring, principal_ideal, quotient, zero_mul, zmod)
from .errors import (AmbiguousInverse, AxiomViolation, BimoduleViolation, CertificateError,
                     CharacteristicMismatch, FeasibilityExceeded, InternalInvariantBroken,
                     NotIdempotent, ParseError, RequiresUnity, RingError, RingMismatch,
                     SemanticError)
from .expr import RingExpr, evaluate, parse_ring_expr
from .harness import (REGISTRY, CheckRecord, TheoremCheck, TheoremReport, check_prop31,
                      default_corpus, replay, run_check, run_suite)
from .ring import Axiom, Element, FiniteGeneralRing, build_ring, circle, quasi_inverse
from .ringfile import dump_ring, dumps, load_ring, loads
from .subsets import SetKind, comm, comm2, ideal_closure, is_abelian, subset

__version__ = "0.1.0"
