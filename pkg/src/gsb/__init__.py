"""Groebner-Shirshov workbench: orders, rewriting, completion and growth
for finitely presented semigroups and associative algebras."""

from __future__ import annotations

__version__ = "0.1.0"

from .core import GF, QQ, Alphabet, Field, Polynomial, Word, leading_monomial, make_monic, poly_mul
from .errors import (DomainError, EmptyPolynomialError, GSBError, InconsistentPresentationError,
                     NonTerminationError, OrientationError, ParseError, ResourceError,
                     UnsupportedKindError)
from .orders import (DegLex, LengthBound, MonomialOrder, ReverseTower, Tower, WeightedDegLex,
                     compare, length_bound, parse_order)
from .rewrite import (Rule, RuleSchema, RewriteSystem, find_occurrence, is_irreducible,
                      normal_form, normal_word, reduction_steps)
from .completion import (CompositionRecord, complete, compositions, fold, infer_schemas,
                         inter_reduce, verify_gsb)
from .growth import (ForbiddenSet, build_irr_automaton, classify_growth, count_normal_words,
                     dim_filtration, free_submonoid_check, gkdim_report, sardinas_patterson)
from .presentations import (ManturovSpec, OreSpec, Presentation, manturov, ore_extension,
                            semigroup, word_problem)
from .textio import (format_presentation, format_system, parse_polynomial,
                     parse_presentation_file, parse_system_file)
