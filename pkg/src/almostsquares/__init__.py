"""Consecutive integers with small squarefree parts.

Filters candidate triples (a, b, c) for n = a x^2, n+1 = b y^2, n+2 = c z^2,
searches for actual solutions, and verifies an infinite family with all three
squarefree parts below n^(1/3).
"""

from .arith import SfpTable, build_sfp_table, factorize, integer_sqrt, sfp
from .ecmap import CurvePoint, is_torsion, map_solution
from .family import bound_check, family_term, recurrence_term
from .localsolve import QuadricIntersection, is_locally_solvable, locally_solvable_everywhere
from .pell import cf_expand, eq1_solvable, eq2_solvable, eq3_solvable, norm_represents, pell_fundamental
from .pipeline import StageReport, Triple, cross_check, run_pipeline, search_solutions
from .tunnell import TunnellTables, build_theta, congruent_candidate, tunnell_not_congruent

__version__ = "0.1.0"
