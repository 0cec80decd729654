"""Primary decomposition of ideals in ZZ[x1..xn].

Strong Groebner bases over the integers, ideal arithmetic, GTZ-style
primary decomposition over QQ and F_p, and a per-prime parallel driver that
assembles irredundant primary decompositions over ZZ.
"""

from .poly import GF, Ordering, Poly, QQ, Ring, ZZ, block_dp, dp, elim, lex, render
from .gb import GBasis, buchberger, normal_form
from .ideals import (
    Ideal,
    contract_from_rationals,
    contract_z,
    dimension,
    equals,
    intersect,
    max_independent_set,
    poly_lcm,
    power_generators,
    quotient,
    quotient_ideal,
    saturate,
    stabilization_exponent,
)
from .fielddec import (
    FactorList,
    FieldComponent,
    factor_univariate_fp,
    factor_univariate_q,
    min_ass_field,
    primdec_field,
    squarefree_part,
    zerodim_primdec,
)
from .zdec import (
    Component,
    Decomposition,
    VerifyReport,
    extract_z,
    lift_component,
    primdec_z,
    remainder_split,
    remove_redundant,
    separators_z,
    verify,
)

__version__ = "0.1.0"
