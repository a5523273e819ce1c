"""Arbitrary-precision Laurent-Stieltjes constants, explicit bounds and a
zero-free disk for the Riemann zeta function."""

__version__ = "0.1.0"

from .numerics import PrecisionContext, bernoulli, stabilize  # noqa: E402
from .characters import DirichletCharacter, character, enumerate_characters  # noqa: E402
from .stieltjes import (StieltjesTable, build_table, gamma_chi, gamma_hurwitz,  # noqa: E402
                        gamma_over_factorial, gamma_zeta, zeta_table)
from .lfunc import (hurwitz_zeta, l_eval, taylor_eval, verify_application_a,  # noqa: E402
                    zeta_laurent_eval)
from .bounds import crossover, matsuoka_bound, theorem1_bound  # noqa: E402
from .zerofree import check_improvement, find_t0, minorant  # noqa: E402
