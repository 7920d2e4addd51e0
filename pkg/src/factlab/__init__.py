"""Factorization-counting functions, their moment sums and the constants of their asymptotics."""

__version__ = "0.1.0"

from .asymptotics import (
    LogScale,
    MaxTerm,
    Prediction,
    ht_main_term,
    ht_variables,
    kstar_F,
    kstar_G,
    max_term_exact,
    max_term_synthetic,
    pomerance_main_term,
    predict,
    term_A,
    term_b,
)
from .bounds import HR_C1, HR_C2, hardy_ramanujan_bound, sathe_selberg_ratios
from .combinatorics import (
    bell,
    bell_ratio,
    bell_ratio_approx,
    fubini,
    log_bell,
    log_bell_debruijn,
    log_bell_moser_wyman,
    log_fubini,
    log_fubini_asymptotic,
)
from .counts import F_count, G_count, f_count, g_count
from .errors import FactlabError, InvalidArgument, OutOfDomain, OutOfRegime, ResourceError
from .moments import KalmarRow, MomentReport, RunConfig, kalmar_trend, moment_sum
from .sieve import (
    SieveTable,
    build_sieve,
    cached_sieve,
    dump_sieve,
    factorize,
    is_squarefree,
    load_sieve,
    omega,
    pi_prime_xk,
    pi_xk,
    signature,
)
from .special import (
    EULER_GAMMA,
    H_func,
    S_func,
    constants_report,
    expint_ei,
    gamma0,
    lambert_w,
    solve_rho,
    zeta,
    zeta_prime,
)
from .verify import bench, verify
