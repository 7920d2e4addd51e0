"""Predictor formulas for the moment sums and the pi(x, k) main terms.

Every predictor returns the natural log of the predicted quantity.  The
o(1), o(k) and e^{O(k)} factors of the underlying asymptotic statements are
dropped throughout, so these are order-of-magnitude instruments, not
estimates with error bars.

Scales are given as :class:`LogScale`, which stores ``log2x = log log x``
directly so that synthetic points such as ``log log x = 10**6`` (where
``log x`` itself overflows a double) remain usable by the formulas that
only need the iterated logs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from . import combinatorics as comb
from .errors import InvalidArgument, OutOfRegime
from .sieve import SieveTable
from .special import EULER_GAMMA, LOG2, constants_report, solve_rho, zeta_prime


@dataclass(frozen=True)
class LogScale:
    """x described by its iterated logarithms.

    ``logx`` is ``inf`` for synthetic scales beyond double range.  Iterates
    are checked for positivity only by the formulas that need them.
    """

    log2x: float
    logx: float = math.inf

    @classmethod
    def from_logx(cls, logx: float) -> "LogScale":
        logx = float(logx)
        if not logx > 1.0:
            raise InvalidArgument(f"need log x > 1 so that log log x > 0, got {logx}")
        return cls(log2x=math.log(logx), logx=logx)

    @classmethod
    def from_log2x(cls, log2x: float) -> "LogScale":
        log2x = float(log2x)
        if not log2x > 0.0:
            raise InvalidArgument(f"need log log x > 0, got {log2x}")
        try:
            logx = math.exp(log2x)
        except OverflowError:
            logx = math.inf
        return cls(log2x=log2x, logx=logx)

    @classmethod
    def from_x(cls, x: float) -> "LogScale":
        return cls.from_logx(math.log(x))

    @property
    def log3x(self) -> float:
        return math.log(self.log2x)

    @property
    def log4x(self) -> float:
        if self.log3x <= 0.0:
            raise InvalidArgument(f"log_4 x undefined: log_3 x = {self.log3x} <= 0")
        return math.log(self.log3x)

    def need_logx(self) -> float:
        if math.isinf(self.logx):
            raise InvalidArgument(f"log x is not representable at log log x = {self.log2x}")
        return self.logx

    def need_log3x(self) -> float:
        l3 = self.log3x
        if not l3 > 0.0:
            raise InvalidArgument(f"need log_3 x > 0 (log log x > 1), got log_3 x = {l3}")
        return l3


def log_L(scale: LogScale) -> float:
    """log L(x) = log x * log_3 x / log_2 x."""
    logx = scale.need_logx()
    return logx * scale.log3x / scale.log2x


# -- moment predictors --------------------------------------------------------------

THEOREMS = ("1.1", "1.2", "1.3", "1.4", "1.5", "1.6", "1.7", "1.8", "1.9", "1.10",
            "oppenheim", "kalmar")


@dataclass(frozen=True)
class Prediction:
    theorem: str
    beta: float
    log_sum: float
    components: dict = field(default_factory=dict)


def _require(cond: bool, theorem: str, beta: float, what: str) -> None:
    if not cond:
        raise InvalidArgument(f"theorem {theorem} needs {what}, got beta={beta}")


def _power_term_small(beta: float, scale: LogScale) -> float:
    # ((1 - beta) log_2 x / (log_3 x)^beta)^(1 / (1 - beta))
    l3 = scale.need_log3x()
    return ((1.0 - beta) * scale.log2x / l3**beta) ** (1.0 / (1.0 - beta))


def predict(theorem: str, beta: float, scale: LogScale) -> Prediction:
    """log of the predicted sum for one theorem at exponent ``beta``.

    For the negative-moment theorems 1.9 and 1.10 ``beta > 0`` is the
    magnitude: they predict the sums of ``h(n) ** -beta``.
    """
    theorem = str(theorem)
    beta = float(beta)
    logx = scale.need_logx()
    log2x = scale.log2x
    comps: dict[str, float] = {"logx": logx, "log2x": log2x}

    if theorem == "1.1":
        _require(beta == 1.0, theorem, beta, "beta = 1")
        c = constants_report().c_F.value
        term = c * math.sqrt(logx / log2x)
        comps.update(c=c, exponent_term=term)
        value = logx + term
    elif theorem == "1.2":
        _require(beta == 1.0, theorem, beta, "beta = 1")
        c = constants_report().c_G.value
        term = c * logx / log2x
        comps.update(c=c, exponent_term=term)
        value = logx + term
    elif theorem in ("1.3", "1.7"):
        _require(beta > 1.0, theorem, beta, "beta > 1")
        ll = log_L(scale)
        comps.update(log_L=ll)
        value = beta * logx - beta * ll
    elif theorem == "1.5":
        _require(beta > 1.0, theorem, beta, "beta > 1")
        ll = log_L(scale)
        comps.update(log_L=ll)
        value = beta * logx - 2.0 * beta * ll
    elif theorem in ("1.4", "1.6"):
        _require(0.0 < beta < 1.0, theorem, beta, "0 < beta < 1")
        term = _power_term_small(beta, scale)
        comps.update(log3x=scale.log3x, exponent_term=term)
        value = logx + term
    elif theorem == "1.8":
        _require(0.0 < beta < 1.0, theorem, beta, "0 < beta < 1")
        coef = (1.0 - beta) * LOG2 ** (-beta / (1.0 - beta))
        term = coef * log2x ** (1.0 / (1.0 - beta))
        comps.update(coefficient=coef, exponent_term=term)
        value = logx + term
    elif theorem == "1.9":
        _require(beta > 0.0, theorem, beta, "beta > 0")
        l3 = scale.need_log3x()
        term = ((1.0 + beta) * log2x * l3**beta) ** (1.0 / (1.0 + beta))
        comps.update(log3x=l3, exponent_term=term)
        value = logx - log2x + term
    elif theorem == "1.10":
        _require(beta > 0.0, theorem, beta, "beta > 0")
        coef = (1.0 + beta) * LOG2 ** (beta / (1.0 + beta))
        term = coef * log2x ** (1.0 / (1.0 + beta))
        comps.update(coefficient=coef, exponent_term=term)
        value = logx - log2x + term
    elif theorem == "oppenheim":
        _require(beta == 1.0, theorem, beta, "beta = 1")
        const = -math.log(2.0 * math.sqrt(math.pi))
        comps.update(log_constant=const)
        value = const + logx + 2.0 * math.sqrt(logx) - 0.75 * log2x
    elif theorem == "kalmar":
        _require(beta == 1.0, theorem, beta, "beta = 1")
        rho = solve_rho()
        k = -1.0 / (rho * zeta_prime(rho))
        comps.update(rho=rho, kalmar_K=k)
        value = rho * logx + math.log(k)
    else:
        raise InvalidArgument(f"unknown theorem {theorem!r}; expected one of {', '.join(THEOREMS)}")
    return Prediction(theorem, beta, value, comps)


def theorem_for(fn: str, beta: float) -> tuple[str, float] | None:
    """Which predictor covers the sum of ``fn(n) ** beta``; (theorem, its beta) or None."""
    if beta == 1.0:
        return {"f": "oppenheim", "g": "kalmar", "F": "1.1", "G": "1.2"}[fn], 1.0
    if beta > 1.0:
        return {"f": ("1.3", beta), "F": ("1.5", beta), "G": ("1.7", beta)}.get(fn)
    if 0.0 < beta < 1.0:
        return {"f": ("1.4", beta), "F": ("1.6", beta), "G": ("1.8", beta)}.get(fn)
    if beta < 0.0:
        return ("1.9" if fn in ("f", "F") else "1.10"), -beta
    return None


# -- term functions of the negative moments --------------------------------------------

def term_b(k: int, beta: float, log2x: float, C: float = 0.0) -> float:
    """log of B_k^-beta (log_2 x + C)^(k-1) / (k-1)!."""
    if k < 1 or beta <= 0:
        raise InvalidArgument(f"need k >= 1 and beta > 0, got k={k}, beta={beta}")
    return -beta * comb.log_bell(k) + (k - 1) * math.log(log2x + C) - math.lgamma(k)


def term_A(k: int, beta: float, log2x: float, C: float = 0.0) -> float:
    """log of a_k^-beta (log_2 x + C)^(k-1) / (k-1)!."""
    if k < 1 or beta <= 0:
        raise InvalidArgument(f"need k >= 1 and beta > 0, got k={k}, beta={beta}")
    return -beta * comb.log_fubini(k) + (k - 1) * math.log(log2x + C) - math.lgamma(k)


def term_array(fn: str, kmax: int, beta: float, log2x: float, C: float = 0.0) -> np.ndarray:
    """term_b (fn='F') or term_A (fn='G') for k = 1..kmax; entry i is k = i + 1."""
    if fn == "F":
        logs = comb.log_bell_array(kmax)
    elif fn == "G":
        logs = comb.log_fubini_array(kmax)
    else:
        raise InvalidArgument(f"term scans exist for F and G, got {fn!r}")
    k = np.arange(1, kmax + 1, dtype=np.float64)
    return -beta * logs[1:] + (k - 1) * math.log(log2x + C) - gammaln(k)


def kstar_F(beta: float, scale: LogScale) -> float:
    """((1 + beta)^-beta log_2 x (log_3 x)^beta)^(1 / (1 + beta))."""
    if beta <= 0:
        raise InvalidArgument(f"need beta > 0, got {beta}")
    l3 = scale.need_log3x()
    return ((1.0 + beta) ** -beta * scale.log2x * l3**beta) ** (1.0 / (1.0 + beta))


def kstar_G(beta: float, scale: LogScale) -> float:
    """(log 2)^(beta / (1 + beta)) (log_2 x)^(1 / (1 + beta))."""
    if beta <= 0:
        raise InvalidArgument(f"need beta > 0, got {beta}")
    return LOG2 ** (beta / (1.0 + beta)) * scale.log2x ** (1.0 / (1.0 + beta))


# -- pi(x, k) main terms ------------------------------------------------------------------

@dataclass(frozen=True)
class HTVariables:
    L0: float
    y: float
    xi: float
    M: float
    R: float


def _L0(k: int, scale: LogScale) -> float:
    if k < 3:
        raise InvalidArgument(f"need k >= 3, got {k}")
    L0 = scale.log2x - math.log(k) - math.log(math.log(k))
    if not L0 > 1.0:
        raise OutOfRegime(f"L0 = {L0:.6g} <= 1 at k={k}, log2x={scale.log2x:.6g}")
    return L0


def ht_variables(k: int, scale: LogScale) -> HTVariables:
    L0 = _L0(k, scale)
    y = k / L0
    if not y > 1.0:
        raise OutOfRegime(f"y = k / L0 = {y:.6g} <= 1")
    xi = scale.need_logx() / (y * math.log(y))
    if not xi > math.e:
        raise OutOfRegime(f"xi = {xi:.6g} too small for log log xi")
    M = math.log(xi) + math.log(math.log(xi)) - math.log(L0) - EULER_GAMMA
    if not M > 0.0:
        raise OutOfRegime(f"M = {M:.6g} <= 0")
    R = (1.0 / L0) * (1.0 / y + 1.0 / L0)
    return HTVariables(L0, y, xi, M, R)


def ht_main_term(k: int, scale: LogScale) -> float:
    """log of x / (k! log x) * exp(k (log M + 1/M)); the O(R) term is dropped."""
    v = ht_variables(k, scale)
    return scale.logx - math.lgamma(k + 1) - scale.log2x + k * (math.log(v.M) + 1.0 / v.M)


def pomerance_main_term(k: int, scale: LogScale) -> float:
    """log of x / (k! log x) * exp(k log L0); the o(k) term is dropped."""
    L0 = _L0(k, scale)
    return scale.need_logx() - math.lgamma(k + 1) - scale.log2x + k * math.log(L0)


# -- maximal term of the omega decomposition -------------------------------------------------

@dataclass(frozen=True)
class MaxTerm:
    fn: str
    beta: float
    k: int
    log_value: float
    n_terms: int
    exact: int | None = None


def _is_whole(beta: float) -> bool:
    return beta >= 0 and float(beta).is_integer()


def max_term_exact(fn: str, beta: float, table: SieveTable, upto: int | None = None) -> MaxTerm:
    """argmax over k of B_k^beta pi(x, k) (fn='F') or a_k^beta pi(x, k) (fn='G').

    k ranges over every k with pi(x, k) > 0, including k = 0 for n = 1.
    Ties resolve to the smallest k.
    """
    if fn not in ("F", "G"):
        raise InvalidArgument(f"fn must be 'F' or 'G', got {fn!r}")
    hist = table.omega_counts(upto)
    ks = [k for k in range(len(hist)) if hist[k] > 0]
    count = comb.bell if fn == "F" else comb.fubini
    if _is_whole(beta):
        b = int(beta)
        values = [count(k) ** b * int(hist[k]) for k in ks]
        best = max(range(len(ks)), key=lambda i: (values[i], -ks[i]))
        return MaxTerm(fn, beta, ks[best], math.log(values[best]), len(ks), values[best])
    logs = [beta * math.log(count(k)) + math.log(int(hist[k])) for k in ks]
    best = max(range(len(ks)), key=lambda i: (logs[i], -ks[i]))
    return MaxTerm(fn, beta, ks[best], logs[best], len(ks))


def max_term_synthetic(fn: str, beta: float, scale: LogScale, kmax: int = 10**5,
                       C: float = 0.0) -> MaxTerm:
    """argmax of term_b (F) or term_A (G) over 1 <= k <= kmax, smallest k on ties."""
    terms = term_array(fn, kmax, beta, scale.log2x, C)
    i = int(np.argmax(terms))
    return MaxTerm(fn, beta, i + 1, float(terms[i]), kmax)
