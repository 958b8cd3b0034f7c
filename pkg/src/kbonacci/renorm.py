"""The renormalization operator, its powers, and the explicit fixed point.

(RV)(x) sums V over the |s(x_0)| shifts of s(x).  Powers are available
either by brute force (materialize s^n(x) and scan breaks with the
language oracle) or in closed form (break positions from the shifted
delta formula, valid for n >= k), and the two paths cross-check each
other in the tests.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import BudgetExceededError
from .potentials import Potential
from .recognition import (
    Configuration,
    brute_delta,
    delta,
    delta_after_power,
    INFINITE,
)
from .spectral import left_eigenvector, perron_root
from .substitution import FixedPointStream, Substitution, require_kbonacci

MODES = ("closed-form", "brute-force")


# -- configuration transforms -----------------------------------------------


def substitute_config(s: Substitution, x: Configuration, pad: int = 4) -> Configuration:
    """The configuration s(x), with enough head materialized to stay certified."""
    if x.in_subshift:
        off = int(x.tail_data)
        omega = FixedPointStream(s).prefix(off)
        new_off = sum(len(s.images[int(c)]) for c in omega)
        return Configuration("", "orbit", new_off)
    ext = x.with_head_length(s, len(x.head) + pad)
    head = s.apply(ext.head)
    if ext.tail_kind == "const":
        img = s.images[int(str(ext.tail_data))]
        if len(img) == 1:
            return Configuration(head, "const", img)
        return Configuration(head, "periodic", img)
    return Configuration(head, "periodic", s.apply(str(ext.tail_data)))


def shift_config(s: Substitution, x: Configuration, j: int) -> Configuration:
    """The configuration sigma^j(x)."""
    if j < 0:
        raise ValueError("shift must be nonnegative")
    if x.in_subshift:
        return Configuration("", "orbit", int(x.tail_data) + j)
    if j == 0:
        return x
    ext = x.with_head_length(s, j + max(len(x.head) - j, 2))
    return Configuration(ext.head[j:], ext.tail_kind, ext.tail_data)


# -- potential evaluation ----------------------------------------------------


def eval_potential(s: Substitution, V: Potential, x: Configuration) -> float:
    """(g + h)(first letters) / delta^alpha; zero on the subshift."""
    p = delta(s, x)
    if p == INFINITE:
        return 0.0
    if len(x.head) < V.order:
        raise ValueError(f"head of length {len(x.head)} shorter than potential order {V.order}")
    return V.numerator(x.head[: V.order]) / float(p) ** V.alpha


def renorm_apply(s: Substitution, f: Callable[[Configuration], float], x: Configuration) -> float:
    """One application of the renormalization operator to any evaluator f."""
    x0 = int(x.prefix(s, 1))
    y = substitute_config(s, x)
    return math.fsum(f(shift_config(s, y, j)) for j in range(len(s.images[x0])))


def renorm_once(s: Substitution, V: Potential, x: Configuration) -> float:
    """(RV)(x) for a potential in the (g + h)/delta^alpha family."""
    return renorm_apply(s, lambda z: eval_potential(s, V, z), x)


# -- powers of the operator --------------------------------------------------


def _power_prefix(s: Substitution, x: Configuration, n: int, length: int) -> str:
    """Prefix of s^n(x) of at least `length` letters."""
    if length > s.length_budget:
        raise BudgetExceededError(f"materializing {length} letters exceeds budget")
    lengths = s.power_lengths(n)
    probe = x.prefix(s, 64)
    while sum(lengths[int(c)] for c in probe) < length and len(probe) < length:
        probe = x.prefix(s, 2 * len(probe))
    out = []
    acc = 0
    for c in probe:
        out.append(s.power_image(n, int(c)))
        acc += lengths[int(c)]
        if acc >= length:
            break
    return "".join(out)


def renorm_power(
    s: Substitution,
    V: Potential,
    x: Configuration,
    n: int,
    mode: str = "closed-form",
) -> float:
    """(R^n V)(x) = sum over j < |s^n(x_0)| of V(sigma^j s^n(x))."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if n == 0:
        return eval_potential(s, V, x)
    if x.in_subshift:
        return 0.0
    if mode == "closed-form":
        return _renorm_power_closed(s, V, x, n)
    return _renorm_power_brute(s, V, x, n)


def _renorm_power_closed(s: Substitution, V: Potential, x: Configuration, n: int) -> float:
    require_kbonacci(s)
    if n < s.k:
        raise ValueError(f"closed-form mode requires n >= k = {s.k}")
    big_delta = delta_after_power(s, x, n)  # raises if delta infinite/uncertified
    x0 = int(x.prefix(s, 1))
    block = s.power_lengths(n)[x0]
    if V.is_locally_trivial:
        numer = V.numerator_range("", s.k)[0]
        return numer * _inverse_power_sum(V.alpha, big_delta - block + 1, big_delta)
    word = _power_prefix(s, x, n, block + V.order)
    arr = np.frombuffer(word[: block + V.order].encode(), dtype=np.uint8) - ord("0")
    code = np.zeros(block, dtype=np.int64)
    for t in range(V.order):
        code = code * s.k + arr[t : t + block]
    table = np.array(
        [V.numerator("".join(w)) for w in itertools.product(*[
            [str(a) for a in range(s.k)]
        ] * V.order)]
    )
    numerators = table[code]
    depths = big_delta - np.arange(block, dtype=np.float64)
    terms = numerators * depths ** (-V.alpha)
    if block <= 200_000:
        return math.fsum(terms.tolist())
    return float(np.sum(terms))


def _inverse_power_sum(alpha: float, lo: int, hi: int) -> float:
    """Exact sum of d^{-alpha} for lo <= d <= hi, without materializing it."""
    if hi < lo:
        return 0.0
    if hi - lo <= 100_000:
        return math.fsum(d ** (-alpha) for d in range(lo, hi + 1))
    import mpmath

    with mpmath.workdps(30):
        if alpha == 1.0:
            value = mpmath.psi(0, hi + 1) - mpmath.psi(0, lo)
        else:
            value = mpmath.zeta(alpha, lo) - mpmath.zeta(alpha, hi + 1)
    return float(value)


def _renorm_power_brute(s: Substitution, V: Potential, x: Configuration, n: int) -> float:
    p = delta(s, x)
    if p == INFINITE:
        return 0.0
    x0 = int(x.prefix(s, 1))
    block = s.power_lengths(n)[x0]
    head_images = sum(s.power_lengths(n)[int(c)] for c in x.head)
    boundary = sum(s.power_lengths(l)[0] for l in range(n))
    length = head_images + boundary + V.order + 2
    word = _power_prefix(s, x, n, length)
    terms = []
    for j in range(block):
        while True:
            try:
                dj = brute_delta(s, word, j)
                break
            except Exception:
                word = _power_prefix(s, x, n, 2 * len(word))
        terms.append(V.numerator(word[j : j + V.order]) / float(dj) ** V.alpha)
    return math.fsum(terms)


# -- the explicit fixed point ------------------------------------------------


@functools.lru_cache(maxsize=None)
def _perron_pair(k: int) -> tuple[float, tuple[float, ...]]:
    lam = perron_root(k)
    return lam, tuple(left_eigenvector(k, lam))


def fixed_point_U(s: Substitution, x: Configuration) -> float:
    """The explicit fixed point of the renormalization operator.

    log(1 + v_{x_0} / (lambda/(lambda-1) + sum_l v_l |w|_l - v_{x_0}))
    with w the maximal language prefix of x; zero on the subshift by
    continuous extension.
    """
    require_kbonacci(s)
    if x.in_subshift:
        return 0.0
    p = delta(s, x)
    if p == INFINITE:
        return 0.0
    lam, v = _perron_pair(s.k)
    w = x.head[: int(p)]
    x0 = int(w[0])
    denom = lam / (lam - 1.0) + sum(v[a] * w.count(str(a)) for a in range(s.k)) - v[x0]
    return math.log1p(v[x0] / denom)


def tribonacci_fixed_point_cases(s: Substitution, x: Configuration) -> float:
    """The Tribonacci (k = 3) fixed point written out per first letter.

    Same quantity as :func:`fixed_point_U`, with the eigenvector entries
    (lambda, (lambda+1)/lambda, 1) spelled out case by case.
    """
    require_kbonacci(s)
    if s.k != 3:
        raise ValueError("three-case form is specific to k = 3")
    if x.in_subshift:
        return 0.0
    p = delta(s, x)
    if p == INFINITE:
        return 0.0
    lam, _ = _perron_pair(3)
    w = x.head[: int(p)]
    base = (
        lam / (lam - 1.0)
        + lam * w.count("0")
        + (lam + 1.0) / lam * w.count("1")
        + w.count("2")
    )
    x0 = w[0]
    if x0 == "0":
        vx = lam
    elif x0 == "1":
        vx = (lam + 1.0) / lam
    else:
        vx = 1.0
    return math.log1p(vx / (base - vx))


def verify_fixed_point(s: Substitution, samples: Sequence[Configuration]) -> float:
    """Max over the samples of |(RU)(x) - U(x)|."""
    worst = 0.0
    for x in samples:
        left = renorm_apply(s, lambda z: fixed_point_U(s, z), x)
        worst = max(worst, abs(left - fixed_point_U(s, x)))
    return worst


# -- convergence studies -----------------------------------------------------


@dataclass(frozen=True)
class ConvergenceStudy:
    """Table of (n, R^n V(x)) values with a verdict on the tail behaviour."""

    alpha: float
    rows: tuple[tuple[int, float], ...]
    verdict: str            # "vanishes" | "diverges" | "converges"
    limit: float | None
    growth_exponent: float | None

    @property
    def final_value(self) -> float:
        return self.rows[-1][1]


DIVERGENCE_THRESHOLD = 1e6


def convergence_study(
    s: Substitution,
    V: Potential,
    x: Configuration,
    n_max: int = 25,
    divergence_threshold: float = DIVERGENCE_THRESHOLD,
    ratio_tol: float = 0.02,
) -> ConvergenceStudy:
    """Iterate the operator and classify the tail of R^n V(x).

    The verdict comes from the step ratio R^{n+1}V / R^nV over the last
    few iterates, which settles near lambda^{1-alpha}: above 1 the values
    diverge, below 1 they vanish, and at 1 they converge to a nonzero
    limit.  The fitted per-step growth exponent (base lambda) is reported
    in the diverging case.
    """
    rows = []
    for n in range(n_max + 1):
        mode = "brute-force" if n < s.k else "closed-form"
        value = renorm_power(s, V, x, n, mode=mode)
        rows.append((n, value))
        if value > divergence_threshold:
            break
    values = [v for _, v in rows]
    tail = values[-5:]
    ratios = [b / a for a, b in zip(tail, tail[1:]) if a > 0.0]
    rho = float(np.exp(np.mean(np.log(ratios)))) if ratios else 0.0
    if rho > 1.0 + ratio_tol:
        lam = _perron_pair(s.k)[0] if _is_kbonacci(s) else None
        exponent = math.log(rho) / math.log(lam) if lam else math.log(rho)
        return ConvergenceStudy(V.alpha, tuple(rows), "diverges", None, exponent)
    if rho < 1.0 - ratio_tol:
        return ConvergenceStudy(V.alpha, tuple(rows), "vanishes", 0.0, None)
    return ConvergenceStudy(V.alpha, tuple(rows), "converges", values[-1], None)


def _is_kbonacci(s: Substitution) -> bool:
    from .substitution import is_kbonacci

    return is_kbonacci(s)
