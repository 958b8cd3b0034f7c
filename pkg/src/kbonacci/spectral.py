"""Perron data of the k-bonacci incidence matrix and ergodic averages.

The dominant root lambda of X^k - sum_{j<k} X^j drives all growth rates;
the left eigenvector is available in closed form and is normalized so
that its first entry equals lambda.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .substitution import FixedPointStream, Substitution

ROOT_TOL = 1e-14


def _charpoly(k: int, x: float) -> float:
    return x**k - sum(x**j for j in range(k))


def _charpoly_deriv(k: int, x: float) -> float:
    return k * x ** (k - 1) - sum(j * x ** (j - 1) for j in range(1, k))


def perron_root(k: int) -> float:
    """Dominant root of X^k - sum_{j=0}^{k-1} X^j, in (1, 2).

    Bisection on [1, 2] (the polynomial is negative at 1, positive at 2
    and monotone between) followed by a Newton polish.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    lo, hi = 1.0, 2.0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if _charpoly(k, mid) < 0.0:
            lo = mid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    for _ in range(8):
        step = _charpoly(k, x) / _charpoly_deriv(k, x)
        x -= step
        if abs(step) < ROOT_TOL:
            break
    return x


def left_eigenvector(k: int, lam: float | None = None) -> np.ndarray:
    """Left Perron eigenvector v with v_l = lambda^{l+1-k} sum_{j<=k-1-l} lambda^j.

    The normalization makes v_{k-1} = 1 and forces v_0 = lambda via the
    defining polynomial identity.
    """
    if lam is None:
        lam = perron_root(k)
    v = np.empty(k)
    for l in range(k):
        v[l] = sum(lam**j for j in range(k - l)) / lam ** (k - 1 - l)
    return v


def tribonacci_cardan() -> float:
    """Cardan closed form of the Tribonacci root (k = 3)."""
    a = (19.0 + 3.0 * math.sqrt(33.0)) ** (1.0 / 3.0)
    b = (19.0 - 3.0 * math.sqrt(33.0)) ** (1.0 / 3.0)
    return (a + b + 1.0) / 3.0


@dataclass(frozen=True)
class GrowthDecomposition:
    """|s^n(l)| = gamma_l lambda^n + r_l(n): coefficients and remainders."""

    k: int
    lam: float
    gamma: np.ndarray                 # per letter
    lengths: tuple[tuple[int, ...], ...]   # lengths[n][l] = |s^n(l)|, exact
    remainders: np.ndarray            # remainders[n, l] = r_l(n)
    theta_hat: float                  # fitted decay rate of |r_l(n)|

    def remainder_bound_ok(self) -> bool:
        return self.theta_hat < self.lam


def growth_decomposition(s: Substitution, n_max: int = 60) -> GrowthDecomposition:
    """Estimate gamma_l from exact matrix-power lengths at n_max and fit the
    remainder decay rate; no words are materialized."""
    lam = perron_root(s.k) if _looks_kbonacci(s) else _dominant_eigenvalue(s)
    lengths = [tuple(s.power_lengths(n)) for n in range(n_max + 1)]
    gamma = np.array([lengths[n_max][l] / lam**n_max for l in range(s.k)])
    remainders = np.array(
        [[lengths[n][l] - gamma[l] * lam**n for l in range(s.k)] for n in range(n_max + 1)]
    )
    # fit |r| ~ C theta^n on the mid-range where floating error is negligible
    theta_hat = 0.0
    ns, logs = [], []
    for n in range(1, min(n_max, 30) + 1):
        r = np.abs(remainders[n]).max()
        if r > 1e-9:
            ns.append(n)
            logs.append(math.log(r))
    if len(ns) >= 2:
        slope = np.polyfit(ns, logs, 1)[0]
        theta_hat = math.exp(slope)
    return GrowthDecomposition(s.k, lam, gamma, tuple(lengths), remainders, theta_hat)


def _looks_kbonacci(s: Substitution) -> bool:
    from .substitution import is_kbonacci

    return is_kbonacci(s)


def _dominant_eigenvalue(s: Substitution) -> float:
    eigvals = np.linalg.eigvals(s.incidence().astype(float))
    return float(np.max(np.abs(eigvals)))


def geometric_tail(s: Substitution, n: int) -> tuple[int, float]:
    """(exact sum_{l<n} |s^l(0)|, residual against gamma_0 lambda^n / (lambda-1))."""
    total = sum(s.power_lengths(l)[0] for l in range(n))
    growth = growth_decomposition(s, max(n, 40))
    predicted = growth.gamma[0] * growth.lam**n / (growth.lam - 1.0)
    return total, total - predicted


def letter_frequencies(s: Substitution) -> np.ndarray:
    """Letter frequencies of the unique invariant measure: the normalized
    right Perron eigenvector of the incidence matrix."""
    m = s.incidence().astype(float)
    eigvals, eigvecs = np.linalg.eig(m)
    idx = int(np.argmax(eigvals.real))
    vec = np.abs(eigvecs[:, idx].real)
    return vec / vec.sum()


def empirical_letter_frequencies(s: Substitution, window: int) -> np.ndarray:
    omega = FixedPointStream(s).prefix(window)
    return np.array([omega.count(str(a)) / window for a in range(s.k)])


def word_frequency(s: Substitution, w: str, window: int) -> float:
    """Sliding-window frequency of w in the fixed-point prefix of length window."""
    omega = FixedPointStream(s).prefix(window)
    positions = max(window - len(w) + 1, 1)
    count = 0
    pos = omega.find(w)
    while pos != -1:
        count += 1
        pos = omega.find(w, pos + 1)
    return count / positions


def ergodic_integral(s: Substitution, g, window: int) -> tuple[float, float]:
    """Integral of a locally constant g against the unique invariant measure.

    Sums g(w) times the empirical frequency of w over all language words
    of the order of g; the error bar is the spread between the half- and
    full-window estimates.
    """
    order = g.order
    if window < 4 * order:
        raise ValueError("window too small for the order of g")

    def estimate(w_len: int) -> float:
        index = s.language(order)
        return math.fsum(
            g(w) * word_frequency(s, w, w_len) for w in index.words(order)
        )

    full = estimate(window)
    half = estimate(window // 2)
    return full, abs(full - half)


@dataclass(frozen=True)
class SpectralData:
    """Bundled Perron data for a k-bonacci substitution."""

    k: int
    lam: float
    v: np.ndarray
    gamma: np.ndarray
    theta_hat: float

    @property
    def polynomial_residual(self) -> float:
        return abs(self.lam**self.k - sum(self.lam**j for j in range(self.k)))


def spectral_data(s: Substitution, n_max: int = 60) -> SpectralData:
    growth = growth_decomposition(s, n_max)
    return SpectralData(
        k=s.k,
        lam=growth.lam,
        v=left_eigenvector(s.k, growth.lam),
        gamma=growth.gamma,
        theta_hat=growth.theta_hat,
    )
