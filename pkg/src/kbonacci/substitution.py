"""Substitution morphisms, powers, incidence matrices and fixed points.

Words are plain Python strings of decimal digits, one digit per letter,
so the alphabet size is capped at 10 for the word machinery.  Spectral
quantities that only need the alphabet size (Perron root, eigenvectors)
accept larger k directly, see :mod:`kbonacci.spectral`.
"""

from __future__ import annotations

import threading
from typing import Sequence

import numpy as np

from .errors import BudgetExceededError

MAX_ALPHABET = 10

DEFAULT_LENGTH_BUDGET = 10**8


def _as_letter(a) -> int:
    a = int(a)
    if a < 0:
        raise ValueError(f"letter must be nonnegative, got {a}")
    return a


class Substitution:
    """A non-erasing morphism of the free monoid over {0, ..., k-1}.

    Power images s^n(a) are memoized per (n, letter).  The total number of
    cached letters is bounded by ``length_budget``; exceeding it raises
    :class:`BudgetExceededError` instead of silently eating memory
    (image lengths grow like lambda^n).
    """

    def __init__(self, images: Sequence[str], length_budget: int = DEFAULT_LENGTH_BUDGET):
        images = tuple(str(w) for w in images)
        k = len(images)
        if k < 1 or k > MAX_ALPHABET:
            raise ValueError(f"alphabet size must be in [1, {MAX_ALPHABET}], got {k}")
        for a, w in enumerate(images):
            if len(w) == 0:
                raise ValueError(f"substitution must be non-erasing, image of {a} is empty")
            if any(not c.isdigit() or int(c) >= k for c in w):
                raise ValueError(f"image of {a} ({w!r}) uses letters outside the alphabet")
        self.images = images
        self.k = k
        self.length_budget = int(length_budget)
        self._lock = threading.Lock()
        self._power_cache: dict[tuple[int, int], str] = {}
        self._cached_letters = 0
        self._pairs: frozenset[str] | None = None
        self._lang_cache = None  # (depth, LanguageIndex)

    # -- basic morphism operations ------------------------------------

    def apply(self, w: str) -> str:
        """Image of a finite word: concatenation of the letter images."""
        images = self.images
        return "".join(images[int(c)] for c in w)

    def power_image(self, n: int, a) -> str:
        """s^n(a), with s^0 the identity.  Cached."""
        a = _as_letter(a)
        if a >= self.k:
            raise ValueError(f"letter {a} not in alphabet of size {self.k}")
        if n < 0:
            raise ValueError("power must be nonnegative")
        if n == 0:
            return str(a)
        with self._lock:
            return self._power_image_locked(n, a)

    def _power_image_locked(self, n: int, a: int) -> str:
        key = (n, a)
        cached = self._power_cache.get(key)
        if cached is not None:
            return cached
        if n == 1:
            word = self.images[a]
        else:
            prev = self._power_image_locked(n - 1, a)
            images = self.images
            word = "".join(images[int(c)] for c in prev)
        self._cached_letters += len(word)
        if self._cached_letters > self.length_budget:
            self._cached_letters -= len(word)
            raise BudgetExceededError(
                f"power-image cache would exceed {self.length_budget} letters at s^{n}({a})"
            )
        self._power_cache[key] = word
        return word

    def apply_power(self, n: int, w: str) -> str:
        """s^n(w) assembled from cached letter images."""
        if n == 0:
            return w
        return "".join(self.power_image(n, c) for c in w)

    def power_lengths(self, n: int) -> list[int]:
        """Exact |s^n(a)| for every letter a, via integer recursion.

        Never materializes words, so arbitrary n is fine.
        """
        if n < 0:
            raise ValueError("power must be nonnegative")
        lengths = [1] * self.k
        counts = [[self.images[a].count(str(b)) for b in range(self.k)] for a in range(self.k)]
        for _ in range(n):
            lengths = [sum(counts[a][b] * lengths[b] for b in range(self.k)) for a in range(self.k)]
        return lengths

    # -- matrix and primitivity ---------------------------------------

    def incidence(self) -> np.ndarray:
        """Incidence matrix M with M[i, j] = number of i's in the image of j."""
        k = self.k
        m = np.zeros((k, k), dtype=np.int64)
        for j in range(k):
            for c in self.images[j]:
                m[int(c), j] += 1
        return m

    def is_primitive(self) -> bool:
        return is_primitive(self.incidence())

    # -- fixed point ----------------------------------------------------

    def fixed_point_seed(self) -> int:
        """A letter a with s(a) starting by a and |s(a)| >= 2, if any."""
        for a in range(self.k):
            w = self.images[a]
            if len(w) >= 2 and int(w[0]) == a:
                return a
        raise ValueError("substitution has no expanding fixed-point seed letter")

    def pair_language(self) -> frozenset[str]:
        """All length-2 factors of the fixed point, by closure under s."""
        if self._pairs is not None:
            return self._pairs
        seed = self.fixed_point_seed()
        pairs = {self.images[seed][:2]}
        while True:
            new = set(pairs)
            for p in pairs:
                img = self.apply(p)
                new.update(img[i : i + 2] for i in range(len(img) - 1))
            if new == pairs:
                break
            pairs = new
        self._pairs = frozenset(pairs)
        return self._pairs

    def language(self, depth: int):
        """A LanguageIndex for this substitution, cached and grown on demand."""
        from .words import build_language

        cached = self._lang_cache
        if cached is None or cached.depth < depth:
            cached = build_language(self, depth)
            self._lang_cache = cached
        return cached

    # -- serialization ----------------------------------------------------

    def to_text(self) -> str:
        """Plain-text form: k on line 1, then one image word per line."""
        return "\n".join([str(self.k)] + list(self.images)) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Substitution":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty substitution file")
        k = int(lines[0])
        images = lines[1:]
        if len(images) != k:
            raise ValueError(f"expected {k} image lines, got {len(images)}")
        return cls(images)

    def __eq__(self, other):
        return isinstance(other, Substitution) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Substitution({list(self.images)})"


def is_primitive(matrix: np.ndarray) -> bool:
    """True iff some power up to the Wielandt bound (k-1)^2 + 1 is positive.

    Works on the boolean support of the matrix so powers cannot overflow.
    """
    m = np.asarray(matrix)
    k = m.shape[0]
    if m.shape != (k, k):
        raise ValueError("incidence matrix must be square")
    b = m > 0
    power = b.copy()
    bound = (k - 1) ** 2 + 1
    for _ in range(bound):
        if power.all():
            return True
        power = (power.astype(np.uint8) @ b.astype(np.uint8)) > 0
    return bool(power.all())


def kbonacci(k: int, length_budget: int = DEFAULT_LENGTH_BUDGET) -> Substitution:
    """The k-bonacci substitution: a -> 0(a+1) for a < k-1 and (k-1) -> 0."""
    if k < 2:
        raise ValueError(f"k-bonacci requires k >= 2, got {k}")
    if k > MAX_ALPHABET:
        raise ValueError(f"word machinery supports k <= {MAX_ALPHABET}, got {k}")
    images = [f"0{a + 1}" for a in range(k - 1)] + ["0"]
    return Substitution(images, length_budget=length_budget)


def is_kbonacci(s: Substitution) -> bool:
    k = s.k
    if k < 2:
        return False
    expected = tuple(f"0{a + 1}" for a in range(k - 1)) + ("0",)
    return s.images == expected


def require_kbonacci(s: Substitution) -> None:
    if not is_kbonacci(s):
        raise ValueError("this operation is specific to k-bonacci substitutions")


def check_recurrence(s: Substitution, n: int) -> bool:
    """Exact check of s^{n+k}(0) == s^{n+k-1}(0) s^{n+k-2}(0) ... s^n(0)."""
    require_kbonacci(s)
    if n < 0:
        raise ValueError("n must be nonnegative")
    k = s.k
    left = s.power_image(n + k, 0)
    right = "".join(s.power_image(n + k - 1 - i, 0) for i in range(k))
    return left == right


class FixedPointStream:
    """On-demand prefixes of the one-sided fixed point of a substitution.

    The buffer only ever grows; extending it never changes existing
    entries because s maps prefixes of the fixed point to prefixes.
    """

    def __init__(self, subst: Substitution, seed: int | None = None):
        self.subst = subst
        self.seed = subst.fixed_point_seed() if seed is None else _as_letter(seed)
        if int(subst.images[self.seed][0]) != self.seed:
            raise ValueError(f"s({self.seed}) does not start with {self.seed}")
        self._buffer = subst.images[self.seed]

    def prefix(self, length: int) -> str:
        if length < 0:
            raise ValueError("length must be nonnegative")
        if length > self.subst.length_budget:
            raise BudgetExceededError(
                f"requested fixed-point prefix of {length} letters exceeds budget"
            )
        buf = self._buffer
        while len(buf) < length:
            buf = self.subst.apply(buf)
            if len(buf) > 4 * max(length, 1) and len(buf) > self.subst.length_budget:
                raise BudgetExceededError("fixed-point buffer exceeded budget")
        self._buffer = buf
        return buf[:length]


def fixed_prefix(source: "Substitution | FixedPointStream", length: int) -> str:
    """Length-`length` prefix of the fixed point of a substitution."""
    stream = FixedPointStream(source) if isinstance(source, Substitution) else source
    return stream.prefix(length)
