"""Distance-to-subshift combinatorics: the break function delta, its
closed forms after substitution powers and shifts, cut-point sets of the
fixed point, and recognizability scans.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InconclusiveWindowError, UncertifiedConfigurationError
from .substitution import FixedPointStream, Substitution, require_kbonacci
from .words import in_language

INFINITE = math.inf


@dataclass(frozen=True)
class Configuration:
    """A point of the full shift: finite head plus an eventually simple tail.

    Tail kinds:
      * ``const``    -- one letter repeated forever (tail_data: the digit),
      * ``periodic`` -- a finite word repeated forever (tail_data: the word),
      * ``orbit``    -- the point sigma^offset(fixed point); head is ignored
                        and the configuration lies in the subshift.

    For non-orbit configurations the head must contain the break: the
    longest language prefix ends strictly inside the head, so delta is
    read off without any hidden search.
    """

    head: str
    tail_kind: str = "const"
    tail_data: str | int = "0"

    def __post_init__(self):
        if self.tail_kind not in ("const", "periodic", "orbit"):
            raise ValueError(f"unknown tail kind {self.tail_kind!r}")
        if self.tail_kind == "periodic" and not str(self.tail_data):
            raise ValueError("periodic tail needs a nonempty period word")

    @property
    def in_subshift(self) -> bool:
        return self.tail_kind == "orbit"

    def prefix(self, s: Substitution, length: int) -> str:
        """First `length` letters of the configuration."""
        if self.tail_kind == "orbit":
            off = int(self.tail_data)
            stream = FixedPointStream(s)
            return stream.prefix(off + length)[off : off + length]
        if len(self.head) >= length:
            return self.head[:length]
        tail = str(self.tail_data)
        reps = -(-(length - len(self.head)) // len(tail))
        return (self.head + tail * reps)[:length]

    def with_head_length(self, s: Substitution, length: int) -> "Configuration":
        """Same point, head materialized out to at least `length` letters."""
        if self.tail_kind == "orbit" or len(self.head) >= length:
            return self
        taken = length - len(self.head)
        tail = str(self.tail_data)
        if self.tail_kind == "periodic":
            # keep the remaining tail aligned with the consumed letters
            shift = taken % len(tail)
            tail = tail[shift:] + tail[:shift]
        return Configuration(self.prefix(s, length), self.tail_kind, tail)

    def to_text(self) -> str:
        if self.tail_kind == "orbit":
            return f"head= tail=orbit:{self.tail_data}"
        return f"head={self.head} tail={self.tail_kind}:{self.tail_data}"

    @classmethod
    def from_text(cls, text: str) -> "Configuration":
        fields = dict(item.split("=", 1) for item in text.split())
        head = fields.get("head", "")
        kind, _, data = fields["tail"].partition(":")
        if kind == "orbit":
            return cls("", "orbit", int(data))
        return cls(head, kind, data)


def delta(s: Substitution, x: Configuration) -> int | float:
    """Length of the longest prefix of x in the language; inf on the subshift.

    The break must be certified by the head: if every head prefix is in
    the language the configuration is rejected rather than extended.
    """
    if x.in_subshift:
        return INFINITE
    head = x.head
    # largest q with head[:q] in the language (membership is prefix-monotone)
    lo, hi = 0, len(head)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if in_language(s, head[:mid]):
            lo = mid
        else:
            hi = mid - 1
    if lo == len(head):
        raise UncertifiedConfigurationError(
            f"head {head!r} lies entirely in the language; break position uncertified"
        )
    return lo


def brute_delta(s: Substitution, word: str, start: int = 0) -> int:
    """Largest q with word[start:start+q] in the language.

    Independent scan used as the oracle against the closed forms; raises
    if the break is not witnessed inside the materialized word.
    """
    tail = word[start:]
    lo, hi = 0, len(tail)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if in_language(s, tail[:mid]):
            lo = mid
        else:
            hi = mid - 1
    if lo == len(tail):
        raise UncertifiedConfigurationError("materialized word too short to witness the break")
    return lo


def _require_finite_delta(s: Substitution, x: Configuration) -> int:
    p = delta(s, x)
    if p == INFINITE:
        raise ValueError("operation requires a configuration outside the subshift")
    return int(p)


def maximal_prefix_after_power(s: Substitution, x: Configuration, n: int) -> str:
    """Longest language prefix of s^n(x): s^n(x_[0..p)) s^{n-1}(0) ... s(0) 0."""
    require_kbonacci(s)
    if n < 1:
        raise ValueError("n must be >= 1")
    p = _require_finite_delta(s, x)
    w = x.head[:p]
    parts = [s.apply_power(n, w)]
    parts.extend(s.power_image(l, 0) for l in range(n - 1, -1, -1))
    return "".join(parts)


def delta_after_power(s: Substitution, x: Configuration, n: int) -> int:
    """delta(s^n(x)) by the closed form: image lengths weighted by the
    letter counts of the maximal prefix, plus the geometric boundary sum."""
    require_kbonacci(s)
    if n < 1:
        raise ValueError("n must be >= 1")
    p = _require_finite_delta(s, x)
    w = x.head[:p]
    lengths = s.power_lengths(n)
    total = sum(lengths[a] * w.count(str(a)) for a in range(s.k))
    boundary = sum(s.power_lengths(l)[0] for l in range(n))
    return total + boundary


def delta_shifted(s: Substitution, x: Configuration, n: int, j: int) -> int:
    """delta(sigma^j s^n(x)) = delta(s^n(x)) - j, valid for n >= k and
    j < |s^n(x_0)|."""
    require_kbonacci(s)
    if n < s.k:
        raise ValueError(f"shifted closed form requires n >= k = {s.k}")
    x0 = int(x.prefix(s, 1))
    limit = s.power_lengths(n)[x0]
    if not 0 <= j < limit:
        raise ValueError(f"shift j={j} outside [0, |s^{n}({x0})|={limit})")
    return delta_after_power(s, x, n) - j


@dataclass(frozen=True)
class CutPointSet:
    """Sorted cut points of the n-th image blocks of the fixed point in [0, W)."""

    n: int
    window: int
    points: tuple[int, ...]

    def __contains__(self, d: int) -> bool:
        return d in set(self.points)


def cut_points(s: Substitution, n: int, window: int) -> CutPointSet:
    """Positions where n-th power image blocks of the fixed point start."""
    if n < 1:
        raise ValueError("n must be >= 1")
    stream = FixedPointStream(s)
    lengths = s.power_lengths(n)
    pts = [0]
    pos = 0
    i = 0
    omega = stream.prefix(max(window, 1))
    while True:
        if i >= len(omega):
            omega = stream.prefix(2 * len(omega))
        pos += lengths[int(omega[i])]
        if pos >= window:
            break
        pts.append(pos)
        i += 1
    return CutPointSet(n, window, tuple(pts))


def verify_recognizability(s: Substitution, n: int, window: int) -> bool:
    """Occurrences of s^n(0) in the fixed-point window are exactly the cut
    points of the n-th blocks (recognizability, valid for n >= k)."""
    require_kbonacci(s)
    if n < s.k:
        raise ValueError(f"recognizability scan requires n >= k = {s.k}")
    block = s.power_image(n, 0)
    cuts = cut_points(s, n, window)
    usable = [d for d in cuts.points if d + len(block) <= window]
    if len(usable) < 2:
        raise InconclusiveWindowError(
            f"window {window} holds fewer than two full n={n} blocks"
        )
    omega = FixedPointStream(s).prefix(window)
    occ = []
    pos = omega.find(block)
    while pos != -1:
        if pos + len(block) <= window:
            occ.append(pos)
        pos = omega.find(block, pos + 1)
    return occ == usable


@dataclass(frozen=True)
class AppendixReport:
    """Tribonacci sanity report: unique de-substitution and the 00-words."""

    words_checked: int
    all_unique: bool
    non_unique: tuple[str, ...]
    has_001: bool
    lacks_000: bool
    lacks_002: bool

    @property
    def ok(self) -> bool:
        return self.all_unique and self.has_001 and self.lacks_000 and self.lacks_002


def count_preimages(s: Substitution, w: str, cap: int = 4) -> int:
    """Number of words v with s(v) = w, counted by segmentation (capped)."""
    images = list(enumerate(s.images))
    counts = [0] * (len(w) + 1)
    counts[len(w)] = 1
    for i in range(len(w) - 1, -1, -1):
        total = 0
        for _, img in images:
            if w.startswith(img, i):
                total += counts[i + len(img)]
        counts[i] = min(total, cap)
    return counts[0]


def tribonacci_appendix_checks(max_length: int = 30) -> AppendixReport:
    """Exhaustive Tribonacci checks: unique preimages for words starting
    with 0 and ending with 1 or 2, and the three-letter 00-words."""
    from .substitution import kbonacci

    s = kbonacci(3)
    index = s.language(max_length)
    checked = 0
    non_unique = []
    for n in range(1, max_length + 1):
        for w in index.words(n):
            if w[0] == "0" and w[-1] in "12":
                checked += 1
                if count_preimages(s, w) != 1:
                    non_unique.append(w)
    three = index.words(3)
    return AppendixReport(
        words_checked=checked,
        all_unique=not non_unique,
        non_unique=tuple(sorted(non_unique)),
        has_001="001" in three,
        lacks_000="000" not in three,
        lacks_002="002" not in three,
    )


def distance_to_subshift(s: Substitution, x: Configuration) -> float:
    """2^{-delta(x)}: the product-topology distance from x to the subshift."""
    p = delta(s, x)
    return 0.0 if p == INFINITE else 2.0 ** (-p)
