"""Deterministic sampling of certified configurations for experiments."""

from __future__ import annotations

import random

from .recognition import Configuration
from .substitution import Substitution


def random_certified_configuration(
    s: Substitution,
    rng: random.Random,
    max_break: int = 10,
    extra_letters: int = 3,
) -> Configuration:
    """A configuration whose head provably contains its break.

    Picks a language word w and a letter a with wa outside the language,
    so delta equals |w| by construction; a few arbitrary letters and a
    random constant tail follow the break.
    """
    index = s.language(max_break + 1)
    letters = [str(a) for a in range(s.k)]
    lengths = list(range(2, max_break + 1))
    rng.shuffle(lengths)
    for n in lengths:
        words = sorted(index.words(n))
        rng.shuffle(words)
        for w in words[: min(len(words), 8)]:
            blocked = [a for a in letters if w + a not in index.words(n + 1)]
            if blocked:
                head = w + rng.choice(blocked)
                head += "".join(rng.choice(letters) for _ in range(rng.randrange(extra_letters + 1)))
                return Configuration(head, "const", rng.choice(letters))
    raise RuntimeError("could not find a certified configuration (language too permissive?)")


def sample_configurations(s: Substitution, count: int, seed: int, **kwargs) -> list[Configuration]:
    rng = random.Random(seed)
    return [random_certified_configuration(s, rng, **kwargs) for _ in range(count)]
