import math

import pytest

from kbonacci import (
    Configuration,
    INFINITE,
    brute_delta,
    cut_points,
    delta,
    delta_after_power,
    delta_shifted,
    distance_to_subshift,
    maximal_prefix_after_power,
    tribonacci_appendix_checks,
    verify_recognizability,
)
from kbonacci.errors import UncertifiedConfigurationError
from kbonacci.sampling import sample_configurations


ZEROS = Configuration("0000", "const", "0")
ONES = Configuration("111", "const", "1")


def test_configuration_text_roundtrip():
    for x in (ZEROS, Configuration("010", "periodic", "12"), Configuration("", "orbit", 5)):
        assert Configuration.from_text(x.to_text()) == x


def test_configuration_prefix(s3):
    assert ZEROS.prefix(s3, 7) == "0000000"
    assert Configuration("01", "periodic", "20").prefix(s3, 7) == "0120202"
    assert Configuration("", "orbit", 2).prefix(s3, 5) == "02010"


def test_head_extension_keeps_the_point(s3):
    x = Configuration("01", "periodic", "120")
    y = x.with_head_length(s3, 7)
    assert y.prefix(s3, 30) == x.prefix(s3, 30)


def test_delta_basic(s3):
    assert delta(s3, ZEROS) == 2
    assert delta(s3, ONES) == 1
    assert delta(s3, Configuration("", "orbit", 0)) == INFINITE


def test_delta_requires_certified_break(s3):
    with pytest.raises(UncertifiedConfigurationError):
        delta(s3, Configuration("0102", "const", "0"))  # 01020 etc. all in language


def test_distance(s3):
    assert distance_to_subshift(s3, ZEROS) == 0.25
    assert distance_to_subshift(s3, Configuration("", "orbit", 3)) == 0.0


def test_maximal_prefix_after_power(s3):
    assert maximal_prefix_after_power(s3, ZEROS, 1) == "01010"
    w = maximal_prefix_after_power(s3, ZEROS, 3)
    assert len(w) == delta_after_power(s3, ZEROS, 3) == 21
    assert w == "010201001020100102010"[: len(w)]


def test_delta_after_power_fibonacci(s2):
    assert delta_after_power(s2, Configuration("110", "const", "1"), 4) == 16


def test_closed_form_equals_scan(s3, s2, s4):
    from kbonacci.renorm import _power_prefix

    for s in (s2, s3, s4):
        for x in sample_configurations(s, 5, seed=3):
            for n in range(s.k, s.k + 2):
                base = delta_after_power(s, x, n)
                word = _power_prefix(s, x, n, base + 8)
                assert brute_delta(s, word, 0) == base
                block = s.power_lengths(n)[int(x.head[0])]
                for j in (1, block // 2, block - 1):
                    assert delta_shifted(s, x, n, j) == brute_delta(s, word, j)


def test_delta_shifted_guards(s3):
    with pytest.raises(ValueError):
        delta_shifted(s3, ZEROS, 2, 0)  # n below k
    with pytest.raises(ValueError):
        delta_shifted(s3, ZEROS, 3, 7)  # j beyond |s^3(0)|


def test_cut_points(s3):
    assert cut_points(s3, 1, 10).points == (0, 2, 4, 6, 7, 9)
    assert 0 in cut_points(s3, 3, 100)


def test_cut_points_nested(s3):
    big = set(cut_points(s3, 2, 3000).points)
    small = set(cut_points(s3, 3, 3000).points)
    assert small <= big


@pytest.mark.parametrize("k", [2, 3, 4])
def test_recognizability(k):
    from kbonacci import kbonacci

    s = kbonacci(k)
    for n in range(s.k, s.k + 3):
        assert verify_recognizability(s, n, 20_000)


def test_appendix_checks():
    report = tribonacci_appendix_checks(max_length=20)
    assert report.ok
    assert report.words_checked > 50
    assert report.non_unique == ()
