import pytest
from hypothesis import given, strategies as st

from kbonacci import FixedPointStream, Substitution, check_recurrence, fixed_prefix, kbonacci
from kbonacci.errors import BudgetExceededError


def test_kbonacci_images(s3):
    assert s3.images == ("01", "02", "0")
    assert kbonacci(2).images == ("01", "0")
    assert kbonacci(4).images == ("01", "02", "03", "0")


def test_kbonacci_rejects_bad_k():
    with pytest.raises(ValueError):
        kbonacci(1)
    with pytest.raises(ValueError):
        kbonacci(11)


def test_power_images_tribonacci(s3):
    assert s3.power_image(3, 0) == "0102010"
    assert s3.power_image(3, 1) == "010201"
    assert s3.power_image(3, 2) == "0102"


def test_power_lengths_match_words(s3, s2):
    for s in (s3, s2):
        for n in range(8):
            lengths = s.power_lengths(n)
            for a in range(s.k):
                assert lengths[a] == len(s.power_image(n, a))


def test_recurrence_identity(s2, s3, s4):
    for s in (s2, s3, s4):
        for n in range(6):
            assert check_recurrence(s, n)


def test_incidence_and_primitivity(s3):
    m = s3.incidence()
    # column j counts letters of s(j)
    assert m[:, 0].tolist() == [1, 1, 0]
    assert m[:, 2].tolist() == [1, 0, 0]
    assert s3.is_primitive()
    assert not Substitution(("01", "1", "2")).is_primitive()


def test_budget_guard():
    s = kbonacci(2, length_budget=100)
    with pytest.raises(BudgetExceededError):
        s.power_image(40, 0)


def test_text_roundtrip(s3):
    text = s3.to_text()
    assert Substitution.from_text(text) == s3


def test_fixed_point_prefixes(s3, s2):
    assert fixed_prefix(s3, 13) == "0102010010201"
    assert fixed_prefix(s2, 5) == "01001"
    stream = FixedPointStream(s3)
    assert stream.prefix(50) == fixed_prefix(s3, 50)


def test_fixed_point_invariant_under_substitution(s3):
    omega = fixed_prefix(s3, 200)
    assert s3.apply(omega).startswith(omega)


@given(st.lists(st.integers(min_value=0, max_value=2), min_size=0, max_size=30),
       st.lists(st.integers(min_value=0, max_value=2), min_size=0, max_size=30))
def test_apply_is_a_morphism(u, v):
    s = kbonacci(3)
    wu = "".join(map(str, u))
    wv = "".join(map(str, v))
    assert s.apply(wu + wv) == s.apply(wu) + s.apply(wv)


@given(st.integers(min_value=0, max_value=10), st.integers(min_value=0, max_value=10))
def test_power_images_compose(m, n):
    s = kbonacci(3)
    assert s.apply_power(m, s.power_image(n, 0)) == s.power_image(m + n, 0)
