"""Shared hypothesis strategies for divisor classes and profiles."""

from hypothesis import strategies as st

from effcone.picard import CurveProfile, DivisorClassM1n, DivisorClassMg

rationals = st.fractions(min_value=-40, max_value=40, max_denominator=16)


def subset_masks(n):
    return st.integers(min_value=0, max_value=(1 << n) - 1).filter(
        lambda m: m.bit_count() >= 2
    )


def boundary_maps(n):
    return st.dictionaries(subset_masks(n), rationals, max_size=6)


@st.composite
def m1n_classes(draw, n=None):
    n = n if n is not None else draw(st.integers(min_value=3, max_value=6))
    return DivisorClassM1n(n, draw(rationals), draw(boundary_maps(n)))


@st.composite
def curve_profiles(draw, n=None):
    n = n if n is not None else draw(st.integers(min_value=3, max_value=6))
    return CurveProfile(n, draw(rationals), draw(boundary_maps(n)))


@st.composite
def mg_classes(draw, g):
    return DivisorClassMg(
        g,
        draw(rationals),
        draw(rationals),
        draw(st.lists(rationals, min_size=g // 2, max_size=g // 2)),
    )


@st.composite
def permutations_of(draw, n):
    return tuple(draw(st.permutations(range(1, n + 1))))
