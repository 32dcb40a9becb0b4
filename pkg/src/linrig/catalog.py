"""Named example equations together with the join they belong to."""
from __future__ import annotations

from dataclasses import dataclass

from .certificates import gen_three_entry, gen_three_minor, gen_two_minor
from .joins import Support
from .minorpoly import MinorPolynomial, from_m_terms

__all__ = ["Example", "EXAMPLES", "get_example", "s5_support"]


@dataclass(frozen=True)
class Example:
    name: str
    n: int
    r: int
    support: Support
    poly: MinorPolynomial
    note: str = ""


def _t(sign, *ms):
    """Term from compact strings like ("235", "235")."""
    return (sign, [(tuple(int(c) for c in I), tuple(int(c) for c in J)) for I, J in ms])


def s5_support() -> Support:
    return Support(6, [(1, 5), (1, 6), (2, 1), (2, 4), (3, 2), (3, 3), (4, 2), (4, 3), (4, 5),
                       (5, 1), (5, 4), (5, 6), (6, 4), (6, 5), (6, 6)])


def _s5() -> MinorPolynomial:
    terms = [
        _t(-1, ("235", "235"), ("12", "36"), ("16", "12"), ("34", "14")),
        _t(+1, ("235", "235"), ("12", "26"), ("16", "13"), ("34", "14")),
        _t(+1, ("126", "236"), ("13", "13"), ("25", "25"), ("34", "14")),
        _t(-1, ("126", "236"), ("13", "12"), ("25", "35"), ("34", "14")),
        _t(+1, ("126", "235"), ("13", "16"), ("25", "23"), ("34", "14")),
        _t(-1, ("126", "235"), ("13", "14"), ("25", "23"), ("34", "16")),
        _t(+1, ("134", "146"), ("12", "23"), ("25", "23"), ("36", "15")),
        _t(-1, ("134", "146"), ("13", "15"), ("25", "23"), ("26", "23")),
        _t(-1, ("136", "136"), ("12", "23"), ("25", "25"), ("34", "14")),
        _t(+1, ("136", "126"), ("12", "23"), ("25", "35"), ("34", "14")),
    ]
    return from_m_terms(6, terms, name="s5")


def _n5_sextic() -> MinorPolynomial:
    terms = [
        _t(-1, ("345", "123"), ("1", "4"), ("1", "5"), ("2", "1")),
        _t(+1, ("235", "134"), ("1", "2"), ("1", "5"), ("4", "1")),
        _t(-1, ("234", "135"), ("1", "2"), ("1", "4"), ("5", "1")),
        _t(+1, ("134", "235"), ("1", "4"), ("2", "1"), ("5", "1")),
        _t(-1, ("123", "345"), ("1", "2"), ("4", "1"), ("5", "1")),
        _t(-1, ("135", "234"), ("1", "5"), ("2", "1"), ("4", "1")),
    ]
    return from_m_terms(5, terms, name="n5_sextic")


def _build() -> dict[str, Example]:
    d3 = Support.diagonal(3)
    d5 = Support.diagonal(5)
    s8 = Support(4, [(1, 3), (1, 4), (2, 1), (2, 4), (3, 1), (3, 2), (4, 2), (4, 3)])
    full3 = (1, 2, 3)
    ex = [
        Example("eE", 3, 1, d3,
                gen_three_entry(full3, full3, full3, full3, [(1, 1), (2, 2), (3, 3)]),
                "diagonal S, n=3, r=1"),
        Example("s1_n3", 3, 1, d3,
                gen_two_minor((2, 3), (1, 2), (1, 2), (2, 3), (2, 2), d3),
                "two blocks through x^2_2"),
        Example("s2_n4", 4, 1, s8,
                gen_three_minor((1, 2), (1, 2), (3, 4), (1, 4), (2, 3), (1, 3),
                                [(2, 1), (3, 1)], s8),
                "n=4, r=1, s=8"),
        Example("n5_quintic", 5, 2, d5,
                gen_two_minor((1, 2, 3), (3, 4, 5), (3, 4, 5), (1, 2, 3), (3, 3), d5),
                "M^{123}_{345} M^{45}_{12} - M^{345}_{123} M^{12}_{45}"),
        Example("n5_sextic", 5, 2, d5, _n5_sextic(), "six summands"),
        Example("s5", 6, 2, s5_support(), _s5(), "hypersurface of degree 9"),
    ]
    return {e.name: e for e in ex}


EXAMPLES = _build()


def get_example(name: str) -> Example:
    try:
        return EXAMPLES[name]
    except KeyError:
        raise KeyError(f"unknown example {name!r}; known: {sorted(EXAMPLES)}") from None
