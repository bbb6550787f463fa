from __future__ import annotations

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from orbks.amodel import sc_curve_data
from orbks.covergroup import cover_from_strings
from orbks.exactfield import as_cyc
from orbks.floer import cf_curve_data
from orbks.twistcomplex import (
    CurveDataError,
    CurveDatum,
    Generator,
    TwistedComplex,
    UpstairsComplex,
    dump_curve_data,
    lift_cover_and_psi,
    parse_curve_file,
    resolve_label,
)


def test_d_squared_sc_and_cf(cover):
    assert cf_curve_data(cover).verify_d_squared() == []
    assert sc_curve_data(cover, 6).verify_d_squared() == []


def test_dump_parse_roundtrip(cover):
    C = cf_curve_data(cover)
    text = dump_curve_data(C)
    again = parse_curve_file(text, cover)
    assert dump_curve_data(again) == text


def test_resolve_label(z3):
    G = z3.group
    a, b, c = z3.ends
    assert resolve_label("a+b", z3) == G.add(a, b)
    assert resolve_label("-c", z3) == G.neg(c)
    assert resolve_label("2a", z3) == G.scale(2, a)
    assert resolve_label("0", z3) == G.identity()
    with pytest.raises(CurveDataError):
        resolve_label("a+q", z3)


def test_inhomogeneous_curve_rejected(z2):
    gens = [Generator("p", 0, z2.group.identity()), Generator("q", 1, z2.group.identity())]
    with pytest.raises(CurveDataError):
        TwistedComplex(z2, gens, [CurveDatum("p", "q", 1, (0, 0, 0), z2.group.identity())])


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 7), st.integers(-3, 3)), min_size=1, max_size=6),
       st.integers(0, 2))
def test_sector_d_squared_on_random_vectors(picks, k):
    spec = cover_from_strings("Z3", "1", "1")
    C = cf_curve_data(spec)
    chi = spec.characters()[k]
    sec = C.sector(chi)
    basis = sec.basis(7)
    vec = {}
    for i, c in picks:
        e = basis[i % len(basis)]
        vec[e] = vec.get(e, as_cyc(0, spec.N)) + as_cyc(c, spec.N)
    vec = {e: c for e, c in vec.items() if c != 0}
    assert sec.d(sec.d(vec)) == {}


@pytest.mark.parametrize("name", ["Z2", "Z2xZ2"])
def test_psi_checks(name):
    spec = cover_from_strings(*{"Z2": ("Z2", "1", "1"), "Z2xZ2": ("Z2xZ2", "1,0", "0,1")}[name])
    lift_cover_and_psi(cf_curve_data(spec), cutoff=9)
    lift_cover_and_psi(sc_curve_data(spec, 4), cutoff=9)


def test_invariant_sum_equals_upstairs(cover):
    for C in (cf_curve_data(cover), sc_curve_data(cover, 6)):
        up = UpstairsComplex(C).hilbert(12)
        total = [0] * 13
        for chi in cover.characters():
            h = C.sector(chi).hilbert(12, invariant=True)
            total = [a + b for a, b in zip(total, h)]
        assert total == up


def _sympy_upstairs_hilbert(C, cutoff):
    up = UpstairsComplex(C)

    def rank(d):
        if d < 0:
            return 0
        src, tgt = up.basis(d), up.basis(d + 3)
        if not src or not tgt:
            return 0
        pos = {t: i for i, t in enumerate(tgt)}
        M = sympy.zeros(len(tgt), len(src))
        for j, s in enumerate(src):
            for t, v in up.d({s: 1}).items():
                M[pos[t], j] = v
        return M.rank()

    return [len(up.basis(d)) - rank(d) - rank(d - 3) for d in range(cutoff + 1)]


def test_upstairs_hilbert_against_dense_sympy(z2):
    C = cf_curve_data(z2)
    assert UpstairsComplex(C).hilbert(9) == _sympy_upstairs_hilbert(C, 9)
