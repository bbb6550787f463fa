from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from orbks.amodel import (
    TwistedProductUnsupported,
    default_n_max,
    parse_log_name,
    sc_curve_data,
    sh_hilbert,
    star_product,
    tower_name,
)
from orbks.koszul import koszul_oracle

MORSE = ["e", "f1", "f2"]
names = st.one_of(
    st.sampled_from(MORSE),
    st.builds(tower_name, st.sampled_from("ef"), st.sampled_from(["alpha", "beta", "gamma"]),
              st.integers(1, 4)),
)


def _deg(n):
    k, end, w = parse_log_name(n)
    if end is None:
        return 0 if k == "e" else 3
    return 2 * w + (3 if k == "f" else 0)


def _mul(a: dict, b: dict) -> dict:
    out = {}
    for u, cu in a.items():
        for v, cv in b.items():
            for w, c in star_product(u, v).items():
                out[w] = out.get(w, 0) + cu * cv * c
    return {k: c for k, c in out.items() if c}


def test_parse_names():
    assert parse_log_name("f2") == ("f2", None, 0)
    assert parse_log_name("e_gamma^3") == ("e", "gamma", 3)
    with pytest.raises(ValueError):
        parse_log_name("g_alpha^1")


def test_table_entries():
    assert star_product("e_alpha^1", "e_alpha^2") == {"e_alpha^3": 1}
    assert star_product("f1", "e_alpha^1") == {"f_alpha^1": 1}
    assert star_product("f2", "e_beta^2") == {"f_beta^2": -1}
    assert star_product("f1", "e_gamma^1") == {}
    assert star_product("e_alpha^1", "e_beta^1") == {}
    assert star_product("f1", "f2") == {}


@given(names)
def test_unit(u):
    assert star_product("e", u) == {u: 1}
    assert star_product(u, "e") == {u: 1}


@given(names, names)
def test_graded_commutative(u, v):
    sign = -1 if (_deg(u) % 2 and _deg(v) % 2) else 1
    assert star_product(u, v) == {k: sign * c for k, c in star_product(v, u).items()}


@given(names, names, names)
def test_associative(u, v, w):
    assert _mul(_mul({u: 1}, {v: 1}), {w: 1}) == _mul({u: 1}, _mul({v: 1}, {w: 1}))


def test_twisted_product_unsupported(z2):
    with pytest.raises(TwistedProductUnsupported):
        star_product("e", "f1", chi=z2.characters()[1])


def test_default_n_max():
    assert default_n_max(24) == 12
    assert default_n_max(1) == 1


def test_sc_rejects_zero_winding(z2):
    with pytest.raises(ValueError):
        sc_curve_data(z2, 0)


def test_untwisted_sh_matches_koszul_oracle(trivial):
    h = sh_hilbert(trivial, cutoff=20)
    assert h == [koszul_oracle(3, d % 2, d) for d in range(21)]


def test_z3_total_invariant(z3):
    assert sh_hilbert(z3, cutoff=14) == [1, 0, 0, 4, 0, 0, 3, 0, 0, 3, 0, 0, 3, 0, 0]


def test_winding_truncation_is_stable(z2):
    a = sh_hilbert(z2, cutoff=16)
    b = sh_hilbert(z2, cutoff=16, n_max=16)
    assert a == b
