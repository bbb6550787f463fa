"""Acceptance criteria 1-8. Every check is exact.

Each test prints one "criterion N: PASS|FAIL" line; the lines are also
collected and repeated in the pytest terminal summary.
"""
from __future__ import annotations

from functools import lru_cache

from orbks.amodel import sc_curve_data, sh_hilbert
from orbks.covergroup import CoverSpec, FinAbGroup, char_eval, cover_from_strings, cover_invariants
from orbks.exactfield import as_cyc
from orbks.floer import cf_curve_data, special_cocycles
from orbks.koszul import KoszulSector, koszul_oracle, orbifold_koszul_hilbert
from orbks.ksmap import check_equivariance, reproduce_cxyz, ring_match, solve_ks, verify_chain_map_quasi_iso
from orbks.mfcat import (
    Z2_PRODUCTS_EXPECTED,
    HomElement,
    Z2_TWIST,
    z2_twisted_products,
    build_delta,
    e_eta_theta_xy,
    e_eta_theta_xyz,
    hom_diff,
    lift_cocycle_to_hom,
    THXY,
    THXYZ,
    twist_of,
)
from orbks.polycliff import SliceMatrix, matrix_rank
from orbks.twistcomplex import UpstairsComplex, lift_cover_and_psi

from conftest import STANDARD

CUTOFF = 24
RESULTS: dict[int, bool] = {}


def _record(n: int, ok: bool, detail: str = "") -> None:
    RESULTS[n] = ok
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}"
    print(line + (f"  ({detail})" if detail else ""))
    assert ok, line + " " + detail


def _covers():
    return [cover_from_strings(*s) for s in STANDARD]


@lru_cache(maxsize=None)
def _ks(idx: int, k: int):
    spec = _covers()[idx]
    return solve_ks(spec, spec.characters()[k], cutoff=CUTOFF)


# ---------------------------------------------------------------- 1

def _sample_homs(order):
    # a fixed spread of even and odd hom elements
    mono = [(0, 0, 0, 0, 0, 0), (1, 0, 0, 0, 1, 0), (0, 1, 1, 0, 0, 1), (0, 0, 2, 1, 0, 0)]
    words = [((), ()), ((0, 1), ()), ((2,), (2,)), ((0,), (1,)), ((0, 1, 2), (0,)), ((), (1, 2))]
    out = []
    for p in (0, 1):
        items = [(k + 1, m, I, J) for k, (m, (I, J)) in enumerate((m, w) for m in mono for w in words)
                 if (len(I) + len(J)) % 2 == p]
        out.append(HomElement.from_string_terms(items, order))
    return out


def test_criterion_1_matrix_factorizations():
    ok = True
    for spec in _covers():
        src = build_delta((1, 1, 1), spec.N)
        for chi in spec.characters():
            tgt = build_delta(twist_of(spec, chi), spec.N)   # raises unless d^2 = (x'y'z' - xyz) id
            for phi in _sample_homs(spec.N):
                ok &= hom_diff(hom_diff(phi, src, tgt), src, tgt).is_zero()
    src, tgt = build_delta((1, 1, 1)), build_delta(Z2_TWIST)
    ok &= hom_diff(e_eta_theta_xy(), src, tgt).is_zero()
    ok &= hom_diff(e_eta_theta_xyz(), src, tgt).is_zero()
    ok &= lift_cocycle_to_hom(THXY, Z2_TWIST) == e_eta_theta_xy()
    ok &= lift_cocycle_to_hom(THXYZ, Z2_TWIST) == e_eta_theta_xyz()
    _record(1, ok)


# ---------------------------------------------------------------- 2

def test_criterion_2_z2_products():
    ok = True
    for route in ("solver", "formula"):
        res = z2_twisted_products(route)
        ok &= res["thxy.thxy"][0] == Z2_PRODUCTS_EXPECTED["thxy.thxy"]
        ok &= res["thxyz.thxy"][0] == Z2_PRODUCTS_EXPECTED["thxyz.thxy"]
        # the last product vanishes in cohomology; its chain-level projection is a coboundary
        ok &= res["thxyz.thxyz"][1]
    _record(2, ok, "thxyz.thxyz compared as a class")


# ---------------------------------------------------------------- 3

def _word_length_cohomology(ks, degree, k):
    """dim of H in the given degree restricted to theta words of length k."""
    sec = ks.sector

    def basis(d, length):
        return [e for e in sec.basis(d) if len(ks.words[e[1]]) == length]

    def rank(d, length):
        src = basis(d, length)
        tgt = basis(d + 3, length - 1)
        if not src or not tgt:
            return 0
        imgs = [sec.d({e: as_cyc(1, 1)}) for e in src]
        return matrix_rank(SliceMatrix.from_images(tgt, src, imgs))

    return len(basis(degree, k)) - rank(degree, k) - rank(degree - 3, k + 1)


def test_criterion_3_untwisted_koszul():
    spec = cover_from_strings("Z1", "", "")
    ks = KoszulSector(spec, spec.characters()[0])
    ok = True
    for d in range(CUTOFF + 1):
        dims = [_word_length_cohomology(ks, d, k) for k in range(4)]
        ok &= dims[2] == 0 and dims[3] == 0
        ok &= dims[0] == (koszul_oracle(3, 0, d) if d % 2 == 0 else 0)
        ok &= dims[1] == (koszul_oracle(3, 1, d) if d % 2 == 1 else 0)
    h = ks.hilbert(CUTOFF)
    ok &= h == [koszul_oracle(3, d % 2, d) for d in range(CUTOFF + 1)]
    ok &= [h[d] for d in range(0, 7, 2)] == [1, 3, 3, 3] and [h[d] for d in range(3, 10, 2)] == [2, 3, 3, 3]
    _record(3, ok)


# ---------------------------------------------------------------- 4

def test_criterion_4_cocycle_lemmas():
    ok = True
    for spec in _covers():
        C = cf_curve_data(spec)
        for chi in spec.characters():
            sc = special_cocycles(spec, chi, C)
            ok &= all(sc[n][1] for n in "PQR")
            for n, g in zip("UVW", spec.ends):
                ok &= sc[n][1] == (char_eval(chi, g) == 1)
            ks = KoszulSector(spec, chi)
            n_fixed = len(ks.fixed)
            closed = [koszul_oracle(n_fixed, d % 2, d) for d in range(CUTOFF + 1)]
            ok &= ks.hilbert(CUTOFF) == closed
            ok &= C.sector(chi).hilbert(CUTOFF) == closed
    _record(4, ok)


# ---------------------------------------------------------------- 5

def test_criterion_5_psi():
    ok = True
    for spec in _covers():
        for C in (cf_curve_data(spec), sc_curve_data(spec, CUTOFF // 2)):
            lift_cover_and_psi(C, cutoff=CUTOFF)   # raises IntertwiningFailure on any mismatch
            total = [0] * (CUTOFF + 1)
            for chi in spec.characters():
                h = C.sector(chi).hilbert(CUTOFF, invariant=True)
                total = [a + b for a, b in zip(total, h)]
            ok &= total == UpstairsComplex(C).hilbert(CUTOFF)
    _record(5, ok)


# ---------------------------------------------------------------- 6

def test_criterion_6_kodaira_spencer():
    r = reproduce_cxyz()
    ok = (r["c_x"], r["c_y"], r["c_z"]) == (as_cyc(-1, 1), as_cyc(1, 1), as_cyc(0, 1))
    for idx, spec in enumerate(_covers()):
        sc_inv = [0] * (CUTOFF + 1)
        cf_inv = [0] * (CUTOFF + 1)
        for k in range(len(spec.characters())):
            m = _ks(idx, k)
            rep = verify_chain_map_quasi_iso(m, CUTOFF)
            ok &= rep["chain_map"] and rep["quasi_iso"] and rep["invariant_iso"]
            ok &= check_equivariance(m)
            sc_inv = [a + b for a, b in zip(sc_inv, rep["sc_invariant"])]
            cf_inv = [a + b for a, b in zip(cf_inv, rep["cf_invariant"])]
        upstairs_sh = UpstairsComplex(sc_curve_data(spec, CUTOFF // 2)).hilbert(CUTOFF)
        ok &= sc_inv == cf_inv == upstairs_sh == orbifold_koszul_hilbert(spec, CUTOFF)
    _record(6, ok)


# ---------------------------------------------------------------- 7

def test_criterion_7_worked_examples():
    z2 = cover_from_strings("Z2", "1", "1")
    ok = cover_invariants(z2)[:2] == (0, 4)
    tw = KoszulSector(z2, z2.characters()[1])
    ok &= tw.words == [(0, 1), (0, 1, 2)] and tw.fixed == (2,)
    ok &= tw.hilbert(CUTOFF, invariant=True) == [0, 0] + [1] * (CUTOFF - 1)

    z3 = cover_from_strings("Z3", "1", "1")
    ok &= cover_invariants(z3)[:2] == (1, 3)
    for chi in z3.characters()[1:]:
        h = KoszulSector(z3, chi).hilbert(CUTOFF, invariant=True)
        ok &= h == [1 if d == 3 else 0 for d in range(CUTOFF + 1)]
        ok &= cf_curve_data(z3).sector(chi).hilbert(CUTOFF, invariant=True) == h

    for m in range(1, 7):
        for n in range(1, 7):
            G = FinAbGroup((m, n))
            spec = CoverSpec.from_pair(G, G.from_input((1, 0)), G.from_input((0, 1)))
            genus, punct, _ = cover_invariants(spec)
            ok &= 2 * genus == m * n - punct + 2

    # truncation stability: doubling the cutoff leaves the lower slices unchanged
    small = sh_hilbert(z3, cutoff=CUTOFF // 2)
    ok &= sh_hilbert(z3, cutoff=CUTOFF)[: CUTOFF // 2 + 1] == small
    m12 = solve_ks(z2, z2.characters()[1], cutoff=CUTOFF // 2)
    m24 = _ks(0, 1)
    ok &= all(m12.images[n] == m24.images[n] for n in m12.images)
    _record(7, ok)


# ---------------------------------------------------------------- 8

def test_criterion_8_ring_match():
    r = ring_match(cutoff=12)
    ok = not r["failures"] and r["matched"] == r["pairs"] > 0
    _record(8, ok, f"{r['matched']}/{r['pairs']} pairs, signs {sorted(set(r['signs'].values()))}")
