from __future__ import annotations

from orbks.covergroup import char_eval
from orbks.floer import (
    ETA,
    FLOER_GENS,
    UNDEFINED,
    cf_curve_data,
    cochain,
    cochain_str,
    fixed_variables,
    m2_partial,
    special_cocycles,
    tau_map,
    untwisted_cocycles,
)
from orbks.koszul import KoszulSector, LAMBDA


def test_eta_covers_all_generators():
    assert set(ETA) == set(FLOER_GENS)
    words = {w for w, _ in ETA.values()}
    assert len(words) == 8


def test_cocycle_lemmas(cover):
    C = cf_curve_data(cover)
    for chi in cover.characters():
        sc = special_cocycles(cover, chi, C)
        for name in "PQR":
            assert sc[name][1], (chi, name)
        for name, g in zip("UVW", cover.ends):
            assert sc[name][1] == (char_eval(chi, g) == 1), (chi, name)


def test_fixed_variables(z2, z3):
    chi = z2.characters()[1]
    assert fixed_variables(z2, chi) == (2,)
    assert fixed_variables(z3, z3.characters()[1]) == ()
    assert fixed_variables(z3, z3.characters()[0]) == (0, 1, 2)


def test_untwisted_cocycles_map_to_lambdas(trivial):
    chi = trivial.characters()[0]
    kos = KoszulSector(trivial, chi)
    u = untwisted_cocycles()
    assert tau_map(u["e_L"], trivial, chi) == kos.to_external(kos.to_internal({((0, 0, 0), ()): 1}))
    assert kos.same_class(tau_map(u["yY-zZ"], trivial, chi), LAMBDA["x"])
    assert kos.same_class(tau_map(u["xX-yY"], trivial, chi), LAMBDA["z"])


def test_tau_untwisted_is_chain_map(trivial):
    # tau o d_CF = d_Kos o tau on every basis element up to degree 9
    chi = trivial.characters()[0]
    sec = cf_curve_data(trivial).sector(chi)
    kos = KoszulSector(trivial, chi)
    for d in range(10):
        for e in sec.basis(d):
            src = cochain([(1, e[0], FLOER_GENS[e[1]])])
            lhs = tau_map(sec.d(src), trivial, chi)
            rhs = kos.differential(tau_map(src, trivial, chi))
            assert kos.to_internal(lhs) == kos.to_internal(rhs), (d, e)


def test_z2_twisted_tau(z2):
    chi = z2.characters()[1]
    sc = special_cocycles(z2, chi)
    kos = KoszulSector(z2, chi)
    assert cochain_str(sc["P"][0]) == "y*Y + z*Z + 2*f_L"
    assert tau_map(sc["P"][0], z2, chi) == kos.to_external(kos.to_internal({((0, 0, 0), (0, 1, 2)): -2}))
    w = tau_map(sc["W"][0], z2, chi)
    assert kos.is_cocycle(w) and not kos.is_exact(w)


def test_m2_partial():
    u = untwisted_cocycles()
    prod = m2_partial(u["yY-zZ"], u["xX-yY"])
    assert cochain_str(prod) == "-y*z*Xbar - x*z*Ybar - x*y*Zbar"
    assert m2_partial(cochain([(1, (0, 0, 0), "f_L")]), u["xX-yY"]) is UNDEFINED
    assert m2_partial(u["e_L"], u["xX-yY"]) == u["xX-yY"]


def test_m2_image_is_exact(trivial):
    # the product of the two lambda classes lands on d(theta_x theta_y theta_z)
    chi = trivial.characters()[0]
    kos = KoszulSector(trivial, chi)
    u = untwisted_cocycles()
    t = tau_map(m2_partial(u["yY-zZ"], u["xX-yY"]), trivial, chi)
    top = kos.differential({((0, 0, 0), (0, 1, 2)): 1})
    assert kos.to_internal(t) == kos.to_internal(top)
    assert kos.is_exact(t)


def test_m2_square_of_lambda():
    u = untwisted_cocycles()
    assert cochain_str(m2_partial(u["xX-yY"], u["xX-yY"])) == "-x*y*z*e_L"


def test_tau_keeps_top_degree(z2):
    # W = z e_L + 2 Zbar in the sector fixing z: only the Zbar term survives
    chi = z2.characters()[1]
    w = special_cocycles(z2, chi)["W"][0]
    assert cochain_str(w) == "z*e_L + 2*Zbar"
    assert tau_map(w, z2, chi) == {((0, 0, 0), (0, 1)): w[((0, 0, 0), FLOER_GENS.index("Zbar"))] * -1}
    fl = cochain([(1, (0, 0, 3), "f_L")], z2.N)
    assert tau_map(fl, z2, chi) == {((0, 0, 3), (0, 1, 2)): fl[((0, 0, 3), 7)] * -1}
