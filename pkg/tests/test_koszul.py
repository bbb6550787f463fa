from __future__ import annotations

import sympy

from orbks.koszul import (
    LAMBDA,
    KoszulSector,
    koszul_hilbert,
    koszul_oracle,
    kos_str,
    module_action,
    orbifold_koszul_hilbert,
)
from orbks.polycliff import monomials_of_degree


def test_untwisted_matches_oracle(trivial):
    chi = trivial.characters()[0]
    for p in (0, 1):
        h = koszul_hilbert(trivial, chi, 24, parity=p)
        assert h == [koszul_oracle(3, p, d) if d % 2 == p else 0 for d in range(25)]
    even = [koszul_oracle(3, 0, d) for d in range(0, 25, 2)]
    odd = [koszul_oracle(3, 1, d) for d in range(3, 25, 2)]
    assert even[:3] == [1, 3, 3] and odd[:3] == [2, 3, 3]


def _dense_koszul_dims(deg):
    """Cohomology of K(yz, xz, xy) in total degree deg, split by word length, via sympy."""
    x, y, z = sympy.symbols("x y z")
    dW = [y * z, x * z, x * y]
    words = [(), (0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)]

    def basis(d):
        out = []
        for w in words:
            k = d - len(w)
            if k >= 0 and k % 2 == 0:
                out += [(m, w) for m in monomials_of_degree(3, k // 2)]
        return out

    def dmat(d):
        src, tgt = basis(d), basis(d + 3)
        pos = {t: i for i, t in enumerate(tgt)}
        M = sympy.zeros(len(tgt), len(src))
        for j, (m, w) in enumerate(src):
            for p, i in enumerate(w):
                rest = w[:p] + w[p + 1:]
                poly = sympy.Poly(x ** m[0] * y ** m[1] * z ** m[2] * dW[i], x, y, z)
                for mono, c in poly.terms():
                    M[pos[(tuple(mono), rest)], j] += (-1) ** p * c
        return M

    def rank(d):
        if d < 0 or not basis(d) or not basis(d + 3):
            return 0
        return dmat(d).rank()

    return len(basis(deg)) - rank(deg) - rank(deg - 3)


def test_untwisted_against_dense_sympy(trivial):
    h = koszul_hilbert(trivial, trivial.characters()[0], 10)
    assert h == [_dense_koszul_dims(d) for d in range(11)]


def test_sector_closed_forms(cover):
    for chi in cover.characters():
        ks = KoszulSector(cover, chi)
        n = len(ks.fixed)
        for p in (0, 1):
            h = ks.hilbert(24, parity=p)
            assert h == [koszul_oracle(n, p, d) if d % 2 == p else 0 for d in range(25)], (chi, p)


def test_cases(z2, z3):
    assert KoszulSector(z2, z2.characters()[0]).case == 1
    assert KoszulSector(z2, z2.characters()[1]).case == 2
    assert KoszulSector(z3, z3.characters()[1]).case == 3
    assert KoszulSector(z3, z3.characters()[1]).differential_str() == "0"


def test_z2_twisted_sector(z2):
    ks = KoszulSector(z2, z2.characters()[1])
    assert ks.fixed == (2,)
    assert ks.words == [(0, 1), (0, 1, 2)]
    assert ks.hilbert(10, invariant=True) == [0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1]


def test_lambdas_are_cocycles_not_exact(trivial):
    ks = KoszulSector(trivial, trivial.characters()[0])
    for lam in LAMBDA.values():
        assert ks.is_cocycle(lam) and not ks.is_exact(lam)
    total = {}
    for lam in LAMBDA.values():
        for k, c in lam.items():
            total[k] = total.get(k, 0) + c
    assert not {k: c for k, c in total.items() if c}


def test_module_relations(trivial):
    ks = KoszulSector(trivial, trivial.characters()[0])
    assert module_action({(1, 0, 0): 1}, LAMBDA["x"], ks) == {}
    assert module_action({(0, 0, 1): 1}, LAMBDA["z"], ks) == {}
    a = module_action({(0, 1, 0): 1}, LAMBDA["x"], ks)
    b = module_action({(0, 1, 0): 1}, LAMBDA["z"], ks)
    assert kos_str(a) == "y^2*thy - y*z*thz"
    assert ks.same_class(a, {k: -c for k, c in b.items()})
    # xy kills H^0 in positive degree
    assert module_action({(1, 1, 0): 1}, {((0, 0, 0), ()): 1}, ks) == {}


def test_orbifold_hilbert_z3(z3):
    h = orbifold_koszul_hilbert(z3, 12)
    assert h == [1, 0, 0, 4, 0, 0, 3, 0, 0, 3, 0, 0, 3]
