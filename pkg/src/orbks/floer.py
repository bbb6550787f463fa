"""Floer side: the eight-generator complex of the immersed circle with bounding
cochain b = xX + yY + zZ, its twisted sectors, special cocycles, the partial
product table and the map tau to Koszul cochains.

Floer cochains are dicts {(monomial, generator index): CycNum}; the
generator order is e_L, X, Y, Z, Xbar, Ybar, Zbar, f_L.
"""
from __future__ import annotations

from .covergroup import Character, CoverSpec, char_eval
from .exactfield import CycNum, as_cyc
from .polycliff import mono_mul, mono_str, vec_add, vec_clean
from .twistcomplex import DATA_DIR, TwistedComplex, parse_curve_file

__all__ = [
    "FLOER_GENS",
    "ETA",
    "UNDEFINED",
    "cf_curve_data",
    "special_cocycles",
    "untwisted_cocycles",
    "tau_map",
    "fixed_variables",
    "m2_partial",
    "cochain",
    "cochain_str",
]

FLOER_GENS = ("e_L", "X", "Y", "Z", "Xbar", "Ybar", "Zbar", "f_L")

# eta: generator -> (theta word, sign); e.g. eta(-Xbar) = theta_y theta_z
ETA = {
    "e_L": ((), 1),
    "X": ((0,), 1),
    "Y": ((1,), 1),
    "Z": ((2,), 1),
    "Xbar": ((1, 2), -1),
    "Ybar": ((0, 2), 1),   # -theta_z theta_x = theta_x theta_z
    "Zbar": ((0, 1), -1),
    "f_L": ((0, 1, 2), -1),
}


class _Undefined:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "Undefined"

    def __bool__(self):
        return False


UNDEFINED = _Undefined()


def cf_curve_data(spec: CoverSpec) -> TwistedComplex:
    """The twisted Floer complex over the given cover."""
    text = (DATA_DIR / "floer_twisted.curves").read_text()
    C = parse_curve_file(text, spec, nvars=3, name="CF")
    assert tuple(g.name for g in C.generators) == FLOER_GENS
    return C


def cochain(terms, order: int = 1) -> dict:
    """Build a cochain from (coefficient, monomial, generator name) triples."""
    out: dict = {}
    for c, mono, name in terms:
        out = vec_add(out, {(tuple(mono), FLOER_GENS.index(name)): as_cyc(c, order)})
    return out


def cochain_str(vec: dict) -> str:
    if not vec:
        return "0"
    parts = []
    for (mono, gi), c in sorted(vec.items(), key=lambda t: (t[0][1], t[0][0])):
        m = mono_str(mono)
        name = FLOER_GENS[gi]
        cs = str(c)
        if " " in cs:
            cs = f"({cs})"
        factor = name if m == "1" else f"{m}*{name}"
        parts.append(factor if cs == "1" else f"-{factor}" if cs == "-1" else f"{cs}*{factor}")
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


def fixed_variables(spec: CoverSpec, chi: Character) -> tuple[int, ...]:
    """Indices of the variables x, y, z fixed by chi (chi(g_a) = 1)."""
    return tuple(i for i, g in enumerate(spec.ends) if char_eval(chi, g) == 1)


def special_cocycles(spec: CoverSpec, chi: Character, C: TwistedComplex | None = None) -> dict:
    """P, Q, R, U, V, W of the chi sector with their cocycle flags.

    Returns {name: (cochain, is_cocycle)}.
    """
    C = C or cf_curve_data(spec)
    N = spec.N
    ga, gb, gc = spec.ends
    G = spec.group
    a, b, c = (char_eval(chi, g) for g in (ga, gb, gc))
    ai, bi, ci = (char_eval(chi, G.neg(g)) for g in (ga, gb, gc))
    one = as_cyc(1, N)
    x, y, z, e0 = (1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, 0)
    elems = {
        "P": cochain([(one - a, e0, "f_L"), (-bi, y, "Y"), (one, z, "Z")], N),
        "Q": cochain([(one - b, e0, "f_L"), (ai, x, "X"), (-b, z, "Z")], N),
        "R": cochain([(one - c, e0, "f_L"), (-(c * ai), x, "X"), (c, y, "Y")], N),
        "U": cochain([(ai, x, "e_L"), (ai - b, e0, "Xbar")], N),
        "V": cochain([(c, y, "e_L"), (bi - c, e0, "Ybar")], N),
        "W": cochain([(one, z, "e_L"), (ci - a, e0, "Zbar")], N),
    }
    sec = C.sector(chi)
    return {k: (v, sec.is_cocycle(v)) for k, v in elems.items()}


def untwisted_cocycles(N: int = 1) -> dict:
    """Generating cocycles of the untwisted sector: e_L, yY - zZ, xX - yY."""
    x, y, z, e0 = (1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, 0)
    return {
        "e_L": cochain([(1, e0, "e_L")], N),
        "yY-zZ": cochain([(1, y, "Y"), (-1, z, "Z")], N),
        "xX-yY": cochain([(1, x, "X"), (-1, y, "Y")], N),
    }


def tau_map(vec: dict, spec: CoverSpec, chi: Character) -> dict:
    """Koszul cochain {(monomial, theta word): coefficient} over Fix(chi).

    In a twisted sector keeps only terms of maximal generator degree, kills
    the variables moved by chi, and relabels generators by eta. In the
    untwisted sector eta is an isomorphism of complexes and is applied to
    every term.
    """
    if not vec:
        return {}
    degs = {"e_L": 0, "X": 1, "Y": 1, "Z": 1, "Xbar": 2, "Ybar": 2, "Zbar": 2, "f_L": 3}
    fixed = set(fixed_variables(spec, chi))
    top = max(degs[FLOER_GENS[gi]] for (_, gi) in vec) if len(fixed) < 3 else None
    out: dict = {}
    for (mono, gi), c in vec.items():
        name = FLOER_GENS[gi]
        if top is not None and degs[name] != top:
            continue
        if any(a and i not in fixed for i, a in enumerate(mono)):
            continue
        word, sign = ETA[name]
        out = vec_add(out, {(mono, word): c * sign})
    return out


# ---------------------------------------------------------------- partial product

def _m2_table() -> dict:
    z1, zero = (0, 0, 1), (0, 0, 0)
    return {
        ("X", "Y"): {(zero, "Zbar"): 1, (z1, "e_L"): 1},
        ("Y", "X"): {(zero, "Zbar"): -1},
        ("X", "X"): {},
        ("Y", "Y"): {},
        # read off from the expansion of m2(yY - zZ, xX - yY)
        ("Z", "X"): {(zero, "Ybar"): 1},
        ("Z", "Y"): {(zero, "Xbar"): -1},
    }


_M2 = _m2_table()


def m2_partial(u: dict, v: dict, N: int = 1):
    """Bilinear extension of the tabulated untwisted products.

    Inputs and output are cochains keyed by (monomial, generator index).
    Returns UNDEFINED as soon as an untabulated generator pair is needed.
    """
    out: dict = {}
    for (m1, g1), c1 in u.items():
        for (m2, g2), c2 in v.items():
            n1, n2 = FLOER_GENS[g1], FLOER_GENS[g2]
            mono = mono_mul(m1, m2)
            coeff = c1 * c2
            if n1 == "e_L":
                out = vec_add(out, {(mono, g2): coeff})
                continue
            if n2 == "e_L":
                out = vec_add(out, {(mono, g1): coeff})
                continue
            entry = _M2.get((n1, n2))
            if entry is None:
                return UNDEFINED
            for (mm, name), s in entry.items():
                out = vec_add(out, {(mono_mul(mono, mm), FLOER_GENS.index(name)): coeff * s})
    return vec_clean(out)
