"""Symplectic side: the log-cohomology model of SC*(P) and its twisted sectors.

Generators are e, f1, f2 (Morse part) and the orbit towers e_a t_a^n,
f_a t_a^n for the three ends a. A tower winding n times around end a has
weight n * g_a.
"""
from __future__ import annotations

import re

from .covergroup import CoverSpec
from .twistcomplex import (
    DATA_DIR,
    CurveDatum,
    Generator,
    TwistedComplex,
    parse_curve_file,
    resolve_label,
)

__all__ = [
    "ENDS",
    "TwistedProductUnsupported",
    "sc_curve_data",
    "star_product",
    "sh_hilbert",
    "tower_name",
    "parse_log_name",
    "default_n_max",
]

ENDS = ("alpha", "beta", "gamma")
_END_LETTER = {"alpha": "a", "beta": "b", "gamma": "c"}
_NAME_RE = re.compile(r"^([ef])_(alpha|beta|gamma)\^(\d+)$")


class TwistedProductUnsupported(NotImplementedError):
    pass


def tower_name(kind: str, end: str, n: int) -> str:
    return f"{kind}_{end}^{n}"


def parse_log_name(name: str):
    """('e'|'f1'|'f2', None, 0) for the Morse part, ('e'|'f', end, n) for towers."""
    if name in ("e", "f1", "f2"):
        return name, None, 0
    m = _NAME_RE.match(name)
    if not m:
        raise ValueError(f"not a log generator: {name!r}")
    return m.group(1), m.group(2), int(m.group(3))


def default_n_max(cutoff: int) -> int:
    return max(1, cutoff // 2)


def sc_curve_data(spec: CoverSpec, n_max: int) -> TwistedComplex:
    """The twisted log-cohomology complex with towers up to winding n_max."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    text = (DATA_DIR / "sc_logmodel.curves").read_text()
    plain, templates = [], []
    for line in text.splitlines():
        body = line.split("#", 1)[0].strip()
        if body.startswith("tower "):
            templates.append(body.split()[1:])
        else:
            plain.append(line)
    G = spec.group
    gens, curves = [], []
    for axis, end in enumerate(ENDS):
        g = spec.ends[axis]
        letter = _END_LETTER[end]
        for n in range(1, n_max + 1):
            md = [0, 0, 0]
            md[axis] = 2 * n
            w = G.scale(n, g)
            gens.append(Generator(tower_name("e", end, n), 2 * n, w, tuple(md)))
            gens.append(Generator(tower_name("f", end, n), 2 * n + 3, w, tuple(m + 1 for m in md)))
            for inp, out, sign, mono, label in templates:
                curves.append(CurveDatum(
                    inp.replace("END", end).replace("^n", f"^{n}"),
                    out.replace("END", end).replace("^n", f"^{n}"),
                    int(sign), (), resolve_label(label.replace("L", letter), spec)))
                assert mono == "1"
    return parse_curve_file("\n".join(plain), spec, nvars=0, name=f"SC n_max={n_max}",
                            extra_generators=gens, extra_curves=curves)


# ---------------------------------------------------------------- product table

def _restrict(u: str, end: str) -> dict:
    """Restriction of a Morse class to the circle at the given end."""
    if u == "e":
        return {"e": 1}
    table = {
        "f1": {"alpha": {"f": 1}, "beta": {"f": 1}, "gamma": {}},
        "f2": {"alpha": {}, "beta": {"f": -1}, "gamma": {"f": 1}},
    }
    return table[u][end]


def _circle(x: str, y: str) -> dict:
    # cohomology of a circle: e is the unit, f * f = 0
    if x == "e":
        return {y: 1}
    if y == "e":
        return {x: 1}
    return {}


def _degree(name: str) -> int:
    kind, _, n = parse_log_name(name)
    if kind == "e":
        return 2 * n
    return 3 + 2 * n


def star_product(u: str, v: str, chi=None) -> dict:
    """Product of two untwisted basis classes, as {generator name: coefficient}."""
    if chi is not None and not chi.is_trivial():
        raise TwistedProductUnsupported("only the untwisted product is tabulated")
    ku, eu, nu = parse_log_name(u)
    kv, ev, nv = parse_log_name(v)
    if eu is None and ev is None:
        if ku == "e":
            return {v: 1}
        if kv == "e":
            return {u: 1}
        return {}
    if eu is None or ev is None:
        # Morse class times tower: restrict the Morse class to the tower's end
        morse, (kind, end, n) = (ku, (kv, ev, nv)) if eu is None else (kv, (ku, eu, nu))
        sign = 1
        if eu is not None and (_degree(u) % 2) and (_degree(v) % 2):
            sign = -1
        out: dict = {}
        for r, c in _restrict(morse, end).items():
            for w, c2 in _circle(r, kind).items():
                name = tower_name(w, end, n)
                out[name] = out.get(name, 0) + sign * c * c2
        return {k: c for k, c in out.items() if c}
    if eu != ev:
        return {}
    return {tower_name(w, eu, nu + nv): c for w, c in _circle(ku, kv).items()}


def sh_hilbert(spec: CoverSpec, chi="total-invariant", parity: int | None = None, cutoff: int = 24,
               n_max: int | None = None) -> list[int]:
    """Hilbert function of one sector, or of the invariant parts summed over sectors."""
    n_max = default_n_max(cutoff) if n_max is None else n_max
    C = sc_curve_data(spec, n_max)
    if chi == "total-invariant":
        total = [0] * (cutoff + 1)
        for c in spec.characters():
            h = C.sector(c).hilbert(cutoff, parity, invariant=True)
            total = [a + b for a, b in zip(total, h)]
        return total
    return C.sector(chi).hilbert(cutoff, parity)
