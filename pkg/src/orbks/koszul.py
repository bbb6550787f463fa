"""Koszul complexes of W = xyz per character sector and the orbifold Koszul algebra.

For a character chi the variables split into fixed ones (chi(g_i) = 1) and
moved ones. The sector complex is R^chi <theta_J> * theta_moved for J inside
the fixed set, with differential sum over fixed i of d_i(W^chi) d/dtheta_i,
where W^chi is W with the moved variables set to zero.

Koszul cochains are dicts {(monomial, theta word): CycNum}.
"""
from __future__ import annotations

from itertools import combinations

from .covergroup import Character, CoverSpec, char_eval
from .exactfield import as_cyc
from .polycliff import (
    SliceMatrix,
    matrix_rank,
    mono_mul,
    mono_str,
    monomials_of_degree,
    vec_add,
    vec_clean,
)
from .twistcomplex import CurveDatum, Generator, TwistedComplex

__all__ = [
    "KoszulSector",
    "build_koszul_sector",
    "koszul_oracle",
    "koszul_hilbert",
    "orbifold_koszul_hilbert",
    "module_action",
    "kos_str",
    "LAMBDA",
    "word_name",
]

_VN = ("x", "y", "z")
# partial derivatives of W = xyz
_DW = {0: (0, 1, 1), 1: (1, 0, 1), 2: (1, 1, 0)}


def word_name(word: tuple[int, ...]) -> str:
    return "th_" + "".join(_VN[i] for i in word) if word else "1"


def _word_multideg(word):
    md = [0, 0, 0]
    for i in word:
        for k in range(3):
            md[k] += 1 if k != i else -1
    return tuple(md)


def kos_str(vec: dict) -> str:
    if not vec:
        return "0"
    parts = []
    for (mono, word), c in sorted(vec.items(), key=lambda t: (len(t[0][1]), t[0][1], t[0][0])):
        m = mono_str(mono)
        w = "*".join(f"th{_VN[i]}" for i in word)
        factor = "*".join(p for p in (m if m != "1" else "", w) if p) or "1"
        cs = str(c)
        if " " in cs:
            cs = f"({cs})"
        if factor == "1":
            parts.append(cs)
        else:
            parts.append(factor if cs == "1" else f"-{factor}" if cs == "-1" else f"{cs}*{factor}")
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


class KoszulSector:
    """Koszul complex of one character sector, on top of the complex engine."""

    def __init__(self, spec: CoverSpec, chi: Character):
        self.spec = spec
        self.chi = chi
        self.fixed = tuple(i for i, g in enumerate(spec.ends) if char_eval(chi, g) == 1)
        self.moved = tuple(i for i in range(3) if i not in self.fixed)
        G = spec.group
        gens, curves = [], []
        self.words = []
        for k in range(len(self.fixed) + 1):
            for J in combinations(self.fixed, k):
                word = tuple(sorted(J + self.moved))
                self.words.append(word)
                w = G.identity()
                for i in word:
                    w = G.add(w, G.neg(spec.ends[i]))
                gens.append(Generator(word_name(word), len(word), w, _word_multideg(word)))
        # W^chi vanishes unless every variable is fixed
        if len(self.fixed) == 3:
            for word in self.words:
                for pos, i in enumerate(word):
                    rest = word[:pos] + word[pos + 1:]
                    curves.append(CurveDatum(word_name(word), word_name(rest), (-1) ** pos, _DW[i],
                                             G.identity()))
        self.complex = TwistedComplex(spec, gens, curves, nvars=3, name=f"Kos {chi}",
                                      allowed_vars=self.fixed)
        self.sector = self.complex.sector(spec.characters()[0])
        self.N = spec.N

    @property
    def case(self) -> int:
        return {3: 1, 1: 2, 0: 3}[len(self.fixed)]

    def to_internal(self, vec: dict) -> dict:
        out = {}
        for (mono, word), c in vec.items():
            gi = self.complex.index[word_name(tuple(word))]
            out[(tuple(mono), gi)] = as_cyc(c, self.N) if not hasattr(c, "order") else c
        return vec_clean(out)

    def to_external(self, vec: dict) -> dict:
        return {(mono, self.words[gi]): c for (mono, gi), c in vec.items()}

    def differential(self, vec: dict) -> dict:
        return self.to_external(self.sector.d(self.to_internal(vec)))

    def differential_str(self) -> str:
        if self.case != 1:
            return "0"
        return "yz*d/dthx + xz*d/dthy + xy*d/dthz"

    def hilbert(self, cutoff: int, parity: int | None = None, invariant: bool = False) -> list[int]:
        return self.sector.hilbert(cutoff, parity, invariant)

    def is_cocycle(self, vec: dict) -> bool:
        return not self.sector.d(self.to_internal(vec))

    def normal_form(self, vec: dict) -> dict:
        """Canonical representative of the class of a cocycle modulo boundaries."""
        internal = self.to_internal(vec)
        out: dict = {}
        for key, part in self.sector.split_blocks(internal).items():
            _, red, _ = self.sector.block_cohomology(key)
            out = vec_add(out, red.reduce(part))
        return self.to_external(out)

    def same_class(self, a: dict, b: dict) -> bool:
        diff = vec_add(self.to_internal(a), self.to_internal(b), as_cyc(-1, 1))
        return self.sector.is_coboundary(diff)

    def is_exact(self, vec: dict) -> bool:
        return self.sector.is_coboundary(self.to_internal(vec))


def build_koszul_sector(spec: CoverSpec, chi: Character) -> KoszulSector:
    return KoszulSector(spec, chi)


def koszul_hilbert(spec: CoverSpec, chi: Character, cutoff: int = 24, parity=None, invariant=False) -> list[int]:
    return KoszulSector(spec, chi).hilbert(cutoff, parity, invariant)


# ---------------------------------------------------------------- oracles

# lambda_x = y thy - z thz, lambda_y = z thz - x thx, lambda_z = x thx - y thy
LAMBDA = {
    "x": {((0, 1, 0), (1,)): 1, ((0, 0, 1), (2,)): -1},
    "y": {((0, 0, 1), (2,)): 1, ((1, 0, 0), (0,)): -1},
    "z": {((1, 0, 0), (0,)): 1, ((0, 1, 0), (1,)): -1},
}


def _h0_dim(k: int) -> int:
    """Monomials of degree k in C[x,y,z] outside the ideal (xy, yz, zx)."""
    return sum(1 for e in monomials_of_degree(3, k) if sum(1 for a in e if a) <= 1)


def _h_minus1_dim(d: int) -> int:
    """Degree-d part of (R lx + R lz) / (x lx, z lz, y (lx + lz), xy, yz, zx).

    Computed by linear algebra on the presentation: free module coordinates
    are (generator, monomial), relations are all monomial multiples.
    """
    if d < 3 or (d - 3) % 2:
        return 0
    k = (d - 3) // 2
    free = [(g, m) for g in ("lx", "lz") for m in monomials_of_degree(3, k)]
    rels = [
        {("lx", (1, 0, 0)): 1},
        {("lz", (0, 0, 1)): 1},
        {("lx", (0, 1, 0)): 1, ("lz", (0, 1, 0)): 1},
    ]
    for g in ("lx", "lz"):
        for q in ((1, 1, 0), (0, 1, 1), (1, 0, 1)):
            rels.append({(g, q): 1})
    images = []
    for rel in rels:
        rdeg = sum(next(iter(rel))[1])
        if rdeg > k:
            continue
        for m in monomials_of_degree(3, k - rdeg):
            images.append({(g, mono_mul(mm, m)): as_cyc(c, 1) for (g, mm), c in rel.items()})
    if not images:
        return len(free)
    rank = matrix_rank(SliceMatrix.from_images(free, list(range(len(images))), images))
    return len(free) - rank


def koszul_oracle(n_fixed: int, parity: int, degree: int) -> int:
    """Closed-form dimension of a sector's Koszul cohomology.

    n_fixed = 3 (untwisted), 1 (one fixed variable) or 0 (none fixed).
    """
    if degree % 2 != parity:
        return 0
    if n_fixed == 3:
        if parity == 0:
            return _h0_dim(degree // 2)
        return _h_minus1_dim(degree)
    if n_fixed == 1:
        return 1 if degree >= 2 else 0
    if n_fixed == 0:
        return 1 if degree == 3 else 0
    raise ValueError("a character fixes 0, 1 or 3 variables")


def orbifold_koszul_hilbert(spec: CoverSpec, cutoff: int = 24) -> list[int]:
    """Hilbert function of the invariant part of the sum over all sectors."""
    total = [0] * (cutoff + 1)
    for chi in spec.characters():
        h = KoszulSector(spec, chi).hilbert(cutoff, invariant=True)
        total = [a + b for a, b in zip(total, h)]
    return total


def module_action(p: dict, c: dict, sector: KoszulSector) -> dict:
    """Multiply the cocycle c by the polynomial p ({monomial: coefficient}) and
    return the normal form of the product's class."""
    G = sector.spec.group
    out: dict = {}
    for pm, pc in p.items():
        if sector.spec.group.order > 1:
            w = G.identity()
            for i, a in enumerate(pm):
                w = G.add(w, G.scale(a, sector.spec.ends[i]))
            if w != G.identity():
                raise ValueError("module_action needs an invariant polynomial")
        for (m, word), cc in c.items():
            out = vec_add(out, {(mono_mul(pm, m), word): as_cyc(cc, sector.N) * pc})
    return sector.normal_form(out)
