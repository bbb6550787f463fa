"""Character-twisted chain complexes built from group-labelled curve data.

A complex is a free module over Q(zeta)[x, y, z] (or over the scalars when
there are no variables) with finitely many generators. Each differential
term is a CurveDatum, and the sector differential for a character chi is

    d_chi(p) = sum over curves from p of  sign * chi(label) * monomial * output.

All slice computations are split into blocks by a multidegree refining the
tripled degree: every shipped complex is homogeneous for it, which keeps
the exact linear algebra small.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from .covergroup import Character, CoverSpec, char_eval
from .exactfield import CycNum, as_cyc
from .polycliff import (
    GradedSpace,
    SliceMatrix,
    SpanReducer,
    exact_rank_kernel,
    graded_slice_basis,
    matrix_rank,
    mono_mul,
    mono_str,
    vec_add,
    vec_clean,
)

__all__ = [
    "Generator",
    "CurveDatum",
    "TwistedComplex",
    "Sector",
    "UpstairsComplex",
    "CutoffTooSmall",
    "CurveDataError",
    "IntertwiningFailure",
    "build_sector",
    "cohomology_hilbert",
    "invariant_subcomplex",
    "lift_cover_and_psi",
    "parse_curve_file",
    "dump_curve_data",
    "DATA_DIR",
]

DATA_DIR = Path(__file__).parent / "data"
SHIFT = (1, 1, 1)
VAR_MULTIDEGS = ((2, 0, 0), (0, 2, 0), (0, 0, 2))


class CutoffTooSmall(ValueError):
    pass


class CurveDataError(ValueError):
    pass


class IntertwiningFailure(AssertionError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    weight: tuple
    multideg: tuple | None = None

    @property
    def parity(self) -> int:
        return self.degree % 2


@dataclass(frozen=True)
class CurveDatum:
    input: str
    output: str
    sign: int
    monomial: tuple
    label: tuple


def _vadd(a, b):
    return tuple(i + j for i, j in zip(a, b))


def _vsub(a, b):
    return tuple(i - j for i, j in zip(a, b))


class TwistedComplex:
    """Generators plus labelled curve data over a cover."""

    def __init__(self, cover: CoverSpec, generators, curves, nvars: int = 3, name: str = "complex",
                 allowed_vars=None):
        self.cover = cover
        # variables outside allowed_vars never appear in basis monomials
        self.allowed_vars = tuple(range(nvars)) if allowed_vars is None else tuple(allowed_vars)
        self.name = name
        self.generators: list[Generator] = list(generators)
        self.curves: list[CurveDatum] = list(curves)
        self.nvars = nvars
        self.index = {g.name: i for i, g in enumerate(self.generators)}
        if len(self.index) != len(self.generators):
            raise CurveDataError("duplicate generator names")
        G = cover.group
        self.group = G
        self.var_weights = cover.ends[:nvars]
        self.var_multidegs = VAR_MULTIDEGS[:nvars]
        self.space = GradedSpace(
            gen_names=tuple(g.name for g in self.generators),
            gen_degrees=tuple(g.degree for g in self.generators),
            gen_weights=tuple(g.weight for g in self.generators),
            var_degrees=(2,) * nvars,
            var_weights=tuple(self.var_weights),
            add=G.add,
            zero=G.identity(),
        )
        self.multigraded = all(g.multideg is not None for g in self.generators)
        self.outgoing: dict[int, list[CurveDatum]] = {i: [] for i in range(len(self.generators))}
        for c in self.curves:
            if c.input not in self.index or c.output not in self.index:
                raise CurveDataError(f"unknown generator in {c}")
            if len(c.monomial) != nvars:
                raise CurveDataError(f"monomial arity mismatch in {c}")
            self._check_curve(c)
            self.outgoing[self.index[c.input]].append(c)
        for g in self.generators:
            if g.multideg is not None and sum(g.multideg) != g.degree:
                raise CurveDataError(f"multidegree of {g.name} disagrees with its degree")

    # ------------------------------------------------------------ validation
    def _check_curve(self, c: CurveDatum):
        gin, gout = self.generators[self.index[c.input]], self.generators[self.index[c.output]]
        if gout.degree + 2 * sum(c.monomial) != gin.degree + 3:
            raise CurveDataError(f"degree not shifted by +3 in {c}")
        G = self.group
        if G.add(self.mono_weight(c.monomial), gout.weight) != gin.weight:
            raise CurveDataError(f"weight not preserved in {c}")
        if gin.multideg is not None and gout.multideg is not None:
            if _vadd(self.mono_multideg(c.monomial), gout.multideg) != _vadd(gin.multideg, SHIFT):
                raise CurveDataError(f"multidegree not homogeneous in {c}")

    def mono_weight(self, mono):
        return self.space.mono_weight(mono)

    def mono_multideg(self, mono):
        out = (0, 0, 0)
        for a, md in zip(mono, self.var_multidegs):
            out = _vadd(out, tuple(a * m for m in md))
        return out

    def weight(self, mono, gi):
        return self.space.weight(mono, gi)

    def multideg(self, mono, gi):
        return _vadd(self.mono_multideg(mono), self.generators[gi].multideg)

    def degree(self, mono, gi):
        return self.generators[gi].degree + 2 * sum(mono)

    def gen(self, name) -> Generator:
        return self.generators[self.index[name]]

    # ------------------------------------------------------------ differentials
    def label_differential(self, vec: dict) -> dict:
        """Differential with labels kept formal: keys (mono, gi, label)."""
        out: dict = {}
        G = self.group
        for key, coeff in vec.items():
            mono, gi, lab = key
            for c in self.outgoing[gi]:
                k = (mono_mul(mono, c.monomial), self.index[c.output], G.add(lab, c.label))
                out[k] = out.get(k, 0) + coeff * c.sign
        return {k: v for k, v in out.items() if v != 0}

    def verify_d_squared(self) -> list[str]:
        """Check d_chi o d_chi = 0 for every chi at once, generator by generator.

        Because characters separate group elements, this is equivalent to the
        vanishing of the signed count of every (output, monomial, total label).
        Returns the names of generators where it fails.
        """
        bad = []
        zero_mono = (0,) * self.nvars
        for gi, g in enumerate(self.generators):
            start = {(zero_mono, gi, self.group.identity()): 1}
            if self.label_differential(self.label_differential(start)):
                bad.append(g.name)
        return bad

    def sector(self, chi: Character) -> "Sector":
        return _sector_cached(self, chi)

    def __hash__(self):
        return id(self)

    def __eq__(self, other):
        return self is other


@lru_cache(maxsize=None)
def _sector_cached(complex_: TwistedComplex, chi: Character) -> "Sector":
    return Sector(complex_, chi)


def build_sector(C: TwistedComplex, chi: Character) -> "Sector":
    return C.sector(chi)


class Sector:
    """The complex C tensored with the line of the character chi."""

    def __init__(self, complex_: TwistedComplex, chi: Character, invariant_only: bool = False):
        self.C = complex_
        self.chi = chi
        self.invariant_only = invariant_only
        self.N = complex_.cover.N
        self._curve_coeff = {}
        for gi, curves in complex_.outgoing.items():
            self._curve_coeff[gi] = [
                (c.monomial, complex_.index[c.output], char_eval(chi, c.label) * c.sign) for c in curves
            ]
        self._basis_cache: dict = {}
        self._block_cache: dict = {}
        self._coh_cache: dict = {}

    # ------------------------------------------------------------ basis and blocks
    def block_key(self, mono, gi):
        if self.C.multigraded:
            return self.C.multideg(mono, gi)
        return (self.C.degree(mono, gi), self.C.weight(mono, gi))

    def next_key(self, key):
        if self.C.multigraded:
            return _vadd(key, SHIFT)
        return (key[0] + 3, key[1])

    def prev_key(self, key):
        if self.C.multigraded:
            return _vsub(key, SHIFT)
        return (key[0] - 3, key[1])

    def key_degree(self, key):
        return sum(key) if self.C.multigraded else key[0]

    def basis(self, degree: int) -> list:
        if degree not in self._basis_cache:
            b = graded_slice_basis(self.C.space, degree) if degree >= 0 else []
            allowed = self.C.allowed_vars
            if len(allowed) < self.C.nvars:
                b = [e for e in b if all(a == 0 or i in allowed for i, a in enumerate(e[0]))]
            if self.invariant_only:
                zero = self.C.group.identity()
                b = [e for e in b if self.C.weight(*e) == zero]
            self._basis_cache[degree] = b
        return self._basis_cache[degree]

    def blocks(self, degree: int) -> dict:
        if degree not in self._block_cache:
            out: dict = {}
            for e in self.basis(degree):
                out.setdefault(self.block_key(*e), []).append(e)
            self._block_cache[degree] = out
        return self._block_cache[degree]

    def block_weight(self, key):
        blocks = self.blocks(self.key_degree(key))
        elems = blocks.get(key)
        if not elems:
            return None
        return self.C.weight(*elems[0])

    # ------------------------------------------------------------ differential
    def d(self, vec: dict) -> dict:
        """Apply d_chi to a vector keyed by (mono, generator index)."""
        out: dict = {}
        for (mono, gi), coeff in vec.items():
            for m, go, cc in self._curve_coeff[gi]:
                k = (mono_mul(mono, m), go)
                v = coeff * cc
                if k in out:
                    out[k] = out[k] + v
                else:
                    out[k] = v
        return vec_clean(out)

    def block_matrix(self, key) -> SliceMatrix:
        deg = self.key_degree(key)
        src = self.blocks(deg).get(key, [])
        tgt_key = self.next_key(key)
        tgt = self.blocks(deg + 3).get(tgt_key, [])
        tgt_set = set(tgt)
        images = []
        for e in src:
            img = self.d({e: as_cyc(1, self.N)})
            for k in img:
                if k not in tgt_set:
                    raise CurveDataError(f"differential leaves its block at {k}")
            images.append(img)
        return SliceMatrix.from_images(tgt, src, images)

    def slice_matrix(self, degree: int) -> SliceMatrix:
        src = self.basis(degree)
        tgt = self.basis(degree + 3)
        images = [self.d({e: as_cyc(1, self.N)}) for e in src]
        return SliceMatrix.from_images(tgt, src, images)

    # ------------------------------------------------------------ cohomology
    def block_rank(self, key) -> int:
        k = ("rank", key)
        if k not in self._coh_cache:
            src = self.blocks(self.key_degree(key)).get(key, [])
            self._coh_cache[k] = matrix_rank(self.block_matrix(key)) if src else 0
        return self._coh_cache[k]

    def block_dim(self, key) -> int:
        n = len(self.blocks(self.key_degree(key)).get(key, []))
        if n == 0:
            return 0
        prev = self.prev_key(key)
        incoming = self.block_rank(prev) if self.key_degree(prev) >= 0 else 0
        return n - self.block_rank(key) - incoming

    def block_cohomology(self, key):
        """(cocycle basis, reducer modulo boundaries, dim H) for one block."""
        k = ("full", key)
        if k not in self._coh_cache:
            deg = self.key_degree(key)
            src = self.blocks(deg).get(key, [])
            m = self.block_matrix(key)
            _, kern = exact_rank_kernel(m)
            cocycles = [{src[j]: v for j, v in vec.items()} for vec in kern]
            prev = self.prev_key(key)
            boundaries = []
            if deg - 3 >= 0:
                for e in self.blocks(deg - 3).get(prev, []):
                    img = self.d({e: as_cyc(1, self.N)})
                    if img:
                        boundaries.append(img)
            order = {e: i for i, e in enumerate(src)}
            red = SpanReducer(boundaries, order)
            self._coh_cache[k] = (cocycles, red, len(cocycles) - red.rank)
        return self._coh_cache[k]

    def hilbert(self, cutoff: int, parity: int | None = None, invariant: bool = False) -> list[int]:
        if cutoff < 3:
            raise CutoffTooSmall("cutoff must be at least 3")
        zero = self.C.group.identity()
        out = []
        for d in range(cutoff + 1):
            if parity is not None and d % 2 != parity:
                out.append(0)
                continue
            total = 0
            for key, elems in self.blocks(d).items():
                if invariant and self.C.weight(*elems[0]) != zero:
                    continue
                total += self.block_dim(key)
            out.append(total)
        return out

    def is_cocycle(self, vec: dict) -> bool:
        return not self.d(vec)

    def is_coboundary(self, vec: dict) -> bool:
        """True if a homogeneous cocycle vec is exact."""
        for key, part in self.split_blocks(vec).items():
            _, red, _ = self.block_cohomology(key)
            if red.reduce(part):
                return False
        return True

    def split_blocks(self, vec: dict) -> dict:
        out: dict = {}
        for e, c in vec.items():
            out.setdefault(self.block_key(*e), {})[e] = c
        return out


def cohomology_hilbert(C: TwistedComplex, chi: Character, cutoff: int = 24, parity: int | None = None,
                       invariant: bool = False) -> list[int]:
    """dim H^d of the chi sector for d = 0..cutoff (zero off the requested parity)."""
    if cutoff < 3:
        raise CutoffTooSmall("cutoff must be at least 3")
    return C.sector(chi).hilbert(cutoff, parity, invariant)


def invariant_subcomplex(C: TwistedComplex, chi: Character) -> Sector:
    """The chi sector restricted to basis elements of total weight zero."""
    return Sector(C, chi, invariant_only=True)


# ---------------------------------------------------------------- upstairs

class UpstairsComplex:
    """Weight-zero basis elements of C paired with group elements.

    The lifted differential sends (m p)_g to sign (m mono out)_{g + label}; its
    coefficients are plain integers.
    """

    def __init__(self, C: TwistedComplex):
        self.C = C
        self.G = C.group
        self.elements = self.G.elements()
        trivial = C.cover.characters()[0]
        self._down = Sector(C, trivial, invariant_only=True)
        self._coh: dict = {}

    def basis(self, degree: int) -> list:
        return [(e, g) for e in self._down.basis(degree) for g in self.elements]

    def d(self, vec: dict) -> dict:
        out: dict = {}
        G = self.G
        for ((mono, gi), g), coeff in vec.items():
            for c in self.C.outgoing[gi]:
                k = ((mono_mul(mono, c.monomial), self.C.index[c.output]), G.add(g, c.label))
                out[k] = out.get(k, 0) + coeff * c.sign
        return {k: v for k, v in out.items() if v != 0}

    def act(self, h, vec: dict) -> dict:
        """Deck transformation h: (a)_g -> (a)_{h+g}."""
        return {(e, self.G.add(h, g)): c for (e, g), c in vec.items()}

    def _rank(self, key) -> int:
        if key not in self._coh:
            deg = self._down.key_degree(key)
            if deg < 0:
                self._coh[key] = 0
                return 0
            src = [(e, g) for e in self._down.blocks(deg).get(key, []) for g in self.elements]
            tgt_key = self._down.next_key(key)
            tgt = [(e, g) for e in self._down.blocks(deg + 3).get(tgt_key, []) for g in self.elements]
            images = []
            for e in src:
                img = self.d({e: 1})
                images.append({k: as_cyc(v, 1) for k, v in img.items()})
            self._coh[key] = matrix_rank(SliceMatrix.from_images(tgt, src, images)) if src else 0
        return self._coh[key]

    def hilbert(self, cutoff: int, parity: int | None = None) -> list[int]:
        out = []
        for d in range(cutoff + 1):
            if parity is not None and d % 2 != parity:
                out.append(0)
                continue
            total = 0
            for key, elems in self._down.blocks(d).items():
                n = len(elems) * len(self.elements)
                total += n - self._rank(key) - self._rank(self._down.prev_key(key))
            out.append(total)
        return out


class Psi:
    """Averaging isomorphism from the upstairs complex to the invariant sectors."""

    def __init__(self, C: TwistedComplex):
        self.C = C
        self.G = C.group
        self.chars = C.cover.characters()
        self.order = self.G.order
        self.N = C.cover.N

    def forward(self, vec: dict) -> dict:
        """Upstairs vector -> {character index: sector vector}."""
        out: dict = {}
        for (e, g), c in vec.items():
            for k, chi in enumerate(self.chars):
                v = char_eval(chi, g) * as_cyc(c, self.N) / self.order
                out[k] = vec_add(out.get(k, {}), {e: v})
        return {k: v for k, v in out.items() if v}

    def inverse(self, sectors: dict) -> dict:
        """{character index: sector vector} -> upstairs vector."""
        out: dict = {}
        for k, vec in sectors.items():
            chi = self.chars[k]
            for e, c in vec.items():
                for g in self.G.elements():
                    v = char_eval(chi, self.G.neg(g)) * c
                    out = vec_add(out, {(e, g): v})
        return out


def _sector_vectors_equal(a: dict, b: dict) -> bool:
    keys = set(a) | set(b)
    for k in keys:
        va, vb = a.get(k, {}), b.get(k, {})
        if vec_add(va, vb, as_cyc(-1, 1)):
            return False
    return True


def lift_cover_and_psi(C: TwistedComplex, cutoff: int = 12, check: bool = True):
    """Build the upstairs complex and the maps Psi, Psi^-1; optionally verify them.

    Verification covers every upstairs basis element of degree <= cutoff:
    Psi o d_up = d o Psi, Psi^-1 o Psi = id, Psi o Psi^-1 = id and
    G-equivariance of Psi.
    """
    up = UpstairsComplex(C)
    psi = Psi(C)
    if check:
        sectors = [C.sector(chi) for chi in psi.chars]
        G = C.group
        for d in range(cutoff + 1):
            for b in up.basis(d):
                src = {b: as_cyc(1, C.cover.N)}
                lhs = psi.forward(up.d(src))
                image = psi.forward(src)
                rhs = {k: sectors[k].d(v) for k, v in image.items()}
                rhs = {k: v for k, v in rhs.items() if v}
                if not _sector_vectors_equal(lhs, rhs):
                    raise IntertwiningFailure(f"Psi does not intertwine differentials at degree {d}", witness=b)
                back = psi.inverse(image)
                if vec_add(back, src, as_cyc(-1, 1)):
                    raise IntertwiningFailure("Psi^-1 o Psi is not the identity", witness=b)
                for h in G.elements():
                    moved = psi.forward(up.act(h, src))
                    scaled = {k: {e: v * char_eval(psi.chars[k], h) for e, v in vec.items()}
                              for k, vec in image.items()}
                    if not _sector_vectors_equal(moved, scaled):
                        raise IntertwiningFailure("Psi is not G-equivariant", witness=(b, h))
            # Psi o Psi^-1 on the invariant basis of each sector
            for k, sec in enumerate(sectors):
                for e in invariant_subcomplex(C, psi.chars[k]).basis(d):
                    vec = {k: {e: as_cyc(1, C.cover.N)}}
                    if not _sector_vectors_equal(psi.forward(psi.inverse(vec)), vec):
                        raise IntertwiningFailure("Psi o Psi^-1 is not the identity", witness=(k, e))
    return up, psi.forward, psi.inverse


# ---------------------------------------------------------------- text format

_LABEL_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*([abc])")


def resolve_label(text: str, cover: CoverSpec):
    """Parse a label: a group tuple '(1,0)' or a combination like 'c-a' of a, b, c."""
    G = cover.group
    text = text.strip()
    if text.startswith("("):
        inner = text.strip("()")
        vals = tuple(int(t) for t in inner.split(",")) if inner else ()
        return G.norm(vals)
    if text in ("0", "e", "1"):
        return G.identity()
    pos = 0
    coeffs = {"a": 0, "b": 0, "c": 0}
    compact = text.replace(" ", "")
    for m in _LABEL_TERM.finditer(compact):
        if m.start() != pos:
            raise CurveDataError(f"bad label {text!r}")
        k = int(m.group(2)) if m.group(2) else 1
        coeffs[m.group(3)] += -k if m.group(1) == "-" else k
        pos = m.end()
    if pos != len(compact):
        raise CurveDataError(f"bad label {text!r}")
    return G.combine((coeffs["a"], coeffs["b"], coeffs["c"]), cover.ends)


def parse_monomial(tokens: list[str], nvars: int = 3) -> tuple:
    names = ("x", "y", "z")[:nvars]
    exps = [0] * nvars
    for t in tokens:
        for part in t.split("*"):
            if part in ("1", ""):
                continue
            base, _, power = part.partition("^")
            if base not in names:
                raise CurveDataError(f"bad monomial token {part!r}")
            exps[names.index(base)] += int(power) if power else 1
    return tuple(exps)


def parse_curve_file(text: str, cover: CoverSpec, nvars: int = 3, name: str = "complex",
                     extra_generators=(), extra_curves=()) -> TwistedComplex:
    """Parse 'gen NAME DEGREE WEIGHT [MULTIDEG]' lines and curve lines
    'INPUT OUTPUT SIGN MONOMIAL LABEL'."""
    gens, curves = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if toks[0] == "gen":
            md = tuple(int(t) for t in toks[4].split(",")) if len(toks) > 4 else None
            gens.append(Generator(toks[1], int(toks[2]), resolve_label(toks[3], cover), md))
            continue
        if len(toks) < 5:
            raise CurveDataError(f"line {lineno}: expected 'input output sign monomial label'")
        curves.append(CurveDatum(toks[0], toks[1], int(toks[2]), parse_monomial(toks[3:-1], nvars),
                                 resolve_label(toks[-1], cover)))
    return TwistedComplex(cover, gens + list(extra_generators), curves + list(extra_curves), nvars, name)


def dump_curve_data(C: TwistedComplex) -> str:
    """Serialize with concrete group-tuple labels."""
    lines = []
    for g in C.generators:
        w = "(" + ",".join(map(str, g.weight)) + ")"
        md = "" if g.multideg is None else " " + ",".join(map(str, g.multideg))
        lines.append(f"gen {g.name} {g.degree} {w}{md}")
    for c in C.curves:
        mono = mono_str(c.monomial, ("x", "y", "z")).replace("*", " ") if C.nvars else "1"
        lab = "(" + ",".join(map(str, c.label)) + ")"
        lines.append(f"{c.input} {c.output} {c.sign:+d} {mono} {lab}")
    return "\n".join(lines) + "\n"
