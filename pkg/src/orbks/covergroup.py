"""Finite abelian groups, their characters, and covers of the pair of pants.

Groups are stored in invariant-factor form d1 | d2 | ... | dr and written
additively. A cover is fixed by the images g_alpha, g_beta, g_gamma of the
three boundary loops, which must sum to zero and generate the group.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from math import gcd, prod

from .exactfield import CycNum, root_of_unity

__all__ = [
    "FinAbGroup",
    "Character",
    "CoverSpec",
    "NonSurjective",
    "ParityViolation",
    "GroupParseError",
    "enumerate_characters",
    "char_eval",
    "cover_invariants",
    "parse_group",
    "parse_element",
    "cover_from_strings",
]


class NonSurjective(ValueError):
    pass


class ParityViolation(ArithmeticError):
    pass


class GroupParseError(ValueError):
    pass


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _crt(residues: list[tuple[int, int]]) -> int:
    # residues: (value, modulus) with pairwise coprime moduli
    x, m = 0, 1
    for r, mod in residues:
        inv = pow(m, -1, mod) if mod > 1 else 0
        t = ((r - x) * inv) % mod if mod > 1 else 0
        x, m = x + m * t, m * mod
    return x % m if m > 1 else 0


def _normal_form(moduli: tuple[int, ...]):
    """Invariant factors of prod Z/m_i and the coordinate change into them."""
    primes = sorted({p for m in moduli for p in _factorize(m)})
    # for each prime: list of (slot index, prime power) of the p-primary parts
    parts = {p: sorted((p ** e, i) for i, m in enumerate(moduli) for q, e in _factorize(m).items() if q == p)
             for p in primes}
    r = max((len(v) for v in parts.values()), default=0)
    factors = []
    for j in range(r):
        d = 1
        for p in primes:
            lst = parts[p]
            k = j - (r - len(lst))
            if k >= 0:
                d *= lst[k][0]
        factors.append(d)

    def convert(elem: tuple[int, ...]) -> tuple[int, ...]:
        out = []
        for j in range(r):
            res = []
            for p in primes:
                lst = parts[p]
                k = j - (r - len(lst))
                if k >= 0:
                    pp, slot = lst[k]
                    res.append((elem[slot] % pp, pp))
            out.append(_crt(res) % factors[j])
        return tuple(out)

    return tuple(factors), convert


class FinAbGroup:
    """Finite abelian group in invariant-factor form."""

    def __init__(self, moduli=()):
        moduli = tuple(int(m) for m in moduli)
        if any(m < 1 for m in moduli):
            raise ValueError("moduli must be positive")
        factors, convert = _normal_form(moduli)
        self.invariant_factors: tuple[int, ...] = factors
        self.input_moduli = moduli
        self._convert = convert

    def from_input(self, elem) -> tuple[int, ...]:
        """Convert an element given in the constructor's coordinates."""
        elem = tuple(int(a) for a in elem)
        if len(elem) != len(self.input_moduli):
            raise GroupParseError(f"element {elem} has wrong length for {self}")
        return self._convert(elem)

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def identity(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def elements(self) -> list[tuple[int, ...]]:
        return [tuple(e) for e in itertools.product(*(range(d) for d in self.invariant_factors))]

    def norm(self, g) -> tuple[int, ...]:
        return tuple(a % d for a, d in zip(g, self.invariant_factors))

    def add(self, g, h) -> tuple[int, ...]:
        return tuple((a + b) % d for a, b, d in zip(g, h, self.invariant_factors))

    def neg(self, g) -> tuple[int, ...]:
        return tuple((-a) % d for a, d in zip(g, self.invariant_factors))

    def scale(self, k: int, g) -> tuple[int, ...]:
        return tuple((k * a) % d for a, d in zip(g, self.invariant_factors))

    def combine(self, coeffs, gens) -> tuple[int, ...]:
        out = self.identity()
        for k, g in zip(coeffs, gens):
            out = self.add(out, self.scale(k, g))
        return out

    def element_order(self, g) -> int:
        n = 1
        for a, d in zip(g, self.invariant_factors):
            n = n * (d // gcd(a, d)) // gcd(n, d // gcd(a, d))
        return n

    def subgroup_order(self, gens) -> int:
        seen = {self.identity()}
        frontier = [self.identity()]
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = self.add(x, g)
                    if y not in seen:
                        seen.add(y)
                        new.append(y)
            frontier = new
        return len(seen)

    def __eq__(self, other):
        return isinstance(other, FinAbGroup) and self.invariant_factors == other.invariant_factors

    def __hash__(self):
        return hash(self.invariant_factors)

    def __str__(self):
        if not self.invariant_factors:
            return "1"
        return "x".join(f"Z{d}" for d in self.invariant_factors)

    __repr__ = __str__


@dataclass(frozen=True)
class Character:
    group: FinAbGroup
    exponents: tuple[int, ...]

    def __call__(self, g) -> CycNum:
        return char_eval(self, g)

    def is_trivial(self) -> bool:
        return not any(self.exponents)

    def mul(self, other: "Character") -> "Character":
        return Character(self.group, tuple((a + b) % d for a, b, d in
                                           zip(self.exponents, other.exponents, self.group.invariant_factors)))

    def inverse(self) -> "Character":
        return Character(self.group, self.group.neg(self.exponents))

    def label(self) -> str:
        return "(" + ",".join(str(c) for c in self.exponents) + ")"

    def __str__(self):
        return "chi" + self.label()


def enumerate_characters(group: FinAbGroup) -> list[Character]:
    """All characters, trivial first, in lexicographic order of exponents."""
    return [Character(group, e) for e in group.elements()]


def char_eval(chi: Character, g) -> CycNum:
    group = chi.group
    n = group.exponent
    k = sum(c * a * (n // d) for c, a, d in zip(chi.exponents, g, group.invariant_factors))
    return root_of_unity(n, k)


@dataclass(frozen=True)
class CoverSpec:
    group: FinAbGroup
    g_alpha: tuple[int, ...]
    g_beta: tuple[int, ...]
    g_gamma: tuple[int, ...]

    def __post_init__(self):
        G = self.group
        for name in ("g_alpha", "g_beta", "g_gamma"):
            object.__setattr__(self, name, G.norm(getattr(self, name)))
        total = G.add(G.add(self.g_alpha, self.g_beta), self.g_gamma)
        if total != G.identity():
            raise ValueError("g_alpha + g_beta + g_gamma must vanish")
        if G.subgroup_order([self.g_alpha, self.g_beta]) != G.order:
            raise NonSurjective(f"g_alpha, g_beta do not generate {G}")

    @classmethod
    def from_pair(cls, group: FinAbGroup, g_alpha, g_beta) -> "CoverSpec":
        g_alpha, g_beta = group.norm(g_alpha), group.norm(g_beta)
        return cls(group, g_alpha, g_beta, group.neg(group.add(g_alpha, g_beta)))

    @property
    def ends(self) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
        return (self.g_alpha, self.g_beta, self.g_gamma)

    @property
    def N(self) -> int:
        """Order of the field of character values."""
        return self.group.exponent

    def characters(self) -> list[Character]:
        return enumerate_characters(self.group)

    def describe(self) -> str:
        def fmt(g):
            return ",".join(str(a) for a in g) or "0"
        return f"{self.group} g_alpha=({fmt(self.g_alpha)}) g_beta=({fmt(self.g_beta)}) g_gamma=({fmt(self.g_gamma)})"


def cover_invariants(spec: CoverSpec) -> tuple[int, int, tuple[int, int, int]]:
    """(genus, punctures, punctures per end) of the cover."""
    G = spec.group
    if G.subgroup_order([spec.g_alpha, spec.g_beta]) != G.order:
        raise NonSurjective("cover is disconnected")
    per_end = tuple(G.order // G.element_order(g) for g in spec.ends)
    punctures = sum(per_end)
    twice_genus = 2 + G.order - punctures
    if twice_genus % 2 or twice_genus < 0:
        raise ParityViolation(f"2 + |G| - punctures = {twice_genus}")
    return twice_genus // 2, punctures, per_end


_GROUP_RE = re.compile(r"^\s*(?:Z(\d+))(?:\s*[xX*]\s*Z(\d+))*\s*$")


def parse_group(text: str) -> FinAbGroup:
    """Parse 'Z2xZ4' style group names; 'Z1' or '1' is the trivial group."""
    text = text.strip()
    if text in ("1", "0", "Z1", "trivial"):
        return FinAbGroup(())
    if not _GROUP_RE.match(text):
        raise GroupParseError(f"cannot parse group {text!r}")
    moduli = [int(m) for m in re.findall(r"Z(\d+)", text)]
    if any(m < 1 for m in moduli):
        raise GroupParseError(f"bad modulus in {text!r}")
    return FinAbGroup(moduli)


def parse_element(group: FinAbGroup, text: str) -> tuple[int, ...]:
    """Parse a comma-separated element given in the input coordinates."""
    text = text.strip().strip("()")
    try:
        vals = tuple(int(t) for t in text.split(",")) if text else ()
    except ValueError as exc:
        raise GroupParseError(f"cannot parse element {text!r}") from exc
    if len(group.input_moduli) == 0 and all(v == 0 for v in vals):
        return ()
    return group.from_input(vals)


def cover_from_strings(group_text: str, ga_text: str, gb_text: str) -> CoverSpec:
    G = parse_group(group_text)
    return CoverSpec.from_pair(G, parse_element(G, ga_text), parse_element(G, gb_text))
