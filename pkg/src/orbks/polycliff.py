"""Polynomials, Clifford words, graded bases and exact linear algebra.

Polynomials live in R = Q(zeta)[x, y, z] or in S = Q(zeta)[x, y, z, x', y', z'].
Clifford words are normal-ordered products theta_I d_J with
d_i theta_j = -theta_j d_i + delta_ij.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .exactfield import CycNum, as_cyc

__all__ = [
    "Poly",
    "VAR_NAMES_3",
    "VAR_NAMES_6",
    "monomials_of_degree",
    "mono_mul",
    "mono_str",
    "clifford_normalize",
    "word_mul",
    "word_apply",
    "word_str",
    "ALL_WORDS",
    "GradedSpace",
    "graded_slice_basis",
    "SliceMatrix",
    "exact_rank_kernel",
    "solve_affine",
    "Inconsistent",
    "SpanReducer",
    "vec_add",
    "vec_scale",
    "vec_clean",
]

VAR_NAMES_3 = ("x", "y", "z")
VAR_NAMES_6 = ("x", "y", "z", "x'", "y'", "z'")


# ---------------------------------------------------------------- monomials

@lru_cache(maxsize=None)
def monomials_of_degree(nvars: int, deg: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of total degree deg, in degrevlex order (descending)."""
    if nvars == 0:
        return ((),) if deg == 0 else ()
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for a in range(remaining, -1, -1):
            rec(prefix + (a,), remaining - a, slots - 1)

    rec((), deg, nvars)
    # degrevlex among equal degree: smaller exponent in the last variable first
    out.sort(key=lambda e: tuple(-a for a in reversed(e)), reverse=True)
    return tuple(out)


def mono_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(i + j for i, j in zip(a, b))


def mono_str(e: tuple[int, ...], names=None) -> str:
    if names is None:
        names = VAR_NAMES_3 if len(e) == 3 else VAR_NAMES_6
    parts = []
    for n, a in zip(names, e):
        if a == 1:
            parts.append(n)
        elif a > 1:
            parts.append(f"{n}^{a}")
    return "*".join(parts) if parts else "1"


def _coeff_str(c: CycNum) -> str:
    s = str(c)
    if " " in s:
        return f"({s})"
    return s


class Poly:
    """Sparse polynomial with CycNum coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                if not isinstance(c, CycNum):
                    c = as_cyc(c, 1)
                if not c.is_zero():
                    clean[tuple(e)] = c
        self.terms: dict[tuple[int, ...], CycNum] = clean

    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, exps, c=1) -> "Poly":
        return cls(len(exps), {tuple(exps): c})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def _wrap(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly.const(self.nvars, other)

    def __add__(self, other):
        other = self._wrap(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return Poly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly(self.nvars, {e: c * other for e, c in self.terms.items()})
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = mono_mul(e1, e2)
                v = c1 * c2
                out[e] = out[e] + v if e in out else v
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.const(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._wrap(other)
        diff = self - other
        return diff.is_zero()

    def __hash__(self):
        return hash(tuple(sorted(self.terms)))

    def substitute(self, images: list["Poly"]) -> "Poly":
        """Replace variable i by images[i]; images share a common nvars."""
        m = images[0].nvars if images else 0
        out = Poly(m)
        for e, c in self.terms.items():
            term = Poly.const(m, c)
            for img, a in zip(images, e):
                if a:
                    term = term * (img ** a)
            out = out + term
        return out

    def scale_vars(self, factors) -> "Poly":
        """Replace x_i by factors[i] * x_i (factors are scalars)."""
        out = {}
        for e, c in self.terms.items():
            for f, a in zip(factors, e):
                if a:
                    c = c * (f ** a if a > 1 else f)
            out[e] = c
        return Poly(self.nvars, out)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-a for a in t[0])))

    def __str__(self):
        if not self.terms:
            return "0"
        names = VAR_NAMES_3 if self.nvars == 3 else VAR_NAMES_6 if self.nvars == 6 else [f"v{i}" for i in range(self.nvars)]
        parts = []
        for e, c in self.sorted_terms():
            m = mono_str(e, names)
            if m == "1":
                parts.append(_coeff_str(c))
            elif c == 1:
                parts.append(m)
            elif c == -1:
                parts.append("-" + m)
            else:
                parts.append(f"{_coeff_str(c)}*{m}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    __repr__ = __str__


# ---------------------------------------------------------------- Clifford words

# A letter is ("t", i) for theta_i or ("d", i) for the contraction d/dtheta_i.
# A normal-ordered word is (I, J): theta_I d_J with I, J strictly increasing.

ALL_WORDS: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...] = tuple(
    (I, J)
    for ni in range(4) for I in combinations(range(3), ni)
    for nj in range(4) for J in combinations(range(3), nj)
)


@lru_cache(maxsize=None)
def clifford_normalize(letters: tuple) -> dict:
    """Rewrite a product of letters as {normal word: integer coefficient}."""
    for k in range(len(letters) - 1):
        (a, i), (b, j) = letters[k], letters[k + 1]
        head, tail = letters[:k], letters[k + 2:]
        if a == b:
            if i == j:
                return {}
            if i > j:
                swapped = clifford_normalize(head + ((b, j), (a, i)) + tail)
                return {w: -c for w, c in swapped.items()}
        elif a == "d" and b == "t":
            out: dict = {}
            for w, c in clifford_normalize(head + (("t", j), ("d", i)) + tail).items():
                out[w] = out.get(w, 0) - c
            if i == j:
                for w, c in clifford_normalize(head + tail).items():
                    out[w] = out.get(w, 0) + c
            return {w: c for w, c in out.items() if c}
    I = tuple(i for a, i in letters if a == "t")
    J = tuple(i for a, i in letters if a == "d")
    return {(I, J): 1}


def word_letters(word) -> tuple:
    I, J = word
    return tuple(("t", i) for i in I) + tuple(("d", j) for j in J)


@lru_cache(maxsize=None)
def word_mul(w1, w2) -> tuple:
    """Product of two normal words as a tuple of (word, int coefficient)."""
    return tuple(clifford_normalize(word_letters(w1) + word_letters(w2)).items())


@lru_cache(maxsize=None)
def word_apply(word, theta: tuple[int, ...]) -> tuple:
    """Action of a word on the exterior-algebra vector theta_K (vacuum killed by d)."""
    out = []
    for (I, J), c in clifford_normalize(word_letters(word) + tuple(("t", k) for k in theta)).items():
        if not J:
            out.append((I, c))
    return tuple(out)


def word_parity(word) -> int:
    return (len(word[0]) + len(word[1])) % 2


def word_str(word, names=VAR_NAMES_3) -> str:
    I, J = word
    parts = [f"th{names[i]}" for i in I] + [f"d{names[j]}" for j in J]
    return "*".join(parts) if parts else "1"


# ---------------------------------------------------------------- graded spaces

@dataclass(frozen=True)
class GradedSpace:
    """Free module over a polynomial ring with graded, weighted generators.

    gen_degrees and var_degrees are tripled degrees; weights are group
    elements combined by the supplied addition.
    """
    gen_names: tuple[str, ...]
    gen_degrees: tuple[int, ...]
    gen_weights: tuple
    var_degrees: tuple[int, ...]
    var_weights: tuple
    add: object = field(compare=False, default=None)
    zero: object = None

    def mono_weight(self, e):
        w = self.zero
        for a, vw in zip(e, self.var_weights):
            for _ in range(a):
                w = self.add(w, vw)
        return w

    def weight(self, mono, gen_index):
        return self.add(self.mono_weight(mono), self.gen_weights[gen_index])


def _monos_with_degree(var_degrees: tuple[int, ...], deg: int):
    if deg < 0:
        return []
    if all(d == 2 for d in var_degrees):
        if deg % 2:
            return []
        return list(monomials_of_degree(len(var_degrees), deg // 2))
    out = []

    def rec(prefix, remaining, k):
        if k == len(var_degrees):
            if remaining == 0:
                out.append(tuple(prefix))
            return
        d = var_degrees[k]
        for a in range(remaining // d, -1, -1):
            rec(prefix + [a], remaining - a * d, k + 1)

    rec([], deg, 0)
    return out


def graded_slice_basis(space: GradedSpace, degree: int, weight=None) -> list[tuple[tuple[int, ...], int]]:
    """All (monomial, generator index) pairs of the given tripled degree.

    Ordered by generator, then degrevlex monomial. If weight is given, only
    pairs of that total weight are kept.
    """
    out = []
    for gi, gd in enumerate(space.gen_degrees):
        for mono in _monos_with_degree(space.var_degrees, degree - gd):
            if weight is not None and space.weight(mono, gi) != weight:
                continue
            out.append((mono, gi))
    return out


# ---------------------------------------------------------------- sparse vectors

def vec_add(a: dict, b: dict, scale=None) -> dict:
    out = dict(a)
    for k, v in b.items():
        if scale is not None:
            v = v * scale
        if k in out:
            s = out[k] + v
            if s.is_zero():
                del out[k]
            else:
                out[k] = s
        elif not v.is_zero():
            out[k] = v
    return out


def vec_scale(a: dict, s) -> dict:
    return vec_clean({k: v * s for k, v in a.items()})


def vec_clean(a: dict) -> dict:
    return {k: v for k, v in a.items() if not v.is_zero()}


# ---------------------------------------------------------------- linear algebra

class Inconsistent(ValueError):
    pass


@dataclass
class SliceMatrix:
    """Exact matrix with labelled rows and columns, stored by sparse columns.

    cols[j] is the image of the j-th source basis element, keyed by row label.
    """
    row_labels: list
    col_labels: list
    cols: list

    @classmethod
    def from_images(cls, row_labels, col_labels, images) -> "SliceMatrix":
        return cls(list(row_labels), list(col_labels), [vec_clean(dict(v)) for v in images])

    def apply(self, v: dict) -> dict:
        out: dict = {}
        for j, c in v.items():
            out = vec_add(out, self.cols[j], c)
        return out

    def dense(self):
        idx = {r: i for i, r in enumerate(self.row_labels)}
        mat = [[0] * len(self.col_labels) for _ in self.row_labels]
        for j, col in enumerate(self.cols):
            for r, v in col.items():
                mat[idx[r]][j] = v
        return mat


def _row_reduce(rows: list[dict], order=None):
    """Gauss-Jordan on sparse rows (dict col -> CycNum).

    Returns (pivot columns in order, reduced rows keyed by pivot). The pivot
    of each row is its smallest column with respect to `order` (a key map).
    """
    key = (lambda c: order[c]) if order is not None else (lambda c: c)
    pivots: dict = {}
    for row in rows:
        r = vec_clean(row)
        # eliminate existing pivots
        changed = True
        while changed and r:
            changed = False
            for c in list(r):
                if c in pivots and c in r:
                    r = vec_add(r, pivots[c], -r[c])
                    changed = True
        if not r:
            continue
        p = min(r, key=key)
        inv = r[p].inverse()
        r = {c: v * inv for c, v in r.items()}
        for q, prow in pivots.items():
            if p in prow:
                pivots[q] = vec_add(prow, r, -prow[p])
        pivots[p] = r
    return pivots


def exact_rank_kernel(m: SliceMatrix) -> tuple[int, list[dict]]:
    """Rank of m and a basis of its kernel (vectors keyed by column index)."""
    # transpose to row form: rows of M indexed by row label
    rows: dict = {}
    for j, col in enumerate(m.cols):
        for r, v in col.items():
            rows.setdefault(r, {})[j] = v
    piv = _row_reduce(list(rows.values()))
    rank = len(piv)
    kernel = []
    for f in range(len(m.col_labels)):
        if f in piv:
            continue
        v = {f: as_cyc(1, 1)}
        for p, prow in piv.items():
            if f in prow:
                v[p] = -prow[f]
        kernel.append(vec_clean(v))
    for v in kernel:
        assert not m.apply(v), "kernel vector not annihilated"
    return rank, kernel


def matrix_rank(m: SliceMatrix) -> int:
    rows: dict = {}
    for j, col in enumerate(m.cols):
        for r, v in col.items():
            rows.setdefault(r, {})[j] = v
    return len(_row_reduce(list(rows.values())))


def rank_of_vectors(vectors: list[dict]) -> int:
    return len(_row_reduce(list(vectors)))


def solve_affine(equations: list[tuple[dict, object]], unknown_order: list):
    """Solve sum_j a_j u_j = b for each (a, b).

    Returns (particular solution with free unknowns set to zero, kernel basis).
    Unknowns earlier in unknown_order are preferred as pivots.
    Raises Inconsistent if there is no solution.
    """
    order = {u: i for i, u in enumerate(unknown_order)}
    rhs_key = ("__rhs__",)
    order[rhs_key] = len(order)
    rows = []
    for a, b in equations:
        row = dict(vec_clean(a))
        if b is not None and not (isinstance(b, CycNum) and b.is_zero()) and b != 0:
            row[rhs_key] = -as_cyc(b, 1) if not isinstance(b, CycNum) else -b
        rows.append(row)
    piv = _row_reduce(rows, order)
    if rhs_key in piv:
        raise Inconsistent("linear system has no solution")
    sol = {}
    for p, prow in piv.items():
        if rhs_key in prow:
            sol[p] = -prow[rhs_key]
    kernel = []
    for u in unknown_order:
        if u in piv:
            continue
        v = {u: as_cyc(1, 1)}
        for p, prow in piv.items():
            if u in prow:
                v[p] = -prow[u]
        kernel.append(vec_clean(v))
    return vec_clean(sol), kernel


class SpanReducer:
    """Normal forms modulo the span of a fixed list of vectors."""

    def __init__(self, vectors: list[dict], order=None):
        self.order = order
        self.pivots = _row_reduce(list(vectors), order)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, v: dict) -> dict:
        r = vec_clean(dict(v))
        for p, prow in self.pivots.items():
            if p in r:
                r = vec_add(r, prow, -r[p])
        return r

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)
