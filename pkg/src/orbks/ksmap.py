"""Kodaira-Spencer chain maps from the log-cohomology model to the twisted Floer complex.

For each character sector the images of the symplectic generators are found
by exact linear algebra: the unknowns are the coefficients of ks(g) over the
Floer block of the same multidegree (so degree and weight are automatic),
the equations are ks(d g) = d ks(g), and a few coefficients are pinned to
fix the normalisation. Without pins the zero map would solve everything.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .amodel import ENDS, default_n_max, parse_log_name, sc_curve_data, star_product
from .covergroup import Character, CoverSpec, char_eval, cover_from_strings
from .exactfield import as_cyc
from .floer import FLOER_GENS, cf_curve_data, cochain_str, tau_map
from .koszul import KoszulSector
from .mfcat import substituted_curve_data, cup_product
from .polycliff import Inconsistent, rank_of_vectors, solve_affine, vec_add, vec_clean

__all__ = [
    "KSMap",
    "seed_pins",
    "solve_ks",
    "verify_chain_map_quasi_iso",
    "check_equivariance",
    "reproduce_cxyz",
    "ring_match",
    "floer_complex",
    "CONVENTIONS",
    "Inconsistent",
]

_GI = {n: i for i, n in enumerate(FLOER_GENS)}
_AXIS = {"alpha": 0, "beta": 1, "gamma": 2}
_TOWER_GEN = {"alpha": "X", "beta": "Y", "gamma": "Z"}


def _unit(i: int, n: int) -> tuple:
    m = [0, 0, 0]
    m[i] = n
    return tuple(m)


@dataclass
class KSMap:
    spec: CoverSpec
    chi: Character
    images: dict                   # SC generator name -> Floer cochain
    family_dim: int                # dimension of the space of chain maps with these pins
    pins: dict = field(default_factory=dict)
    cutoff: int = 0
    sc: object = None
    convention: str = "appendixA"

    def __call__(self, vec: dict) -> dict:
        """Apply to an SC cochain {((), generator index): c} or {name: c}."""
        out: dict = {}
        for k, c in vec.items():
            name = k if isinstance(k, str) else self._names[k[1]]
            img = self.images.get(name)
            if img is None:
                raise KeyError(f"ks not computed for {name}")
            out = vec_add(out, img, as_cyc(c, self.spec.N) if not hasattr(c, "order") else c)
        return out

    @property
    def _names(self):
        return self.sc.space.gen_names

    def describe(self, names=None) -> dict:
        names = names or sorted(self.images, key=_gen_sort_key)
        return {n: cochain_str(self.images[n]) for n in names}


def _gen_sort_key(name):
    kind, end, n = parse_log_name(name)
    return (0 if end is None else 1, n, ENDS.index(end) if end else 0, kind)


def seed_pins(spec: CoverSpec, chi: Character, names) -> dict:
    """Pinned coefficients {generator: {(mono, floer index): value}}.

    In the untwisted sector the low generators are pinned completely; in
    twisted sectors only the normalising coefficients are fixed.
    """
    N = spec.N
    a, b, c = (char_eval(chi, g) for g in spec.ends)
    one = as_cyc(1, N)
    x0 = (0, 0, 0)
    pins: dict = {}
    trivial = chi.is_trivial()
    for name in names:
        kind, end, n = parse_log_name(name)
        p: dict = {}
        if end is None:
            if kind == "e":
                p[(x0, _GI["e_L"])] = a.inverse()
            elif trivial:
                if kind == "f1":
                    p[((1, 0, 0), _GI["X"])] = -one
                    p[((0, 1, 0), _GI["Y"])] = one
                else:
                    p[((0, 1, 0), _GI["Y"])] = -one
                    p[((0, 0, 1), _GI["Z"])] = one
            elif kind == "f1":
                p[(x0, _GI["f_L"])] = one - c
            else:
                p[(x0, _GI["f_L"])] = -(one - a)
        else:
            ax = _AXIS[end]
            if kind == "e":
                u = {"alpha": a.inverse(), "beta": c, "gamma": one}[end]
                p[(_unit(ax, n), _GI["e_L"])] = one if trivial else u
            elif trivial:
                sign = -one if end == "alpha" else one
                p[(_unit(ax, n + 1), _GI[_TOWER_GEN[end]])] = sign
            elif char_eval(chi, spec.ends[ax]) == 1:
                p[(_unit(ax, n), _GI["f_L"])] = (one - c) if end != "gamma" else (one - a)
        pins[name] = p
    return pins


# the untwisted images of e, f1, f2 and e_a t_a are fixed completely
_FULL_PIN = {"e", "f1", "f2", "e_alpha^1", "e_beta^1", "e_gamma^1"}


def _components(S) -> list[list[int]]:
    """Generator indices of the SC complex grouped by the differential."""
    parent = list(range(len(S.generators)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for gi, curves in S.outgoing.items():
        for cv in curves:
            parent[find(gi)] = find(S.index[cv.output])
    groups: dict = {}
    for i in range(len(S.generators)):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


CONVENTIONS = ("appendixA", "cfkos-subst")


@lru_cache(maxsize=64)
def floer_complex(spec: CoverSpec, convention: str = "appendixA"):
    """The twisted Floer complex in the requested convention."""
    if convention == "appendixA":
        return cf_curve_data(spec)
    if convention == "cfkos-subst":
        return substituted_curve_data(spec)
    raise ValueError(f"unknown convention {convention!r}")


def solve_ks(spec: CoverSpec, chi: Character, cutoff: int = 24, n_max: int | None = None,
             convention: str = "appendixA") -> KSMap:
    """Resolved chain map on all SC generators of degree <= cutoff + 3."""
    n_max = default_n_max(cutoff) if n_max is None else n_max
    S = _sc(spec, n_max)
    C = floer_complex(spec, convention)
    sS, sC = S.sector(chi), C.sector(chi)
    N = spec.N
    names = [g.name for g in S.generators if g.degree <= cutoff + 3]
    pins = seed_pins(spec, chi, names)
    images: dict = {}
    family = 0
    trivial = chi.is_trivial()
    for comp in _components(S):
        comp = [i for i in comp if S.generators[i].degree <= cutoff + 3]
        if not comp:
            continue
        unknowns, blocks = [], {}
        for gi in comp:
            g = S.generators[gi]
            blk = sC.blocks(g.degree).get(g.multideg, [])
            blocks[gi] = blk
            unknowns.extend((gi, e) for e in blk)
        eqs: list = []
        # chain map identity ks(d g) - d ks(g) = 0, one equation per Floer basis element
        for gi in comp:
            g = S.generators[gi]
            dg = sS.d({((), gi): as_cyc(1, N)})
            if any(S.generators[k[1]].degree > cutoff + 3 for k in dg):
                continue
            rows: dict = {}
            for (_, go), cg in dg.items():
                for e in blocks[go]:
                    rows.setdefault(e, {})[(go, e)] = rows.get(e, {}).get((go, e), as_cyc(0, N)) + cg
            for e in blocks[gi]:
                for k, v in sC.d({e: as_cyc(1, N)}).items():
                    rows.setdefault(k, {})
                    rows[k][(gi, e)] = rows[k].get((gi, e), as_cyc(0, N)) - v
            eqs.extend((row, None) for _, row in sorted(rows.items(), key=lambda t: repr(t[0])))
        for gi in comp:
            name = S.generators[gi].name
            p = pins.get(name, {})
            full = trivial and name in _FULL_PIN
            for e in blocks[gi]:
                if e in p:
                    eqs.append(({(gi, e): as_cyc(1, N)}, p[e]))
                elif full:
                    eqs.append(({(gi, e): as_cyc(1, N)}, None))
            missing = [e for e in p if e not in blocks[gi]]
            if missing:
                raise Inconsistent(f"pinned term {missing[0]} of ks({name}) is outside its block")
        sol, kern = solve_affine(eqs, unknowns)
        family += len(kern)
        for gi in comp:
            images[S.generators[gi].name] = vec_clean({e: sol[(gi, e)] for e in blocks[gi] if (gi, e) in sol})
    return KSMap(spec, chi, images, family, pins, cutoff, S, convention)


@lru_cache(maxsize=64)
def _sc(spec, n_max):
    return sc_curve_data(spec, n_max)


def verify_chain_map_quasi_iso(m: KSMap, cutoff: int | None = None) -> dict:
    """Chain-map identity, blockwise cohomology isomorphism and its invariant part.

    Returns {chain_map, quasi_iso, invariant_iso, failures, sc_hilbert,
    cf_hilbert, sc_invariant, cf_invariant}.
    """
    cutoff = m.cutoff if cutoff is None else cutoff
    spec, chi = m.spec, m.chi
    N = spec.N
    S = m.sc
    C = floer_complex(spec, m.convention)
    sS, sC = S.sector(chi), C.sector(chi)
    zero = spec.group.identity()
    failures = []
    chain_ok = True
    for gi, g in enumerate(S.generators):
        if g.degree > cutoff:
            continue
        lhs = m(sS.d({((), gi): as_cyc(1, N)}))
        rhs = sC.d(m.images[g.name])
        if vec_clean(vec_add(lhs, rhs, as_cyc(-1, 1))):
            chain_ok = False
            failures.append(f"chain map fails on {g.name}")
    iso_ok = True
    sc_h, cf_h = [0] * (cutoff + 1), [0] * (cutoff + 1)
    sc_i, cf_i = [0] * (cutoff + 1), [0] * (cutoff + 1)
    for d in range(cutoff + 1):
        sblocks = sS.blocks(d)
        cblocks = sC.blocks(d)
        for key in sorted(set(sblocks) | set(cblocks)):
            dim_s = sS.block_dim(key) if key in sblocks else 0
            dim_c = sC.block_dim(key) if key in cblocks else 0
            inv = (cblocks.get(key) and C.weight(*cblocks[key][0]) == zero) or \
                  (sblocks.get(key) and S.weight(*sblocks[key][0]) == zero)
            sc_h[d] += dim_s
            cf_h[d] += dim_c
            if inv:
                sc_i[d] += dim_s
                cf_i[d] += dim_c
            if dim_s != dim_c:
                iso_ok = False
                failures.append(f"dim mismatch at {key}: {dim_s} vs {dim_c}")
                continue
            if not dim_s:
                continue
            cocycles, _, _ = sS.block_cohomology(key)
            _, red, _ = sC.block_cohomology(key)
            imgs = [red.reduce(m({k: c for k, c in z.items()})) for z in cocycles]
            r = rank_of_vectors([v for v in imgs if v])
            if r != dim_c:
                iso_ok = False
                failures.append(f"ks not surjective on cohomology at {key}: rank {r} of {dim_c}")
    return {
        "chain_map": chain_ok,
        "quasi_iso": iso_ok,
        "invariant_iso": sc_i == cf_i and iso_ok,
        "failures": failures,
        "sc_hilbert": sc_h,
        "cf_hilbert": cf_h,
        "sc_invariant": sc_i,
        "cf_invariant": cf_i,
    }


def check_equivariance(m: KSMap) -> bool:
    """ks preserves weights, hence commutes with the dual-group scaling
    (term of weight w) -> psi(w) (term) for every character psi."""
    S = m.sc
    C = floer_complex(m.spec, m.convention)
    for name, img in m.images.items():
        w = S.gen(name).weight
        for (mono, gi) in img:
            if C.weight(mono, gi) != w:
                return False
    N = m.spec.N
    for psi in m.spec.characters():
        for name, img in m.images.items():
            s = char_eval(psi, S.gen(name).weight)
            lhs = {k: v * s for k, v in img.items()}
            rhs = {k: v * char_eval(psi, C.weight(*k)) for k, v in img.items()}
            if lhs != rhs:
                return False
    return True


def reproduce_cxyz(spec: CoverSpec | None = None) -> dict:
    """Solve for ks(f1 (x) chi) on the Z/2 cover from the image of the unit.

    Returns {c_x, c_y, c_z} defined by ks(f1 (x) chi) =
    chi(g_alpha)^{-1} c_x xX + c_y yY + c_z zZ (+ f_L term).
    """
    spec = spec or cover_from_strings("Z2", "1", "1")
    chi = next(c for c in spec.characters() if not c.is_trivial())
    m = solve_ks(spec, chi, cutoff=3, n_max=1)
    img = m.images["f1"]
    a = char_eval(chi, spec.ends[0])
    get = lambda mono, g: img.get((mono, _GI[g]), as_cyc(0, spec.N))
    return {
        "c_x": get((1, 0, 0), "X") * a,
        "c_y": get((0, 1, 0), "Y"),
        "c_z": get((0, 0, 1), "Z"),
        "f_L": get((0, 0, 0), "f_L"),
        "image": cochain_str(img),
    }


# ---------------------------------------------------------------- untwisted ring match

def ring_match(cutoff: int = 12) -> dict:
    """Compare tau(ks(u * v)) with tau(ks(u)) cup tau(ks(v)) for all pairs of
    untwisted generators of total degree <= cutoff.

    Returns {pairs, matched, failures, signs} where signs records the sign s
    with tau(ks(u * v)) = s * (cup product) as classes.
    """
    spec = cover_from_strings("Z1", "", "")
    chi = spec.characters()[0]
    m = solve_ks(spec, chi, cutoff=cutoff)
    K = KoszulSector(spec, chi)
    names = sorted((n for n in m.images if _degree(n) <= cutoff), key=_gen_sort_key)
    tks = {n: tau_map(m.images[n], spec, chi) for n in names}
    one = (1, 1, 1)
    failures, signs = [], {}
    count = 0
    for u in names:
        for v in names:
            if _degree(u) + _degree(v) > cutoff:
                continue
            count += 1
            prod = star_product(u, v)
            lhs: dict = {}
            for w, c in prod.items():
                lhs = vec_add(lhs, tau_map(m.images[w], spec, chi), as_cyc(c, 1))
            rhs = cup_product(tks[u], one, tks[v], one)
            if K.same_class(lhs, rhs):
                signs[(u, v)] = 1
            elif K.same_class(lhs, {k: -c for k, c in rhs.items()}):
                signs[(u, v)] = -1
            else:
                failures.append((u, v))
    return {"pairs": count, "matched": count - len(failures), "failures": failures, "signs": signs,
            "tau_ks": {n: tks[n] for n in names}}


def _degree(name: str) -> int:
    kind, end, n = parse_log_name(name)
    if end is None:
        return 0 if kind == "e" else 3
    return 2 * n if kind == "e" else 3 + 2 * n
