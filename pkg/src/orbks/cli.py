"""Command-line driver.

    orbks cover-info --group Z2 --ga 1 --gb 1
    orbks sectors    --group Z3 --ga 1 --gb 1 --cutoff 12
    orbks ks         --group Z2xZ2 --ga 1,0 --gb 0,1
    orbks mf         --group Z2 --ga 1 --gb 1
    orbks verify     --group Z2 --ga 1 --gb 1 --format json

Exit codes: 0 all checks passed, 1 a check failed, 2 bad configuration.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .amodel import sc_curve_data
from .covergroup import (
    CoverSpec,
    GroupParseError,
    NonSurjective,
    ParityViolation,
    cover_from_strings,
    cover_invariants,
)
from .exactfield import CycNum
from .floer import fixed_variables, special_cocycles
from .koszul import KoszulSector, koszul_oracle, kos_str
from .ksmap import CONVENTIONS, check_equivariance, floer_complex, solve_ks, verify_chain_map_quasi_iso
from .mfcat import (
    Z2_PRODUCTS_EXPECTED,
    HomElement,
    PotentialMismatch,
    z2_twisted_products,
    build_delta,
    floer_matrix_comparison,
    e_eta_theta_xy,
    e_eta_theta_xyz,
    hom_diff,
    twist_of,
)
from .twistcomplex import IntertwiningFailure, UpstairsComplex, lift_cover_and_psi

COMMANDS = ("cover-info", "sectors", "ks", "mf", "verify")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    group: str
    ga: str
    gb: str
    cutoff: int = 24
    winding: int | None = None
    convention: str = "appendixA"
    fmt: str = "markdown"

    def cover(self) -> CoverSpec:
        try:
            return cover_from_strings(self.group, self.ga, self.gb)
        except (GroupParseError, NonSurjective, ValueError) as exc:
            raise ConfigError(str(exc)) from exc

    @property
    def n_max(self) -> int:
        return self.winding if self.winding is not None else max(1, self.cutoff // 2)


class Checks:
    """Ordered list of named pass/fail checks."""

    def __init__(self):
        self.items: list[tuple[str, bool]] = []

    def add(self, name: str, ok: bool) -> bool:
        self.items.append((name, bool(ok)))
        return ok

    @property
    def first_failure(self):
        return next((n for n, ok in self.items if not ok), None)

    @property
    def ok(self) -> bool:
        return self.first_failure is None


# ---------------------------------------------------------------- report sections

def _jsonable(obj):
    if isinstance(obj, CycNum):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def cover_section(spec: CoverSpec, checks: Checks) -> dict:
    try:
        genus, punct, per_end = cover_invariants(spec)
    except ParityViolation as exc:
        checks.add("cover: genus formula parity", False)
        return {"description": spec.describe(), "error": str(exc)}
    checks.add("cover: genus formula parity", True)
    return {
        "group": str(spec.group),
        "order": spec.group.order,
        "g_alpha": list(spec.g_alpha),
        "g_beta": list(spec.g_beta),
        "g_gamma": list(spec.g_gamma),
        "punctures_per_end": list(per_end),
        "punctures": punct,
        "genus": genus,
    }


def sectors_section(spec: CoverSpec, cfg: RunConfig, checks: Checks) -> list:
    S = sc_curve_data(spec, cfg.n_max)
    C = floer_complex(spec, cfg.convention)
    checks.add("sc: d^2 = 0", not S.verify_d_squared())
    checks.add("cf: d^2 = 0", not C.verify_d_squared())
    out = []
    for chi in spec.characters():
        fixed = fixed_variables(spec, chi)
        sc_h = S.sector(chi).hilbert(cfg.cutoff)
        cf_h = C.sector(chi).hilbert(cfg.cutoff)
        K = KoszulSector(spec, chi)
        kos_h = K.hilbert(cfg.cutoff)
        oracle = [koszul_oracle(len(fixed), d % 2, d) for d in range(cfg.cutoff + 1)]
        label = chi.label()
        checks.add(f"sector {label}: cf = kos", cf_h == kos_h)
        checks.add(f"sector {label}: kos = closed form", kos_h == oracle)
        checks.add(f"sector {label}: sc = cf", sc_h == cf_h)
        flags = {}
        if cfg.convention == "appendixA":
            sp = special_cocycles(spec, chi, C)
            flags = {k: ok for k, (_, ok) in sp.items()}
            ends = [c == 1 for c in twist_of(spec, chi)]
            expect = {"P": True, "Q": True, "R": True, "U": ends[0], "V": ends[1], "W": ends[2]}
            checks.add(f"sector {label}: cocycle lemmas", flags == expect)
        out.append({
            "chi": label,
            "fixed": "".join("xyz"[i] for i in fixed),
            "sc_hilbert": sc_h,
            "cf_hilbert": cf_h,
            "kos_hilbert": kos_h,
            "cocycles": flags,
        })
    return out


def psi_section(spec: CoverSpec, cfg: RunConfig, checks: Checks) -> dict:
    out = {}
    for name, C in (("sc", sc_curve_data(spec, cfg.n_max)), ("cf", floer_complex(spec, cfg.convention))):
        try:
            up, _, _ = lift_cover_and_psi(C, cutoff=cfg.cutoff)
            ok = True
        except IntertwiningFailure:
            up, ok = UpstairsComplex(C), False
        checks.add(f"psi: {name} intertwines", ok)
        upstairs = up.hilbert(cfg.cutoff)
        total = [0] * (cfg.cutoff + 1)
        for chi in spec.characters():
            h = C.sector(chi).hilbert(cfg.cutoff, invariant=True)
            total = [a + b for a, b in zip(total, h)]
        checks.add(f"psi: {name} invariant sectors = upstairs", upstairs == total)
        out[name] = {"upstairs_hilbert": upstairs, "invariant_sum": total}
    return out


def ks_section(spec: CoverSpec, cfg: RunConfig, checks: Checks, sectors: list | None = None) -> dict:
    per = []
    inv_sc = [0] * (cfg.cutoff + 1)
    inv_cf = [0] * (cfg.cutoff + 1)
    for chi in spec.characters():
        label = chi.label()
        m = solve_ks(spec, chi, cutoff=cfg.cutoff, n_max=cfg.n_max, convention=cfg.convention)
        rep = verify_chain_map_quasi_iso(m)
        eq = check_equivariance(m)
        checks.add(f"ks {label}: chain map", rep["chain_map"])
        checks.add(f"ks {label}: quasi-isomorphism", rep["quasi_iso"])
        checks.add(f"ks {label}: equivariant", eq)
        inv_sc = [a + b for a, b in zip(inv_sc, rep["sc_invariant"])]
        inv_cf = [a + b for a, b in zip(inv_cf, rep["cf_invariant"])]
        status = "ok" if rep["chain_map"] and rep["quasi_iso"] and eq else "failed"
        per.append({
            "chi": label,
            "status": status,
            "family_dim": m.family_dim,
            "images": m.describe(["e", "f1", "f2", "e_alpha^1", "e_beta^1", "e_gamma^1"]),
            "failures": rep["failures"][:5],
        })
    kos_inv = [0] * (cfg.cutoff + 1)
    for chi in spec.characters():
        h = KoszulSector(spec, chi).hilbert(cfg.cutoff, invariant=True)
        kos_inv = [a + b for a, b in zip(kos_inv, h)]
    checks.add("ks: invariant parts SH = Kos", inv_sc == inv_cf == kos_inv)
    if sectors is not None:
        for row, p in zip(sectors, per):
            row["ks_status"] = p["status"]
    return {"sectors": per, "invariant_sc": inv_sc, "invariant_cf": inv_cf, "invariant_kos": kos_inv}


def mf_section(spec: CoverSpec, checks: Checks) -> dict:
    deltas = []
    source = build_delta((1, 1, 1))
    for chi in spec.characters():
        h = twist_of(spec, chi)
        try:
            mf = build_delta(h)
            ok = True
        except PotentialMismatch:
            ok = False
        checks.add(f"mf {chi.label()}: d^2 = (x'y'z' - xyz) id", ok)
        if ok:
            # D^2 = 0 on a few hom elements between source and target
            samples = [HomElement.identity(mf.order), HomElement({((0, 0, 1, 1, 0, 0), ((0,), (1,))): 1},
                                                                   mf.order)]
            d2 = all(hom_diff(hom_diff(s, source, mf), source, mf).is_zero() for s in samples)
            checks.add(f"mf {chi.label()}: D^2 = 0", d2)
        deltas.append({"chi": chi.label(), "twist": [str(c) for c in h], "square_ok": ok})
    out: dict = {"deltas": deltas}
    cmp = floer_matrix_comparison()
    out["floer_matrix_comparison"] = {k: v for k, v in cmp.items() if k != "entries"}
    if any(tuple(twist_of(spec, chi)) == (-1, -1, 1) for chi in spec.characters()):
        h = (-1, -1, 1)
        t = build_delta(h)
        checks.add("mf: D(e_eta(thxy)) = 0", hom_diff(e_eta_theta_xy(), source, t).is_zero())
        checks.add("mf: D(e_eta(thxyz)) = 0", hom_diff(e_eta_theta_xyz(), source, t).is_zero())
        table = {}
        for route in ("solver", "formula"):
            res = z2_twisted_products(route)
            for name, (prod, cls, chain) in res.items():
                checks.add(f"mf: {name} ({route}) class", cls)
                table.setdefault(name, {})[route] = {"projection": kos_str(prod), "class_ok": cls,
                                                      "chain_equal": chain}
        for name, want in Z2_PRODUCTS_EXPECTED.items():
            table[name]["expected"] = kos_str(want)
        out["z2_products"] = table
    return out


# ---------------------------------------------------------------- rendering

def _md_table(header, rows) -> str:
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    lines += ["| " + " | ".join(str(c) for c in r) + " |" for r in rows]
    return "\n".join(lines)


def render_markdown(report: dict) -> str:
    parts = []
    cov = report.get("cover")
    if cov:
        parts.append(f"# Cover {cov.get('group')} g_alpha={tuple(cov.get('g_alpha', ()))} "
                     f"g_beta={tuple(cov.get('g_beta', ()))} g_gamma={tuple(cov.get('g_gamma', ()))}")
        if "genus" in cov:
            parts.append(f"punctures: {cov['punctures']}, genus: {cov['genus']}")
            parts.append(f"punctures per end: {tuple(cov['punctures_per_end'])}")
    if report.get("sectors"):
        parts.append("## Sectors")
        rows = [[s["chi"], s["fixed"] or "-", " ".join(map(str, s["sc_hilbert"])),
                 " ".join(map(str, s["cf_hilbert"])), " ".join(map(str, s["kos_hilbert"])),
                 s.get("ks_status", "")] for s in report["sectors"]]
        parts.append(_md_table(["chi", "fixed", "SC", "CF", "Kos", "ks"], rows))
    if report.get("psi"):
        parts.append("## Averaging maps")
        for name, v in report["psi"].items():
            parts.append(f"{name} upstairs: {' '.join(map(str, v['upstairs_hilbert']))}")
    if report.get("ks"):
        ks = report["ks"]
        parts.append("## Kodaira-Spencer maps")
        for s in ks["sectors"]:
            lines = [f"chi {s['chi']}: {s['status']} (free parameters: {s['family_dim']})"]
            lines += [f"    ks({k}) = {v}" for k, v in s["images"].items()]
            parts.append("\n".join(lines))
        parts.append(f"invariant SH: {' '.join(map(str, ks['invariant_sc']))}")
        parts.append(f"invariant Kos: {' '.join(map(str, ks['invariant_kos']))}")
    if report.get("mf"):
        mf = report["mf"]
        parts.append("## Matrix factorizations")
        parts.append("\n".join(f"chi {d['chi']} twist ({', '.join(d['twist'])}): d^2 ok = {d['square_ok']}"
                               for d in mf["deltas"]))
        c = mf["floer_matrix_comparison"]
        parts.append(f"Floer matrix vs diagonal: {c['agree']} agree, {c['primes-swapped']} agree after "
                     f"exchanging primed and unprimed variables, {c['sign']} differ by sign, "
                     f"{c['differ']} differ")
        if "z2_products" in mf:
            rows = [[k, v["expected"], v["solver"]["projection"], v["solver"]["class_ok"],
                     v["formula"]["projection"]] for k, v in mf["z2_products"].items()]
            parts.append(_md_table(["product", "expected", "solver", "same class", "formula"], rows))
    parts.append(f"verdict: {report['verdict']}")
    if report.get("first_failure"):
        parts.append(f"first failing check: {report['first_failure']}")
    return "\n\n".join(parts) + "\n"


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(_jsonable(report), sort_keys=True, indent=2) + "\n"
    return render_markdown(report)


# ---------------------------------------------------------------- driver

def run(cfg: RunConfig) -> tuple[int, dict]:
    if cfg.command not in COMMANDS:
        raise ConfigError(f"unknown command {cfg.command!r}")
    if cfg.convention not in CONVENTIONS:
        raise ConfigError(f"unknown convention {cfg.convention!r}")
    if cfg.cutoff < 3:
        raise ConfigError("cutoff must be at least 3")
    if cfg.winding is not None and cfg.winding < 1:
        raise ConfigError("winding cutoff must be positive")
    spec = cfg.cover()
    checks = Checks()
    report: dict = {"cover": cover_section(spec, checks), "convention": cfg.convention, "cutoff": cfg.cutoff}
    cmd = cfg.command
    if cmd in ("sectors", "verify"):
        report["sectors"] = sectors_section(spec, cfg, checks)
    if cmd in ("ks", "verify"):
        report["ks"] = ks_section(spec, cfg, checks, report.get("sectors"))
    if cmd == "verify":
        report["psi"] = psi_section(spec, cfg, checks)
    if cmd in ("mf", "verify"):
        report["mf"] = mf_section(spec, checks)
    report["checks"] = [{"name": n, "ok": ok} for n, ok in checks.items]
    report["verdict"] = "pass" if checks.ok else "fail"
    if not checks.ok:
        report["first_failure"] = checks.first_failure
    return (0 if checks.ok else 1), report


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="orbks", description="Exact checks for the pair-of-pants orbifold mirror.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--group", required=True, help="e.g. Z2, Z3xZ3, Z2xZ4")
    p.add_argument("--ga", default="", help="g_alpha, comma separated")
    p.add_argument("--gb", default="", help="g_beta, comma separated")
    p.add_argument("--cutoff", type=int, default=24, help="degree cutoff")
    p.add_argument("--winding", type=int, default=None, help="winding cutoff (default cutoff/2)")
    p.add_argument("--convention", default="appendixA", choices=CONVENTIONS)
    p.add_argument("--format", dest="fmt", default="markdown", choices=("json", "markdown"))
    p.add_argument("--output", default=None, help="write the report to this file")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    cfg = RunConfig(args.command, args.group, args.ga, args.gb, args.cutoff, args.winding,
                    args.convention, args.fmt)
    try:
        code, report = run(cfg)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    text = render(report, cfg.fmt)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if code:
        print(f"check failed: {report['first_failure']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
