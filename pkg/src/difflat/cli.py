"""Command-line front end: comb generation, autocorrelation tables,
diffraction grids, Bragg ladders and the structural verification suites.

Configuration precedence is flags over config-file keys over built-in
defaults.  Config files are flat key = value text with one section per
subcommand (INI syntax).  All numeric output is written at 17 significant
digits; identical configs produce byte-identical files.

Exit codes: 0 success, 1 tolerance breach in a verify suite, 2 usage or
config errors (including malformed input files).
"""

from __future__ import annotations

import argparse
import configparser
import sys
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .autocorr import autocorrelation, convergence_scan
from .comb import WeightRule, generate, load_comb, save_comb
from .diffraction import (
    bragg_table,
    complement_autocorr_check,
    diffraction_grid,
    dual_point,
    homometry_check,
    intensity,
)
from .errors import ConfigError, DifflatError
from .lattice import (
    FundamentalDomainSpec,
    covering_radius_estimate,
    density,
    dual,
    enumerate_ball,
    fundamental_domain_grid,
    load_lattice,
    make_lattice,
)
from .textio import fmt, fmt_int, write_csv

SCHEMAS = {
    "lattice-info": "key-value text: dim, density, packing_radius, covering_radius_estimate, dual_basis",
    "comb-gen": "comb file: #dim, #basis, #radius, optional '#rng <name> #seed <s>', then 'm1..mn re im' lines",
    "autocorr": "difflat.autocorr.v1: z1..zn,re,im",
    "autocorr-scan": "difflat.autocorr-scan.v1: r,re,im",
    "diffract": "difflat.diffract.v1: k1..kn,intensity,bragg_flag",
    "bragg": "difflat.bragg.v1: p1..pn,r,amplitude",
    "verify": "difflat.verify.v1: suite,case,value,bound,status",
}

_BUILTIN_BASES = {
    "z1": [[1.0]],
    "z2": [[1.0, 0.0], [0.0, 1.0]],
    "z3": [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    "hexagonal": [[1.0, 0.5], [0.0, np.sqrt(3.0) / 2.0]],
    "diag21": [[2.0, 0.0], [0.0, 1.0]],
}

_RULE_ALIASES = {
    "constant": "constant",
    "checkerboard": "indicator_checkerboard",
    "indicator_checkerboard": "indicator_checkerboard",
    "visible": "visible_points",
    "visible_points": "visible_points",
    "kfree": "k_free_integers",
    "k_free": "k_free_integers",
    "k_free_integers": "k_free_integers",
    "bernoulli": "bernoulli",
}


@dataclass
class RunConfig:
    """Resolved parameters of one CLI task (flags already merged in)."""

    task: str
    basis_file: str | None = None
    lattice_name: str | None = None
    comb_file: str | None = None
    rule_name: str | None = None
    rule_params: dict = field(default_factory=dict)
    radius: float | None = None
    radii: tuple = ()
    z_max: float | None = None
    scan_z: tuple | None = None
    variant: str = "pair_in_window"
    domain_mode: str = "parallelepiped"
    grid: int = 64
    kstars: tuple = ()
    flag_radius: float | None = None
    suite: str | None = None
    seed: int | None = None
    options: dict = field(default_factory=dict)
    out: str | None = None


def _parse_scalar(text: str):
    for cast in (int, float, complex):
        try:
            return cast(text)
        except ValueError:
            continue
    raise ConfigError(f"field 'param': cannot parse value {text!r}")


def _parse_params(pairs) -> dict:
    params = {}
    for item in pairs or ():
        if "=" not in item:
            raise ConfigError(f"field 'param': expected key=value, got {item!r}")
        key, _, val = item.partition("=")
        params[key.strip()] = _parse_scalar(val.strip())
    return params


def build_rule(name: str, params: dict) -> WeightRule:
    if name is None:
        raise ConfigError("field 'rule': missing")
    kind = _RULE_ALIASES.get(name)
    if kind is None:
        raise ConfigError(f"field 'rule': unknown rule {name!r}")
    try:
        if kind == "constant":
            return WeightRule.constant(params.get("value", 1.0))
        if kind == "indicator_checkerboard":
            return WeightRule.checkerboard()
        if kind == "visible_points":
            return WeightRule.visible_points()
        if kind == "k_free_integers":
            return WeightRule.k_free(int(params.get("k", 2)))
        if "p" not in params or "seed" not in params:
            raise ConfigError("field 'param': bernoulli needs p=<float> and seed=<int>")
        return WeightRule.bernoulli(float(params["p"]), int(params["seed"]))
    except ValueError as exc:
        raise ConfigError(f"field 'param': {exc}") from None


def resolve_lattice(config: RunConfig):
    if config.basis_file:
        return load_lattice(config.basis_file)
    name = config.lattice_name or "z2"
    if name not in _BUILTIN_BASES:
        raise ConfigError(f"field 'lattice': unknown builtin {name!r}")
    return make_lattice(_BUILTIN_BASES[name])


def _parse_int_tuple(text: str, fieldname: str) -> tuple:
    try:
        return tuple(int(v) for v in text.replace(",", " ").split())
    except ValueError:
        raise ConfigError(f"field '{fieldname}': expected integers, got {text!r}") from None


def _parse_float_tuple(text: str, fieldname: str) -> tuple:
    try:
        vals = tuple(float(v) for v in text.replace(",", " ").split())
    except ValueError:
        raise ConfigError(f"field '{fieldname}': expected floats, got {text!r}") from None
    if any(b <= a for a, b in zip(vals, vals[1:])):
        raise ConfigError(f"field '{fieldname}': radii must be strictly increasing")
    return vals


def _load_section(path: str | None, section: str) -> dict:
    if not path:
        return {}
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise ConfigError(f"field 'config': cannot read {path!r}")
    if not parser.has_section(section):
        return {}
    return dict(parser.items(section))


def _typed(section: dict, key: str, cast, default):
    if key not in section:
        return default
    raw = section[key]
    try:
        return cast(raw)
    except (TypeError, ValueError):
        raise ConfigError(f"field '{key}': cannot parse {raw!r}") from None


# --- task runners -----------------------------------------------------------


def _run_lattice_info(config: RunConfig) -> int:
    lat = resolve_lattice(config)
    lines = [f"dim {lat.dim}"]
    lines.append(f"density {fmt(density(lat))}")
    lines.append(f"packing_radius {fmt(lat.packing_radius)}")
    lines.append(f"covering_radius_estimate {fmt(covering_radius_estimate(lat, config.grid))}")
    dual_rows = " ".join(fmt(v) for v in dual(lat).basis.ravel(order="C"))
    lines.append(f"dual_basis {dual_rows}")
    print("\n".join(lines))
    return 0


def _run_comb_gen(config: RunConfig) -> int:
    lat = resolve_lattice(config)
    rule = build_rule(config.rule_name, config.rule_params)
    if config.radius is None:
        raise ConfigError("field 'radius': missing")
    comb = generate(rule, lat, config.radius)
    if not config.out:
        raise ConfigError("field 'out': missing")
    save_comb(comb, config.out)
    print(f"wrote {len(comb)} weighted points to {config.out}")
    return 0


def _run_autocorr(config: RunConfig) -> int:
    if not config.out:
        raise ConfigError("field 'out': missing")
    if config.scan_z is not None:
        lat = resolve_lattice(config)
        rule = build_rule(config.rule_name, config.rule_params)
        if not config.radii:
            raise ConfigError("field 'radii': missing")
        rows = [
            (fmt(r), fmt(v.real), fmt(v.imag))
            for r, v in convergence_scan(rule, lat, config.scan_z, config.radii)
        ]
        write_csv(config.out, "difflat.autocorr-scan.v1", ("r", "re", "im"), rows)
        print(f"scan of {len(rows)} radii written to {config.out}")
        return 0
    if not config.comb_file:
        raise ConfigError("field 'comb': missing")
    comb = load_comb(config.comb_file)
    if config.z_max is None:
        raise ConfigError("field 'zmax': missing")
    table = autocorrelation(comb, config.z_max, config.variant)
    n = comb.lattice.dim
    cols = tuple(f"z{i + 1}" for i in range(n)) + ("re", "im")
    rows = [
        tuple(fmt_int(c) for c in z) + (fmt(v.real), fmt(v.imag))
        for z, v in sorted(table.entries.items())
    ]
    write_csv(config.out, "difflat.autocorr.v1", cols, rows)
    print(f"{len(rows)} coefficients written to {config.out}")
    return 0


def _run_diffract(config: RunConfig) -> int:
    if not config.comb_file:
        raise ConfigError("field 'comb': missing")
    if not config.out:
        raise ConfigError("field 'out': missing")
    comb = load_comb(config.comb_file)
    spec = FundamentalDomainSpec(mode=config.domain_mode, lattice=dual(comb.lattice))
    ks = fundamental_domain_grid(spec, config.grid)
    grid = diffraction_grid(comb, ks, spec, flag_radius=config.flag_radius)
    n = comb.lattice.dim
    cols = tuple(f"k{i + 1}" for i in range(n)) + ("intensity", "bragg_flag")
    rows = [
        tuple(fmt(c) for c in k) + (fmt(v), fmt_int(flag))
        for k, v, flag in zip(grid.k_points, grid.intensity, grid.bragg_flag)
    ]
    write_csv(config.out, "difflat.diffract.v1", cols, rows)
    print(f"{len(rows)} samples written to {config.out} (flag radius {fmt(grid.flag_radius)})")
    return 0


def _run_bragg(config: RunConfig) -> int:
    lat = resolve_lattice(config)
    rule = build_rule(config.rule_name, config.rule_params)
    if not config.radii:
        raise ConfigError("field 'radii': missing")
    if not config.kstars:
        raise ConfigError("field 'kstar': missing")
    kcarts = [dual_point(lat, p) for p in config.kstars]
    table = bragg_table(rule, lat, kcarts, config.radii)
    n = lat.dim
    cols = tuple(f"p{i + 1}" for i in range(n)) + ("r", "amplitude")
    rows = []
    for coords in sorted(table.entries):
        for r, amp in table.entries[coords]:
            rows.append(tuple(fmt_int(c) for c in coords) + (fmt(r), fmt(amp)))
    if config.out:
        write_csv(config.out, "difflat.bragg.v1", cols, rows)
    for coords in sorted(table.entries):
        print(
            f"kstar {coords}: amplitude {fmt(table.extrapolated[coords])} "
            f"at r={fmt(config.radii[-1])} (last step {fmt(table.trend[coords])})"
        )
    return 0


# --- verify suites -----------------------------------------------------------


def _suite_periodicity(config: RunConfig, section: dict):
    lat = resolve_lattice(config)
    rule_name = section.get("rule", config.rule_name or "constant")
    params = dict(config.rule_params)
    if "p" in section:
        params["p"] = _typed(section, "p", float, None)
    if "rule_seed" in section:
        params["seed"] = _typed(section, "rule_seed", int, None)
    rule = build_rule(rule_name, params)
    r = _typed(section, "radius", float, config.radius or 50.0)
    n_k = _typed(section, "n_k", int, 50)
    n_u = _typed(section, "n_u", int, 5)
    tol = _typed(section, "tolerance", float, 1e-9)
    seed = config.seed if config.seed is not None else _typed(section, "seed", int, 7)
    comb = generate(rule, lat, r)
    dlat = dual(lat)
    rng = np.random.default_rng(seed)
    rows = []
    breach = False
    for i in range(n_k):
        k = rng.uniform(-2.0, 2.0, lat.dim)
        base = intensity(comb, k)
        worst = 0.0
        for _ in range(n_u):
            p = rng.integers(-3, 4, lat.dim)
            shifted = intensity(comb, k + dlat.cartesian(p))
            worst = max(worst, abs(shifted - base) / (1.0 + base))
        ok = worst <= tol
        breach = breach or not ok
        rows.append(("periodicity", f"k{i:02d}", worst, tol, ok))
    return rows, breach


def _suite_poisson(config: RunConfig, section: dict):
    lat = resolve_lattice(config)
    radii = config.radii or _parse_float_tuple(section.get("radii", "50 100 200"), "radii")
    tol = _typed(section, "tolerance", float, 0.02)
    target = density(lat) ** 2
    coords_list = [(0,) * lat.dim]
    for axis in range(lat.dim):
        e = [0] * lat.dim
        e[axis] = 1
        coords_list.append(tuple(e))
    coords_list.append((1,) * lat.dim)
    if lat.dim >= 2:
        mixed = [2, -1] + [0] * (lat.dim - 2)
        coords_list.append(tuple(mixed))
    coords_list = coords_list[:5]
    rows = []
    breach = False
    table = bragg_table(WeightRule.constant(1.0), lat, [dual_point(lat, p) for p in coords_list], radii)
    for coords in sorted(table.entries):
        for r, amp in table.entries[coords]:
            final = r == radii[-1]
            rel = abs(amp / target - 1.0)
            ok = (rel <= tol) if final else True
            breach = breach or not ok
            rows.append(("poisson", f"kstar{coords} r={fmt(r)}", rel, tol, ok))
    return rows, breach


_DEFAULT_ZS = ((1, 0), (0, 1), (1, 1), (2, 1), (3, 0), (2, 2), (0, 3), (4, 1), (3, 3), (5, 2))


def _suite_complement(config: RunConfig, section: dict):
    lat = resolve_lattice(config)
    radii = config.radii or _parse_float_tuple(section.get("radii", "50 100 200"), "radii")
    slack = _typed(section, "growth_slack", float, 2.0)
    p = _typed(section, "p", float, 0.3)
    rule_seed = _typed(section, "rule_seed", int, 42)
    cb_radius = _typed(section, "checkerboard_radius", float, 100.0)
    cb_tol = _typed(section, "checkerboard_tolerance", float, 0.05)
    zs = [z[: lat.dim] for z in _DEFAULT_ZS]
    rows = []
    breach = False
    scaled = []
    for r in radii:
        comb = generate(WeightRule.bernoulli(p, rule_seed), lat, r)
        worst = max(res for _, res in complement_autocorr_check(comb, zs))
        scaled.append(worst * r)
    bound = slack * scaled[0]
    for r, val in zip(radii, scaled):
        ok = val <= bound or r == radii[0]
        breach = breach or not ok
        rows.append(("complement", f"bernoulli r={fmt(r)} residual*r", val, bound, ok))
    cb = generate(WeightRule.checkerboard(), lat, cb_radius)
    cb_worst = max(res for _, res in complement_autocorr_check(cb, zs))
    ok = cb_worst <= cb_tol
    breach = breach or not ok
    rows.append(("complement", f"checkerboard r={fmt(cb_radius)}", cb_worst, cb_tol, ok))
    return rows, breach


def _suite_homometry(config: RunConfig, section: dict):
    lat = resolve_lattice(config)
    radii = config.radii or _parse_float_tuple(section.get("radii", "100 200"), "radii")
    tol = _typed(section, "tolerance", float, 0.025)
    z_max = _typed(section, "z_max", float, 5.0)
    zs = [tuple(z) for z in enumerate_ball(lat, z_max + 1e-9) if any(z)]
    rows = []
    residuals = []
    for r in radii:
        comb = generate(WeightRule.checkerboard(), lat, r)
        residuals.append(homometry_check(comb, zs))
    breach = residuals[-1] > tol
    rows.append(("homometry", f"max residual r={fmt(radii[-1])}", residuals[-1], tol, not breach))
    if len(residuals) > 1:
        decay_ok = residuals[-1] <= residuals[0] + 1e-15
        rows.append(
            ("homometry", f"decay from r={fmt(radii[0])}", residuals[-1], residuals[0], decay_ok)
        )
        breach = breach or not decay_ok
    return rows, breach


_SUITES = {
    "periodicity": _suite_periodicity,
    "poisson": _suite_poisson,
    "complement": _suite_complement,
    "homometry": _suite_homometry,
}


def _run_verify(config: RunConfig) -> int:
    if config.suite not in _SUITES:
        raise ConfigError(f"field 'suite': unknown suite {config.suite!r}")
    section = config.options
    rows, breach = _SUITES[config.suite](config, section)
    width = max(len(case) for _, case, *_ in rows)
    print(f"suite {config.suite} ({len(rows)} checks, backend {_backend.BACKEND})")
    for suite, case, value, bound, ok in rows:
        status = "pass" if ok else "FAIL"
        print(f"  {case:<{width}}  value={fmt(value):<24} bound={fmt(bound):<24} {status}")
    if config.out:
        csv_rows = [
            (suite, case, fmt(value), fmt(bound), "pass" if ok else "fail")
            for suite, case, value, bound, ok in rows
        ]
        write_csv(config.out, "difflat.verify.v1", ("suite", "case", "value", "bound", "status"), csv_rows)
    print("result:", "FAIL" if breach else "pass")
    return 1 if breach else 0


_TASKS = {
    "lattice-info": _run_lattice_info,
    "comb-gen": _run_comb_gen,
    "autocorr": _run_autocorr,
    "diffract": _run_diffract,
    "bragg": _run_bragg,
    "verify": _run_verify,
}


def run(config: RunConfig) -> int:
    """Execute a resolved task configuration; returns the process exit code."""
    if config.task not in _TASKS:
        raise ConfigError(f"field 'task': unknown task {config.task!r}")
    return _TASKS[config.task](config)


# --- argument parsing ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="difflat",
        description="Autocorrelation and diffraction of weighted lattice Dirac combs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_lattice = sub.add_parser("lattice", help="lattice utilities")
    lattice_sub = p_lattice.add_subparsers(dest="subcommand", required=True)
    p_info = lattice_sub.add_parser("info", help="print density, packing radius, dual basis")
    p_info.add_argument("--basis", help="lattice basis file")
    p_info.add_argument("--lattice", help="builtin lattice name (z1, z2, z3, hexagonal, diag21)")
    p_info.add_argument("--grid", type=int, default=64, help="deep-hole search grid per axis")
    p_info.add_argument("--schema", action="store_true")

    p_comb = sub.add_parser("comb", help="comb utilities")
    comb_sub = p_comb.add_subparsers(dest="subcommand", required=True)
    p_gen = comb_sub.add_parser("gen", help="generate a weighted comb file")
    p_gen.add_argument("--rule", help="weight rule name")
    p_gen.add_argument("--param", action="append", help="rule parameter key=value")
    p_gen.add_argument("--basis", help="lattice basis file")
    p_gen.add_argument("--lattice", help="builtin lattice name")
    p_gen.add_argument("--radius", type=float)
    p_gen.add_argument("--out")
    p_gen.add_argument("--config")
    p_gen.add_argument("--schema", action="store_true")

    p_auto = sub.add_parser("autocorr", help="coefficient table or radius scan")
    p_auto.add_argument("--comb", help="comb file (table mode)")
    p_auto.add_argument("--zmax", type=float)
    p_auto.add_argument("--variant", choices=["pair", "single"], default="pair")
    p_auto.add_argument("--scan", action="store_true", help="radius scan mode")
    p_auto.add_argument("--rule")
    p_auto.add_argument("--param", action="append")
    p_auto.add_argument("--basis")
    p_auto.add_argument("--lattice")
    p_auto.add_argument("--z", help="separation coords for --scan, e.g. 1,0")
    p_auto.add_argument("--radii", help="increasing radii, e.g. 50,100,200")
    p_auto.add_argument("--out")
    p_auto.add_argument("--config")
    p_auto.add_argument("--schema", action="store_true")

    p_diff = sub.add_parser("diffract", help="intensity grid over a dual fundamental domain")
    p_diff.add_argument("--comb")
    p_diff.add_argument("--grid", type=int, default=64)
    p_diff.add_argument("--domain", choices=["parallelepiped", "voronoi"], default="parallelepiped")
    p_diff.add_argument("--flag-radius", type=float, default=None)
    p_diff.add_argument("--out")
    p_diff.add_argument("--config")
    p_diff.add_argument("--schema", action="store_true")

    p_bragg = sub.add_parser("bragg", help="Bragg amplitude ladders at dual points")
    p_bragg.add_argument("--rule")
    p_bragg.add_argument("--param", action="append")
    p_bragg.add_argument("--basis")
    p_bragg.add_argument("--lattice")
    p_bragg.add_argument("--kstar", action="append", help="dual integer coords, e.g. 1,0")
    p_bragg.add_argument("--radii")
    p_bragg.add_argument("--out")
    p_bragg.add_argument("--config")
    p_bragg.add_argument("--schema", action="store_true")

    p_verify = sub.add_parser("verify", help="structural verification suites")
    p_verify.add_argument("--suite", choices=sorted(_SUITES), required=False)
    p_verify.add_argument("--config")
    p_verify.add_argument("--basis")
    p_verify.add_argument("--lattice")
    p_verify.add_argument("--radii")
    p_verify.add_argument("--seed", type=int)
    p_verify.add_argument("--out")
    p_verify.add_argument("--schema", action="store_true")

    return parser


def _config_from_args(args) -> RunConfig:
    command = args.command
    if command == "lattice":
        return RunConfig(
            task="lattice-info",
            basis_file=args.basis,
            lattice_name=args.lattice,
            grid=args.grid,
        )
    if command == "comb":
        section = _load_section(args.config, "comb")
        params = _parse_params(args.param)
        return RunConfig(
            task="comb-gen",
            basis_file=args.basis or section.get("basis"),
            lattice_name=args.lattice or section.get("lattice"),
            rule_name=args.rule or section.get("rule"),
            rule_params=params or _parse_params(section.get("param", "").split()),
            radius=args.radius if args.radius is not None else _typed(section, "radius", float, None),
            out=args.out or section.get("out"),
        )
    if command == "autocorr":
        section = _load_section(args.config, "autocorr")
        variant = {"pair": "pair_in_window", "single": "single_window"}[args.variant]
        scan_z = None
        if args.scan:
            raw = args.z or section.get("z")
            if raw is None:
                raise ConfigError("field 'z': missing (required with --scan)")
            scan_z = _parse_int_tuple(raw, "z")
        radii = ()
        raw_radii = args.radii or section.get("radii")
        if raw_radii:
            radii = _parse_float_tuple(raw_radii, "radii")
        return RunConfig(
            task="autocorr",
            comb_file=args.comb or section.get("comb"),
            z_max=args.zmax if args.zmax is not None else _typed(section, "zmax", float, None),
            variant=variant,
            scan_z=scan_z,
            rule_name=args.rule or section.get("rule"),
            rule_params=_parse_params(args.param) or _parse_params(section.get("param", "").split()),
            basis_file=args.basis or section.get("basis"),
            lattice_name=args.lattice or section.get("lattice"),
            radii=radii,
            out=args.out or section.get("out"),
        )
    if command == "diffract":
        section = _load_section(args.config, "diffract")
        return RunConfig(
            task="diffract",
            comb_file=args.comb or section.get("comb"),
            grid=args.grid,
            domain_mode=args.domain,
            flag_radius=args.flag_radius,
            out=args.out or section.get("out"),
        )
    if command == "bragg":
        section = _load_section(args.config, "bragg")
        raw_radii = args.radii or section.get("radii")
        kstars = tuple(_parse_int_tuple(s, "kstar") for s in (args.kstar or ()))
        if not kstars and "kstar" in section:
            kstars = tuple(_parse_int_tuple(s, "kstar") for s in section["kstar"].split(";"))
        return RunConfig(
            task="bragg",
            rule_name=args.rule or section.get("rule", "constant"),
            rule_params=_parse_params(args.param) or _parse_params(section.get("param", "").split()),
            basis_file=args.basis or section.get("basis"),
            lattice_name=args.lattice or section.get("lattice"),
            radii=_parse_float_tuple(raw_radii, "radii") if raw_radii else (),
            kstars=kstars,
            out=args.out or section.get("out"),
        )
    if command == "verify":
        section = _load_section(args.config, "verify")
        suite = args.suite or section.get("suite")
        if suite is None:
            raise ConfigError("field 'suite': missing")
        radii = ()
        raw_radii = args.radii or section.get("radii")
        if raw_radii:
            radii = _parse_float_tuple(raw_radii, "radii")
        return RunConfig(
            task="verify",
            suite=suite,
            basis_file=args.basis or section.get("basis"),
            lattice_name=args.lattice or section.get("lattice"),
            radii=radii,
            seed=args.seed,
            options=section,
            out=args.out or section.get("out"),
        )
    raise ConfigError(f"field 'command': unknown command {command!r}")


_SCHEMA_KEYS = {
    "lattice": "lattice-info",
    "comb": "comb-gen",
    "autocorr": "autocorr",
    "diffract": "diffract",
    "bragg": "bragg",
    "verify": "verify",
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "schema", False):
        key = _SCHEMA_KEYS[args.command]
        print(SCHEMAS[key])
        if args.command == "autocorr":
            print(SCHEMAS["autocorr-scan"])
        return 0
    try:
        config = _config_from_args(args)
        return run(config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except DifflatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
