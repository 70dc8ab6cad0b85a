"""Command-line front end: verification suites, parameter sweeps, no-go runs.

Subcommands:

* ``verify`` -- single-mode suite for one deformation family/parameter
* ``landau`` -- two-factor suite (quadratures, coordinate forms, 2D family)
* ``sweep``  -- tabulate series classification and growth diagnostics over
  a parameter grid
* ``nogo``   -- kernel recurrence and divergence classification

Exit codes: 0 all checks pass, 1 at least one check failed, 2 usage or
parameter error.  Reports are deterministic: fields are ordered and
floats are serialized with 17 significant digits.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import fock, intertwine, landau, nogo, pairs
from .fock import FockSpace
from .intertwine import FrameSide
from .pairs import DeformationFamily, DiskViolationError, FamilyKind

__all__ = ["main", "RunConfig", "CheckReport"]

DEFAULT_TOLERANCES = {
    "commutator": 1e-12,
    "adjoint_gap": 1e-6,
    "biorthonormality": 1e-10,
    "eigen_phi": 1e-9,
    "eigen_psi": 1e-8,
    "norm_closed_form": 1e-10,
    "frame_hermiticity": 1e-12,
    "frame_psd": -1e-10,
    "frame_action": 1e-9,
    "intertwining": 1e-9,
    "reconstruction": 1e-9,
    "coordinate_form": 1e-10,
    "counterexample": 1e-9,
    "quadrature_ccr": 1e-12,
    "f_norm": 1.0,
}


@dataclass
class RunConfig:
    family: str = "gauss-lowering"
    alpha: complex = 0.0
    beta: complex = 0.0
    dim: int = 96
    nmax: int = 16
    margin: int = 2
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    output: str | None = None
    format: str = "text"

    def __post_init__(self):
        if self.dim < self.nmax + self.margin + 2:
            raise ValueError(
                f"dim {self.dim} must be >= nmax + margin + 2 = {self.nmax + self.margin + 2}")
        for name, tol in self.tolerances.items():
            if name != "frame_psd" and tol <= 0:
                raise ValueError(f"tolerance {name} must be positive")


@dataclass
class CheckReport:
    name: str
    observed: float | None
    tolerance: float
    passed: bool
    provenance: str
    comparison: str = "le"     # "le": pass iff observed <= tolerance; "ge" mirrored
    status: str = "ok"         # "ok" or "not-applicable"


def parse_complex(text: str) -> complex:
    """Parse 're' or 're,im'."""
    parts = str(text).split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise argparse.ArgumentTypeError(f"expected 're' or 're,im', got {text!r}")


def _complex_text(z: complex) -> str:
    return f"{_g(z.real)},{_g(z.imag)}"


def _g(x: float) -> str:
    return format(float(x), ".17g")


# --- deterministic report serialization ------------------------------------

def _json_render(obj) -> str:
    import json as _json
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        if math.isnan(obj):
            return "null"
        return _g(obj)
    if isinstance(obj, complex):
        return _json.dumps(_complex_text(obj))
    if isinstance(obj, str):
        return _json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{_json.dumps(str(k))}: {_json_render(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_json_render(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _check_row(c: CheckReport) -> dict:
    return {
        "name": c.name,
        "status": c.status,
        "observed": c.observed,
        "tolerance": c.tolerance,
        "comparison": c.comparison,
        "pass": c.passed,
        "provenance": c.provenance,
    }


def _emit(report: dict, checks: list, fmt: str, out_path: str | None) -> None:
    if fmt == "json":
        text = _json_render(report) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        tables = report.get("tables", {})
        if checks:
            writer.writerow(["name", "status", "observed", "tolerance", "comparison",
                             "pass", "provenance"])
            for c in checks:
                writer.writerow([c.name, c.status,
                                 "" if c.observed is None else _g(c.observed),
                                 _g(c.tolerance), c.comparison, str(c.passed).lower(),
                                 c.provenance])
        for tname, table in tables.items():
            if checks:
                writer.writerow([])
            writer.writerow(table["columns"])
            for row in table["rows"]:
                writer.writerow(["" if v is None else
                                 (_g(v) if isinstance(v, (float, np.floating)) else v)
                                 for v in row])
        text = buf.getvalue()
    else:
        lines = []
        for c in checks:
            if c.status == "not-applicable":
                lines.append(f"SKIP {c.name}: not applicable")
                continue
            verdict = "PASS" if c.passed else "FAIL"
            op = "<=" if c.comparison == "le" else ">="
            lines.append(f"{verdict} {c.name}: observed {_g(c.observed)} "
                         f"{op} {_g(c.tolerance)}  [{c.provenance}]")
        for tname, table in report.get("tables", {}).items():
            lines.append(f"-- table {tname} --")
            lines.append("\t".join(table["columns"]))
            for row in table["rows"]:
                lines.append("\t".join("" if v is None else
                                       (_g(v) if isinstance(v, (float, np.floating)) else str(v))
                                       for v in row))
        text = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report_dict(meta: dict, checks: list, tables: dict | None = None) -> dict:
    return {"meta": meta, "checks": [_check_row(c) for c in checks],
            "tables": tables or {}}


# --- verify -----------------------------------------------------------------

def _family_of(config: RunConfig) -> DeformationFamily:
    kind = FamilyKind(config.family)
    param = config.alpha if kind is FamilyKind.GAUSS_LOWERING else config.beta
    return DeformationFamily(kind, param)


def run_verify(config: RunConfig) -> tuple[list, dict]:
    family = _family_of(config)
    if not family.inside_disk:
        raise DiskViolationError(
            f"|parameter| = {abs(family.parameter):g} is outside the |parameter| < 1/2 "
            f"disk: the norm series for the adjoint-side family diverges")
    tol = config.tolerances
    space = FockSpace(config.dim)
    pair = pairs.build_pair(family, space)
    checks: list[CheckReport] = []

    def defect_check(name, observed, tolname, provenance, comparison="le", status="ok"):
        t = tol[tolname]
        ok = status == "not-applicable" or (
            observed <= t if comparison == "le" else observed >= t)
        checks.append(CheckReport(name, observed, t, bool(ok), provenance,
                                  comparison, status))

    one = fock.identity(space)
    defect_check("commutator_identity",
                 fock.interior_defect(fock.commutator(pair.A, pair.B), one, config.margin),
                 "commutator", "[A,B] = identity on the interior block")

    gap = float(np.max(np.abs(fock.adjoint(pair.A).matrix - pair.B.matrix)))
    if family.parameter != 0:
        defect_check("adjoint_gap", gap, "adjoint_gap",
                     "A-adjoint differs from B for nonzero deformation", comparison="ge")
    else:
        checks.append(CheckReport("adjoint_gap", gap, tol["adjoint_gap"], True,
                                  "undeformed limit: A-adjoint equals B",
                                  "ge", "not-applicable"))

    system = pairs.build_system(family, space, config.nmax)
    defect_check("biorthonormality", system.pairing_defect(), "biorthonormality",
                 "<Psi_n, phi_m> = delta_{n,m}")

    h = fock.add(fock.compose(pair.B, pair.A), fock.scale(one, 0.5))
    h_adj = fock.adjoint(h)
    eig_phi = max(landau.eigen_residual(h, system.phis[n], n + 0.5, config.margin)
                  for n in range(config.nmax + 1))
    eig_psi = max(landau.eigen_residual(h_adj, system.psis[n], n + 0.5, config.margin)
                  for n in range(config.nmax + 1))
    defect_check("eigen_phi", eig_phi, "eigen_phi",
                 "(B A + 1/2) phi_n = (n + 1/2) phi_n")
    defect_check("eigen_psi", eig_psi, "eigen_psi",
                 "(B A + 1/2)-adjoint Psi_n = (n + 1/2) Psi_n")

    r = abs(family.parameter)
    series_vac = (system.psis[0] if family.kind is FamilyKind.GAUSS_LOWERING
                  else system.phis[0])
    tail_sq = pairs.tail_bound_psi(family, 0, space)
    closed = (1.0 - 4.0 * r * r) ** -0.5
    norm_gap = abs(series_vac.norm() ** 2 - closed)
    t_norm = max(tol["norm_closed_form"], tail_sq)
    checks.append(CheckReport("norm_closed_form", norm_gap, t_norm,
                              norm_gap <= t_norm,
                              "series vacuum squared norm equals (1-4|p|^2)^(-1/2) "
                              "within the certified tail"))

    order = config.nmax
    s_phi = intertwine.frame_operator(system, FrameSide.PHI, order)
    s_psi = intertwine.frame_operator(system, FrameSide.PSI, order)
    herm = max(intertwine.hermiticity_defect(s_phi), intertwine.hermiticity_defect(s_psi))
    defect_check("frame_hermiticity", herm, "frame_hermiticity",
                 "frame operators are symmetric")
    min_eig = min(intertwine.smallest_eigenvalue(s_phi), intertwine.smallest_eigenvalue(s_psi))
    defect_check("frame_psd", min_eig, "frame_psd",
                 "frame operators are positive", comparison="ge")

    n_probe = min(12, order - 1)
    action = max(max(res.phi_residual, res.psi_residual, res.roundtrip_residual)
                 for res in (intertwine.frame_action_check(s_phi, s_psi, system, n)
                             for n in range(n_probe + 1)))
    defect_check("frame_action", action, "frame_action",
                 "S_phi Psi_n = phi_n, S_Psi phi_n = Psi_n, mutual inversion on the span")

    itw = max(max(res.psi_side, res.phi_side, res.eigen_residual)
              for res in (intertwine.intertwining_check(system, pair, order, n, config.margin)
                          for n in range(n_probe + 1)))
    defect_check("intertwining", itw, "intertwining",
                 "S_Psi N = N-adjoint S_Psi and N S_phi = S_phi N-adjoint")

    if family.kind is FamilyKind.GAUSS_LOWERING:
        support = min(8, order)
        rng = np.random.default_rng(20101212)
        coeffs = np.zeros(space.total_dim, dtype=complex)
        coeffs[: support + 1] = (rng.standard_normal(support + 1)
                                 + 1j * rng.standard_normal(support + 1))
        coeffs /= np.linalg.norm(coeffs)
        probes = [fock.basis_state(space, j) for j in range(support + 1)]
        probes.append(fock.FockVector(space, coeffs))
        recon = max(intertwine.resolution_check(system, probe, order).phi_expansion
                    for probe in probes)
        defect_check("reconstruction", recon, "reconstruction",
                     "finite-support probes expand exactly over the phi family")
    else:
        checks.append(CheckReport("reconstruction", None, tol["reconstruction"], True,
                                  "phi expansion of finite probes terminates only for "
                                  "the gauss-lowering family", "le", "not-applicable"))

    for name in ("coordinate_form_1", "coordinate_form_2", "counterexample"):
        checks.append(CheckReport(name, None, tol.get("coordinate_form", 1e-10), True,
                                  "two-factor check; run the landau subcommand",
                                  "le", "not-applicable"))

    meta = _meta(config)
    return checks, _report_dict(meta, checks)


# --- landau -----------------------------------------------------------------

def run_landau(config: RunConfig) -> tuple[list, dict]:
    tol = config.tolerances
    if abs(config.alpha) >= 0.5 or abs(config.beta) >= 0.5:
        raise DiskViolationError(
            "both |alpha| and |beta| must lie inside the |parameter| < 1/2 disk")
    model = landau.build_model(config.dim, config.alpha, config.beta)
    space = model.space
    margin = max(config.margin, 4)  # squared operators double the band
    checks: list[CheckReport] = []

    def defect_check(name, observed, tolname, provenance, comparison="le"):
        t = tol[tolname]
        ok = observed <= t if comparison == "le" else observed >= t
        checks.append(CheckReport(name, observed, t, bool(ok), provenance, comparison))

    frame = landau.build_quadratures(space)
    one = fock.identity(space)
    i_one = fock.scale(one, 1j)
    zero = fock.scale(one, 0.0)
    ccr = max(
        fock.interior_defect(fock.commutator(frame.q1, frame.p1), i_one, 2),
        fock.interior_defect(fock.commutator(frame.q2, frame.p2), i_one, 2),
        fock.interior_defect(fock.commutator(frame.q1, frame.q2), zero, 2),
        fock.interior_defect(fock.commutator(frame.p1, frame.p2), zero, 2),
        fock.interior_defect(fock.commutator(frame.q1, frame.p2), zero, 2),
        fock.interior_defect(fock.commutator(frame.q2, frame.p1), zero, 2),
    )
    defect_check("quadrature_ccr", ccr, "quadrature_ccr",
                 "[Q1,P1] = [Q2,P2] = i, all cross-commutators vanish")

    h1 = landau.hamiltonian(space, 1)
    h2 = landau.hamiltonian(space, 2)
    quad_form = max(
        fock.interior_defect(h1, fock.scale(fock.add(fock.compose(frame.q1, frame.q1),
                                                     fock.compose(frame.p1, frame.p1)), 0.5),
                             margin),
        fock.interior_defect(h2, fock.scale(fock.add(fock.compose(frame.q2, frame.q2),
                                                     fock.compose(frame.p2, frame.p2)), 0.5),
                             margin),
        fock.interior_defect(fock.commutator(h1, h2), zero, 2),
    )
    defect_check("oscillator_form", quad_form, "commutator",
                 "H_k = (Q_k^2 + P_k^2)/2 and [H_1, H_2] = 0")

    defect_check("coordinate_form_1", landau.coordinate_form_defect(model, 1, margin),
                 "coordinate_form", "h_1 equals its quadratic quadrature form")
    defect_check("coordinate_form_2", landau.coordinate_form_defect(model, 2, margin),
                 "coordinate_form", "h_2 equals its quadratic quadrature form")

    x_op = fock.scale(fock.add(model.A1, model.A2), 1.0 / math.sqrt(2.0))
    y_op = fock.scale(fock.add(model.B1, model.B2), 1.0 / math.sqrt(2.0))
    defect_check("combined_commutator",
                 fock.interior_defect(fock.commutator(x_op, y_op), one, margin),
                 "commutator", "[X, Y] = identity for the combined pair")

    nm = min(config.nmax, 6)
    system = landau.two_index_family(model, nm, nm)
    defect_check("two_index_biorthonormality", system.pairing_defect(),
                 "counterexample", "<Psi_{n,m}, phi_{n',m'}> = delta")

    report = landau.single_index_counterexample(model, min(config.nmax, 12))
    defect_check("counterexample", report.max_overlap, "counterexample",
                 "f is orthogonal to every single-index eta_n")
    defect_check("counterexample_f_norm", report.f_norm, "f_norm",
                 "the orthogonal witness is far from zero", comparison="ge")

    meta = _meta(config)
    return checks, _report_dict(meta, checks)


# --- sweep ------------------------------------------------------------------

def run_sweep(config: RunConfig, grid: list) -> tuple[list, dict]:
    kind = FamilyKind(config.family)
    columns = ["parameter", "classification", "psi0_norm_sq", "tail_bound",
               "omega_ratio", "max_frame_eigenvalue"]
    rows = []
    space = FockSpace(config.dim)
    for p in grid:
        if abs(p) > 1.0:
            raise ValueError(f"grid parameter {abs(p):g} outside [0, 1] in magnitude")
        family = DeformationFamily(kind, p)
        scan = pairs.radius_scan(family, 0, [p])[0]
        if scan.classification == pairs.DIVERGENT:
            rows.append([_complex_text(complex(p)), scan.classification,
                         None, None, None, None])
            continue
        system = pairs.build_system(family, space, config.nmax)
        tail_sq = pairs.tail_bound_psi(family, 0, space)
        series_vac = (system.psis[0] if kind is FamilyKind.GAUSS_LOWERING
                      else system.phis[0])
        s_phi = intertwine.frame_operator(system, FrameSide.PHI, config.nmax)
        rows.append([
            _complex_text(complex(p)),
            scan.classification,
            series_vac.norm() ** 2,
            tail_sq,
            float(system.omega[-1] / system.omega[0]),
            intertwine.largest_eigenvalue(s_phi),
        ])
    meta = _meta(config)
    meta["grid"] = [_complex_text(complex(p)) for p in grid]
    tables = {"sweep": {"columns": columns, "rows": rows}}
    return [], _report_dict(meta, [], tables)


# --- nogo -------------------------------------------------------------------

def run_nogo(power: int, alpha: complex, k_max: int, config: RunConfig) -> tuple[list, dict]:
    family = nogo.NogoFamily(nogo.NogoKind.POWER_RAISING, power, alpha=alpha)
    rec = nogo.solve_kernel(family, k_max)
    result = nogo.classify(rec)
    log10 = math.log(10.0)
    coeff_rows = [[int(idx), ls / log10]
                  for idx, ls in zip(rec.indices, rec.log_sq_coeffs)]
    ratio_rows = [[int(k), r] for k, r in enumerate(rec.ratios)]
    meta = _meta(config)
    meta["power"] = power
    meta["alpha"] = _complex_text(complex(alpha))
    meta["kmax"] = k_max
    meta["classification"] = result.classification
    meta["crossing_index"] = result.crossing_index
    meta["blow_up_index"] = result.blow_up_index
    tables = {
        "coefficients": {"columns": ["index", "log10_sq_coeff"], "rows": coeff_rows},
        "ratios": {"columns": ["k", "squared_term_ratio"], "rows": ratio_rows},
    }
    return [], _report_dict(meta, [], tables)


# --- plumbing ---------------------------------------------------------------

def _meta(config: RunConfig) -> dict:
    return {
        "family": config.family,
        "alpha": _complex_text(config.alpha),
        "beta": _complex_text(config.beta),
        "dim": config.dim,
        "nmax": config.nmax,
        "margin": config.margin,
        "tolerances": {k: config.tolerances[k] for k in sorted(config.tolerances)},
        "format": config.format,
    }


def _load_config_file(path: str) -> dict:
    values = {}
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"malformed config line: {raw.rstrip()}")
            key, _, value = line.partition("=")
            values[key.strip()] = value.strip()
    return values


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pseudobosons",
        description="Numerical checks for deformed ladder pairs, Landau-level "
                    "Hamiltonians, and nonlinear no-go recurrences.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--family", choices=[k.value for k in FamilyKind],
                       default=None)
        p.add_argument("--alpha", type=parse_complex, default=None,
                       metavar="RE[,IM]")
        p.add_argument("--beta", type=parse_complex, default=None,
                       metavar="RE[,IM]")
        p.add_argument("--dim", type=int, default=None)
        p.add_argument("--nmax", type=int, default=None)
        p.add_argument("--margin", type=int, default=None)
        p.add_argument("--tol", action="append", default=[], metavar="NAME=VALUE",
                       help="override a named tolerance (repeatable)")
        p.add_argument("--format", choices=["json", "csv", "text"], default=None)
        p.add_argument("--out", default=None, metavar="PATH")
        p.add_argument("--config", default=None, metavar="PATH",
                       help="key=value config file; explicit flags win")

    p_verify = sub.add_parser("verify", help="single-mode verification suite")
    common(p_verify)

    p_landau = sub.add_parser("landau", help="two-factor Landau suite")
    common(p_landau)

    p_sweep = sub.add_parser("sweep", help="parameter-grid table")
    common(p_sweep)
    p_sweep.add_argument("--grid", default=None,
                         help="semicolon-separated parameters, each RE[,IM]")

    p_nogo = sub.add_parser("nogo", help="nonlinear kernel recurrence")
    common(p_nogo)
    p_nogo.add_argument("--power", type=int, default=None)
    p_nogo.add_argument("--kmax", type=int, default=None)
    return parser


_DEFAULTS = {
    "verify": {"dim": 96, "nmax": 16, "margin": 2},
    "landau": {"dim": 24, "nmax": 6, "margin": 4},
    "sweep": {"dim": 96, "nmax": 16, "margin": 2},
    "nogo": {"dim": 64, "nmax": 16, "margin": 2},
}


def _resolve(args) -> tuple[RunConfig, dict]:
    file_values = _load_config_file(args.config) if args.config else {}

    def pick(name, cast, default):
        cli = getattr(args, name, None)
        if cli is not None:
            return cli
        if name in file_values:
            return cast(file_values[name])
        return default

    defaults = _DEFAULTS[args.command]
    tolerances = dict(DEFAULT_TOLERANCES)
    for key, value in file_values.items():
        if key.startswith("tol."):
            tolerances[key[4:]] = float(value)
    for item in args.tol:
        name, _, value = item.partition("=")
        if not value:
            raise ValueError(f"--tol expects NAME=VALUE, got {item!r}")
        tolerances[name.strip()] = float(value)

    config = RunConfig(
        family=pick("family", str, "gauss-lowering"),
        alpha=pick("alpha", parse_complex, 0.0),
        beta=pick("beta", parse_complex, 0.0),
        dim=pick("dim", int, defaults["dim"]),
        nmax=pick("nmax", int, defaults["nmax"]),
        margin=pick("margin", int, defaults["margin"]),
        tolerances=tolerances,
        output=pick("out", str, None),
        format=pick("format", str, "text"),
    )
    return config, file_values


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config, file_values = _resolve(args)
        if args.command == "verify":
            checks, report = run_verify(config)
        elif args.command == "landau":
            checks, report = run_landau(config)
        elif args.command == "sweep":
            grid_text = args.grid or file_values.get("grid")
            if not grid_text:
                raise ValueError("sweep needs --grid (semicolon-separated parameters)")
            grid = [parse_complex(part) for part in grid_text.split(";") if part.strip()]
            if not grid:
                raise ValueError("empty parameter grid")
            checks, report = run_sweep(config, grid)
        elif args.command == "nogo":
            power = pick_int(args.power, file_values.get("power"))
            if power is None:
                raise ValueError("nogo needs --power")
            if power < 2:
                raise ValueError("nogo needs power >= 2")
            k_max = pick_int(args.kmax, file_values.get("kmax")) or 20
            alpha = config.alpha
            checks, report = run_nogo(power, alpha, k_max, config)
        else:  # pragma: no cover - argparse enforces the choices
            raise ValueError(f"unknown command {args.command}")
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    _emit(report, checks, config.format, config.output)
    failed = [c for c in checks if c.status == "ok" and not c.passed]
    return 1 if failed else 0


def pick_int(cli_value, file_value):
    if cli_value is not None:
        return int(cli_value)
    if file_value is not None:
        return int(file_value)
    return None


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
