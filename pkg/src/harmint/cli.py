"""Config-driven command-line front end.

Subcommands mirror the library modules: ``fit-rn`` (Dirichlet-energy
half-space fit), ``fit-surface`` (boundary-plane norm), ``fit-cx``
(upper half-plane), ``rbf-convert`` (inverse-multiquadric bridge),
``downcont`` (three-step continuation pipeline) and ``oracle-check``
(quadrature validation suite).  Configs are JSON, validated against a
strict schema (unknown keys rejected); each run emits a JSON report
and, when a grid is requested, CSV field grids with the header row
``x1,...,x_{n-1},h,value`` (``re,im`` value columns for complex runs).

Exit codes: 0 success, 2 config/validation error, 3 solver failure,
4 oracle tolerance failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import numpy as np
from jsonschema import Draft202012Validator

from . import complexfit, dirichlet, downcont, oracle, rbf, surface
from .fields import FourierField, PointSourceSum
from .geometry import (
    HORIZONTAL_DIPOLE,
    MONOPOLE,
    RAW,
    SCALED,
    VERTICAL_DIPOLE,
    KernelKind,
    SourcePoint,
    constants,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3
EXIT_ORACLE = 4

_KIND_NAMES = (MONOPOLE, VERTICAL_DIPOLE, HORIZONTAL_DIPOLE)

_SOURCE_SCHEMA = {
    "type": "object",
    "properties": {
        "t": {"type": "array", "items": {"type": "number"}, "minItems": 1},
        "w": {"type": "number"},
        "kind": {"enum": list(_KIND_NAMES)},
        "axis": {"type": "integer", "minimum": 1},
        "convention": {"enum": [SCALED, RAW]},
    },
    "required": ["t", "w"],
    "additionalProperties": False,
}

_TARGET_SCHEMA = {
    "type": "object",
    "properties": {
        "entries": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "properties": {
                    "strength": {"type": "number"},
                    "t": {"type": "array", "items": {"type": "number"}},
                    "w": {"type": "number"},
                    "kind": {"enum": list(_KIND_NAMES)},
                    "axis": {"type": "integer", "minimum": 1},
                    "convention": {"enum": [SCALED, RAW]},
                },
                "required": ["strength", "t", "w"],
                "additionalProperties": False,
            },
        }
    },
    "required": ["entries"],
    "additionalProperties": False,
}

_GRID_SCHEMA = {
    "type": "object",
    "properties": {
        "half_extent": {"type": "number", "exclusiveMinimum": 0},
        "points": {"type": "integer", "minimum": 2},
        "heights": {"type": "array", "items": {"type": "number"}, "minItems": 1},
    },
    "required": ["half_extent", "points", "heights"],
    "additionalProperties": False,
}

_COMPLEX_NUM = {
    "type": "array",
    "items": {"type": "number"},
    "minItems": 2,
    "maxItems": 2,
}

SCHEMAS = {
    "fit-rn": {
        "type": "object",
        "properties": {
            "n": {"type": "integer", "minimum": 3},
            "basis": {"type": "array", "items": _SOURCE_SCHEMA, "minItems": 1},
            "target": _TARGET_SCHEMA,
            "grid": _GRID_SCHEMA,
        },
        "required": ["n", "basis", "target"],
        "additionalProperties": False,
    },
    "fit-surface": {
        "type": "object",
        "properties": {
            "n": {"type": "integer", "minimum": 3},
            "basis": {"type": "array", "items": _SOURCE_SCHEMA, "minItems": 1},
            "target": _TARGET_SCHEMA,
            "assembly": {"enum": ["dipole", "monopole"]},
            "grid": _GRID_SCHEMA,
        },
        "required": ["n", "basis", "target"],
        "additionalProperties": False,
    },
    "fit-cx": {
        "type": "object",
        "properties": {
            "setting": {"enum": ["sigma", "dirichlet"]},
            "basis": {
                "type": "array",
                "minItems": 1,
                "items": {
                    "type": "object",
                    "properties": {
                        "z": _COMPLEX_NUM,
                        "order": {"type": "integer", "minimum": 1},
                        "z_prime": _COMPLEX_NUM,
                    },
                    "required": ["z"],
                    "additionalProperties": False,
                },
            },
            "target": {
                "type": "object",
                "properties": {
                    "terms": {
                        "type": "array",
                        "minItems": 1,
                        "items": {
                            "type": "object",
                            "properties": {"a": _COMPLEX_NUM, "b": _COMPLEX_NUM},
                            "required": ["a", "b"],
                            "additionalProperties": False,
                        },
                    }
                },
                "required": ["terms"],
                "additionalProperties": False,
            },
            "grid": _GRID_SCHEMA,
        },
        "required": ["setting", "basis", "target"],
        "additionalProperties": False,
    },
    "rbf-convert": {
        "type": "object",
        "properties": {
            "sites": {
                "type": "array",
                "minItems": 1,
                "items": {"type": "array", "items": {"type": "number"}, "minItems": 2},
            },
            "values": {"type": "array", "items": {"type": "number"}, "minItems": 1},
            "shape": {"type": "number", "exclusiveMinimum": 0},
            "beta": {"type": "number", "exclusiveMinimum": 0},
            "route": {"enum": ["dimension-monopole", "vertical-dipole"]},
        },
        "required": ["sites", "values", "shape", "beta"],
        "additionalProperties": False,
    },
    "downcont": {
        "type": "object",
        "properties": {
            "truth": _TARGET_SCHEMA,
            "survey": {
                "type": "object",
                "properties": {
                    "half_extent": {"type": "number", "exclusiveMinimum": 0},
                    "size": {"type": "integer", "minimum": 4},
                    "z0": {"type": "number", "exclusiveMinimum": 0},
                    "sigma": {"type": "number", "minimum": 0},
                    "seed": {"type": "integer", "minimum": 0},
                },
                "required": ["half_extent", "size", "z0"],
                "additionalProperties": False,
            },
            "fit": {
                "type": "object",
                "properties": {
                    "K": {"type": "integer", "minimum": 1},
                    "oversample": {"type": "integer", "minimum": 1},
                    "mode_ridge": {"type": "number", "minimum": 0},
                    "spectral_ridge": {"type": "number", "minimum": 0},
                    "prior_depth": {"type": "number", "minimum": 0},
                    "trend_ridge": {"type": "number", "minimum": 0},
                },
                "required": ["K"],
                "additionalProperties": False,
            },
            "noise_adjust": {"type": "boolean"},
            "layout": {
                "type": "object",
                "properties": {
                    "half_extent": {"type": "number", "exclusiveMinimum": 0},
                    "count": {"type": "integer", "minimum": 1},
                    "depth": {"type": "number", "exclusiveMaximum": 0},
                },
                "required": ["half_extent", "count", "depth"],
                "additionalProperties": False,
            },
            "heights": {"type": "array", "items": {"type": "number"}, "minItems": 1},
            "window": {
                "type": "object",
                "properties": {
                    "half_extent": {"type": "number", "exclusiveMinimum": 0},
                    "points": {"type": "integer", "minimum": 2},
                },
                "required": ["half_extent", "points"],
                "additionalProperties": False,
            },
            "grid": _GRID_SCHEMA,
        },
        "required": ["truth", "survey", "fit", "layout", "heights"],
        "additionalProperties": False,
    },
    "oracle-check": {
        "type": "object",
        "properties": {
            "suite": {"enum": ["rn", "surface", "complex", "all"]},
            "tolerance": {"type": "number", "exclusiveMinimum": 0},
        },
        "required": ["suite"],
        "additionalProperties": False,
    },
}


class ConfigError(ValueError):
    pass


def _validate(task: str, config: dict) -> None:
    validator = Draft202012Validator(SCHEMAS[task])
    errors = sorted(validator.iter_errors(config), key=lambda e: list(e.absolute_path))
    if errors:
        where = "/".join(str(p) for p in errors[0].absolute_path) or "<root>"
        raise ConfigError(f"config invalid at {where}: {errors[0].message}")


def _kernel_kind(item: dict) -> KernelKind:
    return KernelKind(
        kind=item.get("kind", MONOPOLE),
        axis=item.get("axis"),
        convention=item.get("convention", SCALED),
    )


def _basis_from_config(n: int, items) -> dirichlet.SourceBasisSpec:
    entries = tuple(
        (SourcePoint(np.asarray(i["t"], dtype=float), i["w"]), _kernel_kind(i))
        for i in items
    )
    return dirichlet.SourceBasisSpec(n, entries)


def _field_from_config(n: int, target: dict) -> PointSourceSum:
    return PointSourceSum(
        n,
        [
            (
                i["strength"],
                SourcePoint(np.asarray(i["t"], dtype=float), i["w"]),
                _kernel_kind(i),
            )
            for i in target["entries"]
        ],
    )


def _functional_label(kind: KernelKind) -> str:
    if kind.kind == MONOPOLE:
        return "value"
    if kind.kind == VERTICAL_DIPOLE:
        return "d/dh"
    return f"d/dx{kind.axis}"


def _interp_table(ne, basis, mu) -> list[dict]:
    target_vals = ne.A / ne.replication_constants
    fitted_vals = (ne.T @ mu) / ne.replication_constants
    rows = []
    for (src, kind), tv, fv in zip(basis.entries, target_vals, fitted_vals, strict=True):
        rows.append(
            {
                "node": list(np.append(src.t, -src.w)),
                "functional": _functional_label(kind),
                "target": float(tv),
                "fitted": float(fv),
                "residual": float(fv - tv),
            }
        )
    return rows


def _diagnostics_dict(diag) -> dict:
    return {
        "residual": diag.residual,
        "condition_estimate": diag.condition_estimate,
        "ridge_used": diag.ridge_used,
        "ridge_lambda": diag.ridge_lambda,
    }


def _write_json(out_dir: Path, name: str, payload: dict) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / name
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return path


def _grid_points(n: int, grid: dict):
    axes = [np.linspace(-grid["half_extent"], grid["half_extent"], grid["points"])] * (
        n - 1
    )
    mesh = np.meshgrid(*axes, indexing="ij")
    horiz = np.stack([m.ravel() for m in mesh], axis=-1)
    return horiz


def _write_grid_csv(out_dir: Path, name: str, n: int, grid: dict, evaluate) -> Path:
    """CSV field grid; ``evaluate`` maps an (M, n) array to row values."""
    horiz = _grid_points(n, grid)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / name
    header = [f"x{i + 1}" for i in range(n - 1)] + ["h"]
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        first = evaluate(
            np.concatenate(
                [horiz[:1], np.full((1, 1), grid["heights"][0])], axis=1
            )
        )
        if np.iscomplexobj(first):
            writer.writerow(header + ["re", "im"])
            complex_out = True
        else:
            writer.writerow(header + ["value"])
            complex_out = False
        for h in grid["heights"]:
            pts = np.concatenate([horiz, np.full((horiz.shape[0], 1), h)], axis=1)
            vals = evaluate(pts)
            for row, v in zip(pts, vals, strict=True):
                cells = [repr(float(c)) for c in row]
                if complex_out:
                    cells += [repr(float(np.real(v))), repr(float(np.imag(v)))]
                else:
                    cells.append(repr(float(v)))
                writer.writerow(cells)
    return path


def run_fit_rn(config: dict, out_dir: Path, args) -> int:
    n = config["n"]
    basis = _basis_from_config(n, config["basis"])
    f = _field_from_config(n, config["target"])
    ne = dirichlet.assemble_dirichlet(basis, f)
    fit = dirichlet.solve(ne)
    report = {
        "task": "fit-rn",
        "inputs": config,
        "mu": list(fit.mu),
        "node_residuals": list(fit.node_residuals),
        "energies": {
            "fit": fit.fit_energy,
            "error": fit.error_energy,
            "target_norm_sq": ne.f_norm_sq,
        },
        "diagnostics": _diagnostics_dict(fit.diagnostics),
        "interpolation_check": _interp_table(ne, basis, fit.mu),
    }
    artifacts = [_write_json(out_dir, "report.json", report)]
    if "grid" in config:
        phi = basis.field(fit.mu)
        artifacts.append(
            _write_grid_csv(out_dir, "field.csv", n, config["grid"], phi.value_many)
        )
    print("\n".join(str(a) for a in artifacts))
    return EXIT_OK


def run_fit_surface(config: dict, out_dir: Path, args) -> int:
    n = config["n"]
    basis = _basis_from_config(n, config["basis"])
    f = _field_from_config(n, config["target"])
    if config.get("assembly", "dipole") == "dipole":
        ne = surface.assemble_surface_dipole(basis, f)
    else:
        ne = surface.assemble_surface_monopole(basis, f, n)
    fit = surface.solve_surface(ne)
    report = {
        "task": "fit-surface",
        "inputs": config,
        "mu": list(fit.mu),
        "node_residuals": list(fit.node_residuals),
        "energies": {
            "fit": fit.fit_energy,
            "error": fit.error_energy,
            "target_norm_sq": ne.f_norm_sq,
        },
        "diagnostics": _diagnostics_dict(fit.diagnostics),
        "interpolation_check": _interp_table(ne, basis, fit.mu),
    }
    artifacts = [_write_json(out_dir, "report.json", report)]
    if "grid" in config:
        phi = basis.field(fit.mu)
        artifacts.append(
            _write_grid_csv(out_dir, "field.csv", n, config["grid"], phi.value_many)
        )
    print("\n".join(str(a) for a in artifacts))
    return EXIT_OK


def _cx(v) -> complex:
    return complex(v[0], v[1])


def run_fit_cx(config: dict, out_dir: Path, args) -> int:
    setting = config["setting"]
    basis = []
    for item in config["basis"]:
        if "z_prime" in item:
            if "order" in item:
                raise ConfigError("log pairs do not take a pole order")
            basis.append(complexfit.PairedLogSource(_cx(item["z"]), _cx(item["z_prime"])))
        else:
            basis.append(complexfit.ComplexPole(_cx(item["z"]), item.get("order", 1)))
    f = complexfit.RationalField(
        [(_cx(t["a"]), _cx(t["b"])) for t in config["target"]["terms"]]
    )
    ne = complexfit._assemble(tuple(basis), f, setting)
    fit = complexfit.solve_hermitian(ne)
    table = []
    for entry, a_val, t_val in zip(ne.basis, ne.A, ne.T @ fit.mu, strict=True):
        table.append(
            {
                "node": [float(np.real(entry.q)), float(np.imag(entry.q))],
                "functional": "difference"
                if isinstance(entry, complexfit.PairedLogSource)
                else ("value" if setting == "sigma" else "derivative"),
                "target": [float(np.real(a_val)), float(np.imag(a_val))],
                "fitted": [float(np.real(t_val)), float(np.imag(t_val))],
                "residual": abs(t_val - a_val),
            }
        )
    report = {
        "task": "fit-cx",
        "inputs": config,
        "mu": [[float(np.real(m)), float(np.imag(m))] for m in fit.mu],
        "node_residuals": [abs(r) for r in fit.node_residuals],
        "energies": {
            "fit": fit.fit_energy,
            "error": fit.error_energy,
            "target_norm_sq": ne.f_norm_sq,
        },
        "diagnostics": _diagnostics_dict(fit.diagnostics),
        "interpolation_check": table,
    }
    artifacts = [_write_json(out_dir, "report.json", report)]
    if "grid" in config:
        def eval_plane(pts):
            z = pts[:, 0] + 1j * pts[:, 1]
            return complexfit.evaluate_cx(tuple(basis), fit.mu, z, setting)

        artifacts.append(
            _write_grid_csv(out_dir, "field.csv", 2, config["grid"], eval_plane)
        )
    print("\n".join(str(a) for a in artifacts))
    return EXIT_OK


def run_rbf_convert(config: dict, out_dir: Path, args) -> int:
    spec = rbf.ImqSpec(
        sites=np.asarray(config["sites"], dtype=float),
        shape=config["shape"],
        beta=config["beta"],
        values=np.asarray(config["values"], dtype=float),
    )
    eq = rbf.to_halfspace(spec, config.get("route", "dimension-monopole"))
    report_eq = rbf.verify_equivalence(spec, eq)
    report = {
        "task": "rbf-convert",
        "inputs": config,
        "route": eq.route,
        "halfspace_dimension": eq.n,
        "gamma": {"T": eq.gamma_T, "A": eq.gamma_A, "mu": eq.gamma_mu},
        "mu": list(report_eq.mu_halfspace),
        "mu_rbf": list(report_eq.mu_rbf),
        "energies": {"fit": report_eq.fit_energy},
        "equivalence": {
            "matrix_rel_error": report_eq.matrix_rel_error,
            "mu_rel_error": report_eq.mu_rel_error,
            "probe_max_deviation": report_eq.probe_max_deviation,
            "probe_scale": report_eq.probe_scale,
            "passed": report_eq.passed,
        },
    }
    _write_json(out_dir, "report.json", report)
    print(out_dir / "report.json")
    return EXIT_OK if report_eq.passed else EXIT_SOLVER


def run_downcont(config: dict, out_dir: Path, args) -> int:
    truth = _field_from_config(3, config["truth"])
    sv = config["survey"]
    seed = args.seed if args.seed is not None else sv.get("seed", 0)
    grid = downcont.simulate_survey(
        truth, sv["half_extent"], sv["size"], sv["z0"], sv.get("sigma", 0.0), seed
    )
    fit_cfg = dict(config["fit"])
    K = fit_cfg.pop("K")
    options = downcont.FitOptions(**fit_cfg)
    model = downcont.fourier_fit(grid, K, options)
    if config.get("noise_adjust", False):
        model = downcont.noise_adjust(model)
    lay = config["layout"]
    layout = downcont.DipoleLayout(lay["half_extent"], lay["count"], lay["depth"])
    window = config.get("window", {})
    continued, rep = downcont.continue_to_plane(
        model,
        layout,
        heights=config["heights"],
        truth=truth,
        window_half_extent=window.get("half_extent"),
        window_points=window.get("points", 33),
    )
    report = {
        "task": "downcont",
        "inputs": config,
        "seed": seed,
        "mu": list(rep.fit.mu),
        "node_residuals": list(rep.fit.node_residuals),
        "energies": {"fit": rep.fit.fit_energy, "error": rep.fit.error_energy},
        "diagnostics": _diagnostics_dict(rep.fit.diagnostics),
        "trend": list(model.trend),
        "plane_errors": [
            {
                "height": e.height,
                "rms_relative": e.rms_relative,
                "max_relative": e.max_relative,
            }
            for e in rep.errors
        ],
    }
    artifacts = [_write_json(out_dir, "report.json", report)]
    if "grid" in config:
        artifacts.append(
            _write_grid_csv(
                out_dir, "continued.csv", 3, config["grid"], continued.value_many
            )
        )
    print("\n".join(str(a) for a in artifacts))
    return EXIT_OK


def _oracle_checks_rn(tol: float):
    scaled = KernelKind(MONOPOLE, convention=SCALED)
    raw = KernelKind(MONOPOLE, convention=RAW)
    f3 = PointSourceSum(3, [(1.0, (0.5, -0.25, -2.0), scaled)])
    kernel3 = PointSourceSum(3, [(1.0, (0.0, 0.0, -1.0), scaled)])
    f4 = PointSourceSum(4, [(1.0, (0.5, -0.25, 0.0, -2.0), scaled)])
    kernel4 = PointSourceSum(4, [(1.0, (0.0, 0.0, 0.0, -1.0), scaled)])
    raw3 = PointSourceSum(3, [(1.0, (0.0, 0.0, -1.0), raw)])
    checks = []

    def value_at_mirror(f, P):
        return f.value(np.asarray(P))

    checks.append(
        (
            "scaled monopole replication, n=3",
            0.5 * value_at_mirror(f3, (0.0, 0.0, 1.0)),
            lambda: oracle.quad_dirichlet_rn(kernel3, f3, 3),
        )
    )
    checks.append(
        (
            "scaled monopole replication, n=4",
            0.5 * value_at_mirror(f4, (0.0, 0.0, 0.0, 1.0)),
            lambda: oracle.quad_dirichlet_rn(kernel4, f4, 4),
        )
    )
    checks.append(
        (
            "raw monopole replication 2*pi, n=3",
            2.0 * math.pi * value_at_mirror(f3, (0.0, 0.0, 1.0)),
            lambda: oracle.quad_dirichlet_rn(raw3, f3, 3),
        )
    )
    return checks


def _oracle_checks_surface(tol: float):
    vert = KernelKind(VERTICAL_DIPOLE, convention=SCALED)
    mono = KernelKind(MONOPOLE, convention=SCALED)
    dip = PointSourceSum(3, [(1.0, (0.0, 0.0, -1.0), vert)])
    f3 = PointSourceSum(3, [(1.0, (0.5, -0.25, -2.0), vert)])
    m4a = PointSourceSum(4, [(1.0, (0.0, 0.0, 0.0, -1.0), mono)])
    m4b = PointSourceSum(4, [(1.0, (1.0, 0.5, 0.0, -2.0), mono)])
    d4 = constants(4).d_n
    checks = [
        (
            "vertical dipole surface replication, n=3",
            -0.5 * f3.value(np.array([0.0, 0.0, 1.0])),
            lambda: oracle.quad_surface_rn(dip, f3, 3),
        ),
        (
            "monopole diagonal line form d4/4, n=4",
            0.25 * d4,
            lambda: oracle.quad_surface_rn(m4a, m4a, 4),
        ),
        (
            "monopole arctan line form, n=4",
            surface.monopole_line_inner(
                SourcePoint(np.array([0.0, 0.0, 0.0]), -1.0), m4b, 4
            ),
            lambda: oracle.quad_surface_rn(m4a, m4b, 4),
        ),
    ]
    return checks


def _oracle_checks_complex(tol: float):
    F = complexfit.RationalField([(1j, -1j)])  # the sigma kernel i/(z + i)
    Fd = complexfit.RationalField([(1.0, -1j)])  # the Dirichlet kernel
    pair = complexfit.PairedLogSource(-1j, -0.5j)
    xi = complexfit.LogPairField([(1.0, pair)])
    checks = [
        (
            "(F,F) boundary-line norm, z_k=-i",
            0.5,
            lambda: oracle.quad_complex("sigma", F, F),
        ),
        (
            "(F,F) Dirichlet norm, z_k=-i",
            0.125,
            lambda: oracle.quad_complex("dirichlet", Fd, Fd),
        ),
        (
            "log-pair Gram T11 = ln(9/8)/2",
            0.5 * math.log(9.0 / 8.0),
            lambda: oracle.quad_complex("dirichlet", xi, xi),
        ),
    ]
    return checks


def run_oracle_check(config: dict, out_dir: Path, args) -> int:
    suite = config["suite"]
    tol = args.tolerance if args.tolerance is not None else config.get("tolerance", 1e-3)
    groups = {
        "rn": _oracle_checks_rn,
        "surface": _oracle_checks_surface,
        "complex": _oracle_checks_complex,
    }
    names = list(groups) if suite == "all" else [suite]
    rows = []
    all_ok = True
    for gname in names:
        for label, closed_form, runner in groups[gname](tol):
            try:
                result = runner()
            except oracle.ToleranceError as exc:
                rows.append({"suite": gname, "check": label, "error": str(exc)})
                all_ok = False
                continue
            ok = result.agrees_with(closed_form, tol)
            all_ok = all_ok and ok
            rows.append(
                {
                    "suite": gname,
                    "check": label,
                    "closed_form": float(np.real(closed_form)),
                    "oracle_value": float(np.real(result.value)),
                    "error_bound": result.error_bound,
                    "tail_bound": result.tail_bound,
                    "node_count": result.node_count,
                    "passed": ok,
                }
            )
    report = {
        "task": "oracle-check",
        "inputs": config,
        "tolerance": tol,
        "checks": rows,
        "passed": all_ok,
    }
    _write_json(out_dir, "report.json", report)
    for row in rows:
        status = "PASS" if row.get("passed") else "FAIL"
        print(f"[{status}] {row['suite']}: {row['check']}")
    return EXIT_OK if all_ok else EXIT_ORACLE


RUNNERS = {
    "fit-rn": run_fit_rn,
    "fit-surface": run_fit_surface,
    "fit-cx": run_fit_cx,
    "rbf-convert": run_rbf_convert,
    "downcont": run_downcont,
    "oracle-check": run_oracle_check,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="harmint",
        description="Closed-form minimum-energy harmonic interpolation toolkit",
    )
    sub = parser.add_subparsers(dest="task", required=True)
    for task in RUNNERS:
        p = sub.add_parser(task)
        p.add_argument("--config", required=True, type=Path)
        p.add_argument("--out", type=Path, default=Path("."))
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--tolerance", type=float, default=None)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = json.loads(args.config.read_text())
        if not isinstance(config, dict):
            raise ConfigError("config root must be a JSON object")
        _validate(args.task, config)
    except (OSError, json.JSONDecodeError, ConfigError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return RUNNERS[args.task](config, args.out, args)
    except oracle.ToleranceError as exc:
        print(f"oracle tolerance failure: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    except (ConfigError, ValueError) as exc:
        # domain validation errors (bad geometry, divergent bases, ...)
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except np.linalg.LinAlgError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
