"""Command-line interface: single-point evaluation, distance sweeps to CSV,
and the closed-form/oracle validation suite.

Exit codes: 0 success, 1 validation or accuracy failure, 2 usage error.
A configuration file (flat key=value lines, keys mirroring the long flags)
can be supplied with --config or the VACPAIR_CONFIG environment variable;
explicit flags override file values.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, fields

import numpy as np

from . import __version__, casimir, entanglement, model, validate
from .errors import AccuracyError, DomainError

BOHR_RADIUS_SI = 5.29177210903e-11  # m

CSV_COLUMNS = ("x", "r_over_a0", "concurrence_full", "concurrence_near",
               "concurrence_far", "eof", "wcp_energy", "validity")
EXTRA_COLUMNS = ("wcp_abs_err", "concurrence_clamped", "margin")

_PRESETS = {"hydrogen-1s2p": model.hydrogen_1s2p}


@dataclass(frozen=True)
class SweepRow:
    """One evaluated configuration; numeric columns serialize at 17 digits.

    Concurrence columns carry the unclamped law values so emitted curves obey
    their power laws even past the weak-coupling breakdown flagged by
    `validity`; `concurrence_clamped` is the [0, 1] version behind `eof`.
    """

    x: float
    r_over_a0: float
    concurrence_full: float
    concurrence_near: float
    concurrence_far: float
    eof: float
    wcp_energy: float
    validity: str
    wcp_abs_err: float
    concurrence_clamped: float
    margin: float


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    return format(value, ".17g")


def _parse_vec(text: str) -> np.ndarray:
    try:
        parts = [float(p) for p in text.split(",")]
    except ValueError as exc:
        raise DomainError(f"cannot parse vector {text!r}: {exc}") from None
    if len(parts) != 3:
        raise DomainError(f"vector must have 3 components, got {text!r}")
    return np.asarray(parts)


def _unit(vec: np.ndarray, name: str) -> np.ndarray:
    n = np.linalg.norm(vec)
    if n == 0:
        raise DomainError(f"{name} must be nonzero")
    return vec / n


def _add_config_flags(p: argparse.ArgumentParser, with_x: bool) -> None:
    p.add_argument("--config", help="key=value configuration file")
    p.add_argument("--preset", choices=sorted(_PRESETS),
                   help="named dimensional atom pair")
    p.add_argument("--mu", type=float, help="dimensionless coupling strength")
    if with_x:
        p.add_argument("--x", type=float, help="dimensionless separation k0*R")
    p.add_argument("--r", type=float,
                   help="dimensional separation (needs a preset or atom flags)")
    p.add_argument("--units", choices=("atomic", "si"), default="atomic",
                   help="units of --r (default atomic)")
    p.add_argument("--omega0", type=float,
                   help="transition frequency of a custom atom pair (atomic units)")
    p.add_argument("--dmag-a", type=float,
                   help="dipole magnitude of atom A (custom dimensional pair)")
    p.add_argument("--dmag-b", type=float,
                   help="dipole magnitude of atom B (custom dimensional pair)")
    p.add_argument("--dipole-a", default="1,0,0",
                   help="dipole orientation of atom A as x,y,z (default 1,0,0)")
    p.add_argument("--dipole-b", default=None,
                   help="dipole orientation of atom B (default: same as A)")
    p.add_argument("--sep-dir", default="0,0,1",
                   help="separation direction as x,y,z (default 0,0,1)")
    p.add_argument("--isotropic", action="store_true",
                   help="rotationally averaged polarizabilities in the pair energy")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vacpair",
        description="Vacuum-induced two-atom entanglement and Casimir-Polder energy")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_point = sub.add_parser("point", help="evaluate one configuration")
    _add_config_flags(p_point, with_x=True)

    p_sweep = sub.add_parser("sweep", help="sweep the separation, emit CSV")
    _add_config_flags(p_sweep, with_x=False)
    p_sweep.add_argument("--xmin", type=float, required=True)
    p_sweep.add_argument("--xmax", type=float, required=True)
    p_sweep.add_argument("--points", type=int, required=True)
    p_sweep.add_argument("--scale", choices=("log", "linear"), default="log")
    p_sweep.add_argument("--columns",
                         help="comma-separated subset of output columns")
    p_sweep.add_argument("--output", default="-",
                         help="output path, or - for stdout (default)")

    p_val = sub.add_parser("validate", help="run the oracle-equivalence suite")
    p_val.add_argument("--level", choices=("fast", "full"), default="fast")
    return parser


def _load_config_file(path: str) -> dict[str, str]:
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise DomainError(f"{path}:{lineno}: expected key=value")
            key, _, val = line.partition("=")
            values[key.strip().replace("-", "_")] = val.strip()
    return values


def _apply_config_file(args: argparse.Namespace, argv: list[str]) -> None:
    path = args.config or os.environ.get("VACPAIR_CONFIG")
    if not path:
        return
    if args.config is None and not os.path.exists(path):
        return  # silently skip a dangling environment default
    explicit = {a.split("=")[0].lstrip("-").replace("-", "_")
                for a in argv if a.startswith("--")}
    for key, text in _load_config_file(path).items():
        if not hasattr(args, key) or key in explicit:
            continue
        current = getattr(args, key)
        if isinstance(current, bool):
            setattr(args, key, text.lower() in ("1", "true", "yes", "on"))
        elif isinstance(current, float) or current is None:
            try:
                setattr(args, key, float(text))
            except ValueError:
                setattr(args, key, text)
        elif isinstance(current, int):
            setattr(args, key, int(text))
        else:
            setattr(args, key, text)


@dataclass(frozen=True)
class _Resolved:
    cfg: model.PairConfiguration
    r_over_a0: float  # nan when no dimensional information was given


def _resolve_atoms(args) -> tuple[model.TwoLevelAtom, model.TwoLevelAtom] | None:
    n_a = _unit(_parse_vec(args.dipole_a), "dipole-a")
    n_b = (_unit(_parse_vec(args.dipole_b), "dipole-b")
           if args.dipole_b else n_a.copy())
    if args.preset:
        factory = _PRESETS[args.preset]
        return factory(orientation=n_a), factory(orientation=n_b)
    if args.omega0 is not None or args.dmag_a is not None or args.dmag_b is not None:
        if args.omega0 is None or args.dmag_a is None or args.dmag_b is None:
            raise DomainError(
                "custom dimensional atoms need --omega0, --dmag-a and --dmag-b")
        return (model.TwoLevelAtom(args.omega0, args.dmag_a * n_a),
                model.TwoLevelAtom(args.omega0, args.dmag_b * n_b))
    return None


def _resolve_configuration(args, x: float | None) -> _Resolved:
    atoms = _resolve_atoms(args)
    sep_dir = _unit(_parse_vec(args.sep_dir), "sep-dir")
    if args.r is not None:
        if x is not None:
            raise DomainError("give either --x or --r, not both")
        if atoms is None:
            raise DomainError("--r needs a preset or custom dimensional atoms")
        r_atomic = args.r if args.units == "atomic" else args.r / BOHR_RADIUS_SI
        if r_atomic <= 0:
            raise DomainError("separation must be positive")
        cfg = model.reduce(atoms[0], atoms[1], r_atomic * sep_dir)
        return _Resolved(cfg=cfg, r_over_a0=r_atomic)
    if x is None:
        raise DomainError("a separation is required: --x or --r")
    if x <= 0:
        raise DomainError(f"x must be positive, got {x}")
    n_a = _unit(_parse_vec(args.dipole_a), "dipole-a")
    n_b = (_unit(_parse_vec(args.dipole_b), "dipole-b")
           if args.dipole_b else n_a.copy())
    if args.mu is not None:
        mu = args.mu
        r_over_a0 = float("nan")
        if atoms is not None:
            raise DomainError("give either --mu or dimensional atoms, not both")
    elif atoms is not None:
        k0 = atoms[0].wavenumber()
        mu = (atoms[0].dipole_magnitude * atoms[1].dipole_magnitude * k0**3
              / atoms[0].omega0)
        r_over_a0 = x / k0
    else:
        raise DomainError("a coupling is required: --mu, a preset, or atom flags")
    cfg = model.PairConfiguration(x=x, n_a=n_a, n_b=n_b, r_hat=sep_dir, mu=mu)
    return _Resolved(cfg=cfg, r_over_a0=r_over_a0)


def _evaluate_row(resolved: _Resolved, isotropic: bool) -> SweepRow:
    cfg = resolved.cfg
    full = entanglement.concurrence_full(cfg)
    near = entanglement.concurrence_near(cfg)
    far = entanglement.concurrence_far(cfg)
    eof = entanglement.entanglement_of_formation(full.value)
    w = casimir.wcp(cfg, isotropic=isotropic)
    return SweepRow(
        x=cfg.x,
        r_over_a0=resolved.r_over_a0,
        concurrence_full=full.raw,
        concurrence_near=near.raw,
        concurrence_far=far.raw,
        eof=eof,
        wcp_energy=w.energy,
        validity=full.validity.flag.value,
        wcp_abs_err=w.abs_err_est,
        concurrence_clamped=full.value,
        margin=full.validity.margin,
    )


def cmd_point(args) -> int:
    resolved = _resolve_configuration(args, getattr(args, "x", None))
    row = _evaluate_row(resolved, args.isotropic)
    cfg = resolved.cfg
    print(f"# vacpair point (v{__version__}); atomic units, "
          f"wcp_energy in hbar*omega0")
    entries = [("x", _fmt(row.x))]
    if np.isfinite(row.r_over_a0):
        entries.append(("r_over_a0", _fmt(row.r_over_a0)))
    entries += [
        ("mu", _fmt(cfg.mu)),
        ("concurrence_full", _fmt(row.concurrence_full)),
        ("concurrence_clamped", _fmt(row.concurrence_clamped)),
        ("concurrence_near", _fmt(row.concurrence_near)),
        ("concurrence_far", _fmt(row.concurrence_far)),
        ("eof", _fmt(row.eof)),
        ("wcp_energy", f"{_fmt(row.wcp_energy)} (abs err {row.wcp_abs_err:.2e})"),
        ("validity", f"{row.validity} (margin {_fmt(row.margin)})"),
    ]
    width = max(len(k) for k, _ in entries)
    for key, val in entries:
        print(f"{key:<{width}} = {val}")
    return 0


def _selected_columns(args) -> list[str]:
    if not args.columns:
        return list(CSV_COLUMNS)
    cols = [c.strip() for c in args.columns.split(",") if c.strip()]
    known = set(CSV_COLUMNS) | set(EXTRA_COLUMNS)
    for c in cols:
        if c not in known:
            raise DomainError(f"unknown column {c!r}; choose from "
                              f"{', '.join(CSV_COLUMNS + EXTRA_COLUMNS)}")
    if not cols:
        raise DomainError("--columns selected nothing")
    return cols


def cmd_sweep(args) -> int:
    if args.r is not None:
        raise DomainError("sweep varies the separation; --r is not applicable")
    if not (np.isfinite(args.xmin) and np.isfinite(args.xmax)):
        raise DomainError("xmin and xmax must be finite")
    if args.xmin <= 0 or args.xmin >= args.xmax:
        raise DomainError("need 0 < xmin < xmax")
    if args.points < 2:
        raise DomainError("need at least 2 sweep points")
    columns = _selected_columns(args)
    if args.scale == "log":
        xs = np.geomspace(args.xmin, args.xmax, args.points)
    else:
        xs = np.linspace(args.xmin, args.xmax, args.points)

    rows = []
    for x in xs:
        resolved = _resolve_configuration(args, float(x))
        rows.append(_evaluate_row(resolved, args.isotropic))

    lines = [
        f"# vacpair sweep v{__version__}",
        "# units: Hartree atomic units (Gaussian convention); "
        "wcp_energy in units of hbar*omega0",
        f"# config: mu={_fmt(resolved.cfg.mu)} "
        f"dipole_a={args.dipole_a} dipole_b={args.dipole_b or args.dipole_a} "
        f"sep_dir={args.sep_dir} preset={args.preset or '-'} "
        f"scale={args.scale} isotropic={args.isotropic}",
        ",".join(columns),
    ]
    for row in rows:
        values = {f.name: getattr(row, f.name) for f in fields(SweepRow)}
        lines.append(",".join(_fmt(values[c]) for c in columns))
    text = "\n".join(lines) + "\n"
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0


def cmd_validate(args) -> int:
    results = validate.run_validation(args.level)
    print(validate.format_report(results))
    return 0 if all(r.passed for r in results) else 1


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command in ("point", "sweep"):
            _apply_config_file(args, argv)
        if args.command == "point":
            return cmd_point(args)
        if args.command == "sweep":
            return cmd_sweep(args)
        return cmd_validate(args)
    except DomainError as exc:
        print(f"vacpair: error: {exc}", file=sys.stderr)
        return 2
    except AccuracyError as exc:
        print(f"vacpair: accuracy failure: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"vacpair: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
