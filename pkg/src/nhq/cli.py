"""Batch command-line interface: spectra, trajectories, sweeps, crossings.

Subcommands write deterministic CSV files (fixed 17-significant-digit float
formatting, fixed row order) with a '#' header block recording the schema
version, the fully resolved configuration, and the package version.  Exit
codes: 0 success, 2 configuration error, 3 numeric failure.
"""

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib

from . import dynamics, model, observables, presets, spectral
from .errors import ConfigError, NhqError

SCHEMA_VERSION = 1
MAX_GRID_POINTS = 10 ** 7

_ROUTES = {
    "modes": dynamics.evolve_modes,
    "ode": dynamics.evolve_nojump_ode,
    "lindblad": dynamics.evolve_full_lindblad,
    "twomode": dynamics.two_mode_state,
}

_SCALAR_OBSERVABLES = {
    "purity": observables.purity,
    "linear_entropy": observables.linear_entropy,
    "normalized_linear_entropy": observables.normalized_linear_entropy,
    "l1_coherence": observables.l1_coherence,
    "concurrence": observables.concurrence,
}


def _fmt(x) -> str:
    return "%.17g" % float(x)


def _version() -> str:
    try:
        from importlib.metadata import version
        return version("artifact")
    except Exception:
        return "unknown"


def _steady_state(spec):
    """Projector onto the slowest-decaying right eigenvector."""
    from . import numkernel
    eig = numkernel.eig_general(model.build_h_eff(spec), tol=1e-30)
    i = int(np.argmax(eig.eigenvalues.imag))
    v = eig.right[:, i]
    pmat = np.outer(v, v.conj())
    return pmat / np.trace(pmat).real


def _write_csv(path, header_cols, rows, config_items, extra_tables=()):
    lines = [f"# schema_version: {SCHEMA_VERSION}",
             f"# artifact_version: {_version()}"]
    for k in sorted(config_items):
        lines.append(f"# config {k} = {config_items[k]}")
    lines.append(",".join(header_cols))
    for row in rows:
        lines.append(",".join(v if isinstance(v, str) else _fmt(v) for v in row))
    for title, cols, tab_rows in extra_tables:
        lines.append(f"# {title}")
        lines.append(",".join(cols))
        for row in tab_rows:
            lines.append(",".join(v if isinstance(v, str) else _fmt(v)
                                  for v in row))
    text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def _spec_from(d) -> model.SystemSpec:
    try:
        return model.SystemSpec(
            n_qubits=int(d.get("n_qubits", 2)),
            omega=float(d.get("omega", 0.0)),
            gamma_e=float(d.get("gamma_e", 6.0)),
            eta=float(d.get("eta", 0.0)),
            delta=float(d.get("delta", 0.0)),
            j_coupling=float(d.get("j_coupling", 0.0)),
            gamma_f=float(d.get("gamma_f", 0.0)),
        )
    except (TypeError, ValueError, NhqError) as exc:
        raise ConfigError(f"invalid system table: {exc}") from exc


def _load_config(path):
    if path is None:
        raise ConfigError("--config is required for this subcommand")
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"malformed config: {exc}") from exc


def _initial_state(spec, table, p=None):
    kind = table.get("kind", "diagonal_product")
    if p is None:
        p = table.get("p", 0.5)
    try:
        if kind == "diagonal_product":
            return model.make_initial_state("diagonal_product",
                                            spec.n_qubits, p=float(p))
        if kind == "maximally_mixed":
            return model.make_initial_state("maximally_mixed", spec.n_qubits)
        if kind == "single_qubit_coherent":
            return model.make_initial_state(
                "single_qubit_coherent", spec.n_qubits, p=float(p),
                coherence=complex(table.get("coherence_re", 0.0),
                                  table.get("coherence_im", 0.0)))
    except NhqError as exc:
        raise ConfigError(f"invalid initial state: {exc}") from exc
    raise ConfigError(f"unknown initial-state kind {kind!r}")


def _grid(t_max, points):
    if points < 2 or t_max <= 0:
        from .errors import InvalidGrid
        raise InvalidGrid("need t_max > 0 and at least 2 grid points")
    if points > MAX_GRID_POINTS:
        from .errors import GridTooLarge
        raise GridTooLarge("time grid exceeds the job-size guard")
    return np.linspace(0.0, float(t_max), int(points))


def _flatten_config(prefix, d, out):
    for k, v in d.items():
        key = f"{prefix}.{k}" if prefix else str(k)
        if isinstance(v, dict):
            _flatten_config(key, v, out)
        else:
            out[key] = v
    return out


def _eval_observables(traj, names, spec, rho_ss):
    cols, series = [], []
    for name in names:
        if name in _SCALAR_OBSERVABLES:
            fn = _SCALAR_OBSERVABLES[name]
            cols.append(name)
            series.append(np.array([fn(s) for s in traj.states]))
        elif name == "hs_distance_sq":
            cols.append(name)
            series.append(np.array([observables.hs_distance_sq(s, rho_ss)
                                    for s in traj.states]))
        elif name == "mode_weights":
            raise ConfigError("mode_weights is expanded by the caller")
        else:
            raise ConfigError(f"unknown observable {name!r}")
    return cols, series


def run_spectrum(spec, omega_range, points, out, config_items):
    """Eigenvalues (with sector labels) vs drive, plus degeneracy reports."""
    omegas = np.linspace(omega_range[0], omega_range[1], points) \
        if points > 0 else np.array([])
    d = 2 ** spec.n_qubits
    cols = ["omega"]
    for m in range(d):
        cols += [f"re_lambda_{m + 1}", f"im_lambda_{m + 1}", f"sector_{m + 1}"]
    rows = []
    for om in omegas:
        ms = spectral.decompose(replace(spec, omega=float(om)), tol=1e-30)
        row = [float(om)]
        for m in range(d):
            row += [ms.eigenvalues[m].real, ms.eigenvalues[m].imag,
                    ms.sector_labels[m]]
        rows.append(row)
    extra = []
    if len(omegas) > 1:
        reports = spectral.find_degeneracies(spec, (omegas[0], omegas[-1]))
        extra.append((
            "degeneracies",
            ["omega", "kind", "re_lambda", "im_lambda", "eigenvector_overlap"],
            [[r.omega_value, r.kind.value, r.eigenvalue.real,
              r.eigenvalue.imag, r.eigenvector_overlap] for r in reports]))
    _write_csv(out, cols, rows, config_items, extra)


def run_evolve(config, out, route=None, tol=None):
    """Time series of requested observables for one or more initial states."""
    spec = _spec_from(config.get("system", {}))
    ev = config.get("evolve", {})
    route = route or ev.get("route", "ode")
    if route not in _ROUTES:
        raise ConfigError(f"unknown route {route!r}")
    t = _grid(ev.get("t_max", 10.0), ev.get("t_points", 2001))
    names = list(ev.get("observables", ["purity"]))
    p_values = ev.get("p_values")
    init_table = config.get("initial", {})
    if p_values is None:
        p_values = [init_table.get("p", 0.5)]
    if spec.n_qubits != 2 and "concurrence" in names:
        raise ConfigError("concurrence requires two qubits")

    kwargs = {}
    if tol is not None and route in ("ode", "lindblad"):
        kwargs["rel_tol"] = float(tol)
    rho_ss = _steady_state(spec)
    cols = ["t"]
    series = []
    for p in p_values:
        rho0 = _initial_state(spec, init_table, p=p)
        if "mode_weights" in names:
            w = observables.mode_weight_series(spec, rho0, t)
            for m in range(w.shape[1]):
                cols.append(f"w{m + 1}_p{p:g}")
                series.append(w[:, m])
            rest = [n for n in names if n != "mode_weights"]
        else:
            rest = names
        if rest:
            traj = _ROUTES[route](spec, rho0, t, **kwargs)
            sub_cols, sub_series = _eval_observables(traj, rest, spec, rho_ss)
            cols += [f"{c}_p{p:g}" for c in sub_cols]
            series += sub_series
    rows = [[t[k]] + [s[k] for s in series] for k in range(len(t))]
    _write_csv(out, cols, rows, _flatten_config("", config, {}))


def run_sweep(config, out, threads=None, route=None, tol=None):
    """Long-format observable values over an omega x time grid."""
    spec = _spec_from(config.get("system", {}))
    sw = config.get("sweep", {})
    route = route or sw.get("route", "ode")
    if route not in _ROUTES:
        raise ConfigError(f"unknown route {route!r}")
    omega_range = sw.get("omega_range", [0.0, 4.0])
    n_omega = int(sw.get("omega_points", 41))
    t = _grid(sw.get("t_max", 5.0), sw.get("t_points", 251))
    names = list(sw.get("observables", ["purity"]))
    if n_omega * len(t) > MAX_GRID_POINTS:
        from .errors import GridTooLarge
        raise GridTooLarge("sweep grid exceeds the job-size guard")
    omegas = np.linspace(float(omega_range[0]), float(omega_range[1]), n_omega)
    init_table = config.get("initial", {"kind": "maximally_mixed"})
    kwargs = {}
    if tol is not None and route in ("ode", "lindblad"):
        kwargs["rel_tol"] = float(tol)

    def one(om):
        sp = replace(spec, omega=float(om))
        rho0 = _initial_state(sp, init_table)
        traj = _ROUTES[route](sp, rho0, t, **kwargs)
        rho_ss = _steady_state(sp)
        cols, series = _eval_observables(traj, names, sp, rho_ss)
        out_rows = []
        for k in range(len(t)):
            for c, s in zip(cols, series):
                out_rows.append([float(om), t[k], c, s[k]])
        return out_rows

    n_workers = threads or os.cpu_count() or 1
    with ThreadPoolExecutor(max_workers=n_workers) as pool:
        chunks = list(pool.map(one, omegas))  # map preserves input order
    rows = [row for chunk in chunks for row in chunk]
    _write_csv(out, ["omega", "t", "observable", "value"], rows,
               _flatten_config("", config, {}))


def run_crossing_scan(config, p_pairs, out, route=None, tol=None):
    """Numeric entropy crossings per initial-state pair vs closed forms."""
    spec = _spec_from(config.get("system", {}))
    cr = config.get("crossings", {})
    route = route or cr.get("route", "modes")
    if route not in _ROUTES:
        raise ConfigError(f"unknown route {route!r}")
    t = _grid(cr.get("t_max", 10.0), cr.get("t_points", 4001))
    rows = []
    for pa, pb in p_pairs:
        pa, pb = float(pa), float(pb)
        if pa == pb:
            continue
        ra = model.make_initial_state("diagonal_product", spec.n_qubits, p=pa)
        rb = model.make_initial_state("diagonal_product", spec.n_qubits, p=pb)
        ta = _ROUTES[route](spec, ra, t)
        tb = _ROUTES[route](spec, rb, t)
        sa = np.array([observables.linear_entropy(s) for s in ta.states])
        sb = np.array([observables.linear_entropy(s) for s in tb.states])
        events = observables.detect_crossing(t, sa, sb)
        try:
            t_x = observables.crossing_time_formula(spec, ra, rb)
        except NhqError:
            t_x = np.nan
        for tc in events:
            dev = abs(tc - t_x) / t_x if t_x and np.isfinite(t_x) and t_x > 0 \
                else np.nan
            rows.append([pa, pb, tc, t_x, dev])
    _write_csv(out, ["p_a", "p_b", "t_cross", "t_cross_formula",
                     "rel_deviation"], rows, _flatten_config("", config, {}))


def _reproduce(fig_id, out, threads=None):
    if fig_id not in presets.PRESETS:
        raise ConfigError(f"unknown preset {fig_id!r}; see list-presets")
    pre = presets.PRESETS[fig_id]
    spec = pre["spec"]
    items = {"preset": fig_id, "system.n_qubits": spec.n_qubits,
             "system.omega": spec.omega, "system.gamma_e": spec.gamma_e,
             "system.eta": spec.eta}
    if pre["kind"] == "spectrum":
        run_spectrum(spec, pre["omega_range"], pre["omega_points"], out, items)
        return
    if pre["kind"] == "sweep":
        config = {"system": spec.__dict__.copy(),
                  "initial": {"kind": pre["initial"]},
                  "sweep": {"omega_range": list(pre["omega_range"]),
                            "omega_points": pre["omega_points"],
                            "t_max": pre["t_max"], "t_points": pre["t_points"],
                            "observables": list(pre["observables"]),
                            "route": pre["route"]},
                  "preset": fig_id}
        run_sweep(config, out, threads=threads)
        return
    config = {"system": spec.__dict__.copy(),
              "initial": {"kind": "diagonal_product"},
              "evolve": {"t_max": pre["t_max"], "t_points": pre["t_points"],
                         "observables": list(pre["observables"]),
                         "route": pre["route"],
                         "p_values": list(pre["p_values"])},
              "preset": fig_id}
    run_evolve(config, out)


def _build_parser():
    ap = argparse.ArgumentParser(
        prog="nhq",
        description="Driven non-Hermitian qubit simulator (CSV batch tool)")
    ap.add_argument("--version", action="version", version=_version())
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, config=True):
        if config:
            p.add_argument("--config", help="TOML configuration file")
        p.add_argument("--out", help="output CSV path (default: stdout)")
        p.add_argument("--threads", type=int, default=None)
        p.add_argument("--route",
                       choices=["modes", "ode", "lindblad", "twomode"])
        p.add_argument("--tol", type=float, default=None)

    common(sub.add_parser("spectrum", help="eigenvalues vs drive strength"))
    common(sub.add_parser("evolve", help="observable time series"))
    common(sub.add_parser("sweep", help="long-format omega x time sweep"))
    p = sub.add_parser("crossings", help="entropy-crossing scan for p pairs")
    common(p)
    p.add_argument("--pairs", default=None,
                   help="semicolon-separated p pairs, e.g. '0.5,0.99;0.5,0.7'")
    p = sub.add_parser("reproduce", help="emit a frozen figure preset")
    p.add_argument("figure_id")
    common(p, config=False)
    sub.add_parser("list-presets", help="list available figure presets")
    return ap


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "list-presets":
            for name in sorted(presets.PRESETS):
                kind = presets.PRESETS[name]["kind"]
                print(f"{name}\t{kind}")
            return 0
        if args.command == "reproduce":
            _reproduce(args.figure_id, args.out, threads=args.threads)
            return 0
        config = _load_config(args.config)
        if args.command == "spectrum":
            spec = _spec_from(config.get("system", {}))
            tab = config.get("spectrum", {})
            rng = tab.get("omega_range", [0.0, 4.0])
            pts = int(tab.get("omega_points", 201))
            run_spectrum(spec, (float(rng[0]), float(rng[1])), pts, args.out,
                         _flatten_config("", config, {}))
        elif args.command == "evolve":
            run_evolve(config, args.out, route=args.route, tol=args.tol)
        elif args.command == "sweep":
            run_sweep(config, args.out, threads=args.threads,
                      route=args.route, tol=args.tol)
        elif args.command == "crossings":
            if args.pairs:
                pairs = [tuple(map(float, chunk.split(",")))
                         for chunk in args.pairs.split(";") if chunk]
            else:
                pairs = [tuple(pp) for pp in
                         config.get("crossings", {}).get("p_pairs", [])]
            run_crossing_scan(config, pairs, args.out, route=args.route,
                              tol=args.tol)
        return 0
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except NhqError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
