"""Command-line entry point.

Subcommands: build-basis, map, simulate, verify, export-mesh, counts,
serve.  Exit codes: 0 success, 2 input/validation failure, 3 numerical
tolerance failure in verify.
"""

from __future__ import annotations

import argparse
import json
import os
import pathlib
import sys

import numpy as np

from . import dropsmap as dm
from . import dynamics as dy
from . import multipole as mpole
from . import scene as sc
from . import tensorbasis as tb
from . import verify
from .expr import ExpressionError, parse_operator

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_TOLERANCE = 3


class CliError(Exception):
    pass


def _basis(n: int, kind: str):
    if kind == "lisa":
        return tb.build_lisa_basis(n)
    if kind == "multipole":
        if n > 3:
            raise CliError("multipole basis construction supports up to 3 spins")
        return mpole.build_multipole_basis(n)
    raise CliError(f"unknown basis kind {kind!r}")


def _load_operator(args, n: int) -> np.ndarray:
    if args.expr is not None:
        return parse_operator(args.expr, n)
    path = pathlib.Path(args.operator_file)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read operator file {path}: {exc}")
    mat = np.array(
        [[complex(z[0], z[1]) for z in row] for row in data["matrix"]], dtype=complex
    )
    if mat.shape != (2**n, 2**n):
        raise CliError(f"operator shape {mat.shape} does not match n={n}")
    return mat


def _write(text: str, out: str | None):
    if out in (None, "-"):
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        pathlib.Path(out).write_text(text, encoding="utf-8")


def cmd_build_basis(args) -> int:
    basis = _basis(args.n, args.basis)
    records = tb.basis_to_json(basis)
    _write(json.dumps(records, indent=1), args.out)
    return EXIT_OK


def cmd_map(args) -> int:
    basis = _basis(args.n, args.basis)
    op = _load_operator(args, args.n)
    spectrum = dm.decompose(op, basis)
    _write(json.dumps(dm.spectrum_to_json(spectrum), indent=1), args.out)
    return EXIT_OK


def _segments_from_json(records) -> list:
    segments = []
    for rec in records:
        couplings = {
            (int(c["pair"][0]), int(c["pair"][1])): float(c["j_hz"])
            for c in rec.get("couplings", [])
        }
        segments.append(
            dy.PulseSegment(
                kind=rec["kind"],
                duration=float(rec["duration"]),
                amplitude=float(rec.get("amplitude", 0.0)),
                phase=rec.get("phase", "x"),
                couplings=couplings,
                a=float(rec.get("a", 0.0)),
                b=float(rec.get("b", 1.0)),
                couplings_during_pulse=bool(rec.get("couplings_during_pulse", False)),
            )
        )
    return segments


def cmd_simulate(args) -> int:
    try:
        seq = json.loads(pathlib.Path(args.sequence).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read sequence file: {exc}")
    n = int(seq["n"])
    kind = seq.get("basis", "lisa")
    basis = _basis(n, kind)
    rho = parse_operator(seq["initial"], n)
    segments = _segments_from_json(seq["segments"])
    trace = dy.run_sequence(rho, segments, n)
    grid = tuple(args.grid)
    spectra = [dm.decompose(state, basis) for state in trace.states]
    record = {
        "n": n,
        "basis": kind,
        "total_time": trace.total_time,
        "states": [dm.spectrum_to_json(s) for s in spectra],
    }
    if trace.effective_hamiltonian is not None:
        record["effective_hamiltonian_spectrum"] = dm.spectrum_to_json(
            dm.decompose(trace.effective_hamiltonian, basis)
        )
    if args.trace:
        _write(json.dumps(record, indent=1), args.trace)
    if args.scene_dir:
        outdir = pathlib.Path(args.scene_dir)
        outdir.mkdir(parents=True, exist_ok=True)
        for step, spectrum in enumerate(spectra):
            scene = sc.build_scene(spectrum, basis, kind, grid=grid, step=step)
            (outdir / f"step_{step}.json").write_text(
                sc.scene_dumps(scene), encoding="utf-8"
            )
    if args.final_scene:
        scene = sc.build_scene(
            spectra[-1], basis, kind, grid=grid, step=len(segments)
        )
        _write(sc.scene_dumps(scene), args.final_scene)
    if not (args.trace or args.scene_dir or args.final_scene):
        _write(json.dumps(record, indent=1), None)
    return EXIT_OK


def cmd_export_mesh(args) -> int:
    try:
        data = json.loads(pathlib.Path(args.spectrum).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read spectrum file: {exc}")
    spectrum = dm.spectrum_from_json(data)
    basis = _basis(spectrum.n, args.basis)
    scene = sc.build_scene(spectrum, basis, args.basis, grid=tuple(args.grid))
    if args.format == "scene":
        _write(sc.scene_dumps(scene), args.out)
    else:
        _write(sc.scene_to_obj(scene), args.out)
    return EXIT_OK


def cmd_counts(args) -> int:
    minimum, lisa, maximum = tb.droplet_bounds(args.n)
    mpole_count = mpole.multipole_droplet_count(args.n)
    _write(f"min {minimum}, lisa {lisa}, max {maximum}, multipole {mpole_count}", None)
    return EXIT_OK


def cmd_verify(args) -> int:
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    results = verify.run_suite(names)
    failed = 0
    for name, ok, detail in results:
        status = "PASS" if ok else "FAIL"
        suffix = f"  ({detail})" if detail else ""
        print(f"[{status}] {name}{suffix}")
        failed += not ok
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_TOLERANCE


def cmd_serve(args) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="drops", description="spin operator droplet toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-basis", help="export a tensor basis as JSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--basis", choices=("lisa", "multipole"), default="lisa")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_build_basis)

    p = sub.add_parser("map", help="map an operator to its droplet spectrum")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--basis", choices=("lisa", "multipole"), default="lisa")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--expr", default=None)
    group.add_argument("--operator-file", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("simulate", help="run a pulse sequence")
    p.add_argument("--sequence", required=True)
    p.add_argument("--trace", default=None)
    p.add_argument("--scene-dir", default=None)
    p.add_argument("--final-scene", default=None)
    p.add_argument("--grid", type=int, nargs=2, default=list(sc.DEFAULT_GRID))
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("export-mesh", help="spectrum to scene JSON or OBJ mesh")
    p.add_argument("--spectrum", required=True)
    p.add_argument("--basis", choices=("lisa", "multipole"), default="lisa")
    p.add_argument("--format", choices=("scene", "obj"), default="scene")
    p.add_argument("--grid", type=int, nargs=2, default=list(sc.DEFAULT_GRID))
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_export_mesh)

    p = sub.add_parser("counts", help="droplet count bounds for n spins")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_counts)

    p = sub.add_parser("verify", help="run numerical verification suites")
    p.add_argument("--suite", default="all", choices=("all",) + tuple(verify.SUITES))
    p.add_argument("--n", type=int, default=3, help="accepted for compatibility")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default=os.environ.get("DROPS_HOST", "127.0.0.1"))
    p.add_argument("--port", type=int, default=int(os.environ.get("DROPS_PORT", "8642")))
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ExpressionError as exc:
        print(f"expression error at {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (CliError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
