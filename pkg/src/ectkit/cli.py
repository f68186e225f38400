"""Command-line interface.

Exit codes: 0 on success, 1 on usage or input errors, 2 when a verification
run produced at least one report with holds=false.  Identical invocations
(including seeds) write byte-identical JSON, with infinities rendered as the
string "inf".
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

from . import io as kio
from .complexes import GeometricComplex, euler_characteristic, max_vertex_cofaces
from .ecc import ecc_from_filtration
from .ect import (
    DirectionScheme,
    default_scheme,
    ect_distance,
    sphere_cosine_integral,
    THREADS_ENV_VAR,
)
from .filtration import Direction, directional_filtration
from .persistence import persistence_diagram
from .select import select_distance
from .stability import run_verification, VERIFICATION_CHECKS
from .wasserstein import total_wasserstein_distance

__all__ = ["main"]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors by default, which collides
    # with the "verification failed" exit code; route through an exception.
    def error(self, message):
        raise _UsageError(message)


def _jsonify(value):
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    if isinstance(value, dict):
        return {k: _jsonify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonify(v) for v in value]
    return value


def _dump(payload) -> str:
    return json.dumps(_jsonify(payload), indent=2, sort_keys=True) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _parse_direction(text: str) -> Direction:
    try:
        parts = [float(x) for x in text.split(",")]
    except ValueError:
        raise _UsageError(f"--direction must be comma-separated numbers, got {text!r}") from None
    return Direction.normalized(parts)


def _threads(args) -> int | None:
    if args.threads is not None:
        return args.threads
    env = os.environ.get(THREADS_ENV_VAR, "").strip()
    if env:
        try:
            return int(env)
        except ValueError:
            raise _UsageError(f"{THREADS_ENV_VAR} must be an integer, got {env!r}") from None
    return None


def _pick_embedding(bundle: kio.ComplexBundle, name: str):
    if name not in bundle.embeddings:
        raise ValueError(
            f"embedding not found: {name!r} (available: {sorted(bundle.embeddings) or 'none'})"
        )
    return bundle.embeddings[name]


def _pick_field(bundle: kio.ComplexBundle, name: str):
    if name not in bundle.fields:
        raise ValueError(
            f"phi table not found: {name!r} (available: {sorted(bundle.fields) or 'none'})"
        )
    return bundle.fields[name]


def _scheme_from_args(args, dim: int) -> DirectionScheme:
    kind = getattr(args, "scheme", "auto")
    count = getattr(args, "directions", None)
    seed = getattr(args, "scheme_seed", 0)
    if kind == "auto":
        return default_scheme(dim, count=count, seed=seed)
    base = default_scheme(dim, count=count, seed=seed)
    return DirectionScheme(dim, base.count, kind, seed if kind == "monte-carlo" else None)


def _window_from_args(args, *embeddings) -> float | None:
    raw = getattr(args, "window", None)
    if raw is None:
        return None
    if raw == "auto":
        return max(emb.max_norm() for emb in embeddings) + 1.0
    try:
        return float(raw)
    except ValueError:
        raise _UsageError(f"--window must be a number or 'auto', got {raw!r}") from None


def _cmd_ecc(args) -> int:
    bundle = kio.load_complex_file(args.complex)
    embedding = _pick_embedding(bundle, args.embedding)
    direction = _parse_direction(args.direction)
    curve = ecc_from_filtration(
        directional_filtration(GeometricComplex(bundle.complex, embedding), direction)
    )
    _emit(kio.step_function_csv(curve), args.out)
    return 0


def _cmd_persistence(args) -> int:
    bundle = kio.load_complex_file(args.complex)
    embedding = _pick_embedding(bundle, args.embedding)
    direction = _parse_direction(args.direction)
    diagram = persistence_diagram(
        directional_filtration(GeometricComplex(bundle.complex, embedding), direction)
    )
    _emit(_dump(kio.diagram_to_jsonable(diagram)), args.out)
    return 0


def _cmd_ect_distance(args) -> int:
    bundle = kio.load_complex_file(args.complex)
    if len(args.embedding) != 2:
        raise _UsageError("ect-distance needs exactly two --embedding names")
    first = _pick_embedding(bundle, args.embedding[0])
    second = _pick_embedding(bundle, args.embedding[1])
    window = _window_from_args(args, first, second)
    if args.directions_csv:
        directions = kio.load_directions_csv(args.directions_csv)
        estimate = ect_distance(
            GeometricComplex(bundle.complex, first),
            GeometricComplex(bundle.complex, second),
            directions=directions,
            window=window,
            threads=_threads(args),
            keep_per_direction=bool(args.per_direction),
        )
    else:
        scheme = _scheme_from_args(args, first.dim)
        estimate = ect_distance(
            GeometricComplex(bundle.complex, first),
            GeometricComplex(bundle.complex, second),
            scheme=scheme,
            window=window,
            threads=_threads(args),
            keep_per_direction=bool(args.per_direction),
        )
    if args.per_direction:
        lines = [",".join([f"x{i}" for i in range(first.dim)] + ["integrand"])]
        for vector, integrand in estimate.per_direction:
            lines.append(",".join([repr(x) for x in vector] + [repr(integrand) if math.isfinite(integrand) else "inf"]))
        Path(args.per_direction).write_text("\n".join(lines) + "\n")
    payload = {
        "value": estimate.value,
        "quadrature": estimate.quadrature,
        "n_directions": estimate.n_directions,
        "window": window,
    }
    _emit(_dump(payload), args.out)
    return 0


def _cmd_select_distance(args) -> int:
    bundle = kio.load_complex_file(args.complex)
    if len(args.embedding) != 2:
        raise _UsageError("select-distance needs exactly two --embedding names")
    first = _pick_embedding(bundle, args.embedding[0])
    second = _pick_embedding(bundle, args.embedding[1])
    field = _pick_field(bundle, args.phi)
    scheme = _scheme_from_args(args, first.dim)
    window = _window_from_args(args, first, second)
    estimate = select_distance(
        bundle.complex, field, first, second,
        scheme=scheme, window=window, threads=_threads(args),
    )
    payload = {
        "value": estimate.value,
        "quadrature": estimate.quadrature,
        "n_directions": estimate.n_directions,
        "phi": args.phi,
        "segments": [
            {"t_lo": lo, "t_hi": hi, "ect_distance": val, "contribution": (hi - lo) * val}
            for lo, hi, val in estimate.per_segment
        ],
    }
    _emit(_dump(payload), args.out)
    return 0


def _cmd_wasserstein(args) -> int:
    if len(args.diagram) != 2:
        raise _UsageError("wasserstein needs exactly two --diagram files")
    first = kio.load_diagram(args.diagram[0])
    second = kio.load_diagram(args.diagram[1])
    q = math.inf if args.q in ("inf", "infinity") else float(args.q)
    value = total_wasserstein_distance(first, second, p=args.p, q=q)
    _emit(_dump({"value": value, "p": args.p, "q": "inf" if math.isinf(q) else q}), args.out)
    return 0


def _cmd_verify_bound(args) -> int:
    reports = run_verification(
        args.which,
        trials=args.trials,
        seed=args.seed,
        directions=args.directions,
        threads=_threads(args),
    )
    failed = sum(1 for r in reports if not r.holds)
    payload = {
        "which": args.which,
        "trials": args.trials,
        "seed": args.seed,
        "n_reports": len(reports),
        "n_failed": failed,
        "reports": [r.to_jsonable() for r in reports],
    }
    text = _dump(payload)
    if args.out:
        Path(args.out).write_text(text)
        sys.stdout.write(
            f"{args.which}: {len(reports) - failed}/{len(reports)} hold -> {args.out}\n"
        )
    else:
        sys.stdout.write(text)
    return 2 if failed else 0


def _cmd_constants(args) -> int:
    bundle = kio.load_complex_file(args.complex)
    dims = sorted({emb.dim for emb in bundle.embeddings.values()} | ({args.dim} if args.dim else set()))
    payload: dict = {
        "euler_characteristic": euler_characteristic(bundle.complex),
        "max_vertex_cofaces": max_vertex_cofaces(bundle.complex),
        "n_simplices": bundle.complex.n_simplices,
        "sphere_cosine_integral": {str(d): sphere_cosine_integral(d) for d in dims if d >= 2},
    }
    if args.phi:
        field = _pick_field(bundle, args.phi)
        payload["max_field_value"] = max(field[v] for v in bundle.complex.vertices)
        payload["phi"] = args.phi
    _emit(_dump(payload), args.out)
    return 0


def _add_common_output(sub) -> None:
    sub.add_argument("--out", default=None, help="write output to this file instead of stdout")


def _add_scheme_flags(sub) -> None:
    sub.add_argument("--directions", type=int, default=None, help="number of quadrature directions")
    sub.add_argument(
        "--scheme",
        choices=("auto", "uniform-circle", "fibonacci-sphere", "monte-carlo"),
        default="auto",
        help="direction scheme (auto picks by ambient dimension)",
    )
    sub.add_argument("--scheme-seed", type=int, default=0, help="seed for the monte-carlo scheme")
    sub.add_argument("--threads", type=int, default=None, help=f"worker cap (default: ${THREADS_ENV_VAR} or 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ectkit", description=__doc__.splitlines()[0])
    commands = parser.add_subparsers(dest="command", required=True)

    ecc = commands.add_parser("ecc", help="Euler characteristic curve for one direction, as CSV")
    ecc.add_argument("--complex", required=True)
    ecc.add_argument("--embedding", required=True)
    ecc.add_argument("--direction", required=True, help="comma-separated vector; normalized before use")
    _add_common_output(ecc)
    ecc.set_defaults(func=_cmd_ecc)

    pers = commands.add_parser("persistence", help="persistence diagram of a directional filtration, as JSON")
    pers.add_argument("--complex", required=True)
    pers.add_argument("--embedding", required=True)
    pers.add_argument("--direction", required=True)
    _add_common_output(pers)
    pers.set_defaults(func=_cmd_persistence)

    ect = commands.add_parser("ect-distance", help="transform distance between two embeddings")
    ect.add_argument("--complex", required=True)
    ect.add_argument("--embedding", action="append", default=[], help="embedding name; pass twice")
    ect.add_argument("--window", nargs="?", const="auto", default=None,
                     help="integrate over [-B, B]; bare flag uses max vertex norm + 1")
    ect.add_argument("--directions-csv", default=None, help="custom unit directions, one per row")
    ect.add_argument("--per-direction", default=None, help="write per-direction integrands to this CSV")
    _add_scheme_flags(ect)
    _add_common_output(ect)
    ect.set_defaults(func=_cmd_ect_distance)

    sel = commands.add_parser("select-distance", help="lifted transform distance for a phi table")
    sel.add_argument("--complex", required=True)
    sel.add_argument("--phi", required=True, help="name of the phi table in the complex file")
    sel.add_argument("--embedding", action="append", default=[], help="embedding name; pass twice")
    sel.add_argument("--window", nargs="?", const="auto", default=None)
    _add_scheme_flags(sel)
    _add_common_output(sel)
    sel.set_defaults(func=_cmd_select_distance)

    was = commands.add_parser("wasserstein", help="total Wasserstein distance between two diagram files")
    was.add_argument("--diagram", action="append", default=[], help="diagram JSON; pass twice")
    was.add_argument("--p", type=float, default=1.0)
    was.add_argument("--q", default="inf", help="ground-metric order, a number or 'inf'")
    _add_common_output(was)
    was.set_defaults(func=_cmd_wasserstein)

    ver = commands.add_parser("verify-bound", help="run randomized inequality checks")
    ver.add_argument("--which", choices=VERIFICATION_CHECKS + ("all",), required=True)
    ver.add_argument("--trials", type=int, default=50)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--directions", type=int, default=None)
    ver.add_argument("--threads", type=int, default=None)
    ver.add_argument("--out", default=None, help="write the JSON report here")
    ver.set_defaults(func=_cmd_verify_bound)

    con = commands.add_parser("constants", help="combinatorial and quadrature constants of a complex")
    con.add_argument("--complex", required=True)
    con.add_argument("--phi", default=None)
    con.add_argument("--dim", type=int, default=None, help="also report the cosine integral for this dimension")
    _add_common_output(con)
    con.set_defaults(func=_cmd_constants)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
