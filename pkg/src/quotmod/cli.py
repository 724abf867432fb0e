"""Command-line front end.

A thin client over the same handlers that back the HTTP service; all work
happens in-process and nothing touches the network (except the explicit
``serve`` subcommand, which starts the HTTP server).

Exit codes: 0 success / isomorphic, 1 not isomorphic, 2 inconclusive,
3 input error, 4 numerical failure.  Errors print one machine-parsable JSON
line on stderr.

All numeric defaults live here, not in the library: series degree cap 12,
model degree 6, radius 0.3, 16 grid points, comparison tolerance 1e-8.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from pydantic import ValidationError

from .errors import INPUT_ERRORS, NUMERICAL_ERRORS
from .reports import csv_from_rows, render_json
from .service import handlers
from .service import schemas as sc

EXIT_OK = 0
EXIT_NOT_ISOMORPHIC = 1
EXIT_INCONCLUSIVE = 2
EXIT_INPUT_ERROR = 3
EXIT_NUMERICAL_ERROR = 4

DEFAULT_CAP = 12
DEFAULT_MODEL_DEGREE = 6
DEFAULT_RADIUS = 0.3
DEFAULT_GRID = 16
DEFAULT_TOL = 1e-8
DEFAULT_ORACLE_TOL = 1e-10

_VERDICT_EXIT = {
    "isomorphic": EXIT_OK,
    "not_isomorphic": EXIT_NOT_ISOMORPHIC,
    "inconclusive": EXIT_INCONCLUSIVE,
}


def _fail(code: int, message: str, **extra) -> int:
    payload = {"error": message, **extra}
    print(render_json(payload), file=sys.stderr)
    return code


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _kernel_model(path: str, degree: int | None) -> sc.KernelSpecModel:
    data = _load_json(path)
    if degree is not None:
        data["cap"] = degree
    return sc.KernelSpecModel.model_validate(data)


def _hypersurface_model(path: str | None) -> sc.HypersurfaceModel:
    if path is None:
        return sc.HypersurfaceModel()
    return sc.HypersurfaceModel.model_validate(_load_json(path))


def _cmd_validate(args: argparse.Namespace) -> int:
    request = sc.ValidateRequest(kernel=_kernel_model(args.kernel, None))
    result = handlers.run_validate(request)
    print(render_json(result.model_dump()))
    if not result.nnd:
        return _fail(
            EXIT_INPUT_ERROR, "not nnd", min_eigenvalue=result.min_eigenvalue
        )
    return EXIT_OK


def _cmd_invariants(args: argparse.Namespace) -> int:
    request = sc.InvariantsRequest(
        kernel=_kernel_model(args.kernel, args.degree),
        hypersurface=_hypersurface_model(args.hypersurface),
        radius=args.radius,
        grid=args.grid,
    )
    response = handlers.run_invariants(request)
    out = Path(args.out)
    out.write_text(render_json(response.model_dump()) + "\n", encoding="utf-8")
    csv_path = out.with_suffix(".csv")
    csv_path.write_text(csv_from_rows(response.rows, response.dim), encoding="utf-8")
    print(str(out))
    print(str(csv_path))
    return EXIT_OK


def _cmd_compare(args: argparse.Namespace) -> int:
    request = sc.CompareRequest(
        a=_kernel_model(args.a, args.degree),
        b=_kernel_model(args.b, args.degree),
        hypersurface=_hypersurface_model(args.hypersurface),
        tol=args.tol,
        oracle=args.oracle,
        oracle_tol=args.oracle_tol,
        radius=args.radius,
        grid=args.grid,
    )
    verdict = handlers.run_compare(request)
    print(render_json(verdict.model_dump()))
    return _VERDICT_EXIT[verdict.outcome]


def _cmd_model_check(args: argparse.Namespace) -> int:
    request = sc.ModelCheckRequest(
        kernel=_kernel_model(args.kernel, None),
        model_degree=args.dmodel,
        radius=args.radius,
    )
    response = handlers.run_model_check(request)
    print(render_json(response.model_dump()))
    return EXIT_OK if response.passed else EXIT_NUMERICAL_ERROR


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quotmod",
        description="Decide unitary equivalence of quotient Hilbert modules "
        "from reproducing-kernel data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="nnd and Hermitian checks on a kernel file")
    p.add_argument("kernel", help="kernel spec JSON file")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("invariants", help="sampled invariant report (JSON + CSV)")
    p.add_argument("--kernel", required=True)
    p.add_argument("--hypersurface", default=None)
    p.add_argument("--degree", type=int, default=DEFAULT_CAP)
    p.add_argument("--radius", type=float, default=DEFAULT_RADIUS)
    p.add_argument("--grid", type=int, default=DEFAULT_GRID)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_invariants)

    p = sub.add_parser("compare", help="decide equivalence of two modules")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--hypersurface", default=None)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--oracle", action="store_true",
                   help="coefficientwise jet-kernel comparison instead of "
                   "sampled invariants")
    p.add_argument("--oracle-tol", type=float, default=DEFAULT_ORACLE_TOL)
    p.add_argument("--degree", type=int, default=None,
                   help="override the degree cap of both kernel files")
    p.add_argument("--radius", type=float, default=DEFAULT_RADIUS)
    p.add_argument("--grid", type=int, default=DEFAULT_GRID)
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("model-check", help="finite Hilbert-space model checks")
    p.add_argument("--kernel", required=True)
    p.add_argument("--dmodel", type=int, default=DEFAULT_MODEL_DEGREE)
    p.add_argument("--radius", type=float, default=DEFAULT_RADIUS)
    p.set_defaults(func=_cmd_model_check)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (json.JSONDecodeError, OSError, ValidationError) as exc:
        return _fail(EXIT_INPUT_ERROR, str(exc).replace("\n", " "))
    except INPUT_ERRORS as exc:
        return _fail(EXIT_INPUT_ERROR, str(exc))
    except NUMERICAL_ERRORS as exc:
        return _fail(EXIT_NUMERICAL_ERROR, str(exc))


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
