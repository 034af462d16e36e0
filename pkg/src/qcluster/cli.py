"""Command line front door.

Subcommands
  validate INPUT [--permissive]      compatibility report
  mutate INPUT --seq 1,2 [--format]  run a mutation sequence
  laurent-check INPUT --seq 1,2      step-by-step Laurent certificate
  serve [--port] [--state-dir]       HTTP session service

Exit codes: 0 success, 2 incompatible pair, 3 malformed input,
4 divisibility failure, 5 mutation not allowed (or frozen vertex).
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import (
    Incompatible,
    MalformedInput,
    MutationOnFrozen,
    NotAllowed,
    NotDivisible,
    ZeroDivisor,
)
from .compat import check_compatible
from .laurent import laurent_certify
from .render import render_poly
from .seed import initial_seed, mutate_seed
from .serialize import canonical_dumps, parse_problem, seed_to_json

EXIT_OK = 0
EXIT_INCOMPATIBLE = 2
EXIT_MALFORMED = 3
EXIT_NOT_DIVISIBLE = 4
EXIT_NOT_ALLOWED = 5


def _load_problem(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path} is not valid JSON: {exc}") from exc
    return parse_problem(data)


def _parse_seq(raw: str) -> list[int]:
    try:
        vertices = [int(tok) for tok in raw.split(",") if tok.strip()]
    except ValueError:
        raise MalformedInput(f"--seq must be comma-separated integers, got {raw!r}") from None
    if not vertices:
        raise MalformedInput("--seq is empty")
    if any(v < 1 for v in vertices):
        raise MalformedInput("--seq vertices are 1-based and positive")
    return [v - 1 for v in vertices]


def cmd_validate(args: argparse.Namespace) -> int:
    mode = "permissive" if args.permissive else "strict"
    q, lam, _ = _load_problem(args.input)
    report = check_compatible(q, lam, mode)
    sys.stdout.write(canonical_dumps(report.to_json()))
    return EXIT_OK if report.ok else EXIT_INCOMPATIBLE


def cmd_mutate(args: argparse.Namespace) -> int:
    q, lam, mode = _load_problem(args.input)
    vertices = _parse_seq(args.seq)
    seed = initial_seed(q, lam, mode)
    for k in vertices:
        seed = mutate_seed(seed, k)
    if args.format == "json":
        sys.stdout.write(canonical_dumps(seed_to_json(seed)))
    else:
        lines = []
        for i, var in enumerate(seed.variables):
            name = f"X{i + 1}" if i < q.n else f"xi{i - q.n + 1}"
            lines.append(f"{name} = {render_poly(seed.lam_init, var, args.format)}")
        sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_laurent_check(args: argparse.Namespace) -> int:
    q, lam, mode = _load_problem(args.input)
    vertices = _parse_seq(args.seq)
    seed = initial_seed(q, lam, mode)
    cert = laurent_certify(seed, vertices)
    sys.stdout.write(canonical_dumps(cert.to_json()))
    if cert.overall:
        return EXIT_OK
    if cert.steps and not cert.steps[-1].allowed:
        return EXIT_NOT_ALLOWED
    return EXIT_NOT_DIVISIBLE


def cmd_serve(args: argparse.Namespace) -> int:
    from .server import serve_forever

    serve_forever(port=args.port, state_dir=args.state_dir)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcluster",
        description="Exact quantum cluster superalgebra computations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check compatibility of the input pair")
    p.add_argument("input", help="problem JSON file")
    p.add_argument("--permissive", action="store_true", help="relax the diagonal positivity to zero-column vertices")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("mutate", help="run a mutation sequence")
    p.add_argument("input", help="problem JSON file")
    p.add_argument("--seq", required=True, help="comma-separated 1-based vertices, e.g. 1,2,1")
    p.add_argument("--format", choices=["json", "pretty", "latex"], default="json")
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("laurent-check", help="certify Laurent divisibility along a sequence")
    p.add_argument("input", help="problem JSON file")
    p.add_argument("--seq", required=True, help="comma-separated 1-based vertices")
    p.set_defaults(func=cmd_laurent_check)

    p = sub.add_parser("serve", help="run the HTTP session service")
    p.add_argument("--port", type=int, default=None, help="listen port (default: QCLUSTER_PORT or 8642)")
    p.add_argument("--state-dir", default=None, help="directory for session snapshot files")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MalformedInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except Incompatible as exc:
        sys.stdout.write(canonical_dumps(exc.report.to_json()))
        print("error: the pair is not compatible", file=sys.stderr)
        return EXIT_INCOMPATIBLE
    except (NotAllowed, MutationOnFrozen) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_ALLOWED
    except (NotDivisible, ZeroDivisor) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_DIVISIBLE


if __name__ == "__main__":
    sys.exit(main())
