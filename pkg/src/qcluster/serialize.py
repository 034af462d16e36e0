"""Wire formats. Everything here is 1-based: even vertices 1..n, odd
indices 1..m (odd index i refers to lattice coordinate n+i). Internal code
is 0-based throughout; the shift happens only in this module.

Canonical output: `canonical_dumps` sorts keys and fixes separators and
indentation, and every list-valued field is emitted in a deterministic
order, so identical objects serialize to identical bytes.

Schemas
  QScalar   {"<half-exponent numerator>": "p" | "p/r", ...}
  SuperPoly [{"exp": [int, ...], "coeff": QScalar}, ...]  sorted by exp
  Quiver    {"n", "m", "mutable", "even_arrows": [[from, to, mult], ...],
             "odd_in": {"<even>": [odd, ...]}, "odd_out": {...}}
            (vertices with empty incidence sets are omitted from the maps)
  Lambda    [[int, ...], ...]
  Problem   {"quiver": Quiver, "lambda": Lambda, "mode"?: "strict"|"permissive"}
  Seed      {"quiver", "lambda", "lambda_current", "mode", "vars", "trace"}
"""

from __future__ import annotations

import json

from .coeff import QScalar
from .errors import MalformedInput
from .quiver import ExtQuiver
from .seed import QuantumSeed, TraceStep
from .torus import GradedShape, SkewForm, SuperPoly

__all__ = [
    "canonical_dumps",
    "poly_to_json",
    "poly_from_json",
    "quiver_to_json",
    "quiver_from_json",
    "lambda_to_json",
    "lambda_from_json",
    "parse_problem",
    "trace_to_json",
    "seed_to_json",
    "seed_from_json",
]


def canonical_dumps(obj: object) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"


def poly_to_json(poly: SuperPoly) -> list[dict]:
    return [
        {"exp": list(e), "coeff": c.to_json()} for e, c in poly.sorted_terms()
    ]


def poly_from_json(data: object, shape: GradedShape) -> SuperPoly:
    if not isinstance(data, list):
        raise MalformedInput("polynomial must be a list of terms")
    terms: dict[tuple[int, ...], QScalar] = {}
    for item in data:
        if not isinstance(item, dict) or set(item) != {"exp", "coeff"}:
            raise MalformedInput("each term needs exactly the keys 'exp' and 'coeff'")
        exp = item["exp"]
        if not isinstance(exp, list) or not all(isinstance(x, int) for x in exp):
            raise MalformedInput("'exp' must be a list of integers")
        e = tuple(exp)
        shape.check_vec(e)
        if e in terms:
            raise MalformedInput(f"duplicate exponent {e}")
        terms[e] = QScalar.from_json(item["coeff"])
    return SuperPoly(terms)


def _int_field(data: dict, key: str) -> int:
    v = data.get(key)
    if not isinstance(v, int) or isinstance(v, bool):
        raise MalformedInput(f"'{key}' must be an integer")
    return v


def quiver_to_json(q: ExtQuiver) -> dict:
    arrows = []
    for i in range(q.n):
        for j in range(q.n):
            if q.arrows[i][j]:
                arrows.append([i + 1, j + 1, q.arrows[i][j]])
    odd_in = {
        str(k + 1): [a + 1 for a in sorted(q.odd_in[k])]
        for k in range(q.n)
        if q.odd_in[k]
    }
    odd_out = {
        str(k + 1): [a + 1 for a in sorted(q.odd_out[k])]
        for k in range(q.n)
        if q.odd_out[k]
    }
    return {
        "n": q.n,
        "m": q.m,
        "mutable": q.mutable,
        "even_arrows": arrows,
        "odd_in": odd_in,
        "odd_out": odd_out,
    }


def _odd_map(data: object, n: int, m: int, field: str) -> list[frozenset[int]]:
    out = [set() for _ in range(n)]
    if data is None:
        return [frozenset(s) for s in out]
    if not isinstance(data, dict):
        raise MalformedInput(f"'{field}' must be an object")
    for key, vals in data.items():
        try:
            k = int(key)
        except (TypeError, ValueError):
            raise MalformedInput(f"'{field}' key {key!r} is not a vertex number") from None
        if not (1 <= k <= n):
            raise MalformedInput(f"'{field}' vertex {k} out of range 1..{n}")
        if not isinstance(vals, list) or not all(isinstance(v, int) for v in vals):
            raise MalformedInput(f"'{field}'[{key!r}] must be a list of integers")
        for v in vals:
            if not (1 <= v <= m):
                raise MalformedInput(f"odd index {v} out of range 1..{m}")
            out[k - 1].add(v - 1)
    return [frozenset(s) for s in out]


def quiver_from_json(data: object) -> ExtQuiver:
    if not isinstance(data, dict):
        raise MalformedInput("quiver must be an object")
    n = _int_field(data, "n")
    m = _int_field(data, "m")
    mutable = _int_field(data, "mutable")
    if n < 1 or m < 0:
        raise MalformedInput(f"bad sizes n={n}, m={m}")
    arrows = [[0] * n for _ in range(n)]
    raw = data.get("even_arrows", [])
    if not isinstance(raw, list):
        raise MalformedInput("'even_arrows' must be a list")
    for item in raw:
        if (
            not isinstance(item, list)
            or len(item) != 3
            or not all(isinstance(x, int) for x in item)
        ):
            raise MalformedInput(f"arrow {item!r} must be [from, to, mult]")
        i, j, mult = item
        if not (1 <= i <= n and 1 <= j <= n):
            raise MalformedInput(f"arrow {item!r} references a missing vertex")
        if mult < 1:
            raise MalformedInput(f"arrow {item!r} has non-positive multiplicity")
        arrows[i - 1][j - 1] += mult
    odd_in = _odd_map(data.get("odd_in"), n, m, "odd_in")
    odd_out = _odd_map(data.get("odd_out"), n, m, "odd_out")
    return ExtQuiver(
        n=n,
        m=m,
        mutable=mutable,
        arrows=tuple(tuple(r) for r in arrows),
        odd_in=tuple(odd_in),
        odd_out=tuple(odd_out),
    )


def lambda_to_json(lam: SkewForm) -> list[list[int]]:
    return [list(r) for r in lam.rows]


def lambda_from_json(data: object, shape: GradedShape) -> SkewForm:
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise MalformedInput("'lambda' must be a list of rows")
    for r in data:
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in r):
            raise MalformedInput("'lambda' entries must be integers")
    return SkewForm(shape, tuple(tuple(r) for r in data))


def parse_problem(data: object) -> tuple[ExtQuiver, SkewForm, str]:
    if not isinstance(data, dict):
        raise MalformedInput("input must be a JSON object")
    if "quiver" not in data or "lambda" not in data:
        raise MalformedInput("input needs 'quiver' and 'lambda'")
    q = quiver_from_json(data["quiver"])
    lam = lambda_from_json(data["lambda"], GradedShape(q.n, q.m))
    mode = data.get("mode", "strict")
    if mode not in ("strict", "permissive"):
        raise MalformedInput(f"unknown mode {mode!r}")
    return q, lam, mode


def trace_to_json(trace: tuple[TraceStep, ...]) -> list[dict]:
    return [
        {
            "vertex": s.vertex + 1,
            "allowed": s.allowed,
            "divisible": s.divisible,
            "integral": s.integral,
        }
        for s in trace
    ]


def seed_to_json(seed: QuantumSeed) -> dict:
    return {
        "quiver": quiver_to_json(seed.quiver),
        "lambda": lambda_to_json(seed.lam_init),
        "lambda_current": lambda_to_json(seed.lam_cur),
        "mode": seed.mode,
        "vars": [poly_to_json(v) for v in seed.variables],
        "trace": trace_to_json(seed.trace),
    }


def seed_from_json(data: object) -> QuantumSeed:
    if not isinstance(data, dict):
        raise MalformedInput("seed must be an object")
    for key in ("quiver", "lambda", "lambda_current", "mode", "vars", "trace"):
        if key not in data:
            raise MalformedInput(f"seed is missing '{key}'")
    q = quiver_from_json(data["quiver"])
    shape = GradedShape(q.n, q.m)
    lam = lambda_from_json(data["lambda"], shape)
    lam_cur = lambda_from_json(data["lambda_current"], shape)
    mode = data["mode"]
    if mode not in ("strict", "permissive"):
        raise MalformedInput(f"unknown mode {mode!r}")
    raw_vars = data["vars"]
    if not isinstance(raw_vars, list) or len(raw_vars) != shape.dim:
        raise MalformedInput(f"'vars' must list {shape.dim} polynomials")
    variables = tuple(poly_from_json(v, shape) for v in raw_vars)
    raw_trace = data["trace"]
    if not isinstance(raw_trace, list):
        raise MalformedInput("'trace' must be a list")
    steps = []
    for item in raw_trace:
        if not isinstance(item, dict):
            raise MalformedInput("trace steps must be objects")
        try:
            steps.append(
                TraceStep(
                    vertex=int(item["vertex"]) - 1,
                    allowed=bool(item["allowed"]),
                    divisible=bool(item["divisible"]),
                    integral=bool(item["integral"]),
                )
            )
        except KeyError as exc:
            raise MalformedInput(f"trace step missing {exc}") from None
    return QuantumSeed(
        quiver=q,
        lam_init=lam,
        lam_cur=lam_cur,
        variables=variables,
        mode=mode,
        trace=tuple(steps),
    )
