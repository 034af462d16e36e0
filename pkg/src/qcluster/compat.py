"""Compatibility of a skew form with an extended quiver, and the form's
mutation.

A pair (quiver, Lambda) is compatible when

  (A) B^T * Lambda_top = (D | 0): writing B for the signed exchange matrix
      (n rows, one column per mutable vertex) and Lambda_top for the first
      n rows of Lambda, the product has zero off-diagonal entries and
      strictly positive diagonal d_j. Permissive mode relaxes a diagonal
      entry to zero exactly when column j of B vanishes identically (an
      even vertex with no even arrows at all).
  (B) for every odd 2-path (xi_a -> x_k -> xi_b), every lattice direction i
      other than the two odd endpoints satisfies
      Lambda[i][odd_a] = -Lambda[i][odd_b].

The form mutates by congruence: Lambda' = (E_eps ⊕ id_m)^T Lambda
(E_eps ⊕ id_m), where E_eps is the n x n matrix with e_ij = delta_ij for
j != k, e_kk = -1 and e_ik = max(0, -eps b_ik) for i != k. On compatible
pairs the result is independent of eps = +1/-1. E_eps is an involution and
the companion F_eps (mutable x mutable, f_kj = max(0, eps b_kj) off the
diagonal of row k) satisfies B' = E_eps B F_eps.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import Incompatible, ShapeMismatch
from .quiver import ExtQuiver, b_matrix, two_paths
from .torus import GradedShape, SkewForm

__all__ = [
    "CompatReport",
    "check_compatible",
    "require_compatible",
    "e_matrix",
    "f_matrix",
    "mutate_lambda",
]

Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class CompatReport:
    ok: bool
    mode: str
    d_entries: tuple[int, ...]
    violations: tuple[dict, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "mode": self.mode,
            "d_entries": list(self.d_entries),
            "violations": [dict(v) for v in self.violations],
        }


def _check_shapes(q: ExtQuiver, lam: SkewForm) -> None:
    if lam.shape != GradedShape(q.n, q.m):
        raise ShapeMismatch(
            f"form is for shape ({lam.shape.n}|{lam.shape.m}), "
            f"quiver has ({q.n}|{q.m})"
        )


def check_compatible(q: ExtQuiver, lam: SkewForm, mode: str = "strict") -> CompatReport:
    """Evaluate conditions (A) and (B); never raises, returns a full report."""
    if mode not in ("strict", "permissive"):
        raise ValueError(f"unknown mode {mode!r}")
    _check_shapes(q, lam)
    b = b_matrix(q)
    violations: list[dict] = []
    d_entries: list[int] = []
    for j in range(q.mutable):
        for c in range(lam.shape.dim):
            val = sum(b[i][j] * lam.rows[i][c] for i in range(q.n))
            if c == j:
                d_entries.append(val)
                col_zero = all(b[i][j] == 0 for i in range(q.n))
                if val < 0 or (val == 0 and not (mode == "permissive" and col_zero)):
                    violations.append(
                        {"kind": "diagonal", "column": j, "value": val}
                    )
            elif val != 0:
                violations.append(
                    {"kind": "offdiagonal", "column": j, "direction": c, "value": val}
                )
    for path in two_paths(q):
        a = q.n + path.odd_src
        bb = q.n + path.odd_dst
        for i in range(lam.shape.dim):
            if i in (a, bb):
                continue
            if lam.rows[i][a] != -lam.rows[i][bb]:
                violations.append(
                    {
                        "kind": "odd_pair",
                        "even": path.even,
                        "odd_src": path.odd_src,
                        "odd_dst": path.odd_dst,
                        "direction": i,
                        "values": [lam.rows[i][a], lam.rows[i][bb]],
                    }
                )
    return CompatReport(
        ok=not violations,
        mode=mode,
        d_entries=tuple(d_entries),
        violations=tuple(violations),
    )


def require_compatible(q: ExtQuiver, lam: SkewForm, mode: str = "strict") -> CompatReport:
    report = check_compatible(q, lam, mode)
    if not report.ok:
        raise Incompatible(report)
    return report


def e_matrix(b: Matrix, k: int, eps: int) -> Matrix:
    n = len(b)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if j != k:
                row.append(1 if i == j else 0)
            elif i == k:
                row.append(-1)
            else:
                row.append(max(0, -eps * b[i][k]))
        rows.append(tuple(row))
    return tuple(rows)


def f_matrix(b: Matrix, k: int, eps: int) -> Matrix:
    cols = len(b[0])
    rows = []
    for i in range(cols):
        row = []
        for j in range(cols):
            if i != k:
                row.append(1 if i == j else 0)
            elif i == j:
                row.append(-1)
            else:
                row.append(max(0, eps * b[k][j]))
        rows.append(tuple(row))
    return tuple(rows)


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(len(b))) for j in range(len(b[0])))
        for i in range(len(a))
    )


def mutate_lambda(
    lam: SkewForm,
    b: Matrix,
    k: int,
    eps: int = 1,
    transpose_on_right: bool = False,
) -> SkewForm:
    """Congruence mutation of the form in direction k.

    The default conjugation is G^T Lambda G with G = E_eps ⊕ id_m. The
    transpose_on_right variant computes G Lambda G^T instead; it is exposed
    for diagnostics because both orders appear in circulation, but the
    default is the one matching the worked mutation chains (the variant
    generally breaks compatibility with the mutated quiver).
    """
    shape = lam.shape
    n, m = shape.n, shape.m
    if len(b) != n:
        raise ShapeMismatch(f"exchange matrix has {len(b)} rows, quiver has {n}")
    e = e_matrix(b, k, eps)
    g = tuple(
        tuple(
            (e[i][j] if i < n and j < n else (1 if i == j else 0))
            for j in range(n + m)
        )
        for i in range(n + m)
    )
    gt = tuple(tuple(g[j][i] for j in range(n + m)) for i in range(n + m))
    if transpose_on_right:
        new = _mat_mul(_mat_mul(g, lam.rows), gt)
    else:
        new = _mat_mul(_mat_mul(gt, lam.rows), g)
    return SkewForm(shape, new)
