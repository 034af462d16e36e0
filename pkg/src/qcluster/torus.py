"""The based quantum supertorus: exact Laurent arithmetic with odd generators.

The ambient lattice has n even coordinates (indices 0..n-1) followed by m odd
coordinates (indices n..n+m-1). A monomial X^e is indexed by an integer
vector e; odd coordinates of e must be 0 or 1 (the odd generators square to
zero). Multiplication of the ordered basis follows

    X^e * X^f = (-1)^tau(e, f) * q^(Lambda(e, f)/2) * X^(e+f)

and is zero whenever e and f share odd support. tau(e, f) counts the
inversion pairs between the odd supports: pairs (j1, j2) with j1 in
odd-supp(e), j2 in odd-supp(f) and j1 > j2. Lambda is the integer
skew-symmetric form on the lattice.

A polynomial (SuperPoly) is a sparse dict {exponent tuple: QScalar} with no
zero values; equality of dicts is equality of elements, so the dict is a
normal form. SuperPoly instances are immutable by convention.

All Lambda-dependent operations take the form explicitly (a SkewForm), so the
same polynomial container can be multiplied under different forms; mutation
needs exactly that (the initial form for variable arithmetic, the current
form for frame twists).
"""

from __future__ import annotations

from dataclasses import dataclass

from .coeff import ONE, QScalar
from .errors import (
    DimensionMismatch,
    DivisionByZero,
    MalformedInput,
    NotDivisible,
    ShapeMismatch,
    ZeroDivisor,
)

__all__ = [
    "GradedShape",
    "SkewForm",
    "SuperPoly",
    "tau",
    "mono_mul",
    "poly_mul",
    "poly_pow",
    "factor_ordered",
    "exact_div_right",
    "expand_in_direction",
    "reassemble",
]

Vec = tuple[int, ...]


@dataclass(frozen=True)
class GradedShape:
    """Numbers of even and odd generators."""

    n: int
    m: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise MalformedInput(f"need at least one even generator, got n={self.n}")
        if self.m < 0:
            raise MalformedInput(f"negative odd count m={self.m}")

    @property
    def dim(self) -> int:
        return self.n + self.m

    def is_odd_index(self, i: int) -> bool:
        return i >= self.n

    def check_vec(self, e: Vec) -> None:
        if len(e) != self.dim:
            raise DimensionMismatch(f"vector of length {len(e)}, lattice rank {self.dim}")
        for i in range(self.n, self.dim):
            if e[i] not in (0, 1):
                raise MalformedInput(f"odd coordinate {i} must be 0 or 1, got {e[i]}")

    def basis(self, i: int) -> Vec:
        return tuple(1 if j == i else 0 for j in range(self.dim))


@dataclass(frozen=True)
class SkewForm:
    """Integer skew-symmetric bilinear form on the full lattice."""

    shape: GradedShape
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        d = self.shape.dim
        if len(self.rows) != d or any(len(r) != d for r in self.rows):
            raise ShapeMismatch(f"form must be {d}x{d}")
        for i in range(d):
            for j in range(d):
                if self.rows[i][j] != -self.rows[j][i]:
                    raise MalformedInput(
                        f"form not skew-symmetric at ({i},{j}): "
                        f"{self.rows[i][j]} vs {self.rows[j][i]}"
                    )

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.rows[ij[0]][ij[1]]

    def eval(self, e: Vec, f: Vec) -> int:
        total = 0
        for i, ei in enumerate(e):
            if ei == 0:
                continue
            row = self.rows[i]
            for j, fj in enumerate(f):
                if fj:
                    total += ei * row[j] * fj
        return total


def tau(shape: GradedShape, e: Vec, f: Vec) -> int:
    """Number of odd inversion pairs between e and f."""
    count = 0
    for j1 in range(shape.n, shape.dim):
        if e[j1] == 0:
            continue
        for j2 in range(shape.n, j1):
            if f[j2]:
                count += 1
    return count


def _odd_collision(shape: GradedShape, e: Vec, f: Vec) -> bool:
    return any(e[i] and f[i] for i in range(shape.n, shape.dim))


class SuperPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: dict[Vec, QScalar] | None = None):
        clean: dict[Vec, QScalar] = {}
        if terms:
            for e, c in terms.items():
                if not c.is_zero():
                    clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def monomial(cls, e: Vec, coeff: QScalar = ONE) -> "SuperPoly":
        return cls({tuple(e): coeff})

    @classmethod
    def zero(cls) -> "SuperPoly":
        return cls()

    @classmethod
    def one(cls, shape: GradedShape) -> "SuperPoly":
        return cls({(0,) * shape.dim: ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "SuperPoly") -> "SuperPoly":
        acc = dict(self.terms)
        for e, c in other.terms.items():
            s = acc.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                acc.pop(e, None)
            else:
                acc[e] = s
        out = SuperPoly.__new__(SuperPoly)
        out.terms = acc
        return out

    def __neg__(self) -> "SuperPoly":
        out = SuperPoly.__new__(SuperPoly)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other: "SuperPoly") -> "SuperPoly":
        return self + (-other)

    def scale(self, c: QScalar) -> "SuperPoly":
        if c.is_zero():
            return SuperPoly()
        out = SuperPoly.__new__(SuperPoly)
        out.terms = {e: t * c for e, t in self.terms.items()}
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SuperPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        items = ", ".join(f"{e}: {c.terms}" for e, c in sorted(self.terms.items()))
        return f"SuperPoly({{{items}}})"

    def sorted_terms(self) -> list[tuple[Vec, QScalar]]:
        return sorted(self.terms.items(), key=lambda t: t[0])

    def specialize_q1(self) -> "SuperPoly":
        """Send q^(1/2) to 1, keeping exact rational coefficients."""
        out: dict[Vec, QScalar] = {}
        for e, c in self.terms.items():
            v = c.at_one()
            if v != 0:
                cur = out.get(e)
                out[e] = QScalar({0: v}) if cur is None else cur + QScalar({0: v})
        return SuperPoly(out)

    def is_invertible_monomial(self, shape: GradedShape) -> bool:
        """Single term, single scalar summand, no odd part: a torus unit."""
        if len(self.terms) != 1:
            return False
        (e, c), = self.terms.items()
        if not c.is_single_term():
            return False
        return not any(e[i] for i in range(shape.n, shape.dim))


def mono_mul(lam: SkewForm, e: Vec, f: Vec) -> SuperPoly:
    """Product of two basis monomials as a (possibly zero) SuperPoly."""
    shape = lam.shape
    if _odd_collision(shape, e, f):
        return SuperPoly()
    sign = -1 if tau(shape, e, f) % 2 else 1
    coeff = QScalar.q_half(lam.eval(e, f), sign)
    total = tuple(a + b for a, b in zip(e, f))
    return SuperPoly({total: coeff})


def poly_mul(lam: SkewForm, a: SuperPoly, b: SuperPoly) -> SuperPoly:
    shape = lam.shape
    acc: dict[Vec, QScalar] = {}
    for e, ce in a.terms.items():
        for f, cf in b.terms.items():
            if _odd_collision(shape, e, f):
                continue
            sign = -1 if tau(shape, e, f) % 2 else 1
            c = (ce * cf).shift(lam.eval(e, f))
            if sign < 0:
                c = -c
            key = tuple(x + y for x, y in zip(e, f))
            cur = acc.get(key)
            c = c if cur is None else cur + c
            if c.is_zero():
                acc.pop(key, None)
            else:
                acc[key] = c
    out = SuperPoly.__new__(SuperPoly)
    out.terms = acc
    return out


def poly_pow(lam: SkewForm, a: SuperPoly, r: int) -> SuperPoly:
    if r < 0:
        raise MalformedInput("poly_pow needs r >= 0")
    acc = SuperPoly.one(lam.shape)
    for _ in range(r):
        acc = poly_mul(lam, acc, a)
    return acc


def factor_ordered(lam: SkewForm, e: Vec) -> int:
    """Half-exponent numerator f with X^e = q^(f/2) X_1^{e_1} ... X_d^{e_d}.

    f = sum over pairs l < k of e_k * e_l * Lambda[k][l]; reordering the
    ordered product of generator powers into the basis monomial picks up
    exactly this q-twist (odd coordinates being 0/1 contribute no sign here;
    the ordered product IS the basis element's normalization).
    """
    total = 0
    d = lam.shape.dim
    for k in range(d):
        ek = e[k]
        if ek == 0:
            continue
        row = lam.rows[k]
        for l in range(k):
            if e[l]:
                total += ek * e[l] * row[l]
    return total


# ---------------------------------------------------------------------------
# exact right division
# ---------------------------------------------------------------------------


def _order_key(shape: GradedShape, e: Vec) -> tuple:
    """Graded order used to pick leading terms: total even degree first, then
    even part lexicographically, then small odd degree, then odd part."""
    even = e[: shape.n]
    odd = e[shape.n:]
    return (sum(even), even, -sum(odd), odd)


def _lead(shape: GradedShape, p: SuperPoly) -> Vec:
    return max(p.terms, key=lambda e: _order_key(shape, e))


def exact_div_right(lam: SkewForm, a: SuperPoly, b: SuperPoly) -> SuperPoly:
    """Solve Q * b = a exactly in the supertorus under the form lam.

    Greedy elimination on the leading term: the divisor's leading term must
    be purely even with a one-summand scalar (a torus unit), otherwise
    ZeroDivisor. Each step produces one quotient term and strictly decreases
    the remainder's leading key; candidate quotient exponents are confined,
    per even coordinate, to [min_i(a) - max_i(b), max_i(a) - min_i(b)], so
    the loop terminates. Raises NotDivisible when the remainder cannot reach
    zero (escape of the support box or a non-exact scalar division).
    """
    shape = lam.shape
    if b.is_zero():
        raise DivisionByZero("division by the zero polynomial")
    if a.is_zero():
        return SuperPoly()

    lead_b = _lead(shape, b)
    cb = b.terms[lead_b]
    if any(lead_b[i] for i in range(shape.n, shape.dim)) or not cb.is_single_term():
        raise ZeroDivisor(
            "divisor leading term must be an invertible even monomial, "
            f"got exponent {lead_b} with {len(cb.terms)} scalar summands"
        )

    lo = []
    hi = []
    for i in range(shape.n):
        a_vals = [e[i] for e in a.terms]
        b_vals = [e[i] for e in b.terms]
        lo.append(min(a_vals) - max(b_vals))
        hi.append(max(a_vals) - min(b_vals))

    quot: dict[Vec, QScalar] = {}
    rem = a
    guard = 0
    limit = 1
    for l, h in zip(lo, hi):
        limit *= max(1, h - l + 1)
    limit = (limit * (2 ** shape.m) + 1) * max(1, len(a.terms))

    while not rem.is_zero():
        guard += 1
        if guard > limit:
            raise NotDivisible("division failed to terminate within the support bound")
        lead_r = _lead(shape, rem)
        u = tuple(x - y for x, y in zip(lead_r, lead_b))
        for i in range(shape.n):
            if not (lo[i] <= u[i] <= hi[i]):
                raise NotDivisible(f"quotient exponent {u} escapes the support bound")
        for i in range(shape.n, shape.dim):
            if u[i] not in (0, 1):
                raise NotDivisible(f"quotient exponent {u} has invalid odd part")
        # coefficient: lead_r = coeff(u) * (-1)^tau * q^(Lambda(u, lead_b)/2) * cb
        sign = -1 if tau(shape, u, lead_b) % 2 else 1
        denom = cb.shift(lam.eval(u, lead_b))
        if sign < 0:
            denom = -denom
        cu = rem.terms[lead_r].div_exact(denom)
        quot[u] = cu
        rem = rem - poly_mul(lam, SuperPoly({u: cu}), b)
    return SuperPoly(quot)


# ---------------------------------------------------------------------------
# direction expansion (left coefficients along one even generator)
# ---------------------------------------------------------------------------


def expand_in_direction(lam: SkewForm, y: SuperPoly, j: int) -> dict[int, SuperPoly]:
    """Write y = sum_r c_r * X^(r e_j) with the c_r free of coordinate j.

    Returns {r: c_r}. Each term c X^u with u_j = r contributes
    c * q^(-r Lambda(u - r e_j, e_j)/2) X^(u - r e_j) to c_r, so that
    multiplying c_r on the right by X^(r e_j) restores the term exactly.
    """
    shape = lam.shape
    if not (0 <= j < shape.n):
        raise DimensionMismatch(f"direction {j} is not an even coordinate")
    ej = shape.basis(j)
    out: dict[int, dict[Vec, QScalar]] = {}
    for u, c in y.terms.items():
        r = u[j]
        rest = tuple(x - (r if i == j else 0) for i, x in enumerate(u))
        adj = c.shift(-r * lam.eval(rest, ej))
        bucket = out.setdefault(r, {})
        cur = bucket.get(rest)
        adj = adj if cur is None else cur + adj
        if adj.is_zero():
            bucket.pop(rest, None)
        else:
            bucket[rest] = adj
    return {r: SuperPoly(t) for r, t in out.items() if t}


def reassemble(lam: SkewForm, parts: dict[int, SuperPoly], j: int) -> SuperPoly:
    """Inverse of expand_in_direction."""
    shape = lam.shape
    ej = shape.basis(j)
    acc = SuperPoly()
    for r, c in parts.items():
        mono = SuperPoly.monomial(tuple(r * x for x in ej))
        acc = acc + poly_mul(lam, c, mono)
    return acc
