"""Laurent certification: central elements, direction expansion membership,
and step-by-step certificates for mutation sequences.

For a compatible seed and a mutable direction j with d_j > 0, the element

    P_j^r = prod_{p=1}^{r} ( 1 + q^((1-2p) d/2) X^(-b_j)
                               + sum over odd 2-paths (a, j, b) of
                                 sigma X^(e_{n+a} + e_{n+b}) )

is built from the j-th exchange data: b_j = sum_i b_ij e_i (the signed
column embedded in the even lattice), d = d_j the compatibility diagonal
entry, sigma the odd reordering sign. P_j commutes with every X^(e_i) for
i != j; together with the identity (X_j')^r = P_j^r X^(r e_j') where
e_j' = -e_j + sum_{b_ij > 0} b_ij e_i, this certifies that powers of
one-step mutated variables stay in the initial Laurent ring: the negative
X_j-coefficients of a candidate must be right-divisible by the matching
power of P_j.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .coeff import QScalar
from .errors import MutationOnFrozen, NotAllowed, NotDivisible, ZeroDivisor
from .quiver import b_matrix, two_paths
from .seed import QuantumSeed, mutate_seed
from .torus import SkewForm, SuperPoly, exact_div_right, expand_in_direction, poly_mul, tau


__all__ = [
    "d_direction",
    "p_element",
    "divisibility_check",
    "adjacent_membership",
    "StepCertificate",
    "LaurentCertificate",
    "laurent_certify",
]


def _exchange_column(seed: QuantumSeed, j: int) -> tuple[int, ...]:
    b = b_matrix(seed.quiver)
    col = [0] * seed.shape.dim
    for i in range(seed.quiver.n):
        col[i] = b[i][j]
    return tuple(col)


def d_direction(seed: QuantumSeed, j: int) -> int:
    """gcd of the entries of Lambda applied to the embedded exchange column
    (0 for the zero column). On compatible pairs this equals the diagonal
    entry d_j of the compatibility product."""
    lam = seed.lam_init
    col = _exchange_column(seed, j)
    entries = [lam.eval(col, seed.shape.basis(i)) for i in range(seed.shape.dim)]
    g = 0
    for v in entries:
        g = gcd(g, abs(v))
    return g


def p_element(seed: QuantumSeed, j: int, r: int = 1) -> SuperPoly:
    """The r-th power of the central certifying element for direction j,
    expressed in the initial torus."""
    shape = seed.shape
    lam = seed.lam_init
    d = d_direction(seed, j)
    col = _exchange_column(seed, j)
    neg_col = tuple(-x for x in col)

    odd_sum = SuperPoly.zero()
    for path in two_paths(seed.quiver, j):
        v = [0] * shape.dim
        v[shape.n + path.odd_src] = 1
        v[shape.n + path.odd_dst] = 1
        ea = shape.basis(shape.n + path.odd_src)
        eb = shape.basis(shape.n + path.odd_dst)
        sign = -1 if tau(shape, ea, eb) % 2 else 1
        odd_sum = odd_sum + SuperPoly.monomial(tuple(v), QScalar.q_half(0, sign))

    acc = SuperPoly.one(shape)
    for p in range(1, r + 1):
        factor = (
            SuperPoly.one(shape)
            + SuperPoly.monomial(neg_col, QScalar.q_half((1 - 2 * p) * d))
            + odd_sum
        )
        acc = poly_mul(lam, acc, factor)
    return acc


def divisibility_check(seed: QuantumSeed, y: SuperPoly, j: int) -> bool:
    """Whether y lies in the integral Laurent ring of the one-step mutated
    cluster in direction j: expand y along X_j and test that each
    coefficient of X_j^r with r < 0 is right-divisible by P_j^(-r) with an
    integral quotient.

    Integrality is part of the membership being certified: rational
    coefficients make many P divisible (a constant term like 2 is a unit
    over the rationals, and the odd part is nilpotent), but membership is
    claimed over integer q-coefficients, so a quotient such as
    1/2 - 1/4 ξ1 ξ2 is a failure, not a witness.
    """
    parts = expand_in_direction(seed.lam_init, y, j)
    for r, c in sorted(parts.items()):
        if r >= 0:
            continue
        try:
            quot = exact_div_right(seed.lam_init, c, p_element(seed, j, -r))
        except (NotDivisible, ZeroDivisor):
            return False
        if not all(cf.is_integral() for cf in quot.terms.values()):
            return False
    return True


def adjacent_membership(seed: QuantumSeed, y: SuperPoly) -> dict[int, bool]:
    """divisibility_check across every mutable direction."""
    return {j: divisibility_check(seed, y, j) for j in range(seed.quiver.mutable)}


@dataclass(frozen=True)
class StepCertificate:
    vertex: int  # 0-based
    allowed: bool
    divisible: bool
    coefficients_integral: bool

    def to_json(self) -> dict:
        return {
            "vertex": self.vertex + 1,
            "allowed": self.allowed,
            "divisible": self.divisible,
            "coefficients_integral": self.coefficients_integral,
        }


@dataclass(frozen=True)
class LaurentCertificate:
    overall: bool
    sequence: tuple[int, ...]  # 0-based
    steps: tuple[StepCertificate, ...]

    def to_json(self) -> dict:
        return {
            "overall": self.overall,
            "sequence": [k + 1 for k in self.sequence],
            "steps": [s.to_json() for s in self.steps],
        }


def laurent_certify(seed: QuantumSeed, vertices: list[int] | tuple[int, ...]) -> LaurentCertificate:
    """Run the sequence, recording per-step admissibility, exact
    divisibility of the exchange element, and coefficient integrality of the
    produced variable. Stops at the first failing step; overall is true iff
    every requested step was allowed and divided exactly."""
    steps: list[StepCertificate] = []
    cur = seed
    overall = True
    for k in vertices:
        try:
            cur = mutate_seed(cur, k)
        except (NotAllowed, MutationOnFrozen):
            steps.append(StepCertificate(k, False, False, False))
            overall = False
            break
        except NotDivisible:
            steps.append(StepCertificate(k, True, False, False))
            overall = False
            break
        last = cur.trace[-1]
        steps.append(StepCertificate(k, True, True, last.integral))
    return LaurentCertificate(
        overall=overall, sequence=tuple(vertices), steps=tuple(steps)
    )
