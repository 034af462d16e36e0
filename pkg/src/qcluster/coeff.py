"""Exact scalar arithmetic in the Laurent ring Q[q^(1/2), q^(-1/2)].

A scalar is a finite sum  sum_h  c_h * q^(h/2)  with h ranging over integers
(the *numerator of the half-exponent*) and c_h a rational number. The
representation is a sparse dict {h: Fraction} with no zero values; two
scalars are equal iff their dicts are equal, so the dict is a normal form.

QScalar instances are immutable by convention: no method mutates self, and
the internal dict must never be written to after construction.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DivisionByZero, MalformedInput, NotDivisible

__all__ = ["QScalar", "ZERO", "ONE"]


class QScalar:
    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, Fraction] | None = None):
        clean: dict[int, Fraction] = {}
        if terms:
            for h, c in terms.items():
                c = Fraction(c)
                if c != 0:
                    clean[int(h)] = c
        self.terms = clean

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_int(cls, value: int | Fraction) -> "QScalar":
        return cls({0: Fraction(value)})

    @classmethod
    def q_half(cls, h: int, coeff: int | Fraction = 1) -> "QScalar":
        """coeff * q^(h/2), h being the half-exponent numerator."""
        return cls({h: Fraction(coeff)})

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_integral(self) -> bool:
        """True iff every coefficient is an integer (lies in Z[q^(1/2), q^(-1/2)])."""
        return all(c.denominator == 1 for c in self.terms.values())

    def is_single_term(self) -> bool:
        return len(self.terms) == 1

    # -- ring operations --------------------------------------------------

    def __add__(self, other: "QScalar") -> "QScalar":
        acc = dict(self.terms)
        for h, c in other.terms.items():
            s = acc.get(h, Fraction(0)) + c
            if s == 0:
                acc.pop(h, None)
            else:
                acc[h] = s
        out = QScalar.__new__(QScalar)
        out.terms = acc
        return out

    def __neg__(self) -> "QScalar":
        out = QScalar.__new__(QScalar)
        out.terms = {h: -c for h, c in self.terms.items()}
        return out

    def __sub__(self, other: "QScalar") -> "QScalar":
        return self + (-other)

    def __mul__(self, other: "QScalar") -> "QScalar":
        acc: dict[int, Fraction] = {}
        for h1, c1 in self.terms.items():
            for h2, c2 in other.terms.items():
                h = h1 + h2
                s = acc.get(h, Fraction(0)) + c1 * c2
                if s == 0:
                    acc.pop(h, None)
                else:
                    acc[h] = s
        out = QScalar.__new__(QScalar)
        out.terms = acc
        return out

    def scale(self, r: int | Fraction) -> "QScalar":
        r = Fraction(r)
        if r == 0:
            return QScalar()
        out = QScalar.__new__(QScalar)
        out.terms = {h: c * r for h, c in self.terms.items()}
        return out

    def shift(self, h: int) -> "QScalar":
        """Multiply by q^(h/2)."""
        if h == 0:
            return self
        out = QScalar.__new__(QScalar)
        out.terms = {k + h: c for k, c in self.terms.items()}
        return out

    def div_exact(self, other: "QScalar") -> "QScalar":
        """Exact division in Q[q^(1/2), q^(-1/2)].

        Shifts both operands so they become ordinary polynomials in
        t = q^(1/2) with nonzero constant term, long-divides over Q, and
        requires the remainder to vanish. Raises NotDivisible otherwise,
        DivisionByZero for a zero divisor.
        """
        if other.is_zero():
            raise DivisionByZero("scalar division by zero")
        if self.is_zero():
            return QScalar()
        lo_a = min(self.terms)
        lo_b = min(other.terms)
        deg_a = max(self.terms) - lo_a
        deg_b = max(other.terms) - lo_b
        if deg_a < deg_b:
            raise NotDivisible("divisor has higher degree spread")
        # dense coefficient lists in t, index = exponent of t
        a = [Fraction(0)] * (deg_a + 1)
        for h, c in self.terms.items():
            a[h - lo_a] = c
        b = [Fraction(0)] * (deg_b + 1)
        for h, c in other.terms.items():
            b[h - lo_b] = c
        quot = [Fraction(0)] * (deg_a - deg_b + 1)
        rem = list(a)
        lead_b = b[deg_b]
        for k in range(deg_a - deg_b, -1, -1):
            f = rem[k + deg_b] / lead_b
            quot[k] = f
            if f != 0:
                for i, bc in enumerate(b):
                    rem[k + i] -= f * bc
        if any(rem):
            raise NotDivisible("nonzero remainder in scalar division")
        shift = lo_a - lo_b
        return QScalar({k + shift: c for k, c in enumerate(quot) if c != 0})

    def at_one(self) -> Fraction:
        """Evaluate at q^(1/2) = 1 (the classical specialization)."""
        return sum(self.terms.values(), Fraction(0))

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QScalar):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"QScalar({self.terms!r})"

    # -- wire format -------------------------------------------------------

    def to_json(self) -> dict[str, str]:
        """{"<half-exponent numerator>": "p" or "p/r"} with exact strings."""
        return {str(h): _frac_str(c) for h, c in sorted(self.terms.items())}

    @classmethod
    def from_json(cls, data: object) -> "QScalar":
        if not isinstance(data, dict):
            raise MalformedInput(f"scalar must be an object, got {type(data).__name__}")
        terms: dict[int, Fraction] = {}
        for key, val in data.items():
            try:
                h = int(key)
            except (TypeError, ValueError):
                raise MalformedInput(f"bad half-exponent key {key!r}") from None
            if not isinstance(val, str):
                raise MalformedInput(f"coefficient for {key!r} must be a string")
            try:
                c = Fraction(val)
            except (ValueError, ZeroDivisionError):
                raise MalformedInput(f"bad coefficient {val!r}") from None
            terms[h] = c
        return cls(terms)


def _frac_str(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


ZERO = QScalar()
ONE = QScalar.from_int(1)
