"""Human-readable output for scalars and polynomials.

A term c * X^e is displayed as the *ordered generator word* of e preceded by
the scalar c * q^(f/2), where f = factor_ordered(lam, e): the basis monomial
X^e equals q^(f/2) times the ordered product of generator powers, so the
printed expression, read as a literal product of generators, reproduces the
element exactly.

Polynomials with a common monomial factor are printed factored:
"x1 (1 - q^{-1} ξ1 ξ2)" rather than "x1 - q^{-1} x1 ξ1 ξ2". Terms are
emitted in ascending lexicographic exponent order, so output is
deterministic.

Formats: "pretty" (x1, ξ1) and "latex" (X_1, \\xi_1).
"""

from __future__ import annotations

from fractions import Fraction

from .coeff import QScalar
from .torus import GradedShape, SkewForm, SuperPoly, factor_ordered, tau

__all__ = ["render_scalar", "render_poly", "render_variable_name"]


def _exp_str(num: int, den: int, fmt: str) -> str:
    if num % den == 0:
        body = str(num // den)
    else:
        body = f"{num}/{den}"
    if fmt == "latex" and len(body) == 1:
        return body
    return f"{{{body}}}"


def _q_power(h: int, fmt: str) -> str:
    return f"q^{_exp_str(h, 2, fmt)}"


def _frac(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def render_scalar(c: QScalar, fmt: str = "pretty") -> str:
    """Canonical scalar string, e.g. "2", "q^{-1}", "1 - q^{-1}",
    "3/2 q^{1/2}"."""
    if c.is_zero():
        return "0"
    parts: list[str] = []
    for h, r in sorted(c.terms.items()):
        if h == 0:
            body = _frac(abs(r))
        elif abs(r) == 1:
            body = _q_power(h, fmt)
        else:
            body = f"{_frac(abs(r))} {_q_power(h, fmt)}"
        if not parts:
            parts.append(body if r > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if r > 0 else f"- {body}")
    return " ".join(parts)


def render_variable_name(shape: GradedShape, i: int, fmt: str = "pretty") -> str:
    if i < shape.n:
        return f"x{i + 1}" if fmt == "pretty" else f"X_{i + 1}"
    odd = i - shape.n + 1
    return f"ξ{odd}" if fmt == "pretty" else f"\\xi_{odd}"


def _word(shape: GradedShape, e: tuple[int, ...], fmt: str) -> str:
    pieces: list[str] = []
    for i, p in enumerate(e):
        if p == 0:
            continue
        name = render_variable_name(shape, i, fmt)
        if p == 1:
            pieces.append(name)
        else:
            pieces.append(f"{name}^{_exp_str(p, 1, fmt)}")
    return " ".join(pieces)


def _signed_join(rendered: list[tuple[bool, str]]) -> str:
    out: list[str] = []
    for neg, body in rendered:
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(out)


def _term(shape: GradedShape, e: tuple[int, ...], c: QScalar, fmt: str) -> tuple[bool, str]:
    """(leading sign is negative, body) for one displayed term."""
    word = _word(shape, e, fmt)
    neg = False
    if len(c.terms) == 1:
        (h, r), = c.terms.items()
        if r < 0:
            neg = True
            c = -c
        scal = render_scalar(c, fmt)
        if not word:
            body = scal
        elif scal == "1":
            body = word
        else:
            body = f"{scal} {word}"
    else:
        scal = render_scalar(c, fmt)
        body = f"({scal}) {word}" if word else f"({scal})"
    return neg, body


def _flat(lam: SkewForm, poly: SuperPoly, fmt: str) -> str:
    shape = lam.shape
    rendered = []
    for e, c in poly.sorted_terms():
        shown = c.shift(factor_ordered(lam, e))
        rendered.append(_term(shape, e, shown, fmt))
    return _signed_join(rendered)


def render_poly(lam: SkewForm, poly: SuperPoly, fmt: str = "pretty") -> str:
    """Render under the given form (the initial form for cluster variables).

    When every exponent shares a nonzero componentwise-minimum monomial, it
    is pulled out on the left and the cofactor is parenthesized.
    """
    if poly.is_zero():
        return "0"
    shape = lam.shape
    if len(poly.terms) > 1:
        exps = list(poly.terms)
        common = tuple(min(e[i] for e in exps) for i in range(shape.dim))
        if any(common):
            rest: dict[tuple[int, ...], QScalar] = {}
            for e, c in poly.terms.items():
                v = tuple(a - b for a, b in zip(e, common))
                # c X^e = c' * X^common X^v with the twist below
                twist = lam.eval(common, v)
                sign = -1 if tau(shape, common, v) % 2 else 1
                adj = c.shift(-twist)
                rest[v] = adj if sign > 0 else -adj
            prefix_scalar = QScalar.q_half(factor_ordered(lam, common))
            neg, prefix = _term(shape, common, prefix_scalar, fmt)
            inner = _flat(lam, SuperPoly(rest), fmt)
            lead = "-" if neg else ""
            return f"{lead}{prefix} ({inner})"
    return _flat(lam, poly, fmt)
