"""The two built-in worked configurations used throughout the tests.

ex1: one mutable even vertex, two odd vertices wired through it
(ξ1 -> x1 -> ξ2), no even arrows. The exchange matrix is zero, so strict
compatibility fails (d_1 = 0) and the pair is certified in permissive mode.

ex2: two mutable even vertices with a single arrow x1 -> x2, one odd pair
wired through x1 (ξ1 -> x1 -> ξ2). Strictly compatible with d = (l1, l1).
"""

from __future__ import annotations

from .quiver import ExtQuiver
from .seed import QuantumSeed, initial_seed
from .torus import GradedShape, SkewForm

__all__ = [
    "ex1_quiver",
    "ex1_lambda",
    "ex1_seed",
    "ex1_problem",
    "ex2_quiver",
    "ex2_lambda",
    "ex2_seed",
    "ex2_problem",
]


def ex1_quiver() -> ExtQuiver:
    return ExtQuiver(
        n=1,
        m=2,
        mutable=1,
        arrows=((0,),),
        odd_in=(frozenset({0}),),
        odd_out=(frozenset({1}),),
    )


def ex1_lambda(l1: int = 1, l3: int = 2) -> SkewForm:
    return SkewForm(
        GradedShape(1, 2),
        (
            (0, l1, -l1),
            (-l1, 0, l3),
            (l1, -l3, 0),
        ),
    )


def ex1_seed(l1: int = 1, l3: int = 2) -> QuantumSeed:
    return initial_seed(ex1_quiver(), ex1_lambda(l1, l3), mode="permissive")


def ex1_problem(l1: int = 1, l3: int = 2) -> dict:
    from .serialize import lambda_to_json, quiver_to_json

    return {
        "quiver": quiver_to_json(ex1_quiver()),
        "lambda": lambda_to_json(ex1_lambda(l1, l3)),
        "mode": "permissive",
    }


def ex2_quiver() -> ExtQuiver:
    return ExtQuiver(
        n=2,
        m=2,
        mutable=2,
        arrows=((0, 1), (0, 0)),
        odd_in=(frozenset({0}), frozenset()),
        odd_out=(frozenset({1}), frozenset()),
    )


def ex2_lambda(l1: int = 1, l2: int = 2) -> SkewForm:
    return SkewForm(
        GradedShape(2, 2),
        (
            (0, l1, 0, 0),
            (-l1, 0, 0, 0),
            (0, 0, 0, l2),
            (0, 0, -l2, 0),
        ),
    )


def ex2_seed(l1: int = 1, l2: int = 2) -> QuantumSeed:
    return initial_seed(ex2_quiver(), ex2_lambda(l1, l2), mode="strict")


def ex2_problem(l1: int = 1, l2: int = 2) -> dict:
    from .serialize import lambda_to_json, quiver_to_json

    return {
        "quiver": quiver_to_json(ex2_quiver()),
        "lambda": lambda_to_json(ex2_lambda(l1, l2)),
        "mode": "strict",
    }
