"""Deterministic generation of randomized compatible seeds.

Template-based: each template builds a (quiver, form, mode) family with the
compatibility equations solved parametrically, randomizes the free
parameters, and the sampler rejects through check_compatible so every
emitted seed is certified in its declared mode. Sizes stay small (n <= 3,
m <= 2): the point is coverage of the exchange/mutation logic, not large
instances.
"""

from __future__ import annotations

import random

from .compat import check_compatible
from .errors import ClusterError
from .quiver import ExtQuiver, is_allowed_def
from .seed import QuantumSeed, initial_seed, mutate_seed
from .torus import GradedShape, SkewForm

__all__ = ["random_compatible_seed", "random_allowed_sequence", "random_mutation_walk"]


def _skew(shape: GradedShape, entries: dict[tuple[int, int], int]) -> SkewForm:
    d = shape.dim
    rows = [[0] * d for _ in range(d)]
    for (i, j), v in entries.items():
        rows[i][j] = v
        rows[j][i] = -v
    return SkewForm(shape, tuple(tuple(r) for r in rows))


def _decorations(rng: random.Random, m: int) -> tuple[frozenset[int], frozenset[int]]:
    """A random disjoint (in, out) pair over m odd labels."""
    ins, outs = set(), set()
    for a in range(m):
        roll = rng.randrange(4)
        if roll == 0:
            ins.add(a)
        elif roll == 1:
            outs.add(a)
    return frozenset(ins), frozenset(outs)


def _template_single(rng: random.Random) -> tuple[ExtQuiver, SkewForm, str]:
    """n = 1: no even arrows, odd pair optionally wired through x1.

    Compatibility condition on the pair (if both sides nonempty) forces the
    even-odd entries to be opposite; the diagonal entry is 0, hence
    permissive mode.
    """
    m = rng.choice([1, 2])
    shape = GradedShape(1, m)
    ins, outs = _decorations(rng, m)
    entries: dict[tuple[int, int], int] = {}
    if m == 2:
        entries[(1, 2)] = rng.randint(1, 3)
    paired = [(a, b) for a in ins for b in outs]
    if paired and m == 2:
        t = rng.choice([x for x in range(-3, 4) if x != 0])
        entries[(0, 1)] = t
        entries[(0, 2)] = -t
    else:
        for c in range(m):
            entries[(0, 1 + c)] = rng.randint(-3, 3)
    q = ExtQuiver(
        n=1, m=m, mutable=1, arrows=((0,),),
        odd_in=(ins,), odd_out=(outs,),
    )
    return q, _skew(shape, entries), "permissive"


def _template_pair(rng: random.Random) -> tuple[ExtQuiver, SkewForm, str]:
    """n = 2 with one even arrow of multiplicity w between the two mutable
    vertices; even-odd block zero, so the odd pair condition is vacuous for
    m <= 2 and the diagonal is d = (w*l, w*l)."""
    m = rng.choice([0, 1, 2])
    shape = GradedShape(2, m)
    w = rng.choice([1, 1, 2])
    forward = rng.random() < 0.5
    t = rng.randint(1, 3)
    l1 = t if forward else -t
    arrows = ((0, w), (0, 0)) if forward else ((0, 0), (w, 0))
    entries: dict[tuple[int, int], int] = {(0, 1): l1}
    if m == 2:
        entries[(2, 3)] = rng.randint(-3, 3)
    deco = [_decorations(rng, m) for _ in range(2)]
    q = ExtQuiver(
        n=2, m=m, mutable=2, arrows=arrows,
        odd_in=tuple(d[0] for d in deco),
        odd_out=tuple(d[1] for d in deco),
    )
    return q, _skew(shape, entries), "strict"


def _template_frozen(rng: random.Random) -> tuple[ExtQuiver, SkewForm, str]:
    """n = 3 with a frozen third vertex. The mutable block forces the even
    form to be supported on (1,2) only; odd columns are proportional
    (lambda[i][odd] = coeff_i * t_odd with coeff = (-r, p, w)), which solves
    the off-diagonal equations for any frozen-vertex arrows p, r."""
    m = rng.choice([0, 1, 2])
    shape = GradedShape(3, m)
    w = rng.choice([1, 2])
    forward = rng.random() < 0.5
    t = rng.randint(1, 3)
    l12 = t if forward else -t
    p = rng.randint(-2, 2)  # signed frozen arrows to x1
    r = rng.randint(-2, 2)  # signed frozen arrows to x2
    arrows = [[0, 0, 0], [0, 0, 0], [0, 0, 0]]
    if forward:
        arrows[0][1] = w
    else:
        arrows[1][0] = w
    if p > 0:
        arrows[2][0] = p
    elif p < 0:
        arrows[0][2] = -p
    if r > 0:
        arrows[2][1] = r
    elif r < 0:
        arrows[1][2] = -r
    entries: dict[tuple[int, int], int] = {(0, 1): l12}
    ts = [rng.randint(-2, 2) for _ in range(m)]
    deco = [_decorations(rng, m) for _ in range(2)] + [(frozenset(), frozenset())]
    # the odd pair condition ties decorated 2-path endpoints: t_b = -t_a
    for k in range(2):
        for a in deco[k][0]:
            for b in deco[k][1]:
                ts[b] = -ts[a]
    coeff = (-r, p, w) if forward else (r, -p, w)
    for c in range(m):
        for i in range(3):
            if coeff[i] * ts[c]:
                entries[(i, 3 + c)] = coeff[i] * ts[c]
    if m == 2:
        entries[(3, 4)] = rng.randint(-2, 2)
    q = ExtQuiver(
        n=3, m=m, mutable=2,
        arrows=tuple(tuple(row) for row in arrows),
        odd_in=tuple(d[0] for d in deco),
        odd_out=tuple(d[1] for d in deco),
    )
    return q, _skew(shape, entries), "strict"


_TEMPLATES = (_template_single, _template_pair, _template_frozen)


def random_compatible_seed(rng: random.Random, max_tries: int = 200) -> QuantumSeed:
    """A fresh certified-compatible seed from a random template."""
    for _ in range(max_tries):
        builder = rng.choice(_TEMPLATES)
        q, lam, mode = builder(rng)
        report = check_compatible(q, lam, mode)
        if report.ok:
            return initial_seed(q, lam, mode)
    raise ClusterError("no compatible seed found (template bug)")


def random_allowed_sequence(
    rng: random.Random, seed: QuantumSeed, max_len: int = 8
) -> tuple[QuantumSeed, list[int]]:
    """Walk random allowed mutable vertices, mutating as we go; returns the
    final seed and the 0-based vertex sequence actually performed."""
    length = rng.randint(1, max_len)
    performed: list[int] = []
    cur = seed
    for _ in range(length):
        options = [
            k for k in range(cur.quiver.mutable) if is_allowed_def(cur.quiver, k)
        ]
        if not options:
            break
        k = rng.choice(options)
        cur = mutate_seed(cur, k)
        performed.append(k)
    return cur, performed


def random_mutation_walk(
    rng: random.Random, max_len: int = 8
) -> tuple[QuantumSeed, QuantumSeed, list[int]]:
    """(initial seed, final seed, performed sequence) in one call."""
    start = random_compatible_seed(rng)
    final, performed = random_allowed_sequence(rng, start, max_len)
    return start, final, performed
