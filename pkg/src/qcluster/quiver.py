"""Extended quivers: even vertices with arrow multiplicities plus odd
vertices attached through in/out incidence sets.

An ExtQuiver has n even vertices (0-based indices 0..n-1, the first
`mutable` of them mutable) and m odd vertices (0-based odd labels 0..m-1).
Even arrows are stored as a multiplicity matrix arrows[i][j] = number of
arrows from even vertex i to even vertex j; loops and even 2-cycles are
forbidden. Odd vertex a is incident to even vertex k through odd_in[k]
(a in odd_in[k] means an arrow odd_a -> even_k) and odd_out[k]
(even_k -> odd_a). For every k the sets odd_in[k] and odd_out[k] are
disjoint.

Mutation at an even vertex k:
  (0) even arrows mutate by the classical rule: for i, j != k the count
      becomes arrows[i][j] + arrows[i][k] * arrows[k][j], arrows through k
      are reversed, and even 2-cycles cancel;
  (1) when k has both incoming and outgoing odd arrows, every pre-mutation
      even target l of k inherits them: odd_in[l] |= odd_in[k],
      odd_out[l] |= odd_out[k];
  (2) odd arrows at k itself reverse: odd_in[k] and odd_out[k] swap;
  (3) opposite odd pairs created at a target cancel: any odd label now in
      both odd_in[l] and odd_out[l] is removed from both.

The admissibility predicate `is_allowed_def` evaluates the 2-path
connectivity requirement on the intermediate quiver of step (1), before the
cancellation of step (3). Evaluating after cancellation would reject
mutations whose cancelled pairs correspond to sign-opposite exchange
summands that the algebra handles exactly, and would contradict the quiver
chains the mutation formalism is built from. `is_allowed_lemma` is an
independent closed-form criterion over the incidence sets; the two agree on
the worked mutation chains but not on every abstract configuration, which is
why both are exposed (see allowedness_analysis for the per-target
breakdown used in diagnostics).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MalformedInput, MutationOnFrozen

__all__ = [
    "ExtQuiver",
    "TwoPath",
    "b_matrix",
    "two_paths",
    "mutate_quiver",
    "is_allowed_def",
    "is_allowed_lemma",
    "allowedness_analysis",
]


@dataclass(frozen=True)
class TwoPath:
    """Odd 2-path  odd_src -> even vertex -> odd_dst  (0-based labels)."""

    odd_src: int
    even: int
    odd_dst: int


@dataclass(frozen=True)
class ExtQuiver:
    n: int
    m: int
    mutable: int
    arrows: tuple[tuple[int, ...], ...]
    odd_in: tuple[frozenset[int], ...]
    odd_out: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise MalformedInput("need at least one even vertex")
        if self.m < 0:
            raise MalformedInput("negative odd vertex count")
        if not (1 <= self.mutable <= self.n):
            raise MalformedInput(
                f"mutable count {self.mutable} out of range 1..{self.n}"
            )
        if len(self.arrows) != self.n or any(len(r) != self.n for r in self.arrows):
            raise MalformedInput("arrow matrix must be n x n")
        for i in range(self.n):
            if self.arrows[i][i] != 0:
                raise MalformedInput(f"loop at even vertex {i}")
            for j in range(self.n):
                if self.arrows[i][j] < 0:
                    raise MalformedInput("negative arrow multiplicity")
                if i < j and self.arrows[i][j] and self.arrows[j][i]:
                    raise MalformedInput(f"even 2-cycle between {i} and {j}")
        if len(self.odd_in) != self.n or len(self.odd_out) != self.n:
            raise MalformedInput("odd incidence lists must have one entry per even vertex")
        for k in range(self.n):
            for a in self.odd_in[k] | self.odd_out[k]:
                if not (0 <= a < self.m):
                    raise MalformedInput(f"odd label {a} out of range 0..{self.m - 1}")
            if self.odd_in[k] & self.odd_out[k]:
                raise MalformedInput(
                    f"odd labels {sorted(self.odd_in[k] & self.odd_out[k])} both "
                    f"enter and leave even vertex {k}"
                )


def b_matrix(q: ExtQuiver) -> tuple[tuple[int, ...], ...]:
    """Signed exchange matrix, n rows by `mutable` columns:
    b[i][j] = arrows(i -> j) - arrows(j -> i)."""
    return tuple(
        tuple(q.arrows[i][j] - q.arrows[j][i] for j in range(q.mutable))
        for i in range(q.n)
    )


def two_paths(q: ExtQuiver, k: int | None = None) -> tuple[TwoPath, ...]:
    """All odd 2-paths through even vertices (or through vertex k only),
    ordered by (even vertex, source, target)."""
    vertices = range(q.n) if k is None else (k,)
    out: list[TwoPath] = []
    for v in vertices:
        for a in sorted(q.odd_in[v]):
            for b in sorted(q.odd_out[v]):
                out.append(TwoPath(a, v, b))
    return tuple(out)


def mutate_quiver(q: ExtQuiver, k: int) -> ExtQuiver:
    """Apply rules (0)-(3) at even vertex k. Pure; raises MutationOnFrozen
    for a frozen vertex index."""
    if not (0 <= k < q.mutable):
        raise MutationOnFrozen(f"vertex {k} is not mutable")
    n = q.n
    a = q.arrows

    new = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == k or j == k or i == j:
                continue
            new[i][j] = a[i][j] + a[i][k] * a[k][j]
    for i in range(n):
        if i != k:
            new[i][k] = a[k][i]
            new[k][i] = a[i][k]
    for i in range(n):
        for j in range(i + 1, n):
            c = min(new[i][j], new[j][i])
            if c:
                new[i][j] -= c
                new[j][i] -= c

    odd_in = [set(s) for s in q.odd_in]
    odd_out = [set(s) for s in q.odd_out]
    if q.odd_in[k] and q.odd_out[k]:
        for l in range(n):
            if l != k and a[k][l] > 0:
                odd_in[l] |= q.odd_in[k]
                odd_out[l] |= q.odd_out[k]
    odd_in[k], odd_out[k] = set(q.odd_out[k]), set(q.odd_in[k])
    for l in range(n):
        both = odd_in[l] & odd_out[l]
        if both:
            odd_in[l] -= both
            odd_out[l] -= both

    return ExtQuiver(
        n=n,
        m=q.m,
        mutable=q.mutable,
        arrows=tuple(tuple(r) for r in new),
        odd_in=tuple(frozenset(s) for s in odd_in),
        odd_out=tuple(frozenset(s) for s in odd_out),
    )


def is_allowed_def(q: ExtQuiver, k: int) -> bool:
    """Connectivity admissibility of mutation at k (see module docstring).

    For each pre-mutation even target l of k, the union sets
    odd_in[l] | odd_in[k] and odd_out[l] | odd_out[k] must be fully joined
    by 2-paths through l in the intermediate quiver of rule (1). When k has
    both in- and out-arrows the inherited arrows provide every missing pair;
    otherwise nothing is inherited, so k's one-sided sets must already be
    present at l.
    """
    inherits = bool(q.odd_in[k]) and bool(q.odd_out[k])
    for l in range(q.n):
        if l == k or q.arrows[k][l] == 0:
            continue
        need_in = q.odd_in[l] | q.odd_in[k]
        need_out = q.odd_out[l] | q.odd_out[k]
        if not need_in or not need_out:
            continue
        if inherits:
            continue
        if not (q.odd_in[k] <= q.odd_in[l] and q.odd_out[k] <= q.odd_out[l]):
            return False
    return True


def _lemma_conditions(q: ExtQuiver, k: int, l: int) -> dict[str, bool]:
    ik, jk = q.odd_in[k], q.odd_out[k]
    il, jl = q.odd_in[l], q.odd_out[l]
    return {
        "a": ik == il,
        "b": jk == jl,
        "c": not ik and not jk,
        "d": ik == jl and jk == il,
        "e": not il and not jl,
    }


def is_allowed_lemma(q: ExtQuiver, k: int) -> bool:
    """Closed-form admissibility over the incidence sets: every even target
    of k must satisfy one of the five recognized patterns (equal in-sets;
    equal out-sets; no odd arrows at k; crossed sets; no odd arrows at the
    target)."""
    for l in range(q.n):
        if l == k or q.arrows[k][l] == 0:
            continue
        if not any(_lemma_conditions(q, k, l).values()):
            return False
    return True


def allowedness_analysis(q: ExtQuiver, k: int) -> list[dict]:
    """Per-target breakdown of the closed-form conditions, for diagnostics
    and service error bodies. Vertices are reported 0-based here; the wire
    layer shifts them."""
    out = []
    for l in range(q.n):
        if l == k or q.arrows[k][l] == 0:
            continue
        conds = _lemma_conditions(q, k, l)
        out.append({"target": l, "conditions": conds, "satisfied": any(conds.values())})
    return out
