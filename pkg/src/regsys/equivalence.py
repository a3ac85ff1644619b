"""Deciding feedback equivalence.

The default decision compares canonical invariants.  Two independent
checks sit alongside it: the reachability-module test for reachable
systems, and brute-force orbit enumeration for tiny rings and sizes.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _kernels_py, kernels
from .canonical import canonical_decomposition
from .matrix import DimensionError, Mat
from .ring import ContextMismatchError, RingContext
from .system import (
    FeedbackTransform,
    LinSys,
    apply_feedback,
    is_reachable,
    nk_invariant_factors,
)

ORBIT_LIMIT = 10**7


class OrbitTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class EquivalenceVerdict:
    equivalent: bool
    method: str
    witness: FeedbackTransform | None = None

    def as_dict(self):
        out = {"equivalent": self.equivalent, "method": self.method}
        if self.witness is not None:
            out["witness"] = {
                "P": self.witness.P.tolist(),
                "Q": self.witness.Q.tolist(),
                "K": self.witness.K.tolist(),
            }
        return out


def _check_pair(s1: LinSys, s2: LinSys):
    if s1.ctx != s2.ctx:
        raise ContextMismatchError(
            f"systems over Z/{s1.ctx.modulus} and Z/{s2.ctx.modulus}"
        )
    if (s1.n, s1.m) != (s2.n, s2.m):
        raise DimensionError(
            f"sizes {(s1.n, s1.m)} and {(s2.n, s2.m)} differ"
        )


def feedback_equivalent(s1: LinSys, s2: LinSys, witness: bool = False) -> EquivalenceVerdict:
    """Compare canonical invariants; optionally build ``W`` with ``W(s1) == s2``."""
    _check_pair(s1, s2)
    d1 = canonical_decomposition(s1, track=witness)
    d2 = canonical_decomposition(s2, track=witness)
    same = d1.invariants() == d2.invariants()
    if not (same and witness):
        return EquivalenceVerdict(same, "canonical")
    w = d1.transform().then(d2.transform().inverse())
    if apply_feedback(s1, w) != s2:
        raise ArithmeticError("assembled witness does not map s1 to s2")
    return EquivalenceVerdict(True, "canonical", w)


def reachable_equivalent(s1: LinSys, s2: LinSys) -> bool:
    """Equivalence of reachable systems via the k-step reachability invariants."""
    _check_pair(s1, s2)
    if not (is_reachable(s1) and is_reachable(s2)):
        raise ValueError("both systems must be reachable")
    return nk_invariant_factors(s1) == nk_invariant_factors(s2)


def _flat(m: Mat):
    return [x for r in m.entries for x in r]


def feedback_generators(ctx: RingContext, n: int, m: int):
    """Generators of the feedback group as flat ``(P, P^-1, Q, K)`` tuples.

    Row transvections and unit scalings for P and for Q, and every
    single-entry K.  Over a finite ring the semigroup they generate is the
    whole group.
    """
    mod = ctx.modulus
    units = [u for u in ctx.units() if u != 1]

    def eye(k):
        return [1 if i == j else 0 for i in range(k) for j in range(k)]

    def elementary(k):
        out = []
        for i in range(k):
            for j in range(k):
                if i == j:
                    continue
                for c in range(1, mod):
                    g = eye(k)
                    g[i * k + j] = c
                    gi = eye(k)
                    gi[i * k + j] = (-c) % mod
                    out.append((g, gi))
        for i in range(k):
            for u in units:
                g = eye(k)
                g[i * k + i] = u
                gi = eye(k)
                gi[i * k + i] = pow(u, -1, mod)
                out.append((g, gi))
        return out

    gens = []
    zero_k = [0] * (m * n)
    for g, gi in elementary(n):
        gens.append((g, gi, eye(m), zero_k))
    for g, _ in elementary(m):
        gens.append((eye(n), eye(n), g, zero_k))
    for idx in range(m * n):
        for c in range(1, mod):
            k = list(zero_k)
            k[idx] = c
            gens.append((eye(n), eye(n), eye(m), k))
    return gens


def _state_count(ctx: RingContext, n: int, m: int) -> int:
    return ctx.modulus ** (n * n + n * m)


def encode_system(sys: LinSys) -> int:
    mod = sys.ctx.modulus
    code = 0
    for x in reversed(_flat(sys.A) + _flat(sys.B)):
        code = code * mod + x
    return code


def decode_system(code: int, ctx: RingContext, n: int, m: int) -> LinSys:
    mod = ctx.modulus
    digits = []
    for _ in range(n * n + n * m):
        code, r = divmod(code, mod)
        digits.append(r)
    a = [digits[i * n:(i + 1) * n] for i in range(n)]
    b = [digits[n * n + i * m:n * n + (i + 1) * m] for i in range(n)]
    return LinSys(Mat(a, ctx, (n, n)), Mat(b, ctx, (n, m)))


def orbit_bfs(sys: LinSys, limit: int = ORBIT_LIMIT) -> frozenset:
    """The full feedback orbit of ``sys``, by breadth-first search."""
    ctx, n, m = sys.ctx, sys.n, sys.m
    if _state_count(ctx, n, m) > limit:
        raise OrbitTooLarge(
            f"Z/{ctx.modulus} with size {(n, m)} has more than {limit} systems"
        )
    mod = ctx.modulus
    gens = feedback_generators(ctx, n, m)
    start = tuple(_flat(sys.A) + _flat(sys.B))
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for s in frontier:
            for g in gens:
                t = tuple(_kernels_py.act(s, g, mod, n, m))
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    out = set()
    for s in seen:
        a = [s[i * n:(i + 1) * n] for i in range(n)]
        b = [s[n * n + i * m:n * n + (i + 1) * m] for i in range(n)]
        out.add(LinSys(Mat(a, ctx, (n, n)), Mat(b, ctx, (n, m))))
    return frozenset(out)


def orbit_partition(ctx: RingContext, n: int, m: int, limit: int = ORBIT_LIMIT, backend=None):
    """Orbit label of every system of size (n, m), indexed by :func:`encode_system`."""
    if _state_count(ctx, n, m) > limit:
        raise OrbitTooLarge(
            f"Z/{ctx.modulus} with size {(n, m)} has more than {limit} systems"
        )
    k = backend or kernels.for_modulus(ctx.modulus)
    return k.orbit_labels(ctx.modulus, n, m, feedback_generators(ctx, n, m))
