"""Linear systems (A, B), the feedback group, and reachability data."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .matrix import (
    DimensionError,
    Mat,
    NotInvertibleError,
    hstack,
    identity,
    invariant_factors,
    invert,
    is_invertible,
    smith_form,
    zero,
)
from .ring import ContextMismatchError, RingContext


@dataclass(frozen=True)
class LinSys:
    A: Mat
    B: Mat

    def __post_init__(self):
        if self.A.ctx != self.B.ctx:
            raise ContextMismatchError("A and B live over different rings")
        if not self.A.is_square():
            raise DimensionError(f"A must be square, got {self.A.shape}")
        if self.B.rows != self.A.rows:
            raise DimensionError(
                f"B has {self.B.rows} rows but A is {self.A.rows}x{self.A.rows}"
            )

    @classmethod
    def from_lists(cls, A, B, ctx: RingContext, m: int | None = None):
        n = len(A)
        if m is None:
            m = len(B[0]) if B else 0
        return cls(Mat(A, ctx, (n, n)), Mat(B, ctx, (n, m)))

    @property
    def ctx(self) -> RingContext:
        return self.A.ctx

    @property
    def n(self) -> int:
        return self.A.rows

    @property
    def m(self) -> int:
        return self.B.cols

    def scaled(self, e) -> "LinSys":
        return LinSys(self.A * e, self.B * e)


@dataclass(frozen=True)
class FeedbackTransform:
    """Feedback group element acting by ``(P(A + BK)P^-1, PBQ)``."""

    P: Mat
    Q: Mat
    K: Mat

    @classmethod
    def identity(cls, ctx: RingContext, n: int, m: int) -> "FeedbackTransform":
        return cls(identity(n, ctx), identity(m, ctx), zero(m, n, ctx))

    def then(self, other: "FeedbackTransform") -> "FeedbackTransform":
        """The transform that applies ``self`` first and ``other`` second."""
        return FeedbackTransform(
            other.P @ self.P,
            self.Q @ other.Q,
            self.K + self.Q @ other.K @ self.P,
        )

    def inverse(self) -> "FeedbackTransform":
        Pi = invert(self.P)
        Qi = invert(self.Q)
        return FeedbackTransform(Pi, Qi, -(Qi @ self.K @ Pi))


def combine_transforms(parts) -> FeedbackTransform:
    """Glue transforms living on orthogonal idempotents into one.

    ``parts`` is a list of ``(e, transform)`` with the ``e`` pairwise
    orthogonal idempotents summing to 1.  The result agrees with each
    transform on its own component.
    """
    P = Q = K = None
    for e, t in parts:
        if P is None:
            P, Q, K = t.P * e, t.Q * e, t.K * e
        else:
            P, Q, K = P + t.P * e, Q + t.Q * e, K + t.K * e
    return FeedbackTransform(P, Q, K)


def apply_feedback(sys: LinSys, t: FeedbackTransform) -> LinSys:
    n, m = sys.n, sys.m
    if t.P.shape != (n, n) or t.Q.shape != (m, m) or t.K.shape != (m, n):
        raise DimensionError("transform does not match system size")
    try:
        Pi = invert(t.P)
    except NotInvertibleError:
        raise NotInvertibleError("P is not invertible") from None
    if not is_invertible(t.Q):
        raise NotInvertibleError("Q is not invertible")
    return LinSys(t.P @ (sys.A + sys.B @ t.K) @ Pi, t.P @ sys.B @ t.Q)


def random_unit(rng: random.Random, ctx: RingContext) -> int:
    return ctx.join(rng.randrange(1, p) for p in ctx.primes)


def _random_invertible(rng: random.Random, ctx: RingContext, n: int, factors: int) -> Mat:
    mod = ctx.modulus
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(factors):
        if n >= 2 and rng.random() < 0.75:
            i, j = rng.sample(range(n), 2)
            c = rng.randrange(mod)
            m[i] = [(x + c * y) % mod for x, y in zip(m[i], m[j])]
        elif n >= 1:
            i = rng.randrange(n)
            u = random_unit(rng, ctx)
            m[i] = [x * u % mod for x in m[i]]
    return Mat(m, ctx, (n, n))


def random_feedback(ctx: RingContext, n: int, m: int, seed, factors: int = 20) -> FeedbackTransform:
    """Deterministic random transform; P and Q are products of elementary matrices."""
    rng = random.Random(seed)
    P = _random_invertible(rng, ctx, n, factors)
    Q = _random_invertible(rng, ctx, m, factors)
    K = Mat(
        [[rng.randrange(ctx.modulus) for _ in range(n)] for _ in range(m)], ctx, (m, n)
    )
    return FeedbackTransform(P, Q, K)


def random_system(ctx: RingContext, n: int, m: int, rng: random.Random) -> LinSys:
    mod = ctx.modulus
    return LinSys.from_lists(
        [[rng.randrange(mod) for _ in range(n)] for _ in range(n)],
        [[rng.randrange(mod) for _ in range(m)] for _ in range(n)],
        ctx,
        m,
    )


def reachability_matrix(sys: LinSys, k: int) -> Mat:
    """``[B | AB | ... | A^(k-1) B]``."""
    if not 1 <= k <= max(sys.n, 1):
        raise ValueError(f"k must lie in 1..{sys.n}, got {k}")
    blocks = [sys.B]
    for _ in range(k - 1):
        blocks.append(sys.A @ blocks[-1])
    return hstack(*blocks)


def nk_invariant_factors(sys: LinSys) -> list[tuple[int, ...]]:
    """Idempotent invariant factors of the k-step reachability matrices, k = 1..n."""
    out = []
    block = sys.B
    mats = [block]
    for _ in range(sys.n - 1):
        block = sys.A @ block
        mats.append(block)
    for k in range(1, sys.n + 1):
        out.append(invariant_factors(hstack(*mats[:k])))
    return out


def is_reachable(sys: LinSys, e=1) -> bool:
    """Reachability over ``eR``; ``e`` must be an idempotent dividing every entry."""
    if sys.n == 0:
        return True
    e = int(e) % sys.ctx.modulus
    return nk_invariant_factors(sys)[-1] == (e,) * sys.n


@dataclass(frozen=True)
class ReducedForm:
    """A system with ``B = diag(d_1..d_r) (+ zero padding)`` and row i of A orthogonal to d_i."""

    sys: LinSys
    d: tuple[int, ...]
    transform: FeedbackTransform


def reduce_form(sys: LinSys) -> ReducedForm:
    ctx = sys.ctx
    mod = ctx.modulus
    n, m = sys.n, sys.m
    sf = smith_form(sys.B)
    step1 = FeedbackTransform(sf.U, sf.V, zero(m, n, ctx))
    A1 = sf.U @ sys.A @ invert(sf.U)
    # feedback on input i replaces row i of A by (1 - d_i) * row i
    k_rows = [[0] * n for _ in range(m)]
    for i in range(len(sf.d)):
        k_rows[i] = [(-x) % mod for x in A1.entries[i]]
    K = Mat(k_rows, ctx, (m, n))
    step2 = FeedbackTransform(identity(n, ctx), identity(m, ctx), K)
    A2 = A1 + sf.D @ K
    return ReducedForm(LinSys(A2, sf.D), sf.d, step1.then(step2))
