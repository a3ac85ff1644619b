"""Feedback canonical forms over Z/n.

The recursion splits the ring along idempotents read off the Smith form of
B, peels off one layer of inputs at a time, and reassembles the pieces into
a strong Kalman form whose reachable part is a Brunovski form and whose
unreachable part is a Frobenius form.  With ``track=True`` every component
also carries the feedback transform that produces it, so the output can be
checked independently.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .matrix import (
    Mat,
    block_compose,
    block_diag,
    identity,
    invariant_factors,
    invert,
    permutation_matrix,
    vstack,
    zero,
)
from .ring import RingContext, RingElement
from .similarity import similarity_form
from .system import (
    FeedbackTransform,
    LinSys,
    apply_feedback,
    combine_transforms,
    reachability_matrix,
    reduce_form,
)


def idempotent_family(d, e=1, ctx: RingContext | None = None) -> list[int]:
    """Orthogonal idempotents ``e - d_1, d_1(e - d_2), ..., d_r`` summing to ``e``.

    Zero members are kept so that position ``i`` always matches ``d_i``.
    """
    if ctx is None:
        if not isinstance(e, RingElement):
            raise TypeError("pass a RingElement or an explicit RingContext")
        ctx = e.context
    d = [int(x) for x in d]
    e = int(e)
    n = ctx.modulus
    for i, di in enumerate(d):
        if di * di % n != di or di * e % n != di:
            raise ValueError(f"d_{i + 1} = {di} is not an idempotent below {e}")
        if i and d[i - 1] * di % n != di:
            raise ValueError(f"d_{i} = {d[i - 1]} does not divide d_{i + 1} = {di}")
    if not d:
        return [e % n]
    fam = [(e - d[0]) % n]
    for i in range(len(d) - 1):
        fam.append(d[i] * (e - d[i + 1]) % n)
    fam.append(d[-1])
    return fam


def lift_indices(inner, m: int) -> tuple[int, ...]:
    """Controllability indices after adding one layer of ``m`` inputs."""
    inner = [k for k in inner if k]
    if len(inner) > m:
        raise ValueError(f"{len(inner)} chains cannot be driven by {m} inputs")
    padded = inner + [0] * (m - len(inner))
    return tuple(sorted((k + 1 for k in padded), reverse=True))


def brunovski_block(indices, m: int, ctx: RingContext, e=1) -> tuple[Mat, Mat]:
    """Brunovski pair for the given chain lengths, scaled by ``e``."""
    indices = list(indices)
    if any(k <= 0 for k in indices):
        raise ValueError(f"indices must be positive, got {indices}")
    if indices != sorted(indices, reverse=True):
        raise ValueError(f"indices must be non-increasing, got {indices}")
    if len(indices) > m:
        raise ValueError(f"{len(indices)} chains need at least that many inputs, m={m}")
    e = int(e) % ctx.modulus
    size = sum(indices)
    A = [[0] * size for _ in range(size)]
    B = [[0] * m for _ in range(size)]
    off = 0
    for j, k in enumerate(indices):
        B[off][j] = e
        for t in range(k - 1):
            A[off + t + 1][off + t] = e
        off += k
    return Mat(A, ctx, (size, size)), Mat(B, ctx, (size, m))


@dataclass(frozen=True)
class CanonicalComponent:
    e: RingElement
    kronecker_indices: tuple[int, ...]
    A_hat: Mat
    B_hat: Mat
    C_hat: Mat
    transform: FeedbackTransform | None = field(default=None, compare=False, repr=False)
    # the component in the layout the recursion emits, before similarity
    # normalization and before renumbering states into Brunovski order
    raw: LinSys | None = field(default=None, compare=False, repr=False)

    @property
    def m(self) -> int:
        return self.B_hat.cols

    def system(self) -> LinSys:
        """``(A_hat (+) C_hat, [B_hat; 0])`` over the full state space."""
        ctx = self.A_hat.ctx
        A = block_diag(self.A_hat, self.C_hat)
        B = vstack(self.B_hat, zero(self.C_hat.rows, self.m, ctx))
        return LinSys(A, B)

    def invariant(self):
        return (self.e.value, self.kronecker_indices, self.C_hat.entries)


@dataclass(frozen=True)
class InvariantSummary:
    """Idempotents, controllability indices and similarity blocks, in canonical order."""

    modulus: int
    entries: tuple

    def as_dict(self):
        return {
            "modulus": self.modulus,
            "components": [
                {
                    "idempotent": e,
                    "kronecker_indices": list(k),
                    "C_hat": [list(r) for r in c],
                }
                for e, k, c in self.entries
            ],
        }


@dataclass(frozen=True)
class CanonicalDecomposition:
    components: tuple[CanonicalComponent, ...]
    context: RingContext
    n: int
    m: int

    def __post_init__(self):
        mod = self.context.modulus
        es = [c.e.value for c in self.components]
        if es != sorted(es):
            raise ValueError("components must be sorted by idempotent")
        for i, a in enumerate(es):
            for b in es[i + 1:]:
                if a * b % mod:
                    raise ValueError(f"idempotents {a} and {b} are not orthogonal")

    @property
    def total(self) -> int:
        return sum(c.e.value for c in self.components) % self.context.modulus

    def invariants(self) -> InvariantSummary:
        return invariants_of(self)

    def canonical_system(self) -> LinSys:
        """Sum of the component systems: the canonical representative of the orbit."""
        ctx = self.context
        A = zero(self.n, self.n, ctx)
        B = zero(self.n, self.m, ctx)
        for c in self.components:
            s = c.system()
            A = A + s.A
            B = B + s.B
        return LinSys(A, B)

    def transform(self) -> FeedbackTransform:
        """One transform taking the input system to :meth:`canonical_system`."""
        if any(c.transform is None for c in self.components):
            raise ValueError("decomposition was computed without track=True")
        return combine_transforms([(c.e.value, c.transform) for c in self.components])


def invariants_of(dec: CanonicalDecomposition) -> InvariantSummary:
    return InvariantSummary(
        dec.context.modulus, tuple(c.invariant() for c in dec.components)
    )


@dataclass
class _Piece:
    e: int
    kappa: tuple
    C: Mat
    T: FeedbackTransform | None = None
    raw_A: Mat | None = None
    raw_B: Mat | None = None


def _decompose(A: Mat, B: Mat, e: int, track: bool, depth: int, limit: int):
    if depth > limit:
        raise AssertionError(f"recursion depth {depth} exceeds state dimension {limit}")
    ctx = A.ctx
    n, m = A.rows, B.cols
    red = reduce_form(LinSys(A, B))
    A1, B1 = red.sys.A, red.sys.B
    r = len(red.d)
    pieces = []
    for i, ei in enumerate(idempotent_family(red.d, e, ctx)):
        if ei == 0:
            continue
        eA = A1 * ei
        eB = B1 * ei
        if eB.is_zero():
            C, S = similarity_form(eA, ei, track)
            piece = _Piece(ei, (), C)
            if track:
                piece.T = red.transform.then(
                    FeedbackTransform(S, identity(m, ctx), zero(m, n, ctx))
                )
                piece.raw_A, piece.raw_B = eA, eB
            pieces.append(piece)
            continue
        if i == r == n:
            piece = _Piece(ei, (1,) * n, zero(0, 0, ctx))
            if track:
                piece.T = red.transform
                piece.raw_A, piece.raw_B = eA, eB
            pieces.append(piece)
            continue
        Ai = eA.submatrix(i, n, i, n)
        Bi = eA.submatrix(i, n, 0, i)
        for sub in _decompose(Ai, Bi, ei, track, depth + 1, limit):
            pieces.append(_lift(sub, i, LinSys(A1, B1), red.transform, track))
    if not pieces:
        raise ValueError("idempotent e must be nonzero")
    return pieces


def _lift(sub: _Piece, i: int, reduced: LinSys, T0, track: bool) -> _Piece:
    """Re-embed a piece of the (n-i, i) subsystem into the (n, m) system."""
    ctx = reduced.ctx
    n, m = reduced.n, reduced.m
    f = sub.e
    kappa = [k for k in sub.kappa if k]
    lam = lift_indices(kappa, i)
    piece = _Piece(f, lam, sub.C)
    if not track:
        return piece

    nb = n - i
    P1, Q1, K1 = sub.T.P, sub.T.Q, sub.T.K
    Ii, Inb, Im = identity(i, ctx), identity(nb, ctx), identity(m, ctx)
    zK = zero(m, n, ctx)
    cur = reduced.scaled(f)

    # move the subsystem's feedback into the state change; compensate the
    # top rows it disturbs with feedback on the first i inputs
    t1 = FeedbackTransform(
        block_compose([[Ii, -K1], [zero(nb, i, ctx), Inb]]), Im, zK
    )
    cur = apply_feedback(cur, t1)
    k_rows = [[(-x) % ctx.modulus for x in cur.A.entries[row]] for row in range(i)]
    k_rows += [[0] * n for _ in range(m - i)]
    t2 = FeedbackTransform(identity(n, ctx), Im, Mat(k_rows, ctx, (m, n)))
    t3 = FeedbackTransform(block_diag(Ii, P1), Im, zK)
    t4 = FeedbackTransform(
        block_diag(invert(Q1), Inb), block_diag(Q1, identity(m - i, ctx)), zK
    )

    order = []
    off = i
    chains = []
    for j in range(i):
        k = kappa[j] if j < len(kappa) else 0
        chains.append([j] + list(range(off, off + k)))
        off += k
    chains.sort(key=len, reverse=True)
    for ch in chains:
        order.extend(ch)
    order.extend(range(off, n))
    t5 = FeedbackTransform(permutation_matrix(order, ctx), Im, zK)

    piece.T = T0.then(t1).then(t2).then(t3).then(t4).then(t5)
    piece.raw_A = block_compose(
        [[zero(i, i, ctx), zero(i, nb, ctx)], [sub.raw_B, sub.raw_A]]
    )
    piece.raw_B = block_compose(
        [[identity(i, ctx) * f, zero(i, m - i, ctx)],
         [zero(nb, i, ctx), zero(nb, m - i, ctx)]]
    )
    return piece


def canonical_decomposition(sys: LinSys, e=1, track: bool = False) -> CanonicalDecomposition:
    """Split ``sys`` into components in strong Kalman / Brunovski / Frobenius form.

    ``e`` is the unit of the ring the system lives over (an idempotent; all
    entries must be multiples of it).  With ``track`` each component records
    a transform taking ``e_k * sys`` to ``component.system()`` exactly, plus
    the unnormalized recursion output in ``component.raw``.
    """
    ctx = sys.ctx
    mod = ctx.modulus
    e = int(e) % mod
    if e == 0 or e * e % mod != e:
        raise ValueError(f"{e} is not a nonzero idempotent of Z/{mod}")
    if not (sys.A.is_multiple_of(e) and sys.B.is_multiple_of(e)):
        raise ValueError(f"system entries are not all multiples of {e}")
    pieces = _decompose(sys.A, sys.B, e, track, 0, max(sys.n, 1))
    comps = []
    for p in sorted(pieces, key=lambda q: q.e):
        A_hat, B_hat = brunovski_block(p.kappa, sys.m, ctx, p.e)
        comps.append(CanonicalComponent(
            RingElement(p.e, ctx),
            tuple(p.kappa),
            A_hat,
            B_hat,
            p.C,
            p.T,
            LinSys(p.raw_A, p.raw_B) if track else None,
        ))
    return CanonicalDecomposition(tuple(comps), ctx, sys.n, sys.m)


def algorithm_output(sys: LinSys, e=1) -> list[tuple[int, Mat, Mat]]:
    """The list ``[e_k, A_k, B_k]`` exactly as the recursion emits it.

    Unreachable blocks are left as the projected matrix rather than a
    similarity normal form and states are not renumbered into chains.
    """
    dec = canonical_decomposition(sys, e, track=True)
    return [(c.e.value, c.raw.A, c.raw.B) for c in dec.components]


def single_input_canonical(sys: LinSys):
    """Controller-type canonical form of a single-input system.

    Returns ``(A_tilde, B_tilde, d)`` where ``d`` lists all ``n`` idempotents
    ``d_1 | ... | d_n`` (trailing ones may be zero), ``B_tilde = d_1 e_1``
    and ``A_tilde`` carries ``d_2..d_n`` on the subdiagonal plus the
    similarity blocks of the unreachable parts.
    """
    if sys.m != 1:
        raise ValueError(f"single-input form needs m = 1, got m = {sys.m}")
    ctx = sys.ctx
    mod = ctx.modulus
    dec = canonical_decomposition(sys)
    canon = dec.canonical_system()
    d = []
    for j in range(1, sys.n + 1):
        d.append(sum(
            c.e.value for c in dec.components
            if c.kronecker_indices and c.kronecker_indices[0] >= j
        ) % mod)
    expected = invariant_factors(reachability_matrix(sys, sys.n))
    if tuple(x for x in d if x) != expected:
        raise ArithmeticError(
            f"chain {d} disagrees with reachability invariant factors {expected}"
        )
    return canon.A, canon.B, tuple(d)
