"""Dense matrices over Z/n and the idempotent Smith form."""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .ring import ContextMismatchError, RingContext, RingElement


class DimensionError(ValueError):
    pass


class NotInvertibleError(ValueError):
    pass


def _scalar(c, ctx: RingContext) -> int:
    if isinstance(c, RingElement):
        if c.context != ctx:
            raise ContextMismatchError(
                f"Z/{c.context.modulus} scalar on Z/{ctx.modulus} matrix"
            )
        return c.value
    return int(c) % ctx.modulus


class Mat:
    """Immutable dense matrix of canonical residues."""

    __slots__ = ("rows", "cols", "ctx", "entries", "_hash")

    def __init__(self, entries, ctx: RingContext, shape=None):
        n = ctx.modulus
        data = tuple(tuple(int(x) % n for x in row) for row in entries)
        if shape is None:
            rows = len(data)
            cols = len(data[0]) if rows else 0
        else:
            rows, cols = shape
        if len(data) != rows or any(len(r) != cols for r in data):
            raise DimensionError(f"entries do not form a {rows}x{cols} matrix")
        self.rows = rows
        self.cols = cols
        self.ctx = ctx
        self.entries = data
        self._hash = None

    @classmethod
    def _raw(cls, data, ctx, rows, cols):
        # trusted constructor: data already reduced and shaped
        obj = cls.__new__(cls)
        obj.rows = rows
        obj.cols = cols
        obj.ctx = ctx
        obj.entries = data
        obj._hash = None
        return obj

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __repr__(self):
        return f"Mat({[list(r) for r in self.entries]}, mod={self.ctx.modulus})"

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return (
            self.ctx == other.ctx
            and self.shape == other.shape
            and self.entries == other.entries
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx.modulus, self.rows, self.cols, self.entries))
        return self._hash

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def tolist(self):
        return [list(r) for r in self.entries]

    def _check(self, other: "Mat"):
        if self.ctx != other.ctx:
            raise ContextMismatchError(
                f"Z/{self.ctx.modulus} vs Z/{other.ctx.modulus}"
            )

    def __add__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return mat_add(self, other)

    def __sub__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return mat_add(self, scalar_mul(-1, other))

    def __neg__(self):
        return scalar_mul(-1, self)

    def __matmul__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return mat_mul(self, other)

    def __mul__(self, c):
        if isinstance(c, Mat):
            return NotImplemented
        return scalar_mul(c, self)

    __rmul__ = __mul__

    @property
    def T(self):
        return Mat._raw(
            tuple(zip(*self.entries)) if self.rows else tuple(() for _ in range(self.cols)),
            self.ctx,
            self.cols,
            self.rows,
        )

    def is_square(self):
        return self.rows == self.cols

    def is_zero(self):
        return not any(any(r) for r in self.entries)

    def is_multiple_of(self, e: int) -> bool:
        """True when every entry lies in the ideal generated by idempotent ``e``."""
        n = self.ctx.modulus
        return all(x * e % n == x for r in self.entries for x in r)

    def reduce(self, p: int):
        return [[x % p for x in r] for r in self.entries]

    def row(self, i):
        return self.entries[i]

    def submatrix(self, r0, r1, c0, c1) -> "Mat":
        data = tuple(r[c0:c1] for r in self.entries[r0:r1])
        return Mat._raw(data, self.ctx, r1 - r0, c1 - c0)


def identity(n: int, ctx: RingContext) -> Mat:
    return Mat._raw(
        tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)),
        ctx, n, n,
    )


def zero(rows: int, cols: int, ctx: RingContext) -> Mat:
    return Mat._raw(tuple((0,) * cols for _ in range(rows)), ctx, rows, cols)


def mat_mul(a: Mat, b: Mat) -> Mat:
    a._check(b)
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    n = a.ctx.modulus
    k = kernels.for_modulus(n)
    out = k.matmul(a.entries, b.entries, n, a.rows, a.cols, b.cols)
    return Mat._raw(tuple(map(tuple, out)), a.ctx, a.rows, b.cols)


def mat_add(a: Mat, b: Mat) -> Mat:
    a._check(b)
    if a.shape != b.shape:
        raise DimensionError(f"cannot add {a.shape} and {b.shape}")
    n = a.ctx.modulus
    data = tuple(
        tuple((x + y) % n for x, y in zip(ra, rb))
        for ra, rb in zip(a.entries, b.entries)
    )
    return Mat._raw(data, a.ctx, a.rows, a.cols)


def scalar_mul(c, a: Mat) -> Mat:
    n = a.ctx.modulus
    c = _scalar(c, a.ctx)
    data = tuple(tuple(c * x % n for x in r) for r in a.entries)
    return Mat._raw(data, a.ctx, a.rows, a.cols)


def block_compose(blocks) -> Mat:
    """Assemble a grid of blocks (a list of block rows) into one matrix."""
    blocks = [list(r) for r in blocks]
    if not blocks or not blocks[0]:
        raise DimensionError("empty block grid")
    ctx = blocks[0][0].ctx
    heights = [r[0].rows for r in blocks]
    widths = [b.cols for b in blocks[0]]
    rows = []
    for br, h in zip(blocks, heights):
        if len(br) != len(widths):
            raise DimensionError("ragged block grid")
        for b, w in zip(br, widths):
            b._check(blocks[0][0])
            if b.shape != (h, w):
                raise DimensionError(f"block {b.shape} does not fit slot {(h, w)}")
        for i in range(h):
            rows.append(sum((b.entries[i] for b in br), ()))
    return Mat._raw(tuple(rows), ctx, sum(heights), sum(widths))


def block_extract(m: Mat, row_sizes, col_sizes):
    """Inverse of :func:`block_compose` for the given partition."""
    if sum(row_sizes) != m.rows or sum(col_sizes) != m.cols:
        raise DimensionError("partition does not match matrix shape")
    grid = []
    r0 = 0
    for h in row_sizes:
        c0 = 0
        row = []
        for w in col_sizes:
            row.append(m.submatrix(r0, r0 + h, c0, c0 + w))
            c0 += w
        grid.append(row)
        r0 += h
    return grid


def block_diag(*mats: Mat) -> Mat:
    ctx = mats[0].ctx
    rows = sum(x.rows for x in mats)
    cols = sum(x.cols for x in mats)
    data = []
    c0 = 0
    for x in mats:
        x._check(mats[0])
        for r in x.entries:
            data.append((0,) * c0 + r + (0,) * (cols - c0 - x.cols))
        c0 += x.cols
    return Mat._raw(tuple(data), ctx, rows, cols)


def hstack(*mats: Mat) -> Mat:
    if len({x.rows for x in mats}) != 1:
        raise DimensionError("hstack needs equal row counts")
    rows = mats[0].rows
    data = tuple(sum((x.entries[i] for x in mats), ()) for i in range(rows))
    return Mat._raw(data, mats[0].ctx, rows, sum(x.cols for x in mats))


def vstack(*mats: Mat) -> Mat:
    if len({x.cols for x in mats}) != 1:
        raise DimensionError("vstack needs equal column counts")
    data = sum((x.entries for x in mats), ())
    return Mat._raw(data, mats[0].ctx, sum(x.rows for x in mats), mats[0].cols)


def permutation_matrix(order, ctx: RingContext) -> Mat:
    """``P`` with ``(P x)[k] = x[order[k]]``."""
    n = len(order)
    if sorted(order) != list(range(n)):
        raise ValueError(f"{order} is not a permutation")
    return Mat._raw(
        tuple(tuple(1 if j == order[i] else 0 for j in range(n)) for i in range(n)),
        ctx, n, n,
    )


def permute_rows_cols(m: Mat, row_order, col_order) -> Mat:
    data = tuple(tuple(m.entries[i][j] for j in col_order) for i in row_order)
    return Mat._raw(data, m.ctx, len(row_order), len(col_order))


def from_primes(parts, ctx: RingContext, rows: int, cols: int) -> Mat:
    """CRT-join one matrix per prime of ``ctx`` (lists of rows)."""
    n = ctx.modulus
    basis = ctx.crt_basis
    data = []
    for i in range(rows):
        data.append(tuple(
            sum(part[i][j] * b for part, b in zip(parts, basis)) % n
            for j in range(cols)
        ))
    return Mat._raw(tuple(data), ctx, rows, cols)


def rank_mod(m: Mat, p: int) -> int:
    return kernels.for_modulus(p).field_rank(m.reduce(p), p, m.rows, m.cols)


def _field_det(a, p, n):
    m = [[x % p for x in r] for r in a]
    det = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det = det * m[k][k] % p
        inv = pow(m[k][k], -1, p)
        for i in range(k + 1, n):
            c = m[i][k] * inv % p
            if c:
                m[i] = [(x - c * y) % p for x, y in zip(m[i], m[k])]
    return det % p


def determinant(m: Mat) -> RingElement:
    if not m.is_square():
        raise DimensionError("determinant of a non-square matrix")
    ctx = m.ctx
    return RingElement(
        ctx.join(_field_det(m.entries, p, m.rows) for p in ctx.primes), ctx
    )


def is_invertible(m: Mat) -> bool:
    if not m.is_square():
        raise DimensionError("invertibility of a non-square matrix")
    return all(rank_mod(m, p) == m.rows for p in m.ctx.primes)


def invert(m: Mat) -> Mat:
    if not m.is_square():
        raise DimensionError("inverse of a non-square matrix")
    parts = []
    for p in m.ctx.primes:
        inv = kernels.for_modulus(p).field_inverse(m.reduce(p), p, m.rows)
        if inv is None:
            raise NotInvertibleError(f"matrix is singular modulo {p}")
        parts.append(inv)
    return from_primes(parts, m.ctx, m.rows, m.rows)


@dataclass(frozen=True)
class SmithForm:
    """``U @ B @ V == D`` with ``D`` carrying the idempotents ``d`` on its diagonal."""

    d: tuple[int, ...]
    U: Mat
    V: Mat
    D: Mat

    @property
    def rank(self) -> int:
        return len(self.d)


def smith_form(b: Mat) -> SmithForm:
    """Idempotent Smith form, assembled prime by prime.

    Over F_p the Smith form is ``diag(1, ..., 1, 0, ...)`` with rank_p ones;
    joining the diagonals gives ``d_i`` equal to 1 exactly at the primes where
    the rank is at least ``i``.  Zero diagonal entries are not listed in ``d``.
    """
    ctx = b.ctx
    ranks, us, vs = [], [], []
    for p in ctx.primes:
        r, u, v = kernels.for_modulus(p).field_smith(b.reduce(p), p, b.rows, b.cols)
        ranks.append(r)
        us.append(u)
        vs.append(v)
    r = max(ranks, default=0)
    d = tuple(
        ctx.join(1 if rk > i else 0 for rk in ranks) for i in range(r)
    )
    U = from_primes(us, ctx, b.rows, b.rows)
    V = from_primes(vs, ctx, b.cols, b.cols)
    diag = [[0] * b.cols for _ in range(b.rows)]
    for i, di in enumerate(d):
        diag[i][i] = di
    D = Mat._raw(tuple(map(tuple, diag)), ctx, b.rows, b.cols)
    return SmithForm(d, U, V, D)


def invariant_factors(b: Mat) -> tuple[int, ...]:
    """Just the idempotent diagonal of :func:`smith_form`, without transforms."""
    ctx = b.ctx
    ranks = [rank_mod(b, p) for p in ctx.primes]
    return tuple(
        ctx.join(1 if rk > i else 0 for rk in ranks) for i in range(max(ranks, default=0))
    )
