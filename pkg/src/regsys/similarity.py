"""Frobenius (rational) normal form, per prime field, joined by CRT.

Over F_p the invariant factors of ``xI - A`` are found by a Smith
reduction in F_p[x].  When a transform is wanted, the inverse of the row
operations is tracked as well: its columns, evaluated at ``A``, give one
cyclic vector per nontrivial invariant factor, and the Krylov bases of
those vectors bring ``A`` to companion-block form.

Polynomials are coefficient lists, lowest degree first, with no trailing
zeros (the zero polynomial is ``[]``).
"""

from __future__ import annotations

from . import kernels
from .matrix import DimensionError, Mat, from_primes


def _trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _sub(f, g, p):
    out = [0] * max(len(f), len(g))
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = (out[i] - c) % p
    return _trim(out)


def _add(f, g, p):
    out = [0] * max(len(f), len(g))
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = (out[i] + c) % p
    return _trim(out)


def _mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _trim(out)


def _scale(f, c, p):
    return _trim([x * c % p for x in f])


def _divmod(f, g, p):
    r = list(f)
    dg = len(g) - 1
    inv = pow(g[-1], -1, p)
    q = [0] * max(len(r) - dg, 1)
    while len(r) - 1 >= dg and r:
        shift = len(r) - 1 - dg
        c = r[-1] * inv % p
        q[shift] = c
        for i, b in enumerate(g):
            r[shift + i] = (r[shift + i] - c * b) % p
        _trim(r)
    return _trim(q), r


def _poly_smith(a, p, n, track):
    """Smith-reduce ``xI - a`` over F_p[x]; returns (diagonal, inverse-row-ops)."""
    M = [
        [_trim([(-a[i][j]) % p, 1] if i == j else [(-a[i][j]) % p]) for j in range(n)]
        for i in range(n)
    ]
    W = [[[1] if i == j else [] for j in range(n)] for i in range(n)] if track else None

    for k in range(n):
        while True:
            best = None
            for i in range(k, n):
                for j in range(k, n):
                    f = M[i][j]
                    if f and (best is None or len(f) < best[0]):
                        best = (len(f), i, j)
            _, bi, bj = best
            if bi != k:
                M[k], M[bi] = M[bi], M[k]
                if track:
                    for row in W:
                        row[k], row[bi] = row[bi], row[k]
            if bj != k:
                for row in M:
                    row[k], row[bj] = row[bj], row[k]
            piv = M[k][k]
            clean = True
            for i in range(k + 1, n):
                if M[i][k]:
                    q, r = _divmod(M[i][k], piv, p)
                    Mi, Mk = M[i], M[k]
                    for j in range(k, n):
                        if Mk[j]:
                            Mi[j] = _sub(Mi[j], _mul(q, Mk[j], p), p)
                    if track:
                        for row in W:
                            if row[i]:
                                row[k] = _add(row[k], _mul(q, row[i], p), p)
                    if r:
                        clean = False
            for j in range(k + 1, n):
                if M[k][j]:
                    q, r = _divmod(M[k][j], piv, p)
                    for i in range(k, n):
                        if M[i][k]:
                            M[i][j] = _sub(M[i][j], _mul(q, M[i][k], p), p)
                    if r:
                        clean = False
            if not clean:
                continue
            bad = None
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    if M[i][j] and _divmod(M[i][j], piv, p)[1]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            M[k] = [_add(x, y, p) for x, y in zip(M[k], M[bad])]
            if track:
                for row in W:
                    if row[k]:
                        row[bad] = _sub(row[bad], row[k], p)
        lc = M[k][k][-1]
        if lc != 1:
            M[k][k] = _scale(M[k][k], pow(lc, -1, p), p)
            if track:
                for row in W:
                    row[k] = _scale(row[k], lc, p)
    return [M[k][k] for k in range(n)], W


def companion(f, p):
    """Companion block of monic ``f``: ones below the diagonal, -coefficients in the last column."""
    d = len(f) - 1
    c = [[0] * d for _ in range(d)]
    for i in range(d - 1):
        c[i + 1][i] = 1
    for i in range(d):
        c[i][d - 1] = (-f[i]) % p
    return c


def frobenius_mod_p(a, p, n, track=False):
    """Return ``(invariant_factors, F, S)`` with ``S a S^-1 == F`` over F_p.

    ``invariant_factors`` are the monic nonconstant factors in divisibility
    order, ``F`` is the direct sum of their companion blocks in that order.
    ``S`` is ``None`` unless ``track`` is set.
    """
    a = [[x % p for x in r] for r in a]
    if n == 1:
        f = _trim([(-a[0][0]) % p, 1])
        return [f], [list(a[0])], ([[1]] if track else None)
    diag, W = _poly_smith(a, p, n, track)
    factors = [f for f in diag if len(f) > 1]
    F = [[0] * n for _ in range(n)]
    off = 0
    for f in factors:
        block = companion(f, p)
        for i, r in enumerate(block):
            F[off + i][off:off + len(r)] = r
        off += len(block)
    if not track:
        return factors, F, None
    cols = []
    for k, f in enumerate(diag):
        if len(f) <= 1:
            continue
        v = [0] * n
        for i in range(n):
            w = W[i][k]
            if not w:
                continue
            acc = [0] * n
            for c in reversed(w):
                acc = [sum(a[r][s] * acc[s] for s in range(n)) % p for r in range(n)]
                acc[i] = (acc[i] + c) % p
            v = [(x + y) % p for x, y in zip(v, acc)]
        for _ in range(len(f) - 1):
            cols.append(v)
            v = [sum(a[r][s] * v[s] for s in range(n)) % p for r in range(n)]
    basis = [list(r) for r in zip(*cols)]
    S = kernels.for_modulus(p).field_inverse(basis, p, n)
    if S is None:
        raise ArithmeticError("cyclic decomposition produced a singular basis")
    return factors, F, S


def similarity_form(a: Mat, e: int, track=False):
    """Frobenius form of ``a`` over the ring ``eR`` and, optionally, the similarity.

    Returns ``(F, S)``; ``S`` is invertible over the whole ring, is the
    identity on primes outside ``e`` and satisfies ``S (e a) S^-1 == F``.
    """
    if not a.is_square():
        raise DimensionError("similarity form of a non-square matrix")
    ctx = a.ctx
    n = a.rows
    fparts, sparts = [], []
    ident = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for p in ctx.primes:
        if n == 0 or e % p == 0:
            fparts.append([[0] * n for _ in range(n)])
            sparts.append(ident)
            continue
        _, F, S = frobenius_mod_p(a.entries, p, n, track)
        fparts.append(F)
        sparts.append(S if track else ident)
    F = from_primes(fparts, ctx, n, n)
    S = from_primes(sparts, ctx, n, n) if track else None
    return F, S


def similarity_normal_form(a: Mat, e) -> Mat:
    return similarity_form(a, int(e))[0]
