"""Pure-Python kernels.

Same call signatures as the compiled ``_kernels`` extension.  Matrices are
lists of row lists holding canonical residues.  This module is always
importable and is used whenever the extension is missing or the modulus is
too large for machine words.
"""


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(a, b, mod, rows, inner, cols):
    out = []
    for i in range(rows):
        ai = a[i]
        row = [0] * cols
        for k in range(inner):
            x = ai[k]
            if x:
                bk = b[k]
                for j in range(cols):
                    row[j] += x * bk[j]
        out.append([v % mod for v in row])
    return out


def field_rank(a, p, rows, cols):
    m = [[v % p for v in r] for r in a]
    rank = 0
    for j in range(cols):
        piv = -1
        for i in range(rank, rows):
            if m[i][j]:
                piv = i
                break
        if piv < 0:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][j], -1, p)
        pr = m[rank]
        for i in range(rank + 1, rows):
            c = m[i][j] * inv % p
            if c:
                mi = m[i]
                for jj in range(j, cols):
                    mi[jj] = (mi[jj] - c * pr[jj]) % p
        rank += 1
        if rank == rows:
            break
    return rank


def field_smith(a, p, rows, cols):
    """Return ``(rank, U, V)`` with ``U a V = diag(1, ..., 1, 0, ...)`` over F_p."""
    m = [[v % p for v in r] for r in a]
    u = identity(rows)
    v = identity(cols)
    rank = 0
    for k in range(min(rows, cols)):
        pi = pj = -1
        for j in range(k, cols):
            for i in range(k, rows):
                if m[i][j]:
                    pi, pj = i, j
                    break
            if pi >= 0:
                break
        if pi < 0:
            break
        if pi != k:
            m[k], m[pi] = m[pi], m[k]
            u[k], u[pi] = u[pi], u[k]
        if pj != k:
            for r in m:
                r[k], r[pj] = r[pj], r[k]
            for r in v:
                r[k], r[pj] = r[pj], r[k]
        inv = pow(m[k][k], -1, p)
        # scale the pivot column, not the row: U stays a product of swaps and transvections
        for r in m:
            r[k] = r[k] * inv % p
        for r in v:
            r[k] = r[k] * inv % p
        mk, uk = m[k], u[k]
        for i in range(k + 1, rows):
            c = m[i][k]
            if c:
                m[i] = [(x - c * y) % p for x, y in zip(m[i], mk)]
                u[i] = [(x - c * y) % p for x, y in zip(u[i], uk)]
        for j in range(k + 1, cols):
            c = mk[j]
            if c:
                mk[j] = 0
                for r in v:
                    r[j] = (r[j] - c * r[k]) % p
        rank += 1
    return rank, u, v


def field_inverse(a, p, n):
    """Gauss-Jordan inverse over F_p, or ``None`` when singular."""
    m = [[x % p for x in r] + [1 if i == j else 0 for j in range(n)]
         for i, r in enumerate(a)]
    for k in range(n):
        piv = -1
        for i in range(k, n):
            if m[i][k]:
                piv = i
                break
        if piv < 0:
            return None
        m[k], m[piv] = m[piv], m[k]
        inv = pow(m[k][k], -1, p)
        mk = m[k] = [x * inv % p for x in m[k]]
        for i in range(n):
            if i != k and m[i][k]:
                c = m[i][k]
                m[i] = [(x - c * y) % p for x, y in zip(m[i], mk)]
    return [r[n:] for r in m]


def act(digits, gen, mod, n, m):
    """Image of one flat system (A entries then B entries) under a generator."""
    pg, pinv, qg, kg = gen
    nn = n * n
    a = digits[:nn]
    b = digits[nn:]
    c = list(a)
    for i in range(n):
        for j in range(n):
            acc = 0
            for l in range(m):
                acc += b[i * m + l] * kg[l * n + j]
            c[i * n + j] += acc
    pc = [0] * nn
    for i in range(n):
        for l in range(n):
            x = pg[i * n + l]
            if x:
                for j in range(n):
                    pc[i * n + j] += x * c[l * n + j]
    new = [0] * (nn + n * m)
    for i in range(n):
        for l in range(n):
            x = pc[i * n + l] % mod
            if x:
                for j in range(n):
                    new[i * n + j] += x * pinv[l * n + j]
    pb = [0] * (n * m)
    for i in range(n):
        for l in range(n):
            x = pg[i * n + l]
            if x:
                for j in range(m):
                    pb[i * m + j] += x * b[l * m + j]
    for i in range(n):
        for l in range(m):
            x = pb[i * m + l] % mod
            if x:
                for j in range(m):
                    new[nn + i * m + j] += x * qg[l * m + j]
    return [v % mod for v in new]


def orbit_labels(mod, n, m, gens):
    """Label every system of size (n, m) over Z/mod by its orbit.

    ``gens`` is a list of ``(P, Pinv, Q, K)`` tuples of flat row-major
    lists.  A state is the base-``mod`` integer whose digits (least
    significant first) are the entries of A then B.  Returns
    ``(labels, number_of_orbits)``; orbits are numbered in order of their
    smallest state.
    """
    dims = n * n + n * m
    total = mod ** dims
    weights = [mod ** k for k in range(dims)]
    labels = [-1] * total
    count = 0
    for start in range(total):
        if labels[start] >= 0:
            continue
        labels[start] = count
        stack = [start]
        while stack:
            t = stack.pop()
            digits = []
            for _ in range(dims):
                t, r = divmod(t, mod)
                digits.append(r)
            for gen in gens:
                new = act(digits, gen, mod, n, m)
                code = 0
                for k in range(dims):
                    code += new[k] * weights[k]
                if labels[code] < 0:
                    labels[code] = count
                    stack.append(code)
        count += 1
    return labels, count
