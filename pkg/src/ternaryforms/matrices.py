"""Small exact integer 3x3 matrix utilities.

Matrices are tuples of three rows, each a tuple of three Python ints, so
they are hashable and arbitrary precision.  No numpy here: scrambled Gram
products overflow 64 bits quickly.
"""

from __future__ import annotations

from math import gcd

Mat3 = tuple[tuple[int, int, int], ...]
Vec3 = tuple[int, int, int]

IDENTITY: Mat3 = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def mat_mul(a: Mat3, b: Mat3) -> Mat3:
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3))
        for i in range(3)
    )


def mat_vec(a: Mat3, v: Vec3) -> Vec3:
    return tuple(sum(a[i][k] * v[k] for k in range(3)) for i in range(3))


def transpose(a: Mat3) -> Mat3:
    return tuple(tuple(a[j][i] for j in range(3)) for i in range(3))


def det3(a: Mat3) -> int:
    (a11, a12, a13), (a21, a22, a23), (a31, a32, a33) = a
    return (
        a11 * (a22 * a33 - a23 * a32)
        - a12 * (a21 * a33 - a23 * a31)
        + a13 * (a21 * a32 - a22 * a31)
    )


def adjugate(a: Mat3) -> Mat3:
    """Adjugate: a * adjugate(a) == det3(a) * I."""
    (a11, a12, a13), (a21, a22, a23), (a31, a32, a33) = a
    return (
        (a22 * a33 - a23 * a32, a13 * a32 - a12 * a33, a12 * a23 - a13 * a22),
        (a23 * a31 - a21 * a33, a11 * a33 - a13 * a31, a13 * a21 - a11 * a23),
        (a21 * a32 - a22 * a31, a12 * a31 - a11 * a32, a11 * a22 - a12 * a21),
    )


def mat_neg(a: Mat3) -> Mat3:
    return tuple(tuple(-x for x in row) for row in a)


def mat_scale_exact(a: Mat3, num: int, den: int) -> Mat3:
    """(num/den) * a; raises ValueError when any entry is not integral."""
    out = []
    for row in a:
        new = []
        for x in row:
            p, r = divmod(x * num, den)
            if r:
                raise ValueError("matrix scaling is not integral")
            new.append(p)
        out.append(tuple(new))
    return tuple(out)


def unimodular_inverse(a: Mat3) -> Mat3:
    d = det3(a)
    if d not in (1, -1):
        raise ValueError(f"matrix has determinant {d}, not ±1")
    adj = adjugate(a)
    return adj if d == 1 else mat_neg(adj)


def from_columns(c1: Vec3, c2: Vec3, c3: Vec3) -> Mat3:
    return tuple((c1[i], c2[i], c3[i]) for i in range(3))


def columns(a: Mat3) -> tuple[Vec3, Vec3, Vec3]:
    return tuple(tuple(a[i][j] for i in range(3)) for j in range(3))


def column_hnf(cols: list[Vec3]) -> Mat3:
    """Canonical basis of the lattice spanned by `cols` (full rank required).

    Returns a lower-triangular 3x3 matrix with positive pivots and
    off-pivot entries reduced modulo the pivot of their row, columns
    spanning the same lattice as the input columns.
    """
    # Work on a list of column vectors, eliminating row by row.
    work = [list(c) for c in cols]
    basis: list[list[int]] = []
    for row in range(3):
        # Combine columns until a single one has a nonzero entry in `row`.
        pool = [c for c in work if any(c[row:])]
        live = [c for c in pool if c[row] != 0]
        rest = [c for c in pool if c[row] == 0]
        while len(live) > 1:
            live.sort(key=lambda c: abs(c[row]))
            a, b = live[0], live[1]
            q = b[row] // a[row]
            for i in range(3):
                b[i] -= q * a[i]
            if b[row] == 0:
                rest.append(b)
                live.remove(b)
        if not live:
            raise ValueError("columns do not span a full-rank lattice")
        piv = live[0]
        if piv[row] < 0:
            piv = [-x for x in piv]
        basis.append(piv)
        work = rest
    # Reduce earlier columns against later pivots: basis[j] has pivot at row j.
    for j in range(3):
        for i in range(j + 1, 3):
            q = basis[j][i] // basis[i][i]
            for k in range(3):
                basis[j][k] -= q * basis[i][k]
    return from_columns(*(tuple(c) for c in basis))


def smith_normal_form(a: Mat3) -> tuple[Mat3, Mat3, Mat3]:
    """Return (u, d, v) with u*a*v = d diagonal, u and v unimodular.

    Diagonal entries are nonnegative and each divides the next.
    """
    m = [list(row) for row in a]
    u = [list(row) for row in IDENTITY]
    v = [list(row) for row in IDENTITY]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in range(3):
            m[r][i], m[r][j] = m[r][j], m[r][i]
            v[r][i], v[r][j] = v[r][j], v[r][i]

    def addmul_row(dst, src, q):
        for k in range(3):
            m[dst][k] += q * m[src][k]
            u[dst][k] += q * u[src][k]

    def addmul_col(dst, src, q):
        for r in range(3):
            m[r][dst] += q * m[r][src]
            v[r][dst] += q * v[r][src]

    for k in range(3):
        while True:
            # Find smallest nonzero entry in the trailing block.
            best = None
            for i in range(k, 3):
                for j in range(k, 3):
                    if m[i][j] and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            if best != (k, k):
                if best[0] != k:
                    swap_rows(k, best[0])
                if best[1] != k:
                    swap_cols(k, best[1])
            done = True
            for i in range(k + 1, 3):
                if m[i][k]:
                    addmul_row(i, k, -(m[i][k] // m[k][k]))
                    if m[i][k]:
                        done = False
            for j in range(k + 1, 3):
                if m[k][j]:
                    addmul_col(j, k, -(m[k][j] // m[k][k]))
                    if m[k][j]:
                        done = False
            if done:
                # Divisibility fix-up: pivot must divide the trailing block.
                bad = None
                for i in range(k + 1, 3):
                    for j in range(k + 1, 3):
                        if m[i][j] % m[k][k]:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                addmul_row(k, bad, 1)
        if m[k][k] < 0:
            for j in range(3):
                m[k][j] = -m[k][j]
            for j in range(3):
                u[k][j] = -u[k][j]
    return (
        tuple(tuple(r) for r in u),
        tuple(tuple(r) for r in m),
        tuple(tuple(r) for r in v),
    )


def complete_primitive(v: Vec3) -> Mat3:
    """A unimodular matrix whose first column is the primitive vector v."""
    x, y, z = v
    if gcd(gcd(x, y), z) != 1:
        raise ValueError(f"vector {v} is not primitive")
    g = gcd(x, y)
    if g == 0:
        # x = y = 0, so z = ±1.
        m = from_columns(v, (1, 0, 0), (0, 1, 0))
    else:
        s, t = _bezout(x, y)   # s*x + t*y == g
        p, q = _bezout(g, z)   # p*g + q*z == 1
        c2 = (-t, s, 0)
        c3 = (-q * (x // g), -q * (y // g), p)
        m = from_columns(v, c2, c3)
    if det3(m) not in (1, -1):
        raise AssertionError("primitive completion failed")
    return m


def _bezout(a: int, b: int) -> tuple[int, int]:
    """(s, t) with s*a + t*b == gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    return old_s, old_t
