"""Integer ternary quadratic forms a*x^2 + b*y^2 + c*z^2 + d*yz + e*zx + f*xy.

The sextuple <a,b,c,d,e,f> is the central object; its Gram matrix is
[[2a, f, e], [f, 2b, d], [e, d, 2c]] and the discriminant is half the Gram
determinant.  All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .matrices import (
    IDENTITY,
    Mat3,
    Vec3,
    det3,
    from_columns,
    mat_mul,
    transpose,
)


class FormError(ValueError):
    """Raised when an operation's precondition on a form is violated."""


@dataclass(frozen=True, order=True)
class TernaryForm:
    a: int
    b: int
    c: int
    d: int
    e: int
    f: int

    @property
    def coeffs(self) -> tuple[int, int, int, int, int, int]:
        return (self.a, self.b, self.c, self.d, self.e, self.f)

    def gram(self) -> Mat3:
        a, b, c, d, e, f = self.coeffs
        return ((2 * a, f, e), (f, 2 * b, d), (e, d, 2 * c))

    def __call__(self, x: int, y: int, z: int) -> int:
        a, b, c, d, e, f = self.coeffs
        return a * x * x + b * y * y + c * z * z + d * y * z + e * z * x + f * x * y

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.coeffs)

    @classmethod
    def from_gram(cls, g: Mat3) -> "TernaryForm":
        if any(g[i][i] % 2 for i in range(3)):
            raise FormError("Gram matrix must have even diagonal")
        if any(g[i][j] != g[j][i] for i in range(3) for j in range(3)):
            raise FormError("Gram matrix must be symmetric")
        return cls(
            g[0][0] // 2, g[1][1] // 2, g[2][2] // 2, g[1][2], g[0][2], g[0][1]
        )

    @classmethod
    def parse(cls, text: str) -> "TernaryForm":
        parts = text.split(",")
        if len(parts) != 6:
            raise FormError(f"expected 6 comma-separated coefficients, got {len(parts)}")
        vals = []
        names = "abcdef"
        for name, part in zip(names, parts):
            try:
                vals.append(int(part.strip()))
            except ValueError:
                raise FormError(f"coefficient {name} is not an integer: {part!r}") from None
        return cls(*vals)


def evaluate(form: TernaryForm, x: int, y: int, z: int) -> int:
    return form(x, y, z)


def discriminant(form: TernaryForm) -> int:
    a, b, c, d, e, f = form.coeffs
    return 4 * a * b * c + d * e * f - a * d * d - b * e * e - c * f * f


def is_positive_definite(form: TernaryForm) -> bool:
    """Leading principal minors of the Gram matrix all positive."""
    a, b, c, d, e, f = form.coeffs
    if a <= 0:
        return False
    if 4 * a * b - f * f <= 0:
        return False
    return discriminant(form) > 0


def is_primitive(form: TernaryForm) -> bool:
    g = 0
    for v in form.coeffs:
        g = gcd(g, v)
    return g == 1


def content(form: TernaryForm) -> int:
    g = 0
    for v in form.coeffs:
        g = gcd(g, v)
    return g


def apply_map(form: TernaryForm, u: Mat3) -> TernaryForm:
    """Form with Gram U' G U.  U must be unimodular."""
    if det3(u) not in (1, -1):
        raise FormError(f"matrix is not unimodular (det {det3(u)})")
    return apply_basis(form, u)


def apply_basis(form: TernaryForm, u: Mat3) -> TernaryForm:
    """Form with Gram U' G U for an arbitrary integer matrix U."""
    g = mat_mul(transpose(u), mat_mul(form.gram(), u))
    return TernaryForm.from_gram(g)


# Elementary moves of the Convenient Shape procedure: M_ij is the identity
# with an extra 1 at position (i, j) (1-based), M0 swaps y and z with a sign.
def shear(i: int, j: int) -> Mat3:
    rows = [list(r) for r in IDENTITY]
    rows[i - 1][j - 1] = 1
    return tuple(tuple(r) for r in rows)


M0: Mat3 = ((1, 0, 0), (0, 0, -1), (0, 1, 0))


def _represented_odd_vector(form: TernaryForm) -> Vec3:
    """Smallest odd primitively represented value's witness vector.

    Scans the box max(|x|,|y|,|z|) <= 6, growing by 2 until an odd value on a
    primitive vector is found (a primitive form always represents one).
    """
    bound = 6
    while bound <= 6 + 2 * 64:
        best = None
        for x in range(-bound, bound + 1):
            for y in range(-bound, bound + 1):
                for z in range(-bound, bound + 1):
                    if gcd(gcd(x, y), z) != 1:
                        continue
                    v = form(x, y, z)
                    if v % 2 == 0:
                        continue
                    key = (abs(v), x, y, z)
                    if best is None or key < best:
                        best = key
        if best is not None:
            return (best[1], best[2], best[3])
        bound += 2
    raise FormError("no odd represented value found; form is not primitive?")


def to_convenient_shape_1(form: TernaryForm) -> tuple[TernaryForm, Mat3]:
    """Equivalent form with a odd, d odd, e and f even (and a ≡ -disc mod 4).

    Requires a primitive form of odd discriminant.  Positive definiteness is
    not needed for the move sequence itself, but the odd-value search assumes
    the form takes small values on a small box, which holds for the definite
    desk-scale forms this library targets.
    """
    delta = discriminant(form)
    if delta % 2 == 0:
        raise FormError("convenient shape 1 requires odd discriminant")
    if not is_primitive(form):
        raise FormError("convenient shape 1 requires a primitive form")

    if _is_shape1(form):
        return form, IDENTITY

    u = complete_to_unimodular(_represented_odd_vector(form))
    cur = apply_map(form, u)

    def step(m: Mat3):
        nonlocal cur, u
        u = mat_mul(u, m)
        cur = apply_map(cur, m)

    # a is odd now; follow the move sequence for the parities of d, e, f.
    if cur.f % 2 == 1:
        step(M0)  # <a,c,b,-d,-f,e>: makes e odd
    if cur.e % 2 == 1:
        if cur.d % 2 == 0:
            step(shear(1, 2))  # d += e (odd), f += 2a
        if cur.f % 2 == 1:
            step(shear(3, 2))  # f += e (even), d += 2c
        if cur.e % 2 == 1:
            step(shear(2, 1))  # e += d (even), a += b + f
    if not _is_shape1(cur):
        raise AssertionError(f"shape-1 move sequence failed on {form}")
    assert (cur.a + delta) % 4 == 0
    return cur, u


def _is_shape1(form: TernaryForm) -> bool:
    return form.a % 2 == 1 and form.d % 2 == 1 and form.e % 2 == 0 and form.f % 2 == 0


def _is_shape2(form: TernaryForm) -> bool:
    return form.a % 2 == 1 and all(v % 4 == 0 for v in (form.b, form.c, form.d, form.e, form.f))


def complete_to_unimodular(v: Vec3) -> Mat3:
    from .matrices import complete_primitive

    return complete_primitive(v)


def _lambda4_lattice_basis(form: TernaryForm) -> Mat3:
    """Canonical basis of {v : G v ≡ 0 (mod 4), form(v) ≡ 0 (mod 4)}."""
    from .matrices import column_hnf

    g = form.gram()
    cols: list[Vec3] = [(4, 0, 0), (0, 4, 0), (0, 0, 4)]
    for x in range(4):
        for y in range(4):
            for z in range(4):
                v = (x, y, z)
                gv = tuple(sum(g[i][k] * v[k] for k in range(3)) for i in range(3))
                if all(t % 4 == 0 for t in gv) and form(*v) % 4 == 0:
                    cols.append(v)
    return column_hnf(cols)


def to_convenient_shape_2(form: TernaryForm, scan_bound: int | None = None) -> tuple[TernaryForm, Mat3]:
    """Equivalent form with a odd and b, c, d, e, f all divisible by 4.

    Requires: discriminant 16*delta with delta odd, classically even cross
    coefficients, and no represented value n ≡ 1, 2 (mod 4).  The last
    condition is verified by a finite scan (default bound 4*|disc|); the
    structural congruences of the output are the authoritative certificate.
    """
    delta16 = discriminant(form)
    if delta16 % 16 != 0:
        raise FormError("convenient shape 2 requires discriminant divisible by 16")
    if (delta16 // 16) % 2 == 0:
        raise FormError("convenient shape 2 requires discriminant 16*delta with delta odd")
    if any(v % 2 for v in (form.d, form.e, form.f)):
        raise FormError("convenient shape 2 requires even d, e, f")
    if not is_primitive(form):
        raise FormError("convenient shape 2 requires a primitive form")

    if _is_shape2(form):
        return form, IDENTITY

    if is_positive_definite(form):
        _check_no_1_2_mod_4(form, scan_bound)

    # The index-2 sublattice where the form is 4-divisible pins down the
    # single odd coordinate direction; rotate it into x.
    from .matrices import smith_normal_form

    basis = _lambda4_lattice_basis(form)
    u_left, diag, _ = smith_normal_form(basis)
    if (diag[0][0], diag[1][1], diag[2][2]) != (1, 1, 2):
        raise FormError("form is not 4-divisible on an index-2 sublattice; not in the TG2 shape class")
    # basis columns span L = inv(u_left) * diag(1,1,2) * Z^3.  We need a
    # unimodular U with U * diag(2,1,1) * Z^3 = L.
    from .matrices import unimodular_inverse

    swap: Mat3 = ((0, 0, 1), (0, 1, 0), (1, 0, 0))
    u = mat_mul(unimodular_inverse(u_left), swap)
    out = apply_map(form, u)
    if not _is_shape2(out):
        raise AssertionError(f"shape-2 construction failed on {form}")
    return out, u


def _check_no_1_2_mod_4(form: TernaryForm, scan_bound: int | None) -> None:
    from .counting import theta

    bound = scan_bound if scan_bound is not None else 4 * discriminant(form)
    bound = min(bound, 4 * discriminant(form))
    counts = theta(form, bound).counts
    for n in range(1, bound + 1):
        if n % 4 in (1, 2) and counts[n]:
            raise FormError(f"form represents {n} ≡ {n % 4} (mod 4); not in the TG2 shape class")
