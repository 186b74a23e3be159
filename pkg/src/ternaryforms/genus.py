"""Genus enumeration for discriminant p^2 and the Phi-built 16p^2 companion.

TG1(p) is enumerated by scanning reduced sextuples (the mass identity
(p-1)/48 certifies completeness, turning the heuristic scan bound into a
verified one).  TG2(p) is constructed class by class through Phi, with the
automorph-order match checked as required by the bijection.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .counting import rep_count
from .forms import FormError, TernaryForm
from .isometry import automorphs
from .reduction import reduce_form
from .watson import phi

CACHE_ENV = "TERNARY_CACHE"
DEFAULT_PRIME_BOUND = 97


class IncompletenessError(RuntimeError):
    """Enumerated mass does not match the closed form: scan bound bug."""


@dataclass(frozen=True)
class GenusSet:
    label: str  # "TG1" or "TG2"
    prime: int
    classes: tuple[tuple[TernaryForm, int], ...]  # (canonical form, |Aut|)

    @property
    def mass(self) -> Fraction:
        return sum((Fraction(1, aut) for _, aut in self.classes), Fraction(0))


def mass_closed_form(p: int) -> Fraction:
    if p < 3 or p % 2 == 0:
        raise FormError("p must be an odd prime")
    return Fraction(p - 1, 48)


def _icbrt(n: int) -> int:
    r = round(n ** (1 / 3))
    while r**3 > n:
        r -= 1
    while (r + 1) ** 3 <= n:
        r += 1
    return r


def _scan_reduced_candidates(disc: int):
    """Sextuples in the reduced box with the given discriminant.

    Bounds: 0 < a <= b <= c, |d| <= b, |e| <= a, |f| <= a, a*b*c <= disc
    (Minkowski: the product of the successive minima is below the
    discriminant for canonical forms, so every class appears).
    """
    for a in range(1, _icbrt(disc) + 1):
        for b in range(a, isqrt(disc // a) + 1):
            for f in range(-a, a + 1):
                denom = 4 * a * b - f * f
                if denom <= 0:
                    continue
                for e in range(-a, a + 1):
                    for d in range(-b, b + 1):
                        num = disc - d * e * f + a * d * d + b * e * e
                        if num % denom:
                            continue
                        c = num // denom
                        if c < b or a * b * c > disc:
                            continue
                        yield TernaryForm(a, b, c, d, e, f)


def _is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


def enumerate_tg1(p: int, prime_bound: int = DEFAULT_PRIME_BOUND) -> GenusSet:
    """All classes of positive primitive forms of discriminant p^2.

    Completeness is certified against the closed-form mass (p-1)/48.
    """
    if not _is_odd_prime(p):
        raise FormError(f"{p} is not an odd prime")
    if p > prime_bound:
        raise FormError(f"p = {p} exceeds the configured bound {prime_bound}")
    disc = p * p
    seen: dict[TernaryForm, None] = {}
    for cand in _scan_reduced_candidates(disc):
        g = 0
        for v in cand.coeffs:
            g = gcd(g, v)
        if g != 1:
            continue
        canon, _ = reduce_form(cand)
        seen.setdefault(canon, None)
    classes = tuple(
        sorted((form, automorphs(form).order) for form in seen)
    )
    result = GenusSet("TG1", p, classes)
    if result.mass != mass_closed_form(p):
        raise IncompletenessError(
            f"TG1({p}) mass {result.mass} != {mass_closed_form(p)}; enumeration bound bug"
        )
    return result


def build_tg2(tg1: GenusSet) -> GenusSet:
    """Image genus under Phi, with automorph orders checked to transfer."""
    if tg1.label != "TG1":
        raise FormError("build_tg2 expects a TG1 genus")
    classes = []
    for form, aut in tg1.classes:
        image = phi(form)
        image_aut = automorphs(image).order
        if image_aut != aut:
            raise FormError(
                f"automorph order changed under Phi: {form} has {aut}, image {image} has {image_aut}"
            )
        classes.append((image, image_aut))
    result = GenusSet("TG2", tg1.prime, tuple(sorted(classes)))
    if result.mass != tg1.mass:
        raise FormError("TG2 mass differs from TG1 mass")
    return result


def weighted_rep_sum(genus: GenusSet, n: int) -> Fraction:
    """Sum over classes of R(n)/|Aut|."""
    return sum(
        (Fraction(rep_count(form, n), aut) for form, aut in genus.classes),
        Fraction(0),
    )


# -- JSON cache -----------------------------------------------------------

def _genus_to_dict(genus: GenusSet) -> dict:
    return {
        "v": 1,
        "label": genus.label,
        "p": genus.prime,
        "classes": [
            {"coeffs": list(form.coeffs), "aut": aut} for form, aut in genus.classes
        ],
        "mass": f"{genus.mass.numerator}/{genus.mass.denominator}",
    }


def _genus_from_dict(data: dict) -> GenusSet:
    if data.get("v") != 1:
        raise FormError(f"unsupported genus cache version {data.get('v')}")
    classes = tuple(
        (TernaryForm(*entry["coeffs"]), entry["aut"]) for entry in data["classes"]
    )
    genus = GenusSet(data["label"], data["p"], classes)
    num, den = data["mass"].split("/")
    if genus.mass != Fraction(int(num), int(den)):
        raise FormError("genus cache mass mismatch; cache corrupt")
    return genus


class GenusCache:
    """Persists genus enumerations to a JSON file, written atomically."""

    def __init__(self, path: str | None = None):
        self.path = path or os.environ.get(CACHE_ENV)
        self._store: dict[str, dict] = {}
        if self.path and os.path.exists(self.path):
            with open(self.path) as fh:
                self._store = json.load(fh)

    @staticmethod
    def _key(label: str, p: int) -> str:
        return f"{label},{p}"

    def get(self, label: str, p: int) -> GenusSet | None:
        data = self._store.get(self._key(label, p))
        return _genus_from_dict(data) if data else None

    def put(self, genus: GenusSet) -> None:
        self._store[self._key(genus.label, genus.prime)] = _genus_to_dict(genus)
        if self.path:
            d = os.path.dirname(os.path.abspath(self.path))
            fd, tmp = tempfile.mkstemp(dir=d, suffix=".tmp")
            try:
                with os.fdopen(fd, "w") as fh:
                    json.dump(self._store, fh, indent=1)
                os.replace(tmp, self.path)
            except BaseException:
                if os.path.exists(tmp):
                    os.unlink(tmp)
                raise

    def tg1(self, p: int) -> GenusSet:
        cached = self.get("TG1", p)
        if cached is None:
            cached = enumerate_tg1(p)
            self.put(cached)
        return cached

    def tg2(self, p: int) -> GenusSet:
        cached = self.get("TG2", p)
        if cached is None:
            cached = build_tg2(self.tg1(p))
            self.put(cached)
        return cached
