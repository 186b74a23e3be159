"""End-to-end checks of the headline identities and the density suites.

Every check is an exact integer or rational equality; a report collects the
full list of counterexamples rather than stopping at the first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .counting import rep_count, s_batch, theta
from .forms import TernaryForm
from .genus import GenusCache, GenusSet, mass_closed_form
from .isometry import automorphs, equivalent
from .local import (
    density_formula_odd,
    gamma_p,
    kronecker,
    local_density,
    psi,
)
from .watson import lambda_m, phi, transport_automorph

THM11_FORMS = (
    (2, TernaryForm(1, 1, 3, 0, 0, 1)),
    (-4, TernaryForm(4, 3, 4, 0, 4, 0)),
)
THM12_FORMS = (
    (4, TernaryForm(2, 2, 2, -1, 1, 1)),
    (-8, TernaryForm(7, 8, 8, -4, 8, 8)),
)


@dataclass
class IdentityReport:
    identity: str
    p: int | None
    n_max: int
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "p": self.p,
            "n_max": self.n_max,
            "failures": self.failures,
            "pass": self.passed,
        }


def _check_weighted_identity(
    identity: str, p: int, n_max: int, weights_forms, scale_batch=None
) -> IdentityReport:
    """s(p^2 n) - p*s(n) == sum of weight * R_form(n), for 1 <= n <= n_max."""
    report = IdentityReport(identity, p, n_max)
    values = sorted({n for n in range(1, n_max + 1)} | {p * p * n for n in range(1, n_max + 1)})
    sval = s_batch(values)
    thetas = [(w, theta(f, n_max).counts) for w, f in weights_forms]
    for n in range(1, n_max + 1):
        lhs = sval[p * p * n] - p * sval[n]
        rhs = sum(w * counts[n] for w, counts in thetas)
        if lhs != rhs:
            report.failures.append({"n": n, "lhs": lhs, "rhs": rhs})
    return report


def verify_theorem_1_1(n_max: int) -> IdentityReport:
    return _check_weighted_identity("thm1.1", 3, n_max, THM11_FORMS)


def verify_theorem_1_2(n_max: int) -> IdentityReport:
    return _check_weighted_identity("thm1.2", 5, n_max, THM12_FORMS)


def verify_theorem_1_3(p: int, n_max: int, cache: GenusCache | None = None) -> IdentityReport:
    """s(p^2 n) - p*s(n) == 48*sum_TG1 R/|Aut| - 96*sum_TG2 R/|Aut|."""
    cache = cache or GenusCache()
    tg1 = cache.tg1(p)
    tg2 = cache.tg2(p)
    report = IdentityReport("thm1.3", p, n_max)
    values = sorted({n for n in range(1, n_max + 1)} | {p * p * n for n in range(1, n_max + 1)})
    sval = s_batch(values)
    t1 = [(aut, theta(f, n_max).counts) for f, aut in tg1.classes]
    t2 = [(aut, theta(f, n_max).counts) for f, aut in tg2.classes]
    for n in range(1, n_max + 1):
        lhs = sval[p * p * n] - p * sval[n]
        rhs = 48 * sum(Fraction(c[n], aut) for aut, c in t1) - 96 * sum(
            Fraction(c[n], aut) for aut, c in t2
        )
        if rhs.denominator != 1:
            report.failures.append({"n": n, "lhs": lhs, "rhs": str(rhs), "error": "non-integer RHS"})
        elif lhs != rhs:
            report.failures.append({"n": n, "lhs": lhs, "rhs": int(rhs)})
    return report


# -- density suites -------------------------------------------------------

YZ_MINUS_XX = TernaryForm(-1, 0, 0, 1, 0, 0)
FOUR_YZ_MINUS_XX = TernaryForm(-1, 0, 0, 4, 0, 0)


def _strip_fours(n: int) -> tuple[int, int]:
    a = 0
    while n % 4 == 0:
        n //= 4
        a += 1
    return a, n


def _yz_table(n: int) -> Fraction:
    a, k = _strip_fours(n)
    if k % 8 == 7:
        return Fraction(3, 2)
    if k % 8 == 3:
        return Fraction(3, 2) - Fraction(1, 2 ** (a + 1))
    return Fraction(3, 2) - Fraction(3, 2 ** (a + 2))


def _four_yz_table(n: int) -> Fraction:
    a, k = _strip_fours(n)
    if k % 8 == 7:
        return Fraction(3)
    if k % 8 == 3:
        return 3 - Fraction(1, 2 ** (a - 1)) if a >= 1 else Fraction(1)
    return 3 - Fraction(3, 2**a)


def _least_nonresidue_neg(p: int) -> int:
    u = 1
    while kronecker(-u, p) != -1:
        u += 1
    return u


def density_suites(
    n_odd: int = 200,
    n_dyadic: int = 256,
    n_split: int = 150,
    n_gamma: int = 200,
    n_scale: int = 50,
) -> dict[str, list[str]]:
    """Run every closed-form-vs-counting density check; values are failure lists."""
    three = TernaryForm(1, 1, 1, 0, 0, 0)
    failures: dict[str, list[str]] = {}

    fails = []
    for p in (3, 5, 7, 11):
        for n in range(1, n_odd + 1):
            direct = local_density(three, n, p).value
            closed = density_formula_odd(n, p)
            if direct != closed:
                fails.append(f"p={p} n={n}: counted {direct}, closed form {closed}")
    failures["odd-prime-closed-form"] = fails

    fails = []
    for n in range(1, n_dyadic + 1):
        direct = local_density(three, n, 2).value
        if direct != psi(n):
            fails.append(f"n={n}: counted {direct}, psi {psi(n)}")
    failures["dyadic-three-squares"] = fails

    fails = []
    for p in (3, 5, 7):
        u = _least_nonresidue_neg(p)
        form = TernaryForm(u, p, p * u, 0, 0, 0)
        for n in range(1, n_split + 1):
            direct = local_density(form, n, p).value
            expected = Fraction(p, p - 1) * gamma_p(n, p)
            if direct != expected:
                fails.append(f"p={p} n={n}: counted {direct}, expected {expected}")
    failures["split-anisotropic-odd"] = fails

    fails = []
    for p in (3, 5, 7):
        u = _least_nonresidue_neg(p)
        form = TernaryForm(u, p, p * u, 0, 0, 0)
        for n in range(1, n_scale + 1):
            if n % (p * p) == 0:
                continue
            base = local_density(form, n, p).value
            for k in (1, 2) if p < 7 else (1,):
                scaled = local_density(form, n * p ** (2 * k), p).value
                if scaled != base / p**k:
                    fails.append(f"p={p} n={n} k={k}: {scaled} != {base}/{p}^{k}")
    failures["prime-square-scaling"] = fails

    fails = []
    for n in range(1, n_dyadic + 1):
        d1 = local_density(YZ_MINUS_XX, n, 2).value
        d2 = local_density(FOUR_YZ_MINUS_XX, n, 2).value
        if d1 != _yz_table(n):
            fails.append(f"yz-xx table n={n}: counted {d1}, table {_yz_table(n)}")
        if d2 != _four_yz_table(n):
            fails.append(f"4yz-xx table n={n}: counted {d2}, table {_four_yz_table(n)}")
        if psi(n) != 2 * d1 - d2:
            fails.append(f"three-squares recurrence n={n}")
        if 2 * d1 != local_density(FOUR_YZ_MINUS_XX, 4 * n, 2).value:
            fails.append(f"doubling recurrence n={n}")
        if 4 * d1 - d2 != 3:
            fails.append(f"constant combination n={n}")
        expected_init = (
            Fraction(3) if n % 8 == 7 else Fraction(1) if n % 8 == 3 else Fraction(0)
        )
        if n % 4 != 0 and d2 != expected_init:
            fails.append(f"initial values n={n}: {d2} != {expected_init}")
    failures["dyadic-difference-forms"] = fails

    fails = []
    for p in (3, 5, 7, 11):
        for n in range(1, n_gamma + 1):
            lhs = gamma_p(n, p)
            rhs = p * (density_formula_odd(p * p * n, p) - density_formula_odd(n, p))
            if lhs != rhs:
                fails.append(f"p={p} n={n}: {lhs} != {rhs}")
    failures["difference-kernel"] = fails

    return failures


def verify_density_theorems(**kwargs) -> dict:
    suites = density_suites(**kwargs)
    return {
        "identity": "density-suites",
        "suites": {k: {"pass": not v, "failures": v} for k, v in suites.items()},
        "pass": all(not v for v in suites.values()),
    }


# -- Watson property suite ------------------------------------------------

def watson_suite(
    primes=(3, 5, 7, 11, 13), n_scaling: int = 300, cache: GenusCache | None = None
) -> dict[str, list[str]]:
    cache = cache or GenusCache()
    fails_invol: list[str] = []
    fails_phi_lambda: list[str] = []
    fails_scaling: list[str] = []
    fails_transport: list[str] = []
    for p in primes:
        tg1 = cache.tg1(p)
        for form, aut in tg1.classes:
            image = phi(form)
            if lambda_m(form, 4) != image:
                fails_phi_lambda.append(f"p={p} {form}: lambda_4 differs from phi")
            if lambda_m(image, 4) != form:
                fails_invol.append(f"p={p} {form}: lambda_4^2 is not the identity")
            for n in range(1, n_scaling + 1):
                if rep_count(form, n) != rep_count(image, 4 * n):
                    fails_scaling.append(f"p={p} {form} n={n}: R(n) != R_phi(4n)")
            aut_pre = automorphs(form)
            aut_img = automorphs(image)
            transported = set()
            for r in aut_pre.elements:
                transported.add(transport_automorph(form, image, 4, r))
            if transported != set(aut_img.elements):
                fails_transport.append(
                    f"p={p} {form}: transport is not a bijection "
                    f"({len(transported)} images vs |Aut| {aut_img.order})"
                )
    return {
        "lambda4-involution": fails_invol,
        "phi-equals-lambda4": fails_phi_lambda,
        "rep-scaling": fails_scaling,
        "automorph-transport": fails_transport,
    }


def mass_suite(primes=(3, 5, 7, 11, 13, 17, 19, 23, 73), cache: GenusCache | None = None) -> list[str]:
    cache = cache or GenusCache()
    fails = []
    for p in primes:
        tg1 = cache.tg1(p)  # enumerate_tg1 raises on mass mismatch already
        if tg1.mass != mass_closed_form(p):
            fails.append(f"p={p}: TG1 mass {tg1.mass} != {mass_closed_form(p)}")
        tg2 = cache.tg2(p)
        if tg2.mass != tg1.mass:
            fails.append(f"p={p}: TG2 mass {tg2.mass} != TG1 mass {tg1.mass}")
        for i, (f1, _) in enumerate(tg1.classes):
            for f2, _ in tg1.classes[i + 1 :]:
                if equivalent(f1, f2) is not None:
                    fails.append(f"p={p}: TG1 classes {f1} and {f2} are equivalent")
        for i, (f1, _) in enumerate(tg2.classes):
            for f2, _ in tg2.classes[i + 1 :]:
                if equivalent(f1, f2) is not None:
                    fails.append(f"p={p}: TG2 classes {f1} and {f2} are equivalent")
    return fails


def verify_all(
    n_identities: int = 1000,
    n_thm13: int = 500,
    n_thm13_big: int = 200,
    thm13_primes=(3, 5, 7, 11, 13),
    big_prime: int | None = 73,
    cache: GenusCache | None = None,
) -> dict:
    """The full headless acceptance sweep; deterministic and exact."""
    cache = cache or GenusCache()
    reports = [
        verify_theorem_1_1(n_identities).to_dict(),
        verify_theorem_1_2(n_identities).to_dict(),
    ]
    for p in thm13_primes:
        reports.append(verify_theorem_1_3(p, n_thm13, cache).to_dict())
    if big_prime is not None:
        reports.append(verify_theorem_1_3(big_prime, n_thm13_big, cache).to_dict())
    mass_failures = mass_suite(cache=cache)
    density = verify_density_theorems()
    watson = watson_suite(primes=(3, 5, 7, 11, 13, 17, 19, 23, 73), cache=cache)
    result = {
        "identities": reports,
        "mass": {"pass": not mass_failures, "failures": mass_failures},
        "density": density,
        "watson": {k: {"pass": not v, "failures": v} for k, v in watson.items()},
    }
    result["pass"] = (
        all(r["pass"] for r in reports)
        and not mass_failures
        and density["pass"]
        and all(not v for v in watson.values())
    )
    return result
