"""Command line front end.

Exit codes: 0 success (and identity checks passing), 1 identity failure,
2 usage error, 3 resource limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .counting import rep_count, theta
from .forms import FormError, TernaryForm, discriminant
from .genus import GenusCache, GenusSet, mass_closed_form
from .isometry import automorphs, equivalent
from .local import ResourceLimitError, local_density
from .reduction import reduce_form
from .verify import (
    verify_all,
    verify_density_theorems,
    verify_theorem_1_1,
    verify_theorem_1_2,
    verify_theorem_1_3,
)
from .watson import lambda_m, phi, phi_inverse

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


class _UsageError(Exception):
    pass


def _parse_form(text: str) -> TernaryForm:
    try:
        return TernaryForm.parse(text)
    except FormError as exc:
        raise _UsageError(str(exc)) from None


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, TernaryForm):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _emit(data: dict, fmt: str) -> None:
    data = _jsonable(data)
    if fmt == "json":
        print(json.dumps(data, indent=1))
    else:
        for key, value in data.items():
            if isinstance(value, list):
                value = ";".join(str(v) for v in value)
            print(f"{key}\t{value}")


def _genus_payload(genus: GenusSet) -> dict:
    return {
        "label": genus.label,
        "p": genus.prime,
        "classes": [{"form": f, "aut": aut} for f, aut in genus.classes],
        "mass": genus.mass,
    }


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="tqf", description="Exact arithmetic for positive ternary quadratic forms."
    )
    top.add_argument("--format", choices=("json", "tsv"), default="json")
    top.add_argument("--cache", help="path to the genus cache JSON file")
    top.add_argument(
        "--threads",
        type=int,
        default=1,
        help="upper bound on worker threads (computation is sequential)",
    )
    top.add_argument("--work-limit", type=int, default=None, help="abort bound for congruence counting")
    sub = top.add_subparsers(dest="command", required=True)

    def with_form(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("form", help="sextuple a,b,c,d,e,f")
        return p

    with_form("disc", "discriminant of a form")
    with_form("reduce", "canonical reduced representative and witness")
    p = with_form("count", "representation count R(n)")
    p.add_argument("n", type=int)
    p = with_form("theta", "representation counts R(0..bound)")
    p.add_argument("bound", type=int)
    with_form("auts", "automorph group")
    p = sub.add_parser("equiv", help="equivalence test with witness")
    p.add_argument("form1")
    p.add_argument("form2")
    p = sub.add_parser("genus", help="enumerate TG1 or TG2 for an odd prime")
    p.add_argument("label", choices=("TG1", "TG2"))
    p.add_argument("p", type=int)
    p = sub.add_parser("mass", help="genus mass, enumerated and closed form")
    p.add_argument("label", choices=("TG1", "TG2"))
    p.add_argument("p", type=int)
    with_form("phi", "image under the doubling map Phi")
    with_form("phi-inv", "preimage under Phi")
    p = with_form("lambda", "Watson lambda_m transform")
    p.add_argument("m", type=int)
    p = with_form("density", "p-adic local density at n")
    p.add_argument("n", type=int)
    p.add_argument("p", type=int)
    p = sub.add_parser("verify", help="exact verification of the excess identities")
    p.add_argument(
        "target",
        choices=("thm1.1", "thm1.2", "thm1.3", "density", "all"),
    )
    p.add_argument("--p", type=int, default=None, help="prime for thm1.3")
    p.add_argument("--n-max", type=int, default=None)
    return top


def _run(args) -> int:
    fmt = args.format
    cache = GenusCache(args.cache)
    cmd = args.command
    if cmd == "disc":
        form = _parse_form(args.form)
        _emit({"form": form, "disc": discriminant(form)}, fmt)
        return EXIT_OK
    if cmd == "reduce":
        form = _parse_form(args.form)
        canon, witness = reduce_form(form)
        _emit({"form": form, "reduced": canon, "witness": witness}, fmt)
        return EXIT_OK
    if cmd == "count":
        form = _parse_form(args.form)
        if args.n < 0:
            raise _UsageError("n must be nonnegative")
        _emit({"form": form, "n": args.n, "count": rep_count(form, args.n)}, fmt)
        return EXIT_OK
    if cmd == "theta":
        form = _parse_form(args.form)
        if args.bound < 0:
            raise _UsageError("bound must be nonnegative")
        vec = theta(form, args.bound)
        _emit({"form": form, "bound": args.bound, "counts": list(vec.counts)}, fmt)
        return EXIT_OK
    if cmd == "auts":
        form = _parse_form(args.form)
        group = automorphs(form)
        _emit(
            {"form": form, "order": group.order, "elements": [list(map(list, u)) for u in group.elements]},
            fmt,
        )
        return EXIT_OK
    if cmd == "equiv":
        f1 = _parse_form(args.form1)
        f2 = _parse_form(args.form2)
        witness = equivalent(f1, f2)
        _emit(
            {
                "form1": f1,
                "form2": f2,
                "equivalent": witness is not None,
                "witness": witness,
            },
            fmt,
        )
        return EXIT_OK
    if cmd == "genus":
        genus = cache.tg1(args.p) if args.label == "TG1" else cache.tg2(args.p)
        _emit(_genus_payload(genus), fmt)
        return EXIT_OK
    if cmd == "mass":
        genus = cache.tg1(args.p) if args.label == "TG1" else cache.tg2(args.p)
        _emit(
            {
                "label": args.label,
                "p": args.p,
                "mass": genus.mass,
                "closed_form": mass_closed_form(args.p),
                "match": genus.mass == mass_closed_form(args.p),
            },
            fmt,
        )
        return EXIT_OK
    if cmd == "phi":
        form = _parse_form(args.form)
        _emit({"form": form, "image": phi(form)}, fmt)
        return EXIT_OK
    if cmd == "phi-inv":
        form = _parse_form(args.form)
        _emit({"form": form, "preimage": phi_inverse(form)}, fmt)
        return EXIT_OK
    if cmd == "lambda":
        form = _parse_form(args.form)
        if args.m < 2:
            raise _UsageError("m must be >= 2")
        _emit({"form": form, "m": args.m, "image": lambda_m(form, args.m)}, fmt)
        return EXIT_OK
    if cmd == "density":
        form = _parse_form(args.form)
        if args.n < 1:
            raise _UsageError("n must be >= 1")
        kwargs = {}
        if args.work_limit is not None:
            kwargs["work_limit"] = args.work_limit
        res = local_density(form, args.n, args.p, **kwargs)
        _emit(
            {
                "form": form,
                "n": args.n,
                "p": args.p,
                "density": res.value,
                "exponent_used": res.exponent_used,
            },
            fmt,
        )
        return EXIT_OK
    if cmd == "verify":
        n_max = args.n_max
        if args.target == "thm1.1":
            report = verify_theorem_1_1(n_max or 1000).to_dict()
        elif args.target == "thm1.2":
            report = verify_theorem_1_2(n_max or 1000).to_dict()
        elif args.target == "thm1.3":
            if args.p is None:
                raise _UsageError("verify thm1.3 requires --p")
            report = verify_theorem_1_3(args.p, n_max or 200, cache).to_dict()
        elif args.target == "density":
            report = verify_density_theorems()
        else:
            report = verify_all(cache=cache)
        _emit(report, fmt)
        return EXIT_OK if report["pass"] else EXIT_FAIL
    raise _UsageError(f"unknown command {cmd}")


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return _run(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FormError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
