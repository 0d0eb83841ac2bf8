"""Command-line driver: verification suites, ad-hoc pullback and pairing
queries, and JSON export of the named corpus.

Exit codes: 0 when every check passes, 1 on any check failure, 2 on usage
or input errors.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import List, Sequence

from . import certify as certify_mod
from . import chow, corpus, gluing, gonal, picard
from .scalars import Poly, binom, poly_eval, scalar_to_json

DEFAULT_MAX_D = 12
PROPERTY_SEED = 1729
PROPERTY_REPS = 100


class InputError(ValueError):
    """A file or argument the user supplied cannot be used."""


# ---------------------------------------------------------------------------
# check rows and reports


@dataclass(frozen=True)
class CheckRow:
    module: str
    check: str
    expected: object  # serialized scalar (str or list of str) or plain str
    actual: object
    citation: str

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


def _row(module: str, check: str, expected, actual, citation: str) -> CheckRow:
    def ser(v):
        return v if isinstance(v, str) else scalar_to_json(v)

    return CheckRow(module, check, ser(expected), ser(actual), citation)


def emit_report(rows: Sequence[CheckRow], fmt: str = "text") -> str:
    """Render check rows, ordered by module then check name."""
    rows = sorted(rows, key=lambda r: (r.module, r.check))
    failed = sum(1 for r in rows if not r.ok)
    if fmt == "json":
        payload = {
            "checks": [
                {
                    "check": r.check,
                    "status": "pass" if r.ok else "fail",
                    "expected": r.expected,
                    "actual": r.actual,
                    "citation": r.citation,
                }
                for r in rows
            ],
            "summary": {"checks": len(rows), "failed": failed},
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    def fmt(value):
        return value if isinstance(value, str) else json.dumps(value, separators=(",", ":"))

    lines = []
    for r in rows:
        status = "PASS" if r.ok else "FAIL"
        lines.append(
            f"{status}  {r.module}/{r.check}  expected={fmt(r.expected)} actual={fmt(r.actual)}  [{r.citation}]"
        )
    lines.append(f"{len(rows)} checks, {failed} failed")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# suites


def _coordinate_match(computed: picard.DivisorClassM1n, golden: picard.DivisorClassM1n) -> str:
    """Fraction of matching basis coordinates, counted over the lambda
    coordinate and every subset with at least two markings."""
    n = computed.n
    total = (1 << n) - n - 1 + 1
    mismatched = 0 if computed.lam == golden.lam else 1
    for key in computed.boundary.keys() | golden.boundary.keys():
        if computed.coeff(key) != golden.coeff(key):
            mismatched += 1
    return f"{total - mismatched}/{total}"


def trigonal_suite() -> List[CheckRow]:
    rows = []
    computed = gluing.glue_pullback(corpus.bn_class(3), 4)
    golden = corpus.golden_pullback("trigonal")
    rows.append(
        _row(
            "trigonal",
            "pullback_golden_match",
            "248/248",
            _coordinate_match(computed, golden),
            "gluing-map pullback against the hand-entered expansion",
        )
    )
    rows.append(
        _row(
            "trigonal",
            "three_pair_blocks_vanish",
            0,
            computed.coeff(picard.subset_mask((3, 4, 5, 6, 7, 8), 8)),
            "three-pair unions receive coefficient zero",
        )
    )
    rows.append(
        _row(
            "trigonal",
            "B.pullback_BN13",
            -1,
            picard.pair(corpus.profile("trig"), computed),
            "pencil of plane cubics through eight points on concurrent lines",
        )
    )
    rows.append(
        _row(
            "trigonal",
            "C.pullback_BN13",
            -2,
            picard.pair(corpus.profile("bnd"), computed),
            "boundary pencil attached at a base point of a cubic pencil",
        )
    )
    return rows


def gonal_suite(max_d: int = DEFAULT_MAX_D, direct_max_d: int = gonal.DIRECT_ROUTE_DEFAULT_CAP) -> List[CheckRow]:
    rows = []
    for d in range(3, direct_max_d + 1):
        closed = gonal.pairing_closed(d)
        rows.append(
            _row(
                "gonal",
                f"route_direct.d={d:02d}",
                closed,
                gonal.pairing_direct(d, max_d=direct_max_d),
                "full sparse enumeration of the pullback",
            )
        )
        rows.append(
            _row(
                "gonal",
                f"route_binomial.d={d:02d}",
                closed,
                gonal.pairing_binomial(d),
                "size-grouped binomial sums",
            )
        )
    rows.append(
        _row(
            "gonal",
            "value.d=03",
            2,
            gonal.pairing_closed(3),
            "positive pairing of the trigonal pencil",
        )
    )
    rows.append(
        _row(
            "gonal",
            "grouped_sum_collapse.d=04",
            1586,
            gonal.even_subset_sum(4),
            "collapsed middle binomial sum",
        )
    )
    for report_row in gonal.negativity_report(max_d):
        rows.append(
            _row(
                "gonal",
                f"sign.d={report_row.d:02d}",
                "+" if report_row.d == 3 else "-",
                report_row.sign,
                "sign of the d-gonal pencil pairing",
            )
        )
    return rows


def gp_suite() -> List[CheckRow]:
    rows = []
    computed = gluing.glue_pullback(corpus.gp_class(), 3)
    golden = corpus.golden_pullback("gp")
    rows.append(
        _row(
            "gp",
            "pullback_golden_match",
            "58/58",
            _coordinate_match(computed, golden),
            "gluing-map pullback against the hand-entered expansion",
        )
    )
    pairing = picard.pair(corpus.profile("gp"), computed)
    degree = pairing.degree() if isinstance(pairing, Poly) else 0
    rows.append(
        _row(
            "gp",
            "T.pullback_GP",
            -16,
            pairing,
            "marked fibration pencil against the pullback class",
        )
    )
    rows.append(
        _row(
            "gp",
            "T.pullback_GP.degree",
            "0",
            str(max(degree, 0)),
            "the a-linear terms cancel identically",
        )
    )
    rows.append(
        _row(
            "gp",
            "T.pullback_GP.at_a=5",
            -16,
            poly_eval(pairing, 5),
            "specialization of the pairing",
        )
    )
    return rows


def chow_suite() -> List[CheckRow]:
    rows = []
    for check in chow.intersection_table_check():
        rows.append(
            _row("chow", f"table.{check.name}", check.expected, check.actual, "derived top-intersection form")
        )
    data = chow.chern_data()
    rows.append(
        _row(
            "chow",
            "c1c2.bundle",
            24,
            chow.dot(data.c2_ty, -1 * data.k_y),
            "characteristic-class normalization chi(O) = 1",
        )
    )
    rows.append(
        _row(
            "chow",
            "c1c2.blowup",
            24,
            chow.dot(data.c2_tx, -1 * data.k_x),
            "characteristic-class normalization chi(O) = 1",
        )
    )
    inv = chow.family_invariants()
    expectations = [
        ("kd_squared", inv.kd_squared, Poly((-1, -1)), "fiberwise canonical self-intersection"),
        ("c2_TD", inv.c2_td, Poly((-11, 13)), "Euler number of the total surface"),
        ("twelve_lambda", 12 * inv.hodge_lambda, Poly((-12, 12)), "Noether formula"),
        ("hodge_lambda", inv.hodge_lambda, Poly((-1, 1)), "Noether formula"),
        ("hodge_lambda_rr", inv.hodge_lambda_rr, Poly((-1, 1)), "Riemann-Roch on the ambient threefold"),
        ("rational_tails", inv.rational_tails, Poly((1, 1)), "fibers meeting the complementary section"),
        ("directrix_cycles", inv.directrix_cycles, Poly((-2, 1)), "fibers through the directrix section"),
        ("two_section_genus", inv.two_section_genus, Poly((-1, 1)), "adjunction on the exceptional surface"),
        ("ramification", inv.ramification, Poly((0, 2)), "Riemann-Hurwitz for the 2-section double cover"),
        ("irreducible_nodal", inv.irreducible_nodal, Poly((-8, 10)), "Euler number census of singular fibers"),
    ]
    for name, actual, expected, citation in expectations:
        rows.append(_row("chow", name, expected, actual, citation))
    rows.append(
        _row(
            "chow",
            "noether_identity",
            Poly(),
            12 * inv.hodge_lambda - inv.kd_squared - inv.c2_td,
            "Noether formula",
        )
    )
    rows.append(
        _row(
            "chow",
            "lambda_two_routes",
            Poly(),
            inv.hodge_lambda - inv.hodge_lambda_rr,
            "two routes to the Hodge degree",
        )
    )
    rows.append(
        _row(
            "chow",
            "euler_census",
            Poly(),
            inv.irreducible_nodal + inv.rational_tails + 2 * inv.directrix_cycles - inv.c2_td,
            "Euler number census of singular fibers",
        )
    )
    return rows


def certificate_suite(direct_max_d: int = gonal.DIRECT_ROUTE_DEFAULT_CAP) -> List[CheckRow]:
    rows = []
    assertions = certify_mod.REQUIRED_ASSERTIONS
    targets = [
        ("trigonal", corpus.bn_class(3), 4, corpus.profile("trig"), "trig", -1),
        ("gp", corpus.gp_class(), 3, corpus.profile("gp"), "gp", -16),
    ]
    for d in range(4, direct_max_d + 1):
        targets.append(
            (
                f"gonal.d={d}",
                corpus.bn_class(d),
                2 * d - 2,
                corpus.profile("gonal", d),
                f"gonal({d})",
                gonal.pairing_closed(d),
            )
        )
    for label, divisor, m, prof, prof_name, expected in targets:
        cert = certify_mod.certify(divisor, m, prof, assertions, profile_name=prof_name)
        rows.append(
            _row(
                "certify",
                f"pairing.{label}",
                expected,
                cert.pairing,
                "negative constant pairing premise",
            )
        )
        lifted = certify_mod.lift(cert, cert.n + 2)
        rows.append(
            _row(
                "certify",
                f"lift_preserves.{label}",
                cert.pairing,
                lifted.pairing,
                "forgetful lift preserves the pairing",
            )
        )
    try:
        certify_mod.certify(corpus.bn_class(3), 4, corpus.profile("gonal", 3), assertions)
    except certify_mod.CertificateRefused as exc:
        refusal = f"refused with pairing {exc.pairing}"
    else:
        refusal = "accepted"
    rows.append(
        _row(
            "certify",
            "refuses_positive.gonal.d=3",
            "refused with pairing 2",
            refusal,
            "nonnegative pairings yield no certificate",
        )
    )
    return rows


# ---------------------------------------------------------------------------
# randomized property suite (fixed seed, deterministic)


def _random_rat(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-30, 30), rng.randint(1, 12))


def _random_class(rng: random.Random, n: int) -> picard.DivisorClassM1n:
    boundary = {}
    for _ in range(rng.randint(0, 6)):
        mask = rng.randint(0, (1 << n) - 1)
        if mask.bit_count() >= 2:
            boundary[mask] = _random_rat(rng)
    return picard.DivisorClassM1n(n, _random_rat(rng), boundary)


def _random_profile(rng: random.Random, n: int) -> picard.CurveProfile:
    boundary = {}
    for _ in range(rng.randint(0, 6)):
        mask = rng.randint(0, (1 << n) - 1)
        if mask.bit_count() >= 2:
            boundary[mask] = _random_rat(rng)
    return picard.CurveProfile(n, _random_rat(rng), boundary)


def _random_mg_class(rng: random.Random, g: int) -> picard.DivisorClassMg:
    return picard.DivisorClassMg(
        g,
        _random_rat(rng),
        _random_rat(rng),
        [_random_rat(rng) for _ in range(g // 2)],
    )


def pair_symmetry_permutation(rng: random.Random, m: int) -> tuple:
    """A random element of the group generated by in-pair swaps and
    permutations of the pair blocks."""
    blocks = list(range(1, m + 1))
    rng.shuffle(blocks)
    sigma = []
    for k in range(1, m + 1):
        target = blocks[k - 1]
        swap = rng.random() < 0.5
        odd, even = 2 * target - 1, 2 * target
        sigma.extend((even, odd) if swap else (odd, even))
    return tuple(sigma)


def property_suite(reps: int = PROPERTY_REPS, seed: int = PROPERTY_SEED) -> List[CheckRow]:
    rng = random.Random(seed)
    failures = {
        "pair_bilinearity": 0,
        "pullback_linearity": 0,
        "pullback_pair_symmetry": 0,
        "lambda_family_sizes": 0,
        "binomial_identities": 0,
        "top_form_symmetry": 0,
    }

    for _ in range(reps):
        n = rng.randint(4, 6)
        p = _random_profile(rng, n)
        x, y = _random_class(rng, n), _random_class(rng, n)
        s, t = _random_rat(rng), _random_rat(rng)
        combo = picard.linear_combine([(s, x), (t, y)])
        lhs = picard.pair(p, combo)
        rhs = s * picard.pair(p, x) + t * picard.pair(p, y)
        if lhs != rhs:
            failures["pair_bilinearity"] += 1

    for _ in range(reps):
        m = rng.choice((2, 3))
        w1, w2 = _random_mg_class(rng, m + 1), _random_mg_class(rng, m + 1)
        s, t = _random_rat(rng), _random_rat(rng)
        combined = picard.DivisorClassMg(
            m + 1,
            s * w1.lam + t * w2.lam,
            s * w1.delta_irr + t * w2.delta_irr,
            [s * c1 + t * c2 for c1, c2 in zip(w1.delta, w2.delta)],
        )
        lhs = gluing.glue_pullback(combined, m)
        rhs = picard.linear_combine(
            [(s, gluing.glue_pullback(w1, m)), (t, gluing.glue_pullback(w2, m))]
        )
        if lhs != rhs:
            failures["pullback_linearity"] += 1

    pullbacks = [
        (4, gluing.glue_pullback(corpus.bn_class(3), 4)),
        (3, gluing.glue_pullback(corpus.gp_class(), 3)),
        (6, gluing.glue_pullback(corpus.bn_class(4), 6)),
    ]
    for _ in range(reps):
        m, cls = pullbacks[rng.randrange(len(pullbacks))]
        sigma = pair_symmetry_permutation(rng, m)
        if picard.permute_markings(cls, sigma) != cls:
            failures["pullback_pair_symmetry"] += 1

    for m in range(1, 13):
        for i in range(m + 1):
            family = gluing.lambda_family(i, m)
            if len(family.sets) != binom(m, i):
                failures["lambda_family_sizes"] += 1
            if any(s.bit_count() != 2 * i for s in family.sets):
                failures["lambda_family_sizes"] += 1

    for _ in range(reps):
        x = _random_rat(rng)
        cap = rng.randint(1, 24)
        lhs = sum((s - 1) * binom(cap, s) * x ** (cap - s) for s in range(1, cap + 1))
        rhs = cap * (x + 1) ** (cap - 1) - (x + 1) ** cap + x ** cap
        if lhs != rhs:
            failures["binomial_identities"] += 1
        lhs2 = sum(s * binom(cap, s) * x ** (cap - s) for s in range(1, cap + 1))
        if lhs2 != cap * (x + 1) ** (cap - 1):
            failures["binomial_identities"] += 1

    form = chow.top_form()
    from itertools import permutations as _perms

    for i in range(6):
        for j in range(6):
            for k in range(6):
                base = form.value(i, j, k)
                if any(form.value(*p) != base for p in _perms((i, j, k))):
                    failures["top_form_symmetry"] += 1

    return [
        _row("properties", name, "0 failures", f"{count} failures", "randomized property check")
        for name, count in sorted(failures.items())
    ]


def all_suites(max_d: int, direct_max_d: int) -> List[CheckRow]:
    rows = []
    rows += trigonal_suite()
    rows += gonal_suite(max_d, direct_max_d)
    rows += gp_suite()
    rows += chow_suite()
    rows += certificate_suite(direct_max_d)
    rows += property_suite()
    return rows


# ---------------------------------------------------------------------------
# file commands


def _load_json(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(
            f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc


def _dump_json(obj, output: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_pullback(args) -> int:
    obj = _load_json(args.input)
    try:
        cls = picard.mg_class_from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{args.input}: not a genus-g class file: {exc}") from exc
    if cls.g != args.g:
        raise InputError(f"class lives on genus {cls.g}, but --g {args.g} was given")
    result = gluing.glue_pullback(cls, args.m)
    _dump_json(picard.m1n_class_to_json(result), args.output)
    return 0


def _cmd_intersect(args) -> int:
    try:
        prof = picard.profile_from_json(_load_json(args.profile))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{args.profile}: not a profile file: {exc}") from exc
    try:
        cls = picard.m1n_class_from_json(_load_json(args.class_file))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{args.class_file}: not a marked-space class file: {exc}") from exc
    try:
        value = picard.pair(prof, cls)
    except picard.SpaceMismatchError as exc:
        raise InputError(str(exc)) from exc
    out = scalar_to_json(value)
    print(out if isinstance(out, str) else json.dumps(out))
    return 0


_EXPORTERS = {
    "gp": lambda: picard.mg_class_to_json(corpus.gp_class()),
    "pullback-trigonal": lambda: picard.m1n_class_to_json(corpus.golden_pullback("trigonal")),
    "pullback-gp": lambda: picard.m1n_class_to_json(corpus.golden_pullback("gp")),
    "profile-trig": lambda: picard.profile_to_json(corpus.profile("trig")),
    "profile-bnd": lambda: picard.profile_to_json(corpus.profile("bnd")),
    "profile-gp": lambda: picard.profile_to_json(corpus.profile("gp")),
}


def _cmd_export(args) -> int:
    name = args.name
    if name in _EXPORTERS:
        obj = _EXPORTERS[name]()
    elif match := re.fullmatch(r"bn\((\d+)\)", name):
        obj = picard.mg_class_to_json(corpus.bn_class(int(match.group(1))))
    elif match := re.fullmatch(r"profile-gonal\((\d+)\)", name):
        obj = picard.profile_to_json(corpus.profile("gonal", int(match.group(1))))
    else:
        known = ", ".join(sorted(_EXPORTERS) + ["bn(d)", "profile-gonal(d)"])
        raise InputError(f"unknown corpus item {name!r}; known: {known}")
    _dump_json(obj, args.output)
    return 0


def _cmd_verify(args) -> int:
    if args.suite == "all":
        rows = all_suites(args.max_d, args.direct_max_d)
    elif args.suite == "trigonal":
        rows = trigonal_suite()
    elif args.suite == "gonal":
        rows = gonal_suite(args.max_d, args.direct_max_d)
    elif args.suite == "gp":
        rows = gp_suite()
    else:
        rows = chow_suite()
    sys.stdout.write(emit_report(rows, "json" if args.json else "text"))
    return 0 if all(r.ok for r in rows) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="effcone",
        description=(
            "Exact verification of divisor-class pullbacks, test-curve pairings, "
            "and extremality certificates on moduli of marked genus-one curves."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run a verification suite")
    verify.add_argument("suite", choices=("all", "trigonal", "gonal", "gp", "chow"))
    verify.add_argument("--max-d", type=int, default=DEFAULT_MAX_D, help="sign sweep bound")
    verify.add_argument(
        "--direct-max-d",
        type=int,
        default=gonal.DIRECT_ROUTE_DEFAULT_CAP,
        help="cap for the full-enumeration route",
    )
    verify.add_argument("--json", action="store_true", help="emit the JSON report")

    pullback = sub.add_parser("pullback", help="pull a genus-g class back along the gluing map")
    pullback.add_argument("--g", type=int, required=True)
    pullback.add_argument("--m", type=int, required=True)
    pullback.add_argument("--input", required=True, help="genus-g class JSON file")
    pullback.add_argument("--output", help="destination file (stdout when omitted)")

    intersect = sub.add_parser("intersect", help="pair a profile against a class")
    intersect.add_argument("--profile", required=True, help="profile JSON file")
    intersect.add_argument("--class", dest="class_file", required=True, help="class JSON file")

    export = sub.add_parser("export", help="write a named corpus item as JSON")
    export.add_argument("--name", required=True, help="e.g. bn(3), gp, pullback-trigonal, profile-gonal(4)")
    export.add_argument("--output", help="destination file (stdout when omitted)")

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "pullback":
            return _cmd_pullback(args)
        if args.command == "intersect":
            return _cmd_intersect(args)
        if args.command == "export":
            return _cmd_export(args)
        parser.error(f"unknown command {args.command!r}")
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (picard.MarkingIndexError, picard.SpaceMismatchError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
