"""Command line front end.

Subcommands: ``basis`` prints a canonical family element, ``lift`` assembles
an input form from its principal part and prints the half-integral image with
its decomposition, ``trace`` evaluates one normalized twisted trace,
``classes`` tabulates Heegner form classes, and ``verify`` runs the identity
suites (duality, constant terms, integrality, trace consistency).

Weights are always passed doubled (``--weight2``) so half-integral weights
stay exact on the command line.  Exit codes: 0 success, 1 verification
failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from mpmath import mp, mpf, sqrt as mp_sqrt

from .config import Config, load_config
from .heegner import heegner_forms
from .lifts import (
    LiftResult,
    constant_term_check,
    duality_check,
    zagier_lift_neg_weight_image,
    zagier_lift_pos_weight_image,
)
from .qseries import QSeries, _term_str
from .spaces import (
    GENUS_ZERO_PRIMES,
    SEED_RANGE,
    integer_family_element,
    integer_family_rows,
    integer_zero_element,
    integer_zero_rows,
    plus_family_element,
    plus_family_rows,
    plus_zero_element,
    plus_zero_rows,
)
from .traces import normalized_trace

# deep enough to evaluate traces at the shallowest CM points we ever visit
_INPUT_WINDOW = 340


def _render(f: QSeries) -> str:
    """Full expansion on one line (repr elides long tails)."""
    parts: list[str] = []
    for n, c in f.terms():
        parts.append(_term_str(n, c, first=not parts))
    return " ".join(parts or ["0"]) + " + O(q^%d)" % f.trunc


def _parse_principal(inline: str | None, path: str | None) -> dict[int, Fraction]:
    """Principal part as {pole order: coefficient}, orders positive."""
    part: dict[int, Fraction] = {}

    def put(m_text: str, c_text: str) -> None:
        m = int(m_text)
        if m <= 0:
            raise ValueError("principal part orders must be positive, got %d" % m)
        c = Fraction(c_text)
        if c:
            part[m] = part.get(m, Fraction(0)) + c

    if inline:
        for chunk in inline.split(","):
            chunk = chunk.strip()
            if not chunk:
                continue
            m_text, _, c_text = chunk.partition(":")
            put(m_text, c_text or "1")
    if path:
        with open(path) as fh:
            for line in fh:
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                m_text, c_text = line.split()
                put(m_text, c_text)
    return {m: c for m, c in part.items() if c}


def _assemble_input(p: int, s: int, part: dict[int, Fraction], trunc: int) -> QSeries:
    """Combination of integer-weight family elements with the given poles."""
    weight2 = 4 - 4 * s
    f = QSeries.zero(trunc)
    if not part:
        return f
    rows = integer_family_rows(p, weight2, -max(part), trunc)
    by_order = {-r.lead: r for r in rows}
    for m in sorted(part):
        row = by_order.get(m)
        if row is None:
            raise ValueError(
                "no family element with pole order %d at level %d weight2 %d"
                % (m, p, weight2))
        f = f + part[m] * row
    return f


def cmd_basis(args, config: Config) -> int:
    trunc = args.trunc or config.default_trunc
    level = args.level
    if level in GENUS_ZERO_PRIMES:
        if args.zero:
            row = integer_zero_element(level, args.weight2, args.m, trunc)
        else:
            row = integer_family_element(level, args.weight2, args.m, trunc)
    elif level == 4 or level in SEED_RANGE:
        if args.zero:
            row = plus_zero_element(level, args.weight2, args.m, trunc, config)
        else:
            row = plus_family_element(level, args.weight2, args.m, trunc, config)
    else:
        raise ValueError("level %d is not a genus-zero odd prime or 4p" % level)
    print(_render(row))
    return 0


def cmd_lift(args, config: Config) -> int:
    trunc = args.trunc or config.default_trunc
    part = _parse_principal(args.principal, args.principal_file)
    if not part:
        print("image:", _render(QSeries.zero(trunc)))
        return 0
    f = _assemble_input(args.p, args.s, part, _INPUT_WINDOW)
    sign = args.D if args.s % 2 == 0 else -args.D
    if sign > 0:
        res = zagier_lift_neg_weight_image(f, args.p, args.s, args.D, trunc, config)
    else:
        res = zagier_lift_pos_weight_image(
            f, args.p, args.s, args.D, trunc,
            precision=args.precision or 96, config=config)
    _print_lift(res)
    return 0


def _print_lift(res: LiftResult) -> None:
    print("image:", _render(res.image))
    for t in res.decomposition:
        print("term:", json.dumps({
            "level": t.level,
            "weight2": t.weight2,
            "m": t.index,
            "multiplier": str(t.multiplier),
        }))
    if res.correction is not None:
        print("correction:", _render(res.correction))


def cmd_trace(args, config: Config) -> int:
    part = _parse_principal(args.principal, args.principal_file)
    f = _assemble_input(args.p, args.s, part, _INPUT_WINDOW)
    prec = args.precision or config.precision_bits
    val, margin = normalized_trace(f, args.s, args.d, args.D, args.p, prec,
                                   with_margin=True)
    classes = sum(1 for q in heegner_forms(args.d * args.D, args.p)
                  if q.genus_character(args.D))
    print(args.d, args.D, mp.nstr(val, 12), mp.nstr(margin, 3),
          classes, f.trunc, prec)
    return 0


def cmd_classes(args, config: Config) -> int:
    forms = heegner_forms(args.delta, args.level)
    mp.prec = args.precision or config.precision_bits
    for q in forms:
        re, t = q.cm_point()
        tau_re = mpf(re.numerator) / re.denominator
        tau_im = mp_sqrt(abs(args.delta)) * t.numerator / t.denominator
        print("%d %d %d %d %d %s %s" % (
            q.a, q.b, q.c, q.stabilizer_order(), q.genus_character(args.D),
            mp.nstr(tau_re, args.digits), mp.nstr(tau_im, args.digits)))
    return 0


def _verify_duality(level: int | None, window: int, config: Config) -> list[str]:
    if level is not None:
        levels = [level]
    else:
        levels = list(GENUS_ZERO_PRIMES) + sorted(SEED_RANGE)
    out = []
    for lv in levels:
        w2 = 8 if lv in GENUS_ZERO_PRIMES else 5
        rep = duality_check(lv, w2, window, config)
        out.append(str(rep))
        if not rep.ok:
            raise _Failure(str(rep))
    return out


def _verify_constant(level: int | None, config: Config) -> list[str]:
    jobs = [(5, 8), (20, 5)]
    if level is not None:
        jobs = [(level, 8 if level in GENUS_ZERO_PRIMES else 5)]
    out = []
    for lv, w2 in jobs:
        comp = 4 - w2
        if lv in GENUS_ZERO_PRIMES:
            fam = integer_family_rows(lv, w2, -8, 14)
            zero = integer_zero_rows(lv, comp, -12, 10)
        else:
            fam = plus_family_rows(lv, w2, -8, 14, config)
            zero = plus_zero_rows(lv, comp, -12, 10, config)
        pairs = 0
        for f in fam[:4]:
            for g in zero[:4]:
                rep = constant_term_check(f, g, lv)
                if not rep.ok:
                    raise _Failure(
                        "constant term of poles (%d, %d) pairing at level %d: %s"
                        % (-f.lead, -g.lead, lv, rep.constant))
                pairs += 1
        out.append("constant terms at level %d weight2 (%d, %d): %d products vanish"
                   % (lv, w2, comp, pairs))
    return out


def _verify_integrality(level: int | None, config: Config) -> list[str]:
    jobs = [(12, 5), (20, 5), (28, 5), (28, 9), (52, 5)]
    if level is not None:
        jobs = [j for j in jobs if j[0] == level] or [(level, 5)]
    out = []
    for lv, w2 in jobs:
        rows = plus_family_rows(lv, w2, -12, 32, config)
        halved = lv == 28 and w2 % 12 == 5
        seen_half = False
        for r in rows:
            for e in range(r.lead, r.trunc):
                den = r.coef(e).denominator
                if den == 1:
                    continue
                if halved and den == 2:
                    seen_half = True
                    continue
                raise _Failure(
                    "coefficient q^%d of the lead %d member at level %d "
                    "weight2 %d has denominator %d" % (e, r.lead, lv, w2, den))
        tag = "integers"
        if halved:
            tag = "half-integers" if seen_half else "integers (no denominator hit)"
        out.append("family at level %d weight2 %d: %s" % (lv, w2, tag))
    return out


def _verify_traces(config: Config) -> list[str]:
    f = integer_family_element(5, -4, 2, _INPUT_WINDOW)
    image = zagier_lift_neg_weight_image(f, 5, 2, 1, 16, config).image
    out = []
    for d in (-4, -11):
        got = normalized_trace(f, 2, d, 1, 5, 96)
        want = image.coef(-d)
        if abs(got - mpf(want.numerator) / want.denominator) > config.tolerance:
            raise _Failure("trace at d=%d is %s, lift coefficient says %s"
                           % (d, mp.nstr(got, 10), want))
        out.append("trace d=%d matches the lift coefficient %s" % (d, want))
    return out


class _Failure(Exception):
    pass


def cmd_verify(args, config: Config) -> int:
    suites = {
        "duality": lambda: _verify_duality(args.level, args.window, config),
        "constant": lambda: _verify_constant(args.level, config),
        "integrality": lambda: _verify_integrality(args.level, config),
        "traces": lambda: _verify_traces(config),
    }
    names = [args.suite] if args.suite else list(suites)
    try:
        for name in names:
            for line in suites[name]():
                print("ok:", line)
    except _Failure as exc:
        print("FAIL:", exc, file=sys.stderr)
        return 1
    except Exception as exc:  # corrupted seed data and the like
        print("FAIL:", exc, file=sys.stderr)
        return 1
    return 0


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="weakforms", description=__doc__)
    top.add_argument("--config", help="JSON config file (or WEAKFORMS_CONFIG)")
    sub = top.add_subparsers(dest="command", required=True)

    b = sub.add_parser("basis", help="print a canonical family element")
    b.add_argument("--level", type=int, required=True)
    b.add_argument("--weight2", type=int, required=True,
                   help="twice the weight")
    b.add_argument("--m", type=int, required=True,
                   help="pole order (negative for a holomorphic member)")
    b.add_argument("--zero", action="store_true",
                   help="use the vanishing-at-0 subfamily")
    b.add_argument("--trunc", type=int)
    b.set_defaults(func=cmd_basis)

    l = sub.add_parser("lift", help="half-integral image of an input form")
    l.add_argument("--p", type=int, required=True, choices=GENUS_ZERO_PRIMES)
    l.add_argument("--s", type=int, required=True)
    l.add_argument("--D", type=int, required=True)
    l.add_argument("--principal", help="inline principal part, e.g. '2:1,1:-3/2'")
    l.add_argument("--principal-file", help="file of 'order coefficient' lines")
    l.add_argument("--trunc", type=int)
    l.add_argument("--precision", type=int,
                   help="bits for the correction traces (positive-weight case)")
    l.set_defaults(func=cmd_lift)

    t = sub.add_parser("trace", help="one normalized twisted trace")
    t.add_argument("--p", type=int, required=True, choices=GENUS_ZERO_PRIMES)
    t.add_argument("--s", type=int, required=True)
    t.add_argument("--D", type=int, required=True)
    t.add_argument("--d", type=int, required=True)
    t.add_argument("--principal", help="inline principal part of the input form")
    t.add_argument("--principal-file")
    t.add_argument("--precision", type=int)
    t.set_defaults(func=cmd_trace)

    c = sub.add_parser("classes", help="Heegner form classes at a discriminant")
    c.add_argument("--delta", type=int, required=True)
    c.add_argument("--level", type=int, required=True)
    c.add_argument("--D", type=int, default=1,
                   help="fundamental discriminant for the genus character")
    c.add_argument("--digits", type=int, default=10)
    c.add_argument("--precision", type=int)
    c.set_defaults(func=cmd_classes)

    v = sub.add_parser("verify", help="run identity suites")
    v.add_argument("suite", nargs="?",
                   choices=["duality", "constant", "integrality", "traces"])
    v.add_argument("--level", type=int)
    v.add_argument("--window", type=int, default=8)
    v.set_defaults(func=cmd_verify)
    return top


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config)
        return args.func(args, config)
    except (ValueError, RuntimeError, OSError) as exc:
        print("error:", exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
