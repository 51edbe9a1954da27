"""Command-line front end.

Exit codes: 0 success, 2 usage/parse error, 3 inadmissible or invalid input,
4 verification mismatch, 5 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import invariants as inv
from .braid import OrbitSet, lorenz_braid, pair_orbits, renorm_template
from .errors import LorenzError, WordParseError
from .symbolic import (
    DEFAULT_LENGTH_CAP,
    find_violation,
    is_maximal,
    is_minimal,
    is_rotation,
    parse_pair,
    parse_word,
    star,
    star_power,
    tail_length,
)
from .verify import DEFAULT_SEED, VerifyConfig, growth_table, run_suite


class Outcome:
    """What a command produced: a result document, text lines and an exit code."""

    def __init__(self, result: dict, lines: list[str], code: int = 0, diagnostics: str = ""):
        self.result = result
        self.lines = lines
        self.code = code
        self.diagnostics = diagnostics


def _dec(value: int) -> str:
    return str(value)


def _sigma(word: list[int]) -> str:
    return " ".join(f"σ{i}" for i in word) if word else "(empty)"


def _split_pair(text: str):
    parts = text.split(",")
    if len(parts) != 2:
        raise WordParseError(f"expected 'X,Y', got {text!r}")
    return parse_word(parts[0]), parse_word(parts[1])


def _aligned(rows: list[tuple[str, object]]) -> list[str]:
    width = max(len(k) for k, _ in rows)
    return [f"{k.ljust(width)}  {v}" for k, v in rows]


def _link_json(report: inv.InvariantReport) -> dict:
    return {
        "strands": report.string_index,
        "string_index": _dec(report.string_index),
        "crossings": _dec(report.crossing_number),
        "linking": {f"({a},{b})": _dec(v) for (a, b), v in sorted(report.linking.items())},
        "trip": list(report.trip),
        "components": report.components,
        "genus": _dec(report.genus),
    }


def cmd_check(args) -> Outcome:
    x, y = _split_pair(args.pair)
    violation = find_violation(x, y)
    result = {
        "admissible": violation is None,
        "maximal_X": is_maximal(x),
        "minimal_Y": is_minimal(y),
    }
    rows = [("admissible", "yes" if violation is None else "no")]
    if violation is None:
        m = tail_length(x, y)
        tail = x[len(x) - m - 1]
        degenerate = is_rotation(x, y)
        result.update({"m": m, "tail_symbol": tail, "degenerate": degenerate})
        rows += [("tail length m", m), ("tail symbol", tail), ("degenerate", degenerate)]
    else:
        result["violation"] = {
            "word": violation.word,
            "index": violation.index,
            "requirement": violation.requirement,
        }
        rows.append(("violation", str(violation)))
    rows += [("X maximal", result["maximal_X"]), ("Y minimal", result["minimal_Y"])]
    if violation is not None:
        return Outcome(result, _aligned(rows), 3, str(violation))
    return Outcome(result, _aligned(rows))


def cmd_star(args) -> Outcome:
    pair = parse_pair(args.pair)
    if args.word is not None:
        if args.inner is not None:
            raise WordParseError("give either a word or --inner, not both")
        w = star(pair, parse_word(args.word))
        return Outcome({"word": str(w), "length": len(w)}, [str(w)])
    if args.inner is None:
        raise WordParseError("star needs a word or --inner S,W")
    inner = parse_pair(args.inner)
    out = star_power(pair, inner, args.power, args.length_cap)
    return Outcome(
        {"X": str(out.X), "Y": str(out.Y), "m": out.m, "tail_symbol": out.tail_symbol},
        [str(out.X), str(out.Y)],
    )


def cmd_braid(args) -> Outcome:
    orbits = OrbitSet(tuple(parse_word(w) for w in args.words))
    br = lorenz_braid(orbits)
    report = inv.direct_report(orbits)
    word = br.word
    result = {
        "strands": br.n,
        "pi": br.pi,
        "word": word,
        "components": br.component_of,
        "crossings": _dec(report.crossing_number),
        "linking": {f"({a},{b})": _dec(v) for (a, b), v in report.linking.items()},
        "trip": report.trip,
        "genus": _dec(report.genus),
    }
    rows = [
        ("strands", br.n),
        ("pi", br.pi),
        ("word", _sigma(word)),
        ("components", br.component_of),
        ("crossings", report.crossing_number),
    ]
    rows += [(f"linking {a},{b}", v) for (a, b), v in report.linking.items()]
    rows += [("trip", report.trip), ("genus", report.genus)]
    return Outcome(result, _aligned(rows))


def cmd_template(args) -> Outcome:
    pair = parse_pair(args.pair)
    tw = renorm_template(pair)
    gens = [
        {"gen": "sigma", "index": i} for i in tw.sigmas
    ] + [{"gen": "beta", "index": tw.branch, "sign": "+" if tw.sign > 0 else "-"}]
    result = {"strips": tw.strips, "generators": gens}
    return Outcome(result, _aligned([("strips", tw.strips), ("word", str(tw))]))


def _report_rows(label: str, report: inv.InvariantReport) -> list[tuple[str, object]]:
    rows = [
        ("string index", report.string_index),
        ("crossings", report.crossing_number),
        ("components", report.components),
    ]
    rows += [(f"linking {a},{b}", v) for (a, b), v in sorted(report.linking.items())]
    rows += [("trip", report.trip), ("braid index", report.braid_index), ("genus", report.genus)]
    return [(f"{label} {k}" if label else k, v) for k, v in rows]


def cmd_invariants(args) -> Outcome:
    if len(args.targets) == 1 and "," in args.targets[0]:
        pair = parse_pair(args.targets[0])
        if args.word is not None:
            s = parse_word(args.word)
            closed = lambda: inv.closed_form_knot_report(pair, s)  # noqa: E731
            direct = lambda: inv.direct_report(OrbitSet((star(pair, s),)))  # noqa: E731
            mode_input = {"pair": str(pair), "word": str(s)}
        elif args.inner is not None:
            inner = parse_pair(args.inner)
            n = args.power

            def closed():
                return inv.closed_form_report(pair, inner, n)

            def direct():
                return inv.direct_report(pair_orbits(star_power(pair, inner, n, args.length_cap)))

            mode_input = {"pair": str(pair), "inner": str(inner), "power": n}
        else:
            raise WordParseError("a pair needs --inner S,W or --word S")
    else:
        if any("," in t for t in args.targets):
            raise WordParseError("give either one pair X,Y or a list of words")
        orbits = OrbitSet(tuple(parse_word(w) for w in args.targets))
        report = inv.direct_report(orbits)
        return Outcome(
            {"input": {"words": [str(w) for w in orbits.words]}, "mode": "direct", **_link_json(report)},
            _aligned(_report_rows("", report)),
        )

    if args.both:
        c, d = closed(), direct()
        match = c.values() == d.values()
        result = {
            "input": mode_input,
            "mode": "both",
            "closed_form": _link_json(c),
            "direct": _link_json(d),
            "match": match,
        }
        rows = _report_rows("closed-form", c) + _report_rows("direct", d) + [("match", match)]
        code = 0 if match else 4
        return Outcome(result, _aligned(rows), code, "" if match else "closed form and direct values differ")
    report = closed()
    return Outcome(
        {"input": mode_input, "mode": "closed-form", **_link_json(report)},
        _aligned(_report_rows("", report)),
    )


def cmd_verify(args) -> Outcome:
    config = VerifyConfig(
        seed=args.seed,
        trials=args.trials,
        max_outer_len=args.max_outer,
        max_inner_len=args.max_inner,
        max_power=args.max_power,
        length_cap=args.length_cap,
        require_nondegenerate=args.nondegenerate,
    )
    report = run_suite(config)
    doc = report.to_dict(with_time=not args.no_time)
    lines = [f"{'formula':22} {'pass':>6} {'fail':>6} {'skip':>6}"]
    for name, t in report.formulas.items():
        lines.append(f"{name:22} {t.passed:6d} {t.failed:6d} {t.skipped:6d}")
        if t.counterexample:
            lines.append(f"  first counterexample: {json.dumps(t.counterexample)}")
    if not args.no_time:
        lines.append(f"wall clock {report.seconds:.2f}s")
    lines.append("all formulas agree" if report.ok else "MISMATCH FOUND")
    return Outcome(doc, lines, 0 if report.ok else 4, "" if report.ok else "verification found a mismatch")


def _frac(f) -> str | None:
    return None if f is None else f"{f.numerator}/{f.denominator}"


def cmd_growth(args) -> Outcome:
    pair = parse_pair(args.pair)
    inner = parse_pair(args.inner)
    rows = growth_table(pair, inner, args.n_max, args.oracle_cap)
    doc_rows = []
    lines = [
        f"{'n':>3} {'strands':>14} {'crossings':>22} {'trip':>20} {'genus':>22} "
        f"{'N ratio':>10} {'g ratio':>10} {'t ratio':>10}  oracle"
    ]
    failed = False
    for r in rows:
        doc_rows.append(
            {
                "n": r.n,
                "string_index": _dec(r.string_index),
                "crossings": _dec(r.crossings),
                "trip": [_dec(t) for t in r.trip],
                "genus": _dec(r.genus),
                "string_ratio": _frac(r.string_ratio),
                "genus_ratio": _frac(r.genus_ratio),
                "trip_ratio": _frac(r.trip_ratio),
                "verified": r.verified,
            }
        )
        failed |= r.verified is False
        oracle = {True: "ok", False: "MISMATCH", None: "unverified row"}[r.verified]

        def fmt(f):
            return f"{float(f):10.6f}" if f is not None else f"{'-':>10}"

        lines.append(
            f"{r.n:3d} {r.string_index:14d} {r.crossings:22d} {str(r.trip):>20} {r.genus:22d} "
            f"{fmt(r.string_ratio)} {fmt(r.genus_ratio)} {fmt(r.trip_ratio)}  {oracle}"
        )
    return Outcome({"rows": doc_rows}, lines, 4 if failed else 0, "growth table row mismatch" if failed else "")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON document")

    parser = argparse.ArgumentParser(
        prog="lorenzlinks",
        description="Lorenz knots and links from renormalizable kneading pairs.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="admissibility of a pair X,Y")
    p.add_argument("pair")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("star", parents=[common], help="*-product of a pair with a word or pair")
    p.add_argument("pair")
    p.add_argument("word", nargs="?")
    p.add_argument("--inner")
    p.add_argument("--power", type=int, default=1)
    p.add_argument("--length-cap", type=int, default=DEFAULT_LENGTH_CAP)
    p.set_defaults(func=cmd_star)

    p = sub.add_parser("braid", parents=[common], help="Lorenz braid of one or more words")
    p.add_argument("words", nargs="+")
    p.set_defaults(func=cmd_braid)

    p = sub.add_parser("template", parents=[common], help="renormalization subtemplate of X,Y")
    p.add_argument("pair")
    p.set_defaults(func=cmd_template)

    p = sub.add_parser("invariants", parents=[common], help="invariants, closed form or direct")
    p.add_argument("targets", nargs="+", help="either one pair X,Y or a list of words")
    p.add_argument("--inner")
    p.add_argument("--word")
    p.add_argument("--power", type=int, default=1)
    p.add_argument("--both", action="store_true", help="also compute directly and compare")
    p.add_argument("--length-cap", type=int, default=DEFAULT_LENGTH_CAP)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("verify", parents=[common], help="randomised oracle cross-checks")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--max-outer", type=int, default=8)
    p.add_argument("--max-inner", type=int, default=6)
    p.add_argument("--max-power", type=int, default=3)
    p.add_argument("--length-cap", type=int, default=DEFAULT_LENGTH_CAP)
    p.add_argument("--nondegenerate", action="store_true", help="resample degenerate pairs")
    p.add_argument("--no-time", action="store_true", help="omit wall-clock time from the output")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("growth", parents=[common], help="invariants along (X,Y)*(S,W)^n")
    p.add_argument("pair")
    p.add_argument("--inner", required=True)
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--oracle-cap", type=int, default=DEFAULT_LENGTH_CAP)
    p.set_defaults(func=cmd_growth)

    return parser


def _input_of(args) -> dict:
    skip = {"func", "json", "command"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        outcome = args.func(args)
    except LorenzError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        result = outcome.result
        doc = {"command": args.command, "input": result.pop("input", _input_of(args)), "result": result}
        print(json.dumps(doc, indent=2))
    else:
        print("\n".join(outcome.lines))
    if outcome.diagnostics:
        print(f"error: {outcome.diagnostics}", file=sys.stderr)
    return outcome.code


if __name__ == "__main__":
    sys.exit(main())
