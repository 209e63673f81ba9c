"""``telescurve`` command line.

Exit codes: 0 ok, 1 malformed input, 2 invalid sequence, 3 k out of range,
4 a check failed, 5 family not supported numerically.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .errors import (
    InadmissibleLambda,
    InvalidSequence,
    MalformedSpec,
    OutOfRangeK,
    TelescurveError,
    UnsupportedFamily,
)
from .fs import inversion_formula
from .semigroup import monomial_basis, validate_telescopic, young_diagram

EXIT_OK, EXIT_MALFORMED, EXIT_INVALID, EXIT_RANGE, EXIT_FAILED, EXIT_UNSUPPORTED = range(6)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_MALFORMED, f"{self.prog}: error: {message}\n")


def parse_seq(text: str):
    try:
        seq = [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise MalformedSpec(f"cannot parse sequence {text!r}") from None
    if not seq:
        raise MalformedSpec("empty sequence")
    return seq


def mono_text(exps) -> str:
    parts = [f"x{k}" + (f"^{e}" if e > 1 else "") for k, e in enumerate(exps, start=1) if e]
    return "*".join(parts) or "1"


def describe(seq) -> dict:
    sg = validate_telescopic(seq)
    mons = monomial_basis(sg, 2 * sg.genus)
    return {
        "sequence": list(sg.a),
        "telescopic": True,
        "d": list(sg.d),
        "c": list(sg.c[1:]),
        "genus": sg.genus,
        "gaps": list(sg.gaps),
        "partition": list(sg.partition),
        "weight": sum(sg.partition),
        "monomials": [{"n": n, "monomial": mono_text(e), "order": N}
                      for n, (e, N) in enumerate(mons, start=1)],
    }


def _describe_text(d) -> str:
    lines = [
        f"sequence: {','.join(map(str, d['sequence']))}",
        "telescopic: yes",
        f"d: {','.join(map(str, d['d']))}",
        f"c: {','.join(map(str, d['c']))}",
        f"genus: {d['genus']}",
        f"gaps: {','.join(map(str, d['gaps']))}",
        f"partition: {','.join(map(str, d['partition']))}",
        "young diagram:",
        young_diagram(d["partition"]),
        "monomials (phi_n, pole order):",
    ]
    lines += [f"  phi_{m['n']} = {m['monomial']}  N={m['order']}" for m in d["monomials"]]
    return "\n".join(lines)


def cmd_describe(args) -> int:
    d = describe(parse_seq(args.seq))
    print(json.dumps(d, sort_keys=True) if args.json else _describe_text(d))
    return EXIT_OK


def cmd_formulas(args) -> int:
    sg = validate_telescopic(parse_seq(args.seq))
    doc = inversion_formula(sg, args.k)
    if args.format == "json":
        print(json.dumps(doc.to_dict(), sort_keys=True))
    else:
        sys.stdout.write(doc.render(args.format))
    return EXIT_OK


def _seed(args) -> int:
    env = os.environ.get("TELESCURVE_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise MalformedSpec(f"TELESCURVE_SEED={env!r} is not an integer") from None
    return args.seed


def _checks(args, default):
    if not args.checks:
        return default
    return tuple(c.strip() for c in args.checks.split(",") if c.strip())


def _spec(args):
    from .specfile import CurveSpecFile

    if args.spec:
        return CurveSpecFile.load(args.spec)
    if args.seq:
        return CurveSpecFile(parse_seq(args.seq))
    raise MalformedSpec("give --spec or --seq")


def _emit(rep, seed, timings) -> int:
    for r in rep:
        if r.seed is None:
            r.seed = seed
        print(r.to_json(timings))
    print(rep.summary(), file=sys.stderr)
    return EXIT_OK if rep.passed else EXIT_FAILED


def _load_or_compute_periods(spec, cache: Path | None, seed: int):
    from .numerics.periods import PeriodMatrices
    from .numerics.verify import NumericSetup

    pm = None
    if cache is not None and cache.exists():
        try:
            pm = PeriodMatrices.from_json(cache.read_text())
        except (KeyError, ValueError, TypeError) as exc:
            raise MalformedSpec(f"{cache}: {exc}") from exc
        if list(pm.sequence) != list(spec.sequence):
            raise MalformedSpec(f"{cache} belongs to sequence {pm.sequence}")
    setup = NumericSetup.build(spec.sequence, spec.numeric_lambdas(), seed=seed, periods=pm)
    if cache is not None and pm is None:
        cache.write_text(setup.pm.to_json())
    return setup


def cmd_verify(args) -> int:
    seed = _seed(args)
    spec = _spec(args)
    if args.mode == "symbolic":
        from .suites import SYMBOLIC_CHECKS, run_symbolic_suite

        rep = run_symbolic_suite(spec.family(), args.order, _checks(args, SYMBOLIC_CHECKS),
                                 seed=seed, timings=args.timings)
        return _emit(rep, seed, args.timings)

    import time

    from .numerics.model import NumericCurve
    from .numerics.verify import NUMERIC_CHECKS, run_numeric_suite

    NumericCurve(spec.sequence, spec.numeric_lambdas())  # fail fast on unsupported families
    cache = Path(args.periods) if args.periods else spec.periods
    start = time.perf_counter()
    setup = _load_or_compute_periods(spec, cache, seed)
    rep = run_numeric_suite(setup, seed, _checks(args, NUMERIC_CHECKS), args.tol)
    if args.timings:
        elapsed = time.perf_counter() - start
        for r in rep:
            r.runtime = elapsed
    return _emit(rep, seed, args.timings)


def cmd_periods(args) -> int:
    spec = _spec(args)
    from .numerics.verify import NumericSetup

    setup = NumericSetup.build(spec.sequence, spec.numeric_lambdas(), seed=_seed(args))
    text = setup.pm.to_json()
    if args.out:
        Path(args.out).write_text(text)
    else:
        print(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="telescurve", description="Telescopic curves: invariants, inversion "
                                                "formulas and their verification.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("describe", help="semigroup invariants of a sequence")
    d.add_argument("--seq", required=True, help="comma separated generators, e.g. 4,6,5")
    d.add_argument("--json", action="store_true")
    d.set_defaults(func=cmd_describe)

    f = sub.add_parser("formulas", help="inversion formulas for a given k")
    f.add_argument("--seq", required=True)
    f.add_argument("--k", type=int, required=True)
    f.add_argument("--format", choices=("text", "latex", "json"), default="text")
    f.set_defaults(func=cmd_formulas)

    v = sub.add_parser("verify", help="run the symbolic or numeric check suites")
    v.add_argument("mode", choices=("symbolic", "numeric"))
    v.add_argument("--spec", help="curve-spec JSON file")
    v.add_argument("--seq", help="sequence (symbolic lambdas) instead of --spec")
    v.add_argument("--order", type=int, default=12, help="series truncation order")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tol", type=float, default=None, help="override every numeric tolerance")
    v.add_argument("--checks", help="comma separated subset of checks")
    v.add_argument("--periods", help="period cache JSON (read if present, else written)")
    v.add_argument("--timings", action="store_true", help="include runtimes in the report")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("periods", help="compute periods and write a cache file")
    c.add_argument("--spec")
    c.add_argument("--seq")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--out")
    c.set_defaults(func=cmd_periods)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OutOfRangeK as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RANGE
    except UnsupportedFamily as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except InvalidSequence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (MalformedSpec, InadmissibleLambda, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except TelescurveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
