"""Command-line front end: check | extract | gen | verify-theorem | report.

Exit codes: 0 = every verdict passed (skips allowed), 1 = some check
failed, 2 = usage or IO error.  Reports are JSON (schema 1) by default,
CSV with --csv; exact values are printed as integer/rational strings.
`JUNTA_FORGE_THREADS` caps worker fan-out in the sweep drivers.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from .junta import (
    E,
    HypothesisError,
    JuntaSpec,
    compute_regime_j,
    extract_biased_juntas,
    extract_hitting_juntas,
    extract_pair_juntas,
    residual,
)
from .oracles import (
    CorpusManifest,
    GeneratorConfig,
    emc_extremal,
    gen_cross_dependent_tuple,
    gen_cross_t_pair,
    gen_random_shifted,
    threshold_family,
)
from .properties import (
    HittingSystem,
    are_cross_t_intersecting,
    check_cross_agreeing,
    check_cross_union,
    check_hitting,
    is_cross_dependent,
)
from .report import Budget, Report
from .setcore import (
    FamilyFormatError,
    ResourceLimitError,
    SetFamily,
    binom,
    biased_measure,
    content_hash,
    load_family,
    save_family,
)
from .shifting import is_shifted
from .theorems import SweepOptions, run_theorem, theorem_names


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _fraction_list(text: str) -> tuple[Fraction, ...]:
    return tuple(_fraction(tok) for tok in text.split(",") if tok)


def _levels(text: str) -> tuple[int, ...]:
    out: set[int] = set()
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if "-" in tok:
            lo, hi = tok.split("-", 1)
            out.update(range(int(lo), int(hi) + 1))
        else:
            out.add(int(tok))
    if not out:
        raise argparse.ArgumentTypeError("empty level set")
    return tuple(sorted(out))


def _bigc(text: str):
    if text == "e":
        return E
    return _fraction(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="junta-forge",
        description="Exact checks, junta extraction, and verification sweeps for set families.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--csv", action="store_true", help="render the report as CSV")
        p.add_argument("--out", type=Path, help="directory for artifacts and the report file")
        p.add_argument("--budget", type=float, help="wall-clock budget in seconds; extra work is skipped")

    p_check = sub.add_parser("check", help="decide a property of family files")
    p_check.add_argument(
        "property",
        choices=[
            "cross-t",
            "cross-dependent",
            "cross-union",
            "cross-agreeing",
            "hitting",
            "shifted",
        ],
    )
    p_check.add_argument("families", nargs="+", help="family files (.fam or .json)")
    p_check.add_argument("--t", type=int, help="intersection threshold (cross-t / cross-agreeing)")
    p_check.add_argument("--q", type=_fraction, help="offset for cross-union / hitting")
    p_check.add_argument("--alpha", type=_fraction_list, help="comma-separated weights")
    p_check.add_argument("--levels", type=_levels, help="level set, e.g. 1,2,5-9")
    add_common(p_check)
    p_check.set_defaults(func=cmd_check)

    p_extract = sub.add_parser("extract", help="extract juntas from family files")
    p_extract.add_argument("mode", choices=["pair", "hitting", "biased"])
    p_extract.add_argument("families", nargs="+", help="family files")
    p_extract.add_argument("--t", type=int, help="cross-intersection threshold (pair mode)")
    p_extract.add_argument("--r", type=_fraction, default=Fraction(1), help="approximation exponent")
    p_extract.add_argument("--q", type=_fraction, default=Fraction(1), help="hyperplane offset")
    p_extract.add_argument("--alpha", type=_fraction_list, help="weights (hitting/biased)")
    p_extract.add_argument("--p", type=_fraction_list, help="biases p_i (biased mode)")
    p_extract.add_argument("--levels", type=_levels, help="level set")
    p_extract.add_argument("--regime", choices=["i", "ii", "iii"], default="iii")
    p_extract.add_argument("--eps", type=_fraction, help="epsilon for regimes i/ii")
    p_extract.add_argument("--bigc", type=_bigc, default=Fraction(2), help="C for regime iii (rational or 'e')")
    p_extract.add_argument("--skip-hypothesis", action="store_true", help="extract without verifying the hypothesis")
    add_common(p_extract)
    p_extract.set_defaults(func=cmd_extract)

    p_gen = sub.add_parser("gen", help="generate family files deterministically")
    p_gen.add_argument(
        "construction",
        choices=["emc-extremal", "random-shifted", "cross-t-pair", "cross-dependent", "threshold"],
    )
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--k", type=int, required=True)
    p_gen.add_argument("--s", type=int, default=2)
    p_gen.add_argument("--t", type=int, default=1)
    p_gen.add_argument("--j", type=int, default=1)
    p_gen.add_argument("--m", type=int, default=1)
    p_gen.add_argument("--samples", type=int, default=3)
    p_gen.add_argument("--density", type=_fraction, default=Fraction(1, 2))
    p_gen.add_argument("--seed", type=int, default=0)
    add_common(p_gen)
    p_gen.set_defaults(func=cmd_gen)

    p_verify = sub.add_parser("verify-theorem", help="run a named verification sweep")
    p_verify.add_argument("name", help="statement name (see --list)")
    p_verify.add_argument("--nmax", type=int)
    p_verify.add_argument("--xmax", type=int)
    p_verify.add_argument("--instances", type=int)
    p_verify.add_argument("--seed", type=int, default=0)
    add_common(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_report = sub.add_parser("report", help="summarize stored report files")
    p_report.add_argument("reports", nargs="+", help="report JSON files")
    p_report.add_argument("--csv", action="store_true", help="re-render all checks as CSV")
    p_report.set_defaults(func=cmd_report)

    return parser


def _emit(report: Report, args) -> int:
    text = report.render_csv() if args.csv else report.render_json()
    sys.stdout.write(text)
    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
        suffix = "csv" if args.csv else "json"
        (args.out / f"report.{suffix}").write_text(text, encoding="utf-8")
    return 1 if report.any_fail else 0


def _load_families(report: Report, paths) -> list[SetFamily]:
    fams = []
    for path in paths:
        fams.append(load_family(path))
        report.add_input_file(path)
    return fams


def cmd_check(args) -> int:
    report = Report(command=_echo(args))
    fams = _load_families(report, args.families)
    budget = Budget(args.budget)
    name = args.property
    t0 = time.monotonic()
    if budget.exhausted():
        report.check(name, None, skip_reason="budget")
        return _emit(report, args)
    if name == "cross-t":
        if args.t is None:
            raise UsageError("cross-t needs --t")
        if len(fams) != 2:
            raise UsageError("cross-t takes exactly two families")
        res = are_cross_t_intersecting(fams[0], fams[1], args.t)
        report.check(name, res.ok, witness=res.witness, values={"t": args.t}, time_s=time.monotonic() - t0)
    elif name == "cross-dependent":
        res = is_cross_dependent(fams)
        report.check(name, res.ok, witness=res.witness, time_s=time.monotonic() - t0)
    elif name == "cross-union":
        q = int(args.q if args.q is not None else 1)
        res = check_cross_union(fams, q)
        report.check(name, res.ok, witness=res.witness, values={"q": q}, time_s=time.monotonic() - t0)
    elif name == "cross-agreeing":
        if args.t is None:
            raise UsageError("cross-agreeing needs --t")
        res = check_cross_agreeing(fams, args.t)
        report.check(name, res.ok, witness=res.witness, values={"t": args.t}, time_s=time.monotonic() - t0)
    elif name == "hitting":
        alphas = args.alpha or (Fraction(1),) * len(fams)
        system = HittingSystem(alphas, args.q if args.q is not None else Fraction(1), levels=args.levels)
        res = check_hitting(system, fams)
        report.check(
            name,
            res.ok,
            witness=res.witness,
            values={"alpha": alphas, "q": system.q},
            time_s=time.monotonic() - t0,
        )
    elif name == "shifted":
        for f, path in zip(fams, args.families):
            report.check(f"shifted[{path}]", is_shifted(f), time_s=time.monotonic() - t0)
    return _emit(report, args)


def _write_junta(args, idx: int, J: JuntaSpec) -> str | None:
    if not args.out:
        return None
    args.out.mkdir(parents=True, exist_ok=True)
    path = args.out / f"junta-{idx}.json"
    path.write_text(json.dumps(J.to_json(), indent=1) + "\n", encoding="utf-8")
    return str(path)


def cmd_extract(args) -> int:
    report = Report(command=_echo(args))
    fams = _load_families(report, args.families)
    check_hyp = not args.skip_hypothesis
    t0 = time.monotonic()
    try:
        if args.mode == "pair":
            if len(fams) != 2:
                raise UsageError("pair mode takes exactly two families")
            if args.t is None:
                raise UsageError("pair mode needs --t")
            r = int(args.r)
            J, I = extract_pair_juntas(fams[0], fams[1], args.t, r, check_hypothesis=check_hyp)
            j = 2 * r - args.t - 1
            n = fams[0].n
            values = {
                "j": j,
                "residual-a": len(residual(fams[0], J)),
                "residual-b": len(residual(fams[1], I)),
                "bound-a": (1 << j) * binom(n - j, fams[0].k - r),
                "bound-b": (1 << j) * binom(n - j, fams[1].k - r),
            }
            for idx, spec in enumerate((J, I), start=1):
                path = _write_junta(args, idx, spec)
                if path:
                    values[f"junta-{idx}"] = path
            report.check("extract-pair", True, values=values, time_s=time.monotonic() - t0)
        else:
            biased = args.mode == "biased"
            s = len(fams)
            alphas = args.alpha or (Fraction(1),) * s
            if biased:
                if not args.p:
                    raise UsageError("biased mode needs --p with one bias per family")
                system = HittingSystem(alphas, args.q, levels=args.levels, biases=args.p)
                rates = args.p
            else:
                if any(f.k is None for f in fams):
                    raise UsageError("hitting mode needs k-uniform families")
                sizes = tuple(f.k for f in fams)
                system = HittingSystem(alphas, args.q, levels=args.levels, sizes=sizes)
                rates = sizes
            params = compute_regime_j(
                args.regime,
                s,
                alphas,
                rates,
                r=args.r,
                eps=args.eps,
                big_c=args.bigc,
                n=fams[0].n,
                biased=biased,
            )
            extract = extract_biased_juntas if biased else extract_hitting_juntas
            out = extract(system, fams, params, check_hypothesis=check_hyp)
            values = {"j": params.j, "sigma": params.sigma, "regime": params.regime}
            for idx, (f, J, hi) in enumerate(zip(fams, out.juntas, out.crossers), start=1):
                values[f"residual-{idx}"] = len(residual(f, J))
                if biased:
                    p_i = system.biases[idx - 1]
                    values[f"escaping-measure-{idx}"] = (
                        biased_measure(hi, p_i) if len(hi) else Fraction(0)
                    )
                else:
                    values[f"escaping-{idx}"] = len(hi)
                path = _write_junta(args, idx, J)
                if path:
                    values[f"junta-{idx}"] = path
            report.check("extract-" + args.mode, True, values=values, time_s=time.monotonic() - t0)
            if params.admissible:
                report.check("residual-bound", out.bound_checked, values={"r": params.r})
            else:
                report.check("residual-bound", None, skip_reason="inadmissible")
    except HypothesisError as exc:
        report.check(
            "extract-" + args.mode,
            False,
            witness=exc.witness,
            values={"error": str(exc)},
            time_s=time.monotonic() - t0,
        )
    return _emit(report, args)


def cmd_gen(args) -> int:
    report = Report(command=_echo(args))
    manifest = CorpusManifest()
    outdir = args.out or Path(".")
    outdir.mkdir(parents=True, exist_ok=True)
    cfg = GeneratorConfig(
        seed=args.seed,
        n=args.n,
        k=args.k,
        s=args.s,
        samples=args.samples,
        density=args.density,
        construction=args.construction,
    )
    transcript: list[str] = []
    name = args.construction
    if name == "emc-extremal":
        fams = [emc_extremal(args.n, args.k, args.s)]
        params = {"n": args.n, "k": args.k, "s": args.s}
    elif name == "random-shifted":
        fams = [gen_random_shifted(cfg, transcript)]
        params = {"n": args.n, "k": args.k, "samples": args.samples}
    elif name == "cross-t-pair":
        fams = list(gen_cross_t_pair(cfg, args.t, transcript))
        params = {"n": args.n, "k": args.k, "t": args.t}
    elif name == "cross-dependent":
        fams = gen_cross_dependent_tuple(cfg, transcript)
        params = {"n": args.n, "k": args.k, "s": args.s}
    elif name == "threshold":
        fams = [threshold_family(args.n, args.k, args.j, args.m)]
        params = {"n": args.n, "k": args.k, "j": args.j, "m": args.m}
    written = []
    for idx, fam in enumerate(fams, start=1):
        path = outdir / f"{name}-{idx}.fam"
        save_family(fam, str(path))
        written.append(str(path))
        manifest.record(name, args.seed, params, fam)
    manifest_path = outdir / "manifest.json"
    manifest_path.write_text(json.dumps(manifest.to_json(), indent=1) + "\n", encoding="utf-8")
    report.corpus.extend(manifest.to_json())
    report.check(
        "gen",
        True,
        values={
            "files": ", ".join(written),
            "manifest": str(manifest_path),
            "transcript": "; ".join(transcript) or "construction is hypothesis-free",
        },
    )
    return _emit(report, args)


def cmd_verify(args) -> int:
    report = Report(command=_echo(args))
    opts = SweepOptions(
        seed=args.seed,
        nmax=args.nmax,
        xmax=args.xmax,
        instances=args.instances,
        budget=Budget(args.budget) if args.budget is not None else None,
    )
    try:
        run_theorem(args.name, report, opts)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    return _emit(report, args)


def cmd_report(args) -> int:
    any_fail = False
    rows = []
    for path in args.reports:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        summary = data.get("summary", {})
        any_fail = any_fail or summary.get("fail", 0) > 0
        rows.append((path, data))
    if args.csv:
        import csv
        import io

        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["report", "name", "verdict", "witness", "time_s"])
        for path, data in rows:
            for check in data.get("checks", []):
                writer.writerow(
                    [path, check["name"], check["verdict"], check.get("witness", ""), check.get("time_s", "")]
                )
        sys.stdout.write(buf.getvalue())
    else:
        for path, data in rows:
            summary = data.get("summary", {})
            print(
                f"{path}: {summary.get('pass', 0)} pass, {summary.get('fail', 0)} fail, "
                f"{summary.get('skipped', 0)} skipped ({len(data.get('checks', []))} checks)"
            )
            for check in data.get("checks", []):
                if check["verdict"] != "pass":
                    print(f"  {check['name']}: {check['verdict']}")
    return 1 if any_fail else 0


class UsageError(Exception):
    pass


def _echo(args) -> list[str]:
    return ["junta-forge", *getattr(args, "_argv", [])]


def main(argv=None) -> int:
    parser = build_parser()
    raw = list(sys.argv[1:]) if argv is None else list(argv)
    args = parser.parse_args(raw)
    args._argv = raw
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FamilyFormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ResourceLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
