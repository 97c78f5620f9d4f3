"""``fano-lines`` command-line harness.

Exit codes: 0 when every check passes (or does not apply), 1 when a check
fails, 2 when the fixture cannot be read or parsed.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .fourfold import FixtureError, load
from .suites import FIELDS, GROUPS, FAIL, NA, SCHEMA, Context, run_checks

COMMANDS = {
    "validate": ("validate",),
    "phi": ("phi",),
    "phi-inv": ("phi-inv",),
    "roundtrip": ("roundtrip",),
    "local-eqs": ("local-eqs",),
    "sing-type": ("sing-type",),
    "divisors": ("divisors",),
    "equivariance": ("equivariance",),
}


def fixture_id(path, Y) -> str:
    return Y.name or Path(path).stem


def build_report(path, suites, seed: int, samples: int, field=None, prime=None):
    Y = load(path)
    primes = None
    if prime is not None:
        from .lattice import ORACLE_PRIMES

        primes = (prime,) + tuple(p for p in ORACLE_PRIMES if p != prime)
    ctx = Context(Y, seed=seed, samples=samples, field=field, primes=primes)
    records = run_checks(ctx, suites)
    report = {
        "schema": SCHEMA,
        "fixture": fixture_id(path, Y),
        "kind": Y.kind,
        "seed": seed,
        "samples": samples,
        "field": field or "all",
        "suites": list(suites),
        "checks": [r.to_json() for r in records],
        "summary": {
            "pass": sum(r.status == "pass" for r in records),
            "fail": sum(r.status == FAIL for r in records),
            "not_applicable": sum(r.status == NA for r in records),
        },
    }
    return report, records


def dumps(report) -> str:
    return json.dumps(report, indent=1, sort_keys=True, ensure_ascii=False) + "\n"


def summarise(report, records, out=None):
    out = out or sys.stdout
    print(f"{report['fixture']} ({report['kind']}), seed {report['seed']}, "
          f"{report['samples']} samples", file=out)
    width = max((len(r.name) for r in records), default=0)
    for r in records:
        print(f"  {r.status.upper():15s} {r.name:{width}s}  {r.runtime_ms:8.1f} ms", file=out)
    s = report["summary"]
    print(f"{s['pass']} passed, {s['fail']} failed, {s['not_applicable']} not applicable", file=out)


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fano-lines", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("fixture", help="path to a fixture JSON file")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=100)
    common.add_argument("--out", help="write the JSON report here")
    common.add_argument("--prime", type=int, help="first prime for the finite-field counting oracle")
    common.add_argument("--field", choices=FIELDS,
                        help="restrict sampled schemes to one coefficient field (default: all)")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=f"run the {name} checks")
    rp = sub.add_parser("report", parents=[common], help="run a suite group and write the full report")
    rp.add_argument("--suite", choices=sorted(GROUPS), default="all")
    return ap


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    suites = GROUPS[args.suite] if args.command == "report" else COMMANDS[args.command]
    if args.prime is not None and (args.prime < 5 or any(args.prime % d == 0 for d in range(2, int(args.prime ** 0.5) + 1))):
        print(f"error: --prime {args.prime} is not a prime > 3", file=sys.stderr)
        return 2
    try:
        report, records = build_report(args.fixture, suites, args.seed, args.samples, args.field, args.prime)
    except FixtureError as exc:
        print(f"error: invalid fixture {args.fixture}: field '{exc.field}' ({exc})", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: cannot read {args.fixture}: {exc.strerror}", file=sys.stderr)
        return 2
    summarise(report, records)
    if args.out:
        Path(args.out).write_text(dumps(report), encoding="utf-8")
    return 1 if report["summary"]["fail"] else 0


if __name__ == "__main__":
    raise SystemExit(main())
