"""Command-line entry point ``fistab``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .exactlin import KERNEL
from .fimod import HorizonExhausted, InvalidModule, validate


def _pair(text: str) -> tuple[int, int]:
    a, b = text.split(",")
    return int(a), int(b)


def _triple(text: str) -> tuple[int, int, int]:
    parts = [int(x) for x in text.split(",")]
    if len(parts) != 3 or min(parts) < 0:
        raise argparse.ArgumentTypeError("expected kmax,rmax,lmax with nonnegative entries")
    return tuple(parts)


def _field_arg(text: str):
    from .exactlin import FieldSpec

    if text in ("Q", "rationals"):
        return FieldSpec.rationals()
    return FieldSpec.prime(int(text.lstrip("p")))


def cmd_validate(args) -> int:
    try:
        v = io.load_module(args.file)
    except (InvalidModule, KeyError, ValueError) as exc:
        print(f"invalid: {exc}")
        return 1
    viol = validate(v)
    for line in viol:
        print(line)
    print(f"{v!r}: {'ok' if not viol else f'{len(viol)} violation(s)'}")
    return 0 if not viol else 1


def invariants_of(v) -> dict:
    from .fihom import regularity_from_syzygies, t_i
    from .fimod import degree, h0_degree
    from .localcoh import h_table
    from .polystab import stable_degree

    out: dict = {"name": v.name, "horizon": v.horizon, "dims": list(v.dims)}

    def put(key, fn):
        try:
            out[key] = fn()
        except HorizonExhausted as exc:
            out[key] = {"error": str(exc)}

    put("degree", lambda: degree(v).to_json())
    put("h0", lambda: h0_degree(v).to_json())
    put("stable_degree", lambda: stable_degree(v).to_json())
    put("t", lambda: [t_i(v, i).to_json() for i in range(4)])
    put("reg_syzygies", lambda: regularity_from_syzygies(v).to_json())
    put("local_cohomology", lambda: h_table(v).to_json())
    return out


def cmd_invariants(args) -> int:
    v = io.load_module(args.file)
    viol = validate(v)
    if viol:
        print("\n".join(viol), file=sys.stderr)
        return 1
    inv = invariants_of(v)
    if args.json:
        sys.stdout.write(io.dumps(inv))
        return 0

    def fmt(cv):
        if "error" in cv:
            return f"n/a ({cv['error']})"
        return f"{cv['value']}{'' if cv['certified'] else ' (uncertified)'}"

    print(f"module         {inv['name'] or '-'}  N={inv['horizon']}  dims={inv['dims']}")
    for key in ("degree", "h0", "stable_degree", "reg_syzygies"):
        print(f"{key:<15}{fmt(inv[key])}")
    if isinstance(inv["t"], list):
        print(f"{'t_0..t_3':<15}{[t['value'] for t in inv['t']]}")
    lc = inv["local_cohomology"]
    if "error" not in lc:
        print(f"{'h^j':<15}{[h['value'] for h in lc['h']]}")
        print(f"{'hmax':<15}{fmt(lc['hmax'])}")
        print(f"{'crit':<15}{'undefined' if lc['crit'] is None else fmt(lc['crit'])}")
        print(f"{'reg_local':<15}{fmt(lc['reg_local'])}")
    return 0


def cmd_check(args) -> int:
    from .suites import SUITES, SuiteConfig, run_suite

    names = SUITES if args.suite == "all" else [args.suite]
    cfg = SuiteConfig(seed=args.seed, corpus=args.corpus, grid=args.grid, horizon=args.horizon,
                      field=args.field, dump_dir=args.dump)
    ok = True
    reports = []
    for name in names:
        rep = run_suite(name, cfg)
        reports.append(rep.to_json())
        s = rep.summary
        extra = f" non_acyclic={s['non_acyclic']}" if "non_acyclic" in s else ""
        print(f"{'PASS' if rep.ok else 'FAIL'} {name}: {s['pass']} pass, {s['fail']} fail, {s['skip']} skip, "
              f"{s['cases']} cases{extra} [{rep.timing['seconds']}s]")
        for c in rep.cases:
            if c["status"] == "fail":
                print(f"  fail {c['id']}: {json.dumps(c['detail'], sort_keys=True)[:400]}")
        ok = ok and rep.ok
    if args.output:
        doc = reports[0] if len(reports) == 1 else {"reports": reports}
        Path(args.output).write_text(io.dumps(doc))
    return 0 if ok else 1


def cmd_gen(args) -> int:
    from .fixtures import fixture

    v = fixture(args.kind, _field_arg(args.field), args.horizon)
    viol = validate(v)
    if viol:
        print("\n".join(viol), file=sys.stderr)
        return 1
    io.save_module(v, args.output)
    print(f"wrote {v!r} to {args.output}")
    return 0


def cmd_ranges(args) -> int:
    from .ranges import compare_thmC_rw, format_table, range_table

    k, r, L = args.table
    rows = range_table(k, r, L)
    cmp = compare_thmC_rw(k, r, L)
    if args.json:
        sys.stdout.write(io.dumps({"rows": rows, "iso_violations": cmp.iso_violations,
                                   "surj_violations": cmp.surj_violations}))
    else:
        print(format_table(rows))
        print(f"{cmp.cases} cases, {len(cmp.iso_violations)} iso and {len(cmp.surj_violations)} surj "
              f"entries where the new range is larger")
    return 0 if cmp.ok else 1


def cmd_report(args) -> int:
    from .suites import merge_reports

    docs = []
    for path in args.files:
        d = json.loads(Path(path).read_text())
        docs.extend(d["reports"] if "reports" in d else [d])
    merged = merge_reports(docs)
    text = io.dumps(merged)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if merged["pass"] else 1


def build_parser() -> argparse.ArgumentParser:
    from .suites import SUITES

    p = argparse.ArgumentParser(prog="fistab", description=f"FI-module invariants (linear algebra kernel: {KERNEL})")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("validate", help="check the structure of a module file")
    s.add_argument("file")
    s.set_defaults(fn=cmd_validate)

    s = sub.add_parser("invariants", help="compute the invariants of a module file")
    s.add_argument("file")
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_invariants)

    s = sub.add_parser("check", help="run an invariant suite")
    s.add_argument("--suite", required=True, choices=list(SUITES) + ["all"])
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--corpus", type=int, default=200)
    s.add_argument("--grid", type=_pair, default=(4, 7), help="R,B: sweep r in -1..R and bound in 0..B")
    s.add_argument("--horizon", type=int, default=10)
    s.add_argument("--field", default="p32003", help="pNNN for a prime field, Q for the rationals")
    s.add_argument("--dump", help="directory for counterexample module files")
    s.add_argument("-o", "--output", help="write the JSON report here")
    s.set_defaults(fn=cmd_check)

    s = sub.add_parser("gen", help="write a fixture module to a file")
    s.add_argument("--kind", required=True, help="e.g. free(2), diamond_V, sum(syzygy_Z,atomic_torsion(1))")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--horizon", type=int, default=10)
    s.add_argument("--field", default="p32003")
    s.set_defaults(fn=cmd_gen)

    s = sub.add_parser("ranges", help="compare the stability ranges on a grid")
    s.add_argument("--table", type=_triple, required=True, metavar="KMAX,RMAX,LMAX")
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_ranges)

    s = sub.add_parser("report", help="merge suite reports")
    s.add_argument("--merge", dest="files", nargs="+", required=True, metavar="REPORT")
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_report)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
