"""Command line: ``rootsign {tables,sign,legendre,classify,verify,dump}``.

Exit codes: 0 success, 2 malformed input (bad flag, descriptor or label),
3 violated mathematical precondition (non-elliptic denominator, numerator
outside the normaliser, q not a unit, ...), 4 failed verification.
Every command accepts ``--format {text,json,csv}``.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from typing import List, Optional, Sequence, Tuple

from . import tables, verify
from .arith import sgn_eps_bruteforce, sgn_minus, sgn_plus
from .classify import (UnknownClass, b4_in_f4, class_names, classical_elliptic_2power, d8_in_e8,
                       exceptional_representative, registry_entry)
from .rootsys import Isometry, NotAnAutomorphism, RootSystem, build
from .rtheta import NotElliptic
from .signchar import NotNormalizing, NotStable, SignContext, a_coxeter, a_norm, minus_one
from .tables import numerator_isometry
from .weyl import CycleParseError, SignedPermutation, coxeter_partition, norm_partition

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_VERIFY = 0, 2, 3, 4
EXCEPTIONAL = ("G2", "F4", "E6", "E7", "E8")


class UsageError(ValueError):
    """Malformed command-line descriptor (exit code 2)."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


# ---------------------------------------------------------------- descriptors

def parse_system(text: str) -> Tuple[str, RootSystem]:
    """``A:n`` (n coordinates, type A_{n-1}), ``A<r>``, ``B<n>``, ``C<n>``, ``D<n>`` or an exceptional label."""
    m = re.fullmatch(r"A:(\d+)", text)
    if m:
        n = int(m.group(1))
        if n < 2:
            raise UsageError("A:n needs n >= 2")
        return text, build(f"A{n - 1}")
    try:
        return text, build(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def parse_partition(text: str) -> Tuple[int, ...]:
    if not re.fullmatch(r"\d+(\+\d+)*", text):
        raise UsageError(f"bad partition {text!r} (expected e.g. 4+2+1+1)")
    parts = tuple(int(x) for x in text.split("+"))
    if any(m < 1 for m in parts):
        raise UsageError("partition parts must be positive")
    return parts


def _embed(R: RootSystem, sp: SignedPermutation) -> Isometry:
    """A signed permutation of the classical coordinates, as an isometry of R."""
    if R.label == "F4":
        return b4_in_f4().push(sp)
    if R.label in ("E6", "E7", "E8"):
        return d8_in_e8().push(sp)
    if R.label == "G2":
        raise UsageError("G2 has no signed-permutation coordinates; use -1, s<k> or id")
    return sp.to_isometry()


def _cycles(R: RootSystem, text: str) -> Isometry:
    n = 4 if R.label == "F4" else (8 if R.label in ("E6", "E7", "E8") else R.ambient_dim)
    try:
        sp = SignedPermutation.parse(text, n)
    except CycleParseError as exc:
        raise UsageError(f"bad cycle notation {text!r}: {exc}") from None
    return _embed(R, sp)


def parse_class(R: RootSystem, text: str):
    """Return ``(w, registry entry or None)``."""
    if text == "-1":
        if R.label in EXCEPTIONAL:
            return exceptional_representative("-1", R.label).representative, registry_entry(R.label, "-1")
        return minus_one(R), None
    if R.label in EXCEPTIONAL:
        try:
            entry = registry_entry(R.label, text)
        except UnknownClass:
            if "(" in text and text[0] in "np":
                return _cycles(R, text), None
            raise UsageError(f"unknown {R.label} class {text!r}; known: {', '.join(class_names(R.label))}") from None
        return exceptional_representative(entry["name"], R.label).representative, entry
    fam = R.family
    if text in ("cox", "coxeter"):
        if fam == "A":
            return a_coxeter(R.ambient_dim), None
        return coxeter_partition((R.ambient_dim,)).to_isometry(), None
    if text[:1].isdigit():
        parts = parse_partition(text)
        if fam == "A" or sum(parts) != R.ambient_dim:
            raise UsageError(f"partition {text!r} does not describe a class of {R.label}")
        return coxeter_partition(parts).to_isometry(), None
    return _cycles(R, text), None


def parse_numerator(R: RootSystem, w: Isometry, entry: Optional[dict], text: str) -> Isometry:
    d = R.ambient_dim
    if text == "id":
        return Isometry.identity(d)
    if text == "-1":
        return Isometry.scalar(d, -1)
    if text == "w":
        return w
    m = re.fullmatch(r"s(\d+)", text)
    if m:
        k = int(m.group(1))
        if not 1 <= k <= R.rank:
            raise UsageError(f"simple reflection index must lie in 1..{R.rank}")
        return R.simple_reflection(k - 1)
    m = re.fullmatch(r"norm:([0-9+]+):(-?\d+)", text)
    if m:
        parts, q = parse_partition(m.group(1)), int(m.group(2))
        if R.family == "A":
            if parts != (d,):
                raise UsageError(f"type A norms take the single partition {d}")
            return a_norm(d, q)
        if R.label == "G2":
            raise UsageError("G2 has no norm numerators")
        n = 4 if R.label == "F4" else (8 if R.label in ("E6", "E7", "E8") else d)
        if sum(parts) != n:
            raise UsageError(f"partition must sum to {n}")
        return _embed(R, norm_partition(parts, q))
    if text.startswith("norm"):
        if entry is None or text not in [s["name"] for s in entry["numerators"]]:
            raise UsageError(f"bad norm descriptor {text!r} (expected norm:<partition>:<q>)")
    if entry is not None:
        for item in entry["numerators"]:
            if item["name"] == text:
                return numerator_isometry(R.label, R, item)
    if "(" in text:
        return _cycles(R, text)
    raise UsageError(f"unrecognised numerator {text!r}")


# ---------------------------------------------------------------- output

def emit(records: List[dict], fmt: str, out) -> None:
    """Write a list of flat records as aligned text, JSON or CSV."""
    if fmt == "json":
        out.write(json.dumps(records if len(records) != 1 else records[0], indent=1, sort_keys=True) + "\n")
        return
    if fmt == "csv":
        fields: List[str] = []
        for r in records:
            fields += [k for k in r if k not in fields]
        buf = io.StringIO()
        wr = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        wr.writeheader()
        for r in records:
            wr.writerow({k: _flat(v) for k, v in r.items()})
        out.write(buf.getvalue())
        return
    for i, r in enumerate(records):
        if i:
            out.write("\n")
        width = max(len(k) for k in r)
        for k, v in r.items():
            out.write(f"{k:<{width}}  {_flat(v)}\n")


def _flat(v) -> str:
    if isinstance(v, (list, tuple)):
        return " ".join(str(x) for x in v)
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


# ---------------------------------------------------------------- commands

def cmd_tables(args, out) -> int:
    try:
        rows = tables.build_tables(args.filter)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out.write(tables.render(rows, args.format))
    return EXIT_OK


def cmd_sign(args, out) -> int:
    label, R = parse_system(args.system)
    w, entry = parse_class(R, args.cls)
    v = parse_numerator(R, w, entry, args.num)
    ctx = SignContext(R, w)
    r = ctx.sign(v)
    k = int(ctx.mask.sum())
    emit([{"sign": f"{r.value:+d}", "system": label, "class": args.cls, "numerator": args.num,
           "q": r.q, "orbits_w": r.orbits_w, "orbits_vw": r.orbits_vw,
           "R_w": "R" if k == len(R) else f"{k}/{len(R)}", "provenance": r.provenance}], args.format, out)
    return EXIT_OK


def cmd_legendre(args, out) -> int:
    eps = {"+": 1, "-": -1}[args.eps]
    value = sgn_plus(args.n, args.q) if eps == 1 else sgn_minus(args.n, args.q)
    brute = sgn_eps_bruteforce(args.n, args.q, eps)
    if brute != value:
        raise AssertionError("closed form and brute force disagree")
    emit([{"sign": f"{value:+d}", "n": args.n, "q": args.q, "eps": args.eps,
           "brute_force": f"{brute:+d}"}], args.format, out)
    return EXIT_OK


def cmd_classify(args, out) -> int:
    label, R = parse_system(args.system)
    records = []
    if R.label in EXCEPTIONAL:
        for name in class_names(R.label):
            cl = exceptional_representative(name, R.label)
            fp = cl.expected
            records.append({"system": label, "class": name, "order": fp.order,
                            "cycles": cl.data.get("cycles", "-1"),
                            "orbit_sizes": list(fp.orbit_sizes),
                            "symmetric_orbits": fp.symmetric_orbit_count})
    else:
        fam = R.family
        n = R.ambient_dim if fam == "A" else R.rank
        if fam == "D" and R.label == "D2":
            n = 2
        for c in classical_elliptic_2power(fam, n):
            records.append({"system": label, "class": c.label, "parts": list(c.parts) or "-",
                            "in_weyl": c.in_weyl})
    emit(records, args.format, out)
    if args.format == "text":
        out.write(f"\n{len(records)} class{'' if len(records) == 1 else 'es'}\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    keys = list(verify.SUITES) if "all" in args.suites else []
    for s in args.suites:
        if s == "all":
            continue
        if s.isdigit():
            names = list(verify.SUITES)
            if not 1 <= int(s) <= len(names):
                raise UsageError(f"no criterion {s}")
            keys.append(names[int(s) - 1])
        elif s in verify.SUITES:
            keys.append(s)
        else:
            raise UsageError(f"unknown suite {s!r}; known: {', '.join(verify.SUITES)}")
    results = verify.run(keys, jobs=tables.jobs(), golden=args.golden)
    if args.format == "text":
        for r in results:
            out.write(r.line() + "\n")
            for d in r.details:
                out.write(f"    {d}\n")
    else:
        emit([r.as_dict() for r in results], args.format, out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


def cmd_dump(args, out) -> int:
    _, R = parse_system(args.system)
    if args.format == "text":
        out.write(R.dump())
    else:
        emit([{"label": R.label, "rank": R.rank, "ambient_dim": R.ambient_dim,
               "roots": [" ".join(str(int(x)) for x in r) for r in R.roots] if args.format == "csv"
               else [[int(x) for x in r] for r in R.roots],
               "simple": [int(i) for i in R.simple]}], args.format, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rootsign", description="Root-system sign symbols <v/w>: tables, queries, verification.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--format", choices=["text", "json", "csv"], default="text")
        sp.set_defaults(fn=fn)
        return sp

    t = add("tables", cmd_tables, "regenerate the kernel tables")
    t.add_argument("filter", nargs="?", default="all", help="all, A:n, G2, F4, E6, E7 or E8")
    s = add("sign", cmd_sign, "evaluate <v/w> by brute force")
    s.add_argument("--system", required=True, help="A:n, B4, C3, D5, F4, E8, ...")
    s.add_argument("--class", dest="cls", required=True,
                   help="cox, -1, a partition like 2+1+1, a registry class name, or cycles like n(0 1)n(2 3)")
    s.add_argument("--num", required=True,
                   help="id, -1, w, s<k>, norm:<partition>:<q>, a registry numerator name, or cycles")
    g = add("legendre", cmd_legendre, "evaluate sgn+-_n(q)")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--q", type=int, required=True)
    g.add_argument("--eps", choices=["+", "-"], required=True)
    c = add("classify", cmd_classify, "list elliptic classes of 2-power order")
    c.add_argument("--system", required=True)
    v = add("verify", cmd_verify, "run acceptance suites")
    v.add_argument("suites", nargs="*", default=["all"], help="suite names, criterion numbers or all")
    v.add_argument("--golden", default=None, help="golden file for the tables suite")
    d = add("dump", cmd_dump, "print a root system")
    d.add_argument("--system", required=True)
    return p


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        return args.fn(args, out)
    except UsageError as exc:
        print(f"rootsign: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UnknownClass as exc:
        print(f"rootsign: error: unknown class {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NotElliptic as exc:
        print(f"rootsign: precondition violated (w elliptic): {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except NotNormalizing as exc:
        print(f"rootsign: precondition violated (v normalises <w>): {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except NotStable as exc:
        print(f"rootsign: precondition violated (v stabilises R_w): {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except NotAnAutomorphism as exc:
        print(f"rootsign: precondition violated (map preserves the roots): {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ValueError as exc:
        print(f"rootsign: precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except SystemExit as exc:        # --help
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
