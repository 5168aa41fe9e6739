"""Kernel tables for the sign character <.|w>, recomputed row by row.

Each row is one elliptic class ``w`` of 2-power order.  For every listed
numerator ``v`` the row carries the sign implied by the stated kernel
(``stated``), the brute-force orbit-space sign (``computed``) and, where one
exists, a closed-form value (``closed``).  A row is consistent when every
numerator normalises ``<w>`` and the three values agree.

Rendering is deterministic: rows are produced in a fixed order and the
text, JSON and CSV writers use no hashing-dependent iteration.
"""
from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from math import gcd
from typing import List, Optional

import numpy as np

from .arith import sgn_plus
from .classify import b4_in_f4, class_names, d8_in_e8, exceptional_representative
from .rootsys import Isometry, RootSystem, build
from .rtheta import RThetaSet, compute_R_w
from .signchar import NotNormalizing, NotStable, SignContext, a_coxeter, a_norm, minus_one, sign_minus_case
from .weyl import SignedPermutation

EXCEPTIONAL = ("G2", "F4", "E6", "E7", "E8")
A_RANGE = range(2, 10)      # "tables all" covers A:2 .. A:9, i.e. A1 .. A8
JOBS_ENV = "ROOTSIGN_JOBS"


@dataclass
class NumeratorRow:
    name: str
    stated: int
    computed: Optional[int]
    closed: Optional[int]
    q: Optional[int]
    orbits_w: Optional[int]
    orbits_vw: Optional[int]
    status: str                 # "ok", "mismatch", "not-normalizing" or "not-stable"


@dataclass
class TableRow:
    system: str
    cls: str
    order: int
    rw: str
    provenance: str
    kernel: str
    numerators: List[NumeratorRow] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return all(n.status == "ok" for n in self.numerators)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["consistent"] = self.consistent
        return d


def _evaluate(ctx: SignContext, name: str, v: Isometry, stated: int, closed: Optional[int]) -> NumeratorRow:
    try:
        r = ctx.sign(v)
    except NotNormalizing:
        return NumeratorRow(name, stated, None, closed, None, None, None, "not-normalizing")
    except NotStable:
        return NumeratorRow(name, stated, None, closed, None, None, None, "not-stable")
    if r.value != r.bridge:
        raise AssertionError(f"{name}: orbit-count bridge disagrees with the induced permutation")
    agree = r.value == stated and (closed is None or closed == r.value)
    return NumeratorRow(name, stated, r.value, closed, r.q, r.orbits_w, r.orbits_vw,
                        "ok" if agree else "mismatch")


def _rw_text(R: RootSystem, rw: RThetaSet) -> str:
    k = int(np.count_nonzero(rw.mask))
    return "R" if k == len(R) else f"{k}/{len(R)}"


# ---------------------------------------------------------------- type A

def _minus_one_row(system: str, R: RootSystem, kernel: str, stated_fn, extra=()) -> TableRow:
    """The class -1, numerators: simple reflections, -1 and ``extra``."""
    w = minus_one(R)
    ctx = SignContext(R, w)
    row = TableRow(system, "-1", 2, _rw_text(R, ctx.rw), ctx.rw.provenance, kernel)
    items = [(f"s{k + 1}", R.simple_reflection(k)) for k in range(R.rank)]
    items += [("-1", w)] + list(extra)
    for name, v in items:
        row.numerators.append(_evaluate(ctx, name, v, stated_fn(name, v), sign_minus_case(v, R)))
    return row


def a_rows(n: int) -> List[TableRow]:
    """Rows for A_{n-1} (``n`` coordinates).  For n = 2 the Coxeter element is -1."""
    if n < 2:
        raise ValueError("A:n needs n >= 2")
    R = build(f"A{n - 1}")
    system = f"A:{n}"
    rows = []
    if n > 2:
        w = a_coxeter(n)
        ctx = SignContext(R, w)
        low = n % 4 in (0, 3)
        if low:
            label, kernel = "coxeter (n = 0,3 mod 4)", "C_A(w) x| {norm_q : sgn+_n(q) = 1}"
        else:
            label, kernel = "coxeter (n = 1,2 mod 4)", "C_W(w) x| {+-norm_q : sgn+_n(q) = +-1}"
        row = TableRow(system, label, n, _rw_text(R, ctx.rw), ctx.rw.provenance, kernel)
        row.numerators.append(_evaluate(ctx, "w", w, 1, None))
        # -1 lies in C_A(w); the first kernel contains it, the second does not
        row.numerators.append(_evaluate(ctx, "-1", minus_one(R), 1 if low else -1, sgn_plus(n, -1)))
        for q in range(2, n):
            if gcd(q, n) == 1:
                row.numerators.append(_evaluate(ctx, f"norm{q}", a_norm(n, q), sgn_plus(n, q), sgn_plus(n, q)))
        rows.append(row)

    w0 = R.longest_element()
    tau = -w0 if n > 2 else None
    sgn_w0 = -1 if (n * (n - 1) // 2) % 2 else 1

    def stated(name, v):
        if n % 2 == 0:
            return 1
        if name == "-1":
            return 1
        if name == "flip":
            return sgn_w0          # flip = -w0, and the kernel is ker sgn x <-1>
        return -1                  # simple reflections
    kernel = "A" if n % 2 == 0 else "ker sgn x <-1>"
    extra = [("flip", tau)] if tau is not None else []
    rows.append(_minus_one_row(system, R, kernel, stated, extra))
    return rows


# ---------------------------------------------------------------- exceptional types

def numerator_isometry(ambient: str, R: RootSystem, item: dict) -> Isometry:
    if "simple_reflection" in item:
        return R.simple_reflection(int(item["simple_reflection"]))
    if "scalar" in item:
        return Isometry.scalar(R.ambient_dim, int(item["scalar"]))
    sp = SignedPermutation.parse(item["cycles"], R.ambient_dim)
    emb = b4_in_f4() if ambient == "F4" else d8_in_e8()
    return emb.push(sp)


def exceptional_rows(ambient: str) -> List[TableRow]:
    R = build(ambient)
    rows = []
    for name in class_names(ambient):
        label = exceptional_representative(name, ambient)
        entry = label.data
        w = label.representative
        ctx = SignContext(R, w, compute_R_w(w, R))
        row = TableRow(ambient, name, label.expected.order, _rw_text(R, ctx.rw), ctx.rw.provenance,
                       entry["kernel"])
        for item in entry["numerators"]:
            v = numerator_isometry(ambient, R, item)
            closed = sign_minus_case(v, R) if name == "-1" else None
            row.numerators.append(_evaluate(ctx, item["name"], v, int(item["expected"]), closed))
        rows.append(row)
    return rows


# ---------------------------------------------------------------- assembly

def parse_filter(text: str) -> List[str]:
    """Expand a table filter into a list of row-group keys (``A:n`` or an exceptional label)."""
    if text == "all":
        return [f"A:{n}" for n in A_RANGE] + list(EXCEPTIONAL)
    if text in EXCEPTIONAL:
        return [text]
    if text.startswith("A:"):
        try:
            n = int(text[2:])
        except ValueError:
            raise ValueError(f"bad A filter {text!r}") from None
        if n < 2:
            raise ValueError("A:n needs n >= 2")
        return [text]
    raise ValueError(f"unknown table filter {text!r}")


def rows_for(key: str) -> List[TableRow]:
    if key.startswith("A:"):
        return a_rows(int(key[2:]))
    return exceptional_rows(key)


def jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


def build_tables(filter_text: str = "all") -> List[TableRow]:
    keys = parse_filter(filter_text)
    if jobs() > 1 and len(keys) > 1:
        with ProcessPoolExecutor(max_workers=jobs()) as pool:
            groups = list(pool.map(rows_for, keys))
    else:
        groups = [rows_for(k) for k in keys]
    return [r for g in groups for r in g]


# ---------------------------------------------------------------- rendering

def _pm(x: Optional[int]) -> str:
    if x is None:
        return "-"
    return "+1" if x > 0 else "-1"


def render_text(rows: List[TableRow]) -> str:
    out = []
    system = None
    for row in rows:
        if row.system != system:
            if system is not None:
                out.append("")
            system = row.system
            out.append(f"== {system} ==")
        out.append(f"class {row.cls} | order {row.order} | R_w {row.rw} ({row.provenance})"
                   f" | kernel {row.kernel} | consistent {'yes' if row.consistent else 'no'}")
        width = max(len(n.name) for n in row.numerators)
        for n in row.numerators:
            out.append(f"  {n.name:<{width}}  q {'-' if n.q is None else n.q:>2}  stated {_pm(n.stated)}"
                       f"  computed {_pm(n.computed)}  closed {_pm(n.closed)}"
                       f"  orbits {'-' if n.orbits_w is None else n.orbits_w}/"
                       f"{'-' if n.orbits_vw is None else n.orbits_vw}  {n.status}")
    return "\n".join(out) + "\n"


def render_json(rows: List[TableRow]) -> str:
    return json.dumps([r.as_dict() for r in rows], indent=1, sort_keys=True) + "\n"


CSV_FIELDS = ["system", "class", "order", "rw", "provenance", "kernel", "numerator", "q",
              "stated", "computed", "closed", "orbits_w", "orbits_vw", "status"]


def render_csv(rows: List[TableRow]) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(CSV_FIELDS)
    for r in rows:
        for n in r.numerators:
            wr.writerow([r.system, r.cls, r.order, r.rw, r.provenance, r.kernel, n.name,
                         "" if n.q is None else n.q, n.stated, "" if n.computed is None else n.computed,
                         "" if n.closed is None else n.closed, "" if n.orbits_w is None else n.orbits_w,
                         "" if n.orbits_vw is None else n.orbits_vw, n.status])
    return buf.getvalue()


RENDERERS = {"text": render_text, "json": render_json, "csv": render_csv}


def render(rows: List[TableRow], fmt: str = "text") -> str:
    try:
        return RENDERERS[fmt](rows)
    except KeyError:
        raise ValueError(f"unknown format {fmt!r}") from None


__all__ = ["NumeratorRow", "TableRow", "a_rows", "exceptional_rows", "build_tables", "parse_filter",
           "render", "render_text", "render_json", "render_csv"]
