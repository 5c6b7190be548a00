"""The ``dgatool`` command line.

Exit codes: 0 success, 1 a check or certificate failed (or the library
refused the computation), 2 usage errors such as unknown models, bad
expressions or bad arguments.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from collections import Counter

from . import catalog as cat
from .algebra import Element, TableDGA
from .cohomology import cohomology, massey_triple
from .errors import DGAError, ShapeMismatch, StratumViolation
from .expr import ExpressionError
from .hirsch import HirschData, hirsch_extend
from .holonomy import eliminate_s_generators, holonomy_presentation, lcs_dims, relation_degree_profile
from .jumploci import (
    FlatConnection,
    classify_flat,
    in_Pi,
    is_flat,
    product_formula_check,
    resonance_dims,
    sample_flat,
)
from .linalg import frac_str
from .pd import pd_check
from .regularity import formality_certificate, is_q_regular
from .serialize import ModelNotFound, load_model, model_to_json, same_model, loads, dumps

DEFAULT_SEED = 42


class UsageError(Exception):
    pass


def default_seed() -> int:
    env = os.environ.get("DGATOOL_SEED")
    if env is None or env == "":
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"DGATOOL_SEED must be an integer, got {env!r}") from None


def fmt_element(x: Element) -> str:
    labels = x.algebra.labels(x.degree)
    terms = []
    for lab, c in zip(labels, x.coords):
        if not c:
            continue
        if c == 1:
            terms.append(lab)
        elif c == -1:
            terms.append(f"-{lab}")
        else:
            terms.append(f"{frac_str(c)}*{lab}")
    return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def _fracs(v) -> list[str]:
    return [frac_str(x) for x in v]


class Output:
    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.doc: dict = {}
        self.lines: list[str] = []

    def set(self, key, value):
        self.doc[key] = value

    def say(self, line: str = ""):
        self.lines.append(line)

    def emit(self):
        if self.as_json:
            print(json.dumps(self.doc, indent=2))
        else:
            for line in self.lines:
                print(line)


def _model(arg: str) -> TableDGA:
    try:
        return load_model(arg)
    except (ModelNotFound, json.JSONDecodeError, KeyError, ExpressionError) as exc:
        raise UsageError(str(exc)) from None


def _parse(A: TableDGA, text: str, degree: int | None = None) -> Element:
    try:
        return A.parse(text, degree)
    except ExpressionError as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------------------
# subcommands


def cmd_cohomology(args, out: Output) -> int:
    A = _model(args.model)
    H = cohomology(A, args.upto)
    out.set("model", A.name)
    out.set("betti", list(H.betti))
    reps = {}
    out.say(f"{A.name}: betti numbers up to degree {H.upto}: {list(H.betti)}")
    for k in range(H.upto + 1):
        rs = H.reps(k)
        reps[str(k)] = [_fracs(r.coords) for r in rs]
        if rs:
            out.say(f"  H^{k}: " + ", ".join(f"[{fmt_element(r)}]" for r in rs))
    out.set("representatives", reps)
    return 0


def cmd_massey(args, out: Output) -> int:
    A = _model(args.model)
    a, b, c = (_parse(A, t) for t in args.triple)
    r = massey_triple(A, a, b, c)
    out.set("model", A.name)
    out.set("degree", r.degree)
    out.set("representative", _fracs(r.representative.coords))
    out.set("representativeText", fmt_element(r.representative))
    out.set("classVector", _fracs(r.class_vector))
    out.set("indeterminacy", [_fracs(v) for v in r.indeterminacy])
    out.set("vanishes", r.vanishes)
    out.say(f"<{', '.join(args.triple)}> in H^{r.degree}({A.name})")
    out.say(f"  representative: {fmt_element(r.representative)}")
    out.say(f"  indeterminacy dimension: {len(r.indeterminacy)}")
    out.say(f"  vanishes: {str(r.vanishes).lower()}")
    return 0


def _parse_gen(text: str) -> tuple[str, int]:
    name, sep, deg = text.partition(":")
    if not sep or not name or not deg.isdigit():
        raise UsageError(f"--gen expects NAME:DEGREE, got {text!r}")
    return name, int(deg)


def cmd_hirsch(args, out: Output) -> int:
    base = _model(args.base)
    gens = [_parse_gen(g) for g in args.gen]
    if len(args.tau) != len(gens):
        raise UsageError(f"{len(gens)} generators but {len(args.tau)} --tau values")
    tau = {n: _parse(base, t, m + 1) for (n, m), t in zip(gens, args.tau)}
    ext, _ = hirsch_extend(HirschData(base, gens, tau, args.cap, args.name))
    doc = model_to_json(ext)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(doc, fh, indent=2)
    out.set("model", doc)
    out.say(f"{ext.name}: cap {ext.cap}, dims {list(ext.dims)}" + (f", written to {args.out}" if args.out else ""))
    return 0


def _regular_inputs(args) -> tuple[TableDGA, list[Element]]:
    A = _model(args.model)
    if args.seq:
        H = A
        if not H.is_zero_differential():
            info = getattr(A, "hirsch", None)
            if info is None or not info.base.is_zero_differential():
                raise UsageError(f"{A.name} has a nonzero differential; give an algebra with d = 0")
            H = info.base
        return H, [_parse(H, s) for s in args.seq]
    if not os.path.exists(args.model):
        target = cat.regular_target(args.model)
        if target is not None:
            return target
    info = getattr(A, "hirsch", None)
    if info is not None and info.base.is_zero_differential():
        return info.base, [info.tau[n] for n, _ in info.generators]
    raise UsageError("no sequence given (--seq) and none is attached to the model")


def cmd_regular(args, out: Output) -> int:
    H, seq = _regular_inputs(args)
    rep = is_q_regular(H, seq, args.q)
    out.set("algebra", H.name)
    out.set("sequence", [fmt_element(e) for e in seq])
    out.set("q", args.q)
    out.set("verdict", rep.verdict)
    out.say(f"{H.name}: ({', '.join(fmt_element(e) for e in seq)}) is {args.q}-regular: {str(rep.verdict).lower()}")
    if rep.failure:
        idx, deg, wit = rep.failure
        out.set("witness", {"index": idx, "degree": deg, "element": fmt_element(wit), "coords": _fracs(wit.coords)})
        out.say(f"  witness: element {idx + 1} kills {fmt_element(wit)} in degree {deg} of {rep.stages[idx].name}")
    return 0


def cmd_formality(args, out: Output) -> int:
    H, seq = _regular_inputs(args)
    reg = is_q_regular(H, seq, args.q)
    cert = formality_certificate(H, seq, args.q)
    if args.emit_quotient:
        with open(args.emit_quotient, "w") as fh:
            json.dump(model_to_json(cert.quotient), fh, indent=2)
    out.set("algebra", H.name)
    out.set("q", args.q)
    out.set("regular", reg.verdict)
    out.set("verified", cert.verified)
    out.set("failures", [str(f) for f in cert.report.failures])
    out.say(f"{H.name}: {args.q}-regular: {str(reg.verdict).lower()}; certificate verified: {str(cert.verified).lower()}")
    for f in cert.report.failures:
        out.say(f"  failure: {f}")
    if args.emit_quotient:
        out.say(f"  quotient written to {args.emit_quotient}")
    return 0 if cert.verified else 1


def cmd_holonomy(args, out: Output) -> int:
    A = _model(args.model)
    if args.eliminate:
        info = getattr(A, "hirsch", None)
        if info is None:
            raise UsageError(f"{A.name} is not a Hirsch extension; --eliminate needs one")
        p = eliminate_s_generators(HirschData(info.base, info.generators, info.tau), args.redundant)
    else:
        p = holonomy_presentation(A)
    lcs = lcs_dims(p, args.lcs_depth)
    out.set("presentation", p.to_json())
    out.set("relatorDegrees", relation_degree_profile(p))
    out.set("lcs", lcs.dims)
    out.say(f"{A.name}: generators {', '.join(p.generators)}")
    for line, kind in zip(p.describe(), p.kinds):
        out.say(f"  {line}" + (f"   ({kind})" if kind and kind != "holonomy" else ""))
    out.say(f"  LCS dims to depth {args.lcs_depth}: {lcs.dims}")
    return 0


def cmd_resonance(args, out: Output) -> int:
    A = _model(args.model)
    rng = random.Random(args.seed)
    hist: Counter = Counter()
    members = 0
    for _ in range(args.samples):
        om = sample_flat(A, args.lie, rng)
        d = resonance_dims(om, args.degree).dims[args.degree]
        hist[d] += 1
        members += d >= 1
    out.set("model", A.name)
    out.set("lie", args.lie)
    out.set("degree", args.degree)
    out.set("samples", args.samples)
    out.set("seed", args.seed)
    out.set("histogram", {str(k): v for k, v in sorted(hist.items())})
    out.set("members", members)
    out.say(f"{A.name}, {args.lie}, degree {args.degree}: {members}/{args.samples} samples in R^{args.degree}_1")
    for k, v in sorted(hist.items()):
        out.say(f"  dim H^{args.degree} = {k}: {v}")
    return 0


def cmd_flat_classify(args, out: Output) -> int:
    A = _model(args.model)
    try:
        with open(args.omega) as fh:
            om = FlatConnection.from_json(A, json.load(fh))
    except (OSError, json.JSONDecodeError, KeyError, ValueError, ShapeMismatch) as exc:
        raise UsageError(f"cannot read connection: {exc}") from None
    flat = is_flat(om)
    out.set("flat", flat)
    if not flat:
        out.say("connection is not flat")
        return 1
    try:
        kind = classify_flat(om)
    except StratumViolation as exc:
        out.set("stratum", None)
        out.say(f"stratum violation: {exc}")
        return 1
    dims = resonance_dims(om).dims
    out.set("stratum", kind)
    out.set("inPi", in_Pi(om))
    out.set("dims", dims)
    out.say(f"flat; stratum {kind}; in Pi: {str(in_Pi(om)).lower()}; twisted cohomology dims {dims}")
    return 0


def cmd_pd_check(args, out: Output) -> int:
    A = _model(args.model)
    c = pd_check(A, args.dim)
    out.set("n", c.n)
    out.set("topClassIndex", c.topClassIndex)
    out.set("pairingRanks", c.pairingRanks)
    out.set("isPD", c.isPD)
    out.set("isPDCDGA", c.isPDCDGA)
    out.set("reasons", c.reasons)
    out.say(f"{A.name}: {args.dim}-PD algebra: {str(c.isPD).lower()}; PD-CDGA: {str(c.isPDCDGA).lower()}")
    for r in c.reasons:
        out.say(f"  {r}")
    return 0 if c.isPDCDGA else 1


def cmd_product_check(args, out: Output) -> int:
    from .acceptance import PRODUCT_PAIRS

    if args.left or args.right:
        if not (args.left and args.right):
            raise UsageError("--left and --right go together")
        pairs = [(args.left, args.right, args.q)]
    else:
        pairs = list(PRODUCT_PAIRS)
    ok = True
    rows = []
    for i, (a, b, q) in enumerate(pairs):
        rep = product_formula_check(_model(a), _model(b), q, args.samples, args.seed + i)
        rows.append({"left": a, "right": b, "q": q, "samples": rep.samples, "disagreements": rep.disagreements})
        out.say(f"{a} x {b}, degree {q}: {rep.samples} samples, {rep.disagreements} disagreements")
        ok &= rep.ok
    out.set("pairs", rows)
    out.set("ok", ok)
    return 0 if ok else 1


def cmd_catalog(args, out: Output) -> int:
    if args.action == "list":
        rows = []
        for key, e in cat.catalog().items():
            rows.append({"key": key, "anchor": e.anchor, "checks": [c.name for c in e.expected]})
            out.say(f"{key:<10} {e.anchor}")
        out.set("entries", rows)
        return 0
    if args.action == "build":
        if not args.key:
            raise UsageError("catalog build needs an entry key")
        try:
            A = cat.build(args.key)
        except KeyError as exc:
            raise UsageError(str(exc)) from None
        doc = model_to_json(A, args.flatten)
        if args.out:
            with open(args.out, "w") as fh:
                json.dump(doc, fh, indent=2)
            out.say(f"{args.key} written to {args.out}")
        else:
            out.say(json.dumps(doc, indent=2))
        out.set("model", doc)
        return 0
    return _catalog_verify(args, out)


def _catalog_verify(args, out: Output) -> int:
    from .acceptance import run_all

    t0 = time.perf_counter()
    ok = True
    entries = []
    for key, e in cat.catalog().items():
        results = cat.verify_entry(e)
        A = e.build()
        rt = same_model(A, loads(dumps(A)))
        bad = [r for r in results if not r[3]]
        good = not bad and rt
        ok &= good
        entries.append({"key": key, "ok": good, "roundTrip": rt, "failures": [f"{n}: expected {x!r}, got {y!r}" for n, x, y, _ in bad]})
        out.say(f"entry {key:<10} {'PASS' if good else 'FAIL'}  ({len(results)} checks, round trip {'ok' if rt else 'broken'})")
        for n, x, y, _ in bad:
            out.say(f"    {n}: expected {x!r}, got {y!r}")
    crits = []
    for r in run_all(args.seed):
        ok &= r.ok
        crits.append({"criterion": r.number, "title": r.title, "ok": r.ok, "seconds": round(r.elapsed, 3), "details": r.details})
        out.say(r.line())
        if not r.ok:
            for d in r.details:
                out.say(f"    {d}")
    elapsed = time.perf_counter() - t0
    out.say(f"catalog verify: {'PASS' if ok else 'FAIL'} in {elapsed:.1f}s (seed {args.seed})")
    out.set("entries", entries)
    out.set("criteria", crits)
    out.set("ok", ok)
    out.set("seconds", round(elapsed, 3))
    return 0 if ok else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    seeded = argparse.ArgumentParser(add_help=False)
    seeded.add_argument("--seed", type=int, default=None, help="random seed (default: $DGATOOL_SEED or 42)")

    p = argparse.ArgumentParser(prog="dgatool", description="Exact computations with finite commutative differential graded algebras.")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    s = sub.add_parser("cohomology", parents=[common], help="Betti numbers and representatives")
    s.add_argument("model")
    s.add_argument("--upto", type=int, default=None)
    s.set_defaults(func=cmd_cohomology)

    s = sub.add_parser("massey", parents=[common], help="triple Massey product")
    s.add_argument("model")
    s.add_argument("--triple", nargs=3, required=True, metavar=("A", "B", "C"))
    s.set_defaults(func=cmd_massey)

    s = sub.add_parser("hirsch", parents=[common], help="build a Hirsch extension")
    s.add_argument("base")
    s.add_argument("--gen", action="append", required=True, help="NAME:DEGREE, repeatable")
    s.add_argument("--tau", action="append", required=True, help="image of d on the matching --gen")
    s.add_argument("--cap", type=int, default=None)
    s.add_argument("--name", default=None)
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_hirsch)

    for name, func, helptext in (("regular", cmd_regular, "q-regularity of a sequence"), ("formality", cmd_formality, "formality certificate from a regular sequence")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("model")
        s.add_argument("--seq", nargs="+", default=None)
        s.add_argument("--q", type=int, required=True)
        if name == "formality":
            s.add_argument("--emit-quotient", default=None)
        s.set_defaults(func=func)

    s = sub.add_parser("holonomy", parents=[common], help="holonomy Lie algebra presentation")
    s.add_argument("model")
    s.add_argument("--eliminate", action="store_true", help="use the presentation on H^1 and the free generators")
    s.add_argument("--redundant", action="store_true", help="with --eliminate, also list relators (V) and (VI)")
    s.add_argument("--lcs-depth", type=int, default=5)
    s.set_defaults(func=cmd_holonomy)

    s = sub.add_parser("resonance", parents=[common, seeded], help="sampled resonance dimensions")
    s.add_argument("model")
    s.add_argument("--lie", default="sl2")
    s.add_argument("--degree", type=int, default=1)
    s.add_argument("--samples", type=int, default=100)
    s.set_defaults(func=cmd_resonance)

    s = sub.add_parser("flat-classify", parents=[common], help="classify a flat connection")
    s.add_argument("model")
    s.add_argument("--omega", required=True)
    s.set_defaults(func=cmd_flat_classify)

    s = sub.add_parser("pd-check", parents=[common], help="Poincare duality certificate")
    s.add_argument("model")
    s.add_argument("--dim", type=int, required=True)
    s.set_defaults(func=cmd_pd_check)

    s = sub.add_parser("product-check", parents=[common, seeded], help="product formula for degree-one resonance")
    s.add_argument("--left", default=None)
    s.add_argument("--right", default=None)
    s.add_argument("--q", type=int, default=1)
    s.add_argument("--samples", type=int, default=100)
    s.set_defaults(func=cmd_product_check)

    s = sub.add_parser("catalog", parents=[common, seeded], help="list, build or verify catalog entries")
    s.add_argument("action", choices=("list", "build", "verify"))
    s.add_argument("key", nargs="?")
    s.add_argument("--out", default=None)
    s.add_argument("--flatten", action="store_true", help="write a plain table model")
    s.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = Output(getattr(args, "json", False))
    try:
        if hasattr(args, "seed") and args.seed is None:
            args.seed = default_seed()
        code = args.func(args, out)
    except UsageError as exc:
        print(f"dgatool: error: {exc}", file=sys.stderr)
        return 2
    except DGAError as exc:
        print(f"dgatool: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    out.emit()
    return code


if __name__ == "__main__":
    sys.exit(main())
