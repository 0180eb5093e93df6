"""Command-line front end: ``cremona <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field

from cremona import __version__
from cremona.birmap import PlaneMap, closure, fixed_curve, nf_profile
from cremona.conjclass import (
    IndexSet,
    are_conjugate_c1,
    build_GI,
    canonicalize,
    normalize_c1,
    recover_I,
)
from cremona.delpezzo import (
    GS_group,
    Jbar,
    QuarticDP,
    fiber_statistics,
    hurwitz_max_rank,
    jacobian_identity_check,
    jfun,
    nf_GS,
    pencil_determinant,
    pencil_singular,
    weyl_entry,
)
from cremona.errors import ClosureError, CremonaError, FieldExtensionRequired, ParseError, ShapeError
from cremona.exactfield import FieldKind
from cremona.moebius import normalize_rank2_odd
from cremona.parsing import format_map, parse_element, parse_element_list, parse_map

REPORT_VERSION = 1

EXIT_OK, EXIT_INPUT, EXIT_EXTENSION = 0, 2, 3


@dataclass
class Report:
    command: str
    outcome: str
    data: dict = field(default_factory=dict)
    diagnostics: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    def to_json(self) -> str:
        payload = {"format": "cremona-report", "version": REPORT_VERSION, **asdict(self)}
        if not self.timings:
            payload.pop("timings")
        return json.dumps(payload, sort_keys=True, indent=2)

    def to_text(self) -> str:
        lines = [f"{self.command}: {self.outcome}"]
        for key in sorted(self.data):
            val = self.data[key]
            if isinstance(val, list):
                lines.append(f"  {key}:")
                lines.extend(f"    {_text(v)}" for v in val)
            else:
                lines.append(f"  {key}: {_text(val)}")
        lines.extend(f"  note: {d}" for d in self.diagnostics)
        for key in sorted(self.timings):
            lines.append(f"  time[{key}]: {self.timings[key]:.3f}s")
        return "\n".join(lines)


def _text(v) -> str:
    if isinstance(v, dict):
        return ", ".join(f"{k}={_text(x)}" for k, x in sorted(v.items()))
    if isinstance(v, list):
        return "[" + ", ".join(_text(x) for x in v) + "]"
    return str(v)


class _Timer:
    def __init__(self, report: Report, enabled: bool):
        self.report, self.enabled = report, enabled

    def __call__(self, name):
        timer = self

        class _Ctx:
            def __enter__(self):
                self.t0 = time.perf_counter()

            def __exit__(self, *exc):
                if timer.enabled:
                    timer.report.timings[name] = time.perf_counter() - self.t0

        return _Ctx()


def _nf_dict(nf) -> dict:
    if nf.is_empty:
        return {"kind": "empty"}
    return {
        "kind": nf.kind,
        "genus": nf.genus,
        "branch": nf.branch.to_str("x"),
        "branched_at_infinity": nf.infinity,
    }


def _index_set(text: str, kind: FieldKind) -> IndexSet:
    return IndexSet(kind, tuple(parse_element_list(text, kind)))


# ---------------------------------------------------------------------------
# subcommands


def cmd_classify(args) -> Report:
    kind = FieldKind.parse(args.field)
    if args.quartic:
        rep = cmd_delpezzo_report(args.quartic, kind, None, args.timings)
        rep.command, rep.outcome = "classify", "type_c2"
        return rep
    rep = Report("classify", "")
    timed = _Timer(rep, args.timings)
    gens = [parse_map(g, kind) for g in args.generators]
    rep.data["p"] = args.p
    rep.data["field"] = str(kind)
    try:
        with timed("closure"):
            G = closure(gens, args.p, max_rank=4)
    except ClosureError as exc:
        rep.outcome = "not_elementary"
        rep.data["reason"] = type(exc).__name__
        rep.diagnostics.append(f"{exc.module}: {exc}")
        return rep
    rep.data["rank"] = G.r
    rep.data["order"] = G.order
    if args.p == 2 and G.r == 4:
        with timed("normalize"):
            N = normalize_c1(G)
        rep.outcome = "type_c1"
        rep.data["canonical_I"] = [str(a) for a in N.invariant.canonical]
        rep.data["index_set"] = [str(a) for a in N.index_set]
        rep.data["orbit"] = [str(o) for o in N.invariant.orbit]
        rep.data["delta"] = N.delta.to_str("t")
        with timed("fixed_curves"):
            genera = sorted(nf.genus for _, nf in nf_profile(G) if not nf.is_empty)
        rep.data["fixed_curve_genera"] = genera
    elif args.p != 2 and G.r == 2:
        with timed("normalize"):
            conj = normalize_rank2_odd(G.as_semidirect(), args.p)
        rep.outcome = "type_a"
        rep.data["normal_form"] = "diagonal p-torsion (z, t) -> (a z, b t)"
        rep.data["conjugator"] = format_map(PlaneMap.from_semidirect(conj), "zt")
        if args.p == 3:
            rep.diagnostics.append("p = 3, rank 2: diagonal torus torsion; rank 3 groups act on the Fermat cubic")
    else:
        rep.outcome = "unclassified_rank"
        rep.diagnostics.append(f"rank {G.r} is below the maximal rank for p = {args.p}")
    return rep


def _group_arg(text: str, kind: FieldKind):
    gens = [g.strip() for g in text.split(";") if g.strip()]
    return closure([parse_map(g, kind) for g in gens], 2, max_rank=4)


def cmd_conjugate(args) -> Report:
    kind = FieldKind.parse(args.field)
    rep = Report("conjugate", "")
    if args.sets:
        I1, I2 = (_index_set(s, kind) for s in args.sets)
        c1, c2 = canonicalize(I1), canonicalize(I2)
    else:
        G1, G2 = (_group_arg(g, kind) for g in args.groups)
        c1, c2 = (normalize_c1(G).invariant for G in (G1, G2))
    same = c1.canonical == c2.canonical
    rep.outcome = "conjugate" if same else "not_conjugate"
    rep.data["first"] = str(c1.canonical)
    rep.data["second"] = str(c2.canonical)
    if args.sets:
        assert same == are_conjugate_c1(I1, I2)
    return rep


def cmd_invariant(args) -> Report:
    kind = FieldKind.parse(args.field)
    f = parse_map(args.map, kind)
    nf = fixed_curve(f)
    rep = Report("invariant", "empty" if nf.is_empty else "hyperelliptic")
    rep.data["map"] = format_map(f)
    rep.data.update(_nf_dict(nf))
    return rep


def cmd_delpezzo_report(lambdas, kind, fiber, timings) -> Report:
    rep = Report("delpezzo", "quartic_del_pezzo")
    timed = _Timer(rep, timings)
    values = tuple(parse_element(v, kind) for v in lambdas)
    S = QuarticDP(values)
    rep.data["lambdas"] = [str(v) for v in values]
    rep.data["pencil_determinant"] = pencil_determinant(S).to_str("s")
    rep.data["singular_members"] = [
        {"parameter": str(m.parameter), "vertex": list(m.point), "rank": m.rank} for m in pencil_singular(S)
    ]
    G = GS_group(S)
    rep.data["GS_order"] = len(G)
    rep.data["hyperplane_involutions"] = [list(g.signs) for g in G if g.fixes_hyperplane()]
    rep.data["fixed_curve_genera"] = sorted(nf.genus for nf in (nf_GS(S, g) for g in G if not g.is_identity()) if not nf.is_empty)
    rep.data["Jbar"] = [str(v) for v in Jbar(S)]
    if fiber:
        with timed("fiber"):
            st = fiber_statistics(fiber)
        rep.data["fiber"] = {
            "q": st.q,
            "zeta": st.zeta,
            "alphas": st.alphas,
            "singletons": len(st.singletons),
            "singleton_fraction": round(st.fraction, 4),
            "fiber_sizes": {str(k): v for k, v in st.fiber_sizes.items()},
        }
    return rep


def cmd_delpezzo(args) -> Report:
    kind = FieldKind.parse(args.field)
    return cmd_delpezzo_report(args.lambdas, kind, args.fiber, args.timings)


def cmd_jtable(args) -> Report:
    rep = Report("jtable", "tables")
    rep.data["weyl"] = [
        {"ell": e.ell, "root_system": e.root_system, "order": e.order, "factorization": e.factor_str()}
        for e in (weyl_entry(ell) for ell in range(4, 9))
    ]
    rep.data["hurwitz"] = [
        {"genus": g, "p": p, "max_rank": hurwitz_max_rank(g, p)} for g in args.genera for p in args.primes
    ]
    return rep


def cmd_selftest(args) -> Report:
    Q = FieldKind.rationals()
    checks = {}
    checks["jfun(-1) = jfun(2) = 1728"] = jfun(Q(-1)) == 1728 and jfun(Q(2)) == 1728
    checks["jacobian identity"] = jacobian_identity_check() and not jacobian_identity_check(2)
    checks["weyl E8 order"] = weyl_entry(8).order == 696729600
    checks["hurwitz(4, 3) = 2"] = hurwitz_max_rank(4, 3) == 2
    I = IndexSet(Q, (0,))
    checks["c1 round trip {0}"] = recover_I(build_GI(I)) == canonicalize(I)
    ok = all(checks.values())
    rep = Report("selftest", "pass" if ok else "fail")
    rep.data["checks"] = {k: "ok" if v else "FAIL" for k, v in checks.items()}
    return rep


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cremona", description="p-elementary subgroups of the plane Cremona group")
    ap.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="QQ", help="QQ | Fp:<q> | cyclo:<n>")
    common.add_argument("--json", action="store_true", help="versioned machine-readable output")
    common.add_argument("--timings", action="store_true", help="include wall-clock timings")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", parents=[common], help="classify the group spanned by maps")
    c.add_argument("generators", nargs="*", help='maps such as "(-x, y)"')
    c.add_argument("--p", type=int, default=2)
    c.add_argument("--quartic", nargs=5, metavar="LAMBDA", help="classify a type c2 group by its surface")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("conjugate", parents=[common], help="decide conjugacy of two type c1 groups")
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--sets", nargs=2, metavar="I", help='index sets such as "0,1"')
    g.add_argument("--groups", nargs=2, metavar="GENS", help="';'-separated generators of each group")
    c.set_defaults(func=cmd_conjugate)

    c = sub.add_parser("invariant", parents=[common], help="normalized fixed locus of one involution")
    c.add_argument("map")
    c.set_defaults(func=cmd_invariant)

    c = sub.add_parser("delpezzo", parents=[common], help="quartic del Pezzo invariants")
    c.add_argument("lambdas", nargs=5)
    c.add_argument("--fiber", type=int, metavar="Q", help="run the fibre experiment over F_Q")
    c.set_defaults(func=cmd_delpezzo)

    c = sub.add_parser("jtable", parents=[common], help="Weyl group orders and Hurwitz ranks")
    c.add_argument("--genera", type=int, nargs="*", default=[2, 3, 4, 5])
    c.add_argument("--primes", type=int, nargs="*", default=[2, 3, 5, 7])
    c.set_defaults(func=cmd_jtable)

    c = sub.add_parser("selftest", parents=[common], help="quick consistency checks")
    c.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.command == "classify" and not args.generators and not args.quartic:
            raise ParseError("classify needs generators or --quartic")
        rep = args.func(args)
    except FieldExtensionRequired as exc:
        print(f"error [{exc.module}]: requires field extension: {exc}", file=sys.stderr)
        return EXIT_EXTENSION
    except (ParseError, ShapeError) as exc:
        print(f"error [{exc.module}]: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CremonaError as exc:
        print(f"error [{exc.module}]: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error [input]: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(rep.to_json() if args.json else rep.to_text())
    if args.command == "selftest" and rep.outcome != "pass":
        return 1
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
