"""Wakamatsu tilting modules of bound quiver algebras, from the command line.

Usage: ``wakatilt <command> [options]``.

Exit codes: 0 success, 1 theorem-violation alarm, 2 unsupported algebra,
3 invalid input.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path

from . import fixtures
from . import homological as hx
from . import linalg as la
from . import order as od
from . import tilting as tl
from .algebra import Algebra, load_algebra, nakayama
from .errors import InvalidInput, NotSelfOrthogonal, WakatiltError
from .indec import Registry, enumerate_indecomposables, file_registry
from .rep import direct_sum, injective, interval, projective, rep_from_json, standard_module

EXIT_OK, EXIT_ALARM, EXIT_UNSUPPORTED, EXIT_INVALID = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


# -- inputs ----------------------------------------------------------------


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in re.split(r"[,\s]+", text.strip("[] ")) if x]
    except ValueError:
        raise InvalidInput(f"cannot parse Kupisch series {text!r}") from None


def load_input_algebra(args) -> Algebra:
    p = la.check_field(args.field) if args.field is not None else la.DEFAULT_P
    given = [x for x in (args.kupisch, args.algebra, args.example) if x is not None]
    if len(given) != 1:
        raise InvalidInput("give exactly one of --kupisch, --algebra, --example")
    if args.kupisch is not None:
        return nakayama(_int_list(args.kupisch), "linear" if args.linear else None, p=p)
    if args.algebra is not None:
        bundled = {f: k for k, f in fixtures.FILES.items()}
        if not Path(args.algebra).exists() and args.algebra in bundled:
            # bare names of the shipped data files, e.g. a5.json
            return fixtures.load(bundled[args.algebra], p=p)
        return load_algebra(args.algebra, p=p, dim_cap=args.dim_cap)
    return fixtures.load(args.example, p=p)


def load_registry(args, a: Algebra) -> Registry:
    if args.modules:
        try:
            data = json.loads(Path(args.modules).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InvalidInput(f"cannot read module list {args.modules}: {exc}") from exc
        if not isinstance(data, list):
            raise InvalidInput("module list file must hold a JSON array")
        mods = [rep_from_json(d, a, d.get("name") or f"X{k}") for k, d in enumerate(data)]
        return file_registry(a, mods, complete=args.complete, seed=args.seed)
    return enumerate_indecomposables(a, args.strategy)


_TOKEN = re.compile(r"^(?P<kind>[PSI])\(?(?P<v>\d+)\)?$")


def parse_module_spec(spec: str, a: Algebra):
    """A representation from shorthand such as ``P2+S3``, ``M(4,2)``, ``Λ`` or ``DΛ``."""
    parts = [s.strip() for s in re.split(r"⊕|\+", spec) if s.strip()]
    if not parts:
        raise InvalidInput("empty module spec")
    mods = []
    for tok in parts:
        if tok in ("Λ", "L", "Lambda", "ΛΛ"):
            mods.extend(projective(a, v) for v in range(1, a.n + 1))
            continue
        if tok in ("DΛ", "DL", "DLambda"):
            mods.extend(injective(a, v) for v in range(1, a.n + 1))
            continue
        m = _TOKEN.match(tok)
        if m:
            kind = {"P": "projective", "S": "simple", "I": "injective"}[m["kind"]]
            mods.append(standard_module(a, kind, int(m["v"])))
            continue
        m = re.match(r"^M\((\d+),(\d+)\)$", tok.replace(" ", ""))
        if m:
            mods.append(interval(a, int(m[1]), int(m[2])))
            continue
        raise InvalidInput(f"cannot parse module {tok!r}")
    return direct_sum(mods, a)


def _module_ids(spec: str, a: Algebra, r: Registry) -> tuple[int, ...]:
    # registry names (e.g. string walks) are accepted verbatim
    if spec in r.aliases:
        return (r.aliases[spec],)
    return r.basic_ids(parse_module_spec(spec, a))


# -- pipeline --------------------------------------------------------------


def wtilt_pipeline(r: Registry) -> dict:
    wt = tl.wakamatsu_tilting_all(r)
    classes = [tl.classify(t, r) for t in wt]
    table = od.relation_table(wt, r)
    diag = od.poset_diagnostics(table)
    hasse = od.decorate(od.hasse_quiver(table), r, classes)
    upward, bad = od.check_tilting_upward_closed(table, classes)
    return {
        "modules": wt,
        "classes": classes,
        "table": table,
        "diagnostics": diag,
        "hasse": hasse,
        "total": od.is_total_order(table),
        "upward_closed": upward,
        "upward_witness": bad,
    }


def _witness_text(res, r: Registry) -> str:
    d = res["diagnostics"]
    ms = res["modules"]
    if d.transitivity_witness:
        i, j, k = d.transitivity_witness
        f = lambda x: " ⊕ ".join(r.format(ms[x]))  # noqa: E731
        return f"{f(i)} >= {f(j)} >= {f(k)} but not {f(i)} >= {f(k)}"
    if d.antisymmetry_witness:
        i, j = d.antisymmetry_witness
        return f"{' ⊕ '.join(r.format(ms[i]))} and {' ⊕ '.join(r.format(ms[j]))} are >= each other"
    return ""


def _summary_line(res) -> str:
    d = res["diagnostics"]
    n_t = sum(c.tilting for c in res["classes"])
    n_c = sum(c.cotilting for c in res["classes"])
    poset = "yes" if d.is_poset else "NO"
    if d.is_poset and res["total"]:
        poset += " (totally ordered)"
    return f"{len(res['modules'])} Wakamatsu tilting modules; poset: {poset}; tilting: {n_t}; cotilting: {n_c}"


def _flags(c) -> str:
    tags = []
    if c.tilting:
        tags.append("tilting")
    if c.cotilting:
        tags.append("cotilting")
    return ", ".join(tags) or "-"


def cmd_wtilt(args, out) -> int:
    a = load_input_algebra(args)
    r = load_registry(args, a)
    res = wtilt_pipeline(r)
    if args.dot:
        Path(args.dot).write_text(od.render(res["hasse"], "dot", a.name or "wtilt"))
    if args.json:
        report = {
            "algebra": a.to_json(),
            "count": len(res["modules"]),
            "tilting": sum(c.tilting for c in res["classes"]),
            "cotilting": sum(c.cotilting for c in res["classes"]),
            "is_poset": res["diagnostics"].is_poset,
            "totally_ordered": res["total"],
            "witness": _witness_text(res, r) or None,
            "modules": [c.to_json(r) for c in res["classes"]],
            "hasse": json.loads(od.render(res["hasse"], "json")),
        }
        out.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        out.write(_summary_line(res) + "\n")
        w = _witness_text(res, r)
        if w:
            out.write(f"witness: {w}\n")
        for k, c in enumerate(res["classes"]):
            out.write(f"  T{k}: {' ⊕ '.join(r.format(c.module))}  [{_flags(c)}] pd={c.pd} id={c.injdim}\n")
    if not res["upward_closed"]:
        sys.stderr.write(f"alarm: tilting modules not upward closed: {res['upward_witness'][:3]}\n")
        return EXIT_ALARM
    return EXIT_OK


def cmd_hasse(args, out) -> int:
    a = load_input_algebra(args)
    r = load_registry(args, a)
    res = wtilt_pipeline(r)
    text = od.render(res["hasse"], "json" if args.json else "dot", a.name or "wtilt")
    if args.dot:
        Path(args.dot).write_text(od.render(res["hasse"], "dot", a.name or "wtilt"))
    out.write(text if text.endswith("\n") else text + "\n")
    return EXIT_OK


def _first_nonvanishing_degree(m, r: Registry) -> int | None:
    bound = len(r) + 2
    for i in range(1, bound):
        if r.ext_dim(m, m, i):
            return i
    return None


def cmd_bongartz(args, out) -> int:
    a = load_input_algebra(args)
    r = load_registry(args, a)
    if not args.module:
        raise InvalidInput("bongartz needs --module")
    u = _module_ids(args.module, a, r)
    if not tl.is_self_orthogonal(u, r):
        deg = _first_nonvanishing_degree(r.module_of(u), r)
        raise NotSelfOrthogonal(f"not self-orthogonal: Ext^{deg}(U, U) != 0", degree=deg)
    t = tl.bongartz_completion(u, r)
    added = [k for k in t if k not in u]
    if args.json:
        out.write(
            json.dumps(
                {"input": r.format(u), "completion": r.format(t), "added": r.format(added), "summands": len(t)},
                indent=2,
            )
            + "\n"
        )
    else:
        out.write(f"U = {' ⊕ '.join(r.format(u))}\n")
        out.write(f"Bongartz completion ({len(t)} summands): {' ⊕ '.join(r.format(t))}\n")
        out.write(f"added: {' ⊕ '.join(r.format(added)) or '(nothing)'}\n")
        out.write("checks: projectively Wakamatsu tilting, same right perpendicular category, |T| = |Λ|: ok\n")
    return EXIT_OK


def finite_pd_report(m, a: Algebra) -> dict:
    """Registry-free checks for a module of finite projective dimension.

    Wakamatsu tilting needs ``DΛ`` to be a quotient of a module in ``add T``;
    when the trace of ``T`` in ``DΛ`` is proper that settles the question.
    """
    pd = hx.proj_dimension(m)
    report = {"pd": str(pd), "pd_certificate": [list(d) for d in pd.certificate]}
    if not pd.finite:
        raise InvalidInput("--finite-pd-only needs a module of finite projective dimension")
    report["self_orthogonal"] = hx.ext_all_vanish(m, m)
    dl = direct_sum([injective(a, v) for v in range(1, a.n + 1)], a)
    tr, covered = hx.trace_and_cover([m], dl)
    report["trace_in_DΛ"] = list(tr)
    report["DΛ_dims"] = list(dl.dims)
    if not report["self_orthogonal"]:
        report["wakamatsu"] = False
    elif not covered:
        report["wakamatsu"] = False
        report["wakamatsu_witness"] = "DΛ is not generated by the module, so DΛ has no resolution by it"
    else:
        report["wakamatsu"] = None
    return report


def cmd_check(args, out) -> int:
    a = load_input_algebra(args)
    if args.finite_pd_only:
        if not args.module:
            raise InvalidInput("--finite-pd-only needs --module")
        rep = parse_module_spec(args.module, a)
        rep_report = finite_pd_report(rep, a)
        if args.json:
            out.write(json.dumps(rep_report, indent=2, ensure_ascii=False) + "\n")
        else:
            yn = {True: "yes", False: "no", None: "undecided"}
            out.write(
                f"self-orthogonal: {yn[rep_report['self_orthogonal']]}; pd = {rep_report['pd']}; "
                f"Wakamatsu tilting: {yn[rep_report['wakamatsu']]}\n"
            )
            if "wakamatsu_witness" in rep_report:
                out.write(
                    f"witness: trace in DΛ has dims {rep_report['trace_in_DΛ']}, DΛ has dims {rep_report['DΛ_dims']}\n"
                )
        return EXIT_OK
    r = load_registry(args, a)
    report = tl.conjecture_report(r)
    verdict, gp, semi = tl.weakly_gorenstein(r)
    report["weakly_gorenstein"] = {"passed": verdict, "GP": r.format(gp), "semi_GP": r.format(semi)}
    if args.module:
        c = tl.classify(_module_ids(args.module, a, r), r)
        report["module"] = c.to_json(r)
    ok = all(v["passed"] for k, v in report.items() if k != "module")
    if args.json:
        out.write(json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        for k, v in report.items():
            if k == "module":
                out.write(f"module {v['module']}: " + ", ".join(f"{x}={v[x]}" for x in v if x != "module") + "\n")
                continue
            line = f"{k}: {'pass' if v['passed'] else 'FAIL'}"
            if k == "weakly_gorenstein":
                line += f" (GP = {', '.join(v['GP'])})"
            elif v.get("witness"):
                line += f" (witness: {v['witness']})"
            out.write(line + "\n")
    return EXIT_OK if ok else EXIT_ALARM


def cmd_ext_table(args, out) -> int:
    a = load_input_algebra(args)
    r = load_registry(args, a)
    n = len(r)
    if args.degree == 1:
        table = r.ext1.tolist()
    else:
        table = [[r.ext_dim(r.modules[j], r.modules[k], args.degree) for k in range(n)] for j in range(n)]
    if args.json:
        out.write(json.dumps({"degree": args.degree, "names": r.names, "ext": table}, indent=2) + "\n")
        return EXIT_OK
    width = max(len(x) for x in r.names) + 1
    out.write(f"dim Ext^{args.degree}(row, column)\n")
    out.write(" " * width + " ".join(f"{k:>3}" for k in range(n)) + "\n")
    for j in range(n):
        out.write(f"{r.names[j]:<{width}}" + " ".join(f"{x:>3}" for x in table[j]) + "\n")
    for k in range(n):
        out.write(f"  {k:>3} = {r.names[k]}\n")
    return EXIT_OK


def cmd_indec(args, out) -> int:
    a = load_input_algebra(args)
    r = load_registry(args, a)
    inj = set(r.injective_ids)
    d = r.dual()
    rows = []
    for k, m in enumerate(r.modules):
        rows.append(
            {
                "id": k,
                "name": r.names[k],
                "label": r.labels[k],
                "dims": list(m.dims),
                "projective": r.is_projective(k),
                "injective": k in inj,
                "pd": str(tl._pd_result((k,), r)),
                "id_": str(tl._pd_result((k,), d)),
            }
        )
    if args.json:
        out.write(json.dumps({"algebra": a.to_json(), "complete": r.complete, "modules": rows}, indent=2) + "\n")
        return EXIT_OK
    out.write(f"{a.describe()}\n{len(r)} indecomposables ({r.strategy})\n")
    for row in rows:
        tags = "".join(["P" if row["projective"] else "-", "I" if row["injective"] else "-"])
        out.write(f"  {row['id']:>3} {row['name']:<24} dims={row['dims']} {tags} pd={row['pd']} id={row['id_']}\n")
    return EXIT_OK


# -- sweep -----------------------------------------------------------------


def cyclic_kupisch_series(rank: int, max_c: int):
    """Valid cyclic Kupisch series with entries in ``[2, max_c]``, one per rotation class."""
    out = []

    def rec(prefix):
        if len(prefix) == rank:
            if prefix[0] >= prefix[-1] - 1:
                c = tuple(prefix)
                if c == min(c[k:] + c[:k] for k in range(rank)):
                    out.append(list(c))
            return
        lo = max(2, prefix[-1] - 1) if prefix else 2
        for x in range(lo, max_c + 1):
            rec(prefix + [x])

    rec([])
    return out


def _sweep_one(task):
    c, predicate, p = task
    try:
        r = enumerate_indecomposables(nakayama(c, p=p))
        wt = tl.wakamatsu_tilting_all(r, check=False)
        table = od.relation_table(wt, r)
        diag = od.poset_diagnostics(table)
        hit = {"non-poset": not diag.is_poset, "poset": diag.is_poset, "all": True}[predicate]
        return c, hit, len(wt), diag.is_poset, None
    except WakatiltError as exc:
        return c, True, None, None, f"{type(exc).__name__}: {exc}"


def sweep(rank: int, max_c: int, predicate: str = "non-poset", jobs: int = 1, p: int = la.DEFAULT_P):
    """Yield ``(series, matched, wtilt count, is_poset, error)`` in series order."""
    tasks = [(c, predicate, p) for c in cyclic_kupisch_series(rank, max_c)]
    if jobs <= 1:
        yield from map(_sweep_one, tasks)
        return
    from multiprocessing import Pool

    with Pool(jobs) as pool:
        yield from pool.imap(_sweep_one, tasks, chunksize=1)


def cmd_sweep(args, out) -> int:
    p = la.check_field(args.field) if args.field is not None else la.DEFAULT_P
    if args.rank < 1 or args.max_c < 2:
        raise InvalidInput("sweep needs --rank >= 1 and --max-c >= 2")
    jobs = args.jobs or os.cpu_count() or 1
    total = hits = 0
    alarms = 0
    rows = []
    for c, hit, count, poset, err in sweep(args.rank, args.max_c, args.predicate, jobs, p):
        total += 1
        if err:
            alarms += 1
        if not hit:
            continue
        hits += 1
        if args.json:
            rows.append({"kupisch": c, "wtilt": count, "is_poset": poset, "error": err})
        else:
            extra = f"error: {err}" if err else f"wtilt={count} poset={'yes' if poset else 'no'}"
            out.write(f"{c}  {extra}\n")
            out.flush()
    if args.json:
        out.write(json.dumps({"rank": args.rank, "max_c": args.max_c, "predicate": args.predicate,
                              "checked": total, "matches": rows}, indent=2) + "\n")
    else:
        out.write(f"{total} series checked, {hits} matches ({args.predicate})\n")
    return EXIT_ALARM if alarms else EXIT_OK


# -- entry point -----------------------------------------------------------


def _add_algebra_args(sp):
    sp.add_argument("--kupisch", help="Kupisch series, e.g. 3,4,4,4")
    sp.add_argument("--linear", action="store_true", help="read --kupisch as a linear series")
    sp.add_argument("--algebra", metavar="FILE", help="algebra JSON file")
    sp.add_argument("--example", metavar="NAME", help=f"named algebra: {', '.join(fixtures.names())}")
    sp.add_argument("--modules", metavar="FILE", help="JSON list of indecomposables (user registry)")
    sp.add_argument("--complete", action="store_true", help="declare the --modules list exhaustive")
    sp.add_argument("--strategy", choices=["auto", "nakayama", "string"], default="auto")
    sp.add_argument("--module", metavar="SPEC", help="module shorthand, e.g. P2+S3, M(4,1), Λ, DΛ")
    sp.add_argument("--field", type=int, metavar="P", help="prime characteristic (default 101)")
    sp.add_argument("--seed", type=int, default=0, help="seed for randomized isomorphism tests")
    sp.add_argument("--dim-cap", type=int, default=10000, help="path-basis size limit")
    sp.add_argument("--json", action="store_true", help="machine-readable output")
    sp.add_argument("--dot", metavar="PATH", help="write the Hasse quiver as DOT")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="wakatilt", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, helptext in [
        ("wtilt", "enumerate and classify Wakamatsu tilting modules"),
        ("bongartz", "Bongartz completion of a self-orthogonal module"),
        ("check", "conjecture instances and weak Gorensteinness"),
        ("ext-table", "Ext table of the indecomposables"),
        ("indec", "list the indecomposables"),
        ("hasse", "Hasse quiver as DOT or JSON"),
    ]:
        sp = sub.add_parser(name, help=helptext)
        _add_algebra_args(sp)
        if name == "check":
            sp.add_argument("--finite-pd-only", action="store_true",
                            help="registry-free checks of --module (needs finite pd)")
        if name == "ext-table":
            sp.add_argument("--degree", type=int, default=1)
    sp = sub.add_parser("sweep", help="search cyclic Kupisch series")
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--max-c", type=int, required=True)
    sp.add_argument("--predicate", choices=["non-poset", "poset", "all"], default="non-poset")
    sp.add_argument("--jobs", type=int, default=0, help="worker processes (default: CPU count)")
    sp.add_argument("--field", type=int, metavar="P")
    sp.add_argument("--json", action="store_true")
    return ap


COMMANDS = {
    "wtilt": cmd_wtilt,
    "bongartz": cmd_bongartz,
    "check": cmd_check,
    "ext-table": cmd_ext_table,
    "indec": cmd_indec,
    "hasse": cmd_hasse,
    "sweep": cmd_sweep,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits on bad flags and --help; report its code instead
        return int(exc.code or 0)
    try:
        if getattr(args, "dim_cap", 1) < 1:
            raise InvalidInput("--dim-cap must be at least 1")
        return COMMANDS[args.command](args, out)
    except WakatiltError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.exit_code
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
