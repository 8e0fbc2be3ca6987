"""Command-line front end.

Usage:
  omegastar classify t
  omegastar classify pres.json --format json
  omegastar analyze system.json --eps 1/2 --cover singleton --oracle --dot out.dot
  omegastar sequence build s --system sys.json --eps 1 --out seq.json
  omegastar sequence verify seq.json --system sys.json --eps 1/2
  omegastar sequence extract seq.json --system sys.json --from a --to b --eps 1
  omegastar sequence check seq.json --system sys.json --cover singleton --prefix 4
  omegastar quotient g.json f.json --subquotient --budget 10000 --dot witness.dot

Exit codes: 0 success, 1 the answer is none or fails, 2 input error,
3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import chaindyn, permalg, quotients, seqbuild
from .chaindyn import FiniteSystem, OracleBoundError, SystemSpecError
from .permalg import AxiomTag, IndependentError, PresentationError, Target
from .report import Report

EXIT_OK, EXIT_NONE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


def _load_json(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _load_system(path: str) -> FiniteSystem:
    try:
        return FiniteSystem.from_dict(_load_json(path))
    except SystemSpecError as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_sequence(path: str) -> seqbuild.IndexedSequence:
    try:
        return seqbuild.IndexedSequence.from_dict(_load_json(path))
    except seqbuild.SequenceError as exc:
        raise InputError(f"{path}: {exc}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _write_dot(path: str | None, dot: str) -> None:
    if path:
        Path(path).write_text(dot, encoding="utf-8")


# --- classify ---------------------------------------------------------------

def _presentation(arg: str, parameter: int | None):
    if Path(arg).is_file():
        data = _load_json(arg)
        try:
            return arg, permalg.from_json(data)
        except PresentationError as exc:
            raise InputError(f"{arg}: {exc}") from None
    try:
        base, n = permalg.parse_name(arg, parameter)
        name = f"c_{n}" if base == "c" else base
        return name, permalg.catalog(base, n)
    except PresentationError as exc:
        raise InputError(str(exc)) from None


def classify_report(name: str, pres) -> Report:
    rep = Report("classify", name)
    nf = permalg.normalize(pres)
    rep.add("normal-form", permalg.to_json(nf))
    rep.add("index", str(permalg.index(pres)))
    rep.add("pan-divisible", permalg.is_pan_divisible(pres))
    rep.add("acyclic", permalg.is_acyclic(pres))
    rep.add("cyclic", permalg.is_cyclic(pres))
    rep.add_verdict("universal", permalg.is_universal_CH(pres))
    rep.add_verdict("chain-transitive*", permalg.is_chain_transitive_star(pres))
    rep.add_verdict("chain-recurrent*", permalg.is_chain_recurrent_star(pres))
    for target, short in ((Target.T_UP, "t"), (Target.R_UP, "r"), (Target.T_JOIN_R_UP, "t∨r")):
        for axiom in (AxiomTag.OCA_MA, AxiomTag.CH):
            rep.add_verdict(f"embeds-in-{short}({axiom.label})", permalg.embeds_in(pres, target, axiom))
    rep.add("inverse", permalg.to_json(permalg.inverse(pres)))
    return rep


def cmd_classify(args) -> int:
    name, pres = _presentation(args.input, args.parameter)
    _emit(classify_report(name, pres).render(args.format), None)
    return EXIT_OK


# --- analyze ----------------------------------------------------------------

def analyze_report(sys_: FiniteSystem, name: str, resolutions, oracle: bool, bound: int):
    rep = Report("analyze", name)
    rep.add("states", len(sys_.states))
    tag = AxiomTag.ZFC.label
    for res in resolutions:
        label = res if isinstance(res, str) else f"eps={res}"
        graph = chaindyn.chain_graph(sys_, res)
        rep.add(f"edges@{label}", len(graph.edges))
        rep.add(f"transitive@{label}", chaindyn.is_chain_transitive(sys_, res), tag, "chain-graph-scc")
        rep.add(f"recurrent@{label}", chaindyn.is_chain_recurrent(sys_, res), tag, "chain-graph-scc")
        crs = chaindyn.chain_recurrent_set(sys_, res)
        rep.add(f"recurrent-set@{label}", [x for x in sys_.states if x in crs])
    minimal = chaindyn.minimal_subsystem(sys_)
    rep.add("minimal-subsystem", [x for x in sys_.states if x in minimal])
    refused = None
    if oracle:
        try:
            rep.add("oracle-transitive", chaindyn.clopen_transitive_oracle(sys_, bound),
                    tag, "no-invariant-clopen")
            rep.add("oracle-recurrent", chaindyn.clopen_recurrent_oracle(sys_, bound),
                    tag, "no-attracting-clopen")
        except OracleBoundError as exc:
            refused = str(exc)
            rep.add("oracle", f"refused: {exc}")
    return rep, refused


def cmd_analyze(args) -> int:
    sys_ = _load_system(args.system)
    raw = list(args.eps or []) + list(args.cover or [])
    try:
        resolutions = [chaindyn.parse_resolution(r) for r in raw] or [chaindyn.SINGLETON]
        for r in resolutions:
            if isinstance(r, str):
                sys_.cover(r)
            elif sys_.metric is None:
                raise SystemSpecError("an --eps resolution needs a metric in the system file")
    except SystemSpecError as exc:
        raise InputError(str(exc)) from None
    rep, refused = analyze_report(sys_, args.system, resolutions, args.oracle, args.oracle_bound)
    _emit(rep.render(args.format), None)
    _write_dot(args.dot, chaindyn.chain_graph(sys_, resolutions[0]).to_dot())
    if refused:
        print(f"error: {refused}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


# --- sequence ---------------------------------------------------------------

def _schedule(eps_args, needed: int) -> list:
    if not eps_args:
        raise InputError("--eps is required")
    sched = list(eps_args)
    if len(sched) == 1:
        sched = sched * max(needed, 1)
    return sched


def _dense(args, sys_: FiniteSystem) -> list:
    if args.dense:
        return [s.strip() for s in args.dense.split(",") if s.strip()]
    return seqbuild.dense_enumeration(sys_)


def _action(path: str):
    data = _load_json(path)
    try:
        alphabet = tuple(data["alphabet"])
        nf = seqbuild._normal_form_from_dict(data.get("normal_form", {"kind": "free"}))
        inverses = data.get("normal_form", {}).get("inverses", {})
        flows = seqbuild.inverse_flows(data["flows"], inverses)
        if isinstance(nf, seqbuild.AbelianNormalForm):
            flows = seqbuild.inverse_flows(flows, dict(nf.generators))
    except (KeyError, TypeError, AttributeError) as exc:
        raise InputError(f"{path}: action file needs 'alphabet' and 'flows' ({exc})") from None
    return alphabet, nf, flows


def _group_window(spec: str, alphabet, nf) -> seqbuild.GroupCross:
    values = {}
    for part in filter(None, (p.strip() for p in spec.split(","))):
        key, _, value = part.partition("=")
        if not value.strip().isdigit():
            raise InputError(f"bad window component {part!r}")
        values[key.strip()] = int(value)
    if "length" not in values or "horizon" not in values:
        raise InputError("group window needs length and horizon")
    return seqbuild.GroupCross(alphabet, values["length"], values["horizon"], nf)


def _sequence_build(args) -> int:
    sys_ = _load_system(args.system)
    dense = _dense(args, sys_)
    kind = args.kind
    if kind == "s":
        seq = seqbuild.build_s_like(sys_, dense, _schedule(args.eps, len(dense) - 1))
    elif kind == "r":
        scheme = seqbuild.parse_window("r", args.window or "")
        seq = seqbuild.build_r_like(sys_, dense, _schedule(args.eps, len(dense)), scheme)
    elif kind == "t":
        scheme = seqbuild.parse_window("t", args.window or "")
        seq = seqbuild.build_t_like(sys_, dense, scheme)
    else:
        if not args.action:
            raise InputError("group sequences need --action")
        alphabet, nf, flows = _action(args.action)
        scheme = _group_window(args.window or "", alphabet, nf)
        seq = seqbuild.build_group_like(flows, sys_, dense, scheme)
    _emit(json.dumps(seq.to_dict(), indent=2) + "\n", args.out)
    return EXIT_OK


_DEFAULT_RULE = {"nat": "s", "nat_cross": "u", "rows_by_z": "t", "factorial_cycles": "r"}


def _sequence_verify(args) -> int:
    seq = _load_sequence(args.sequence)
    sys_ = _load_system(args.system)
    if not args.eps:
        raise InputError("--eps is required")
    flows = None
    if isinstance(seq.scheme, seqbuild.GroupCross):
        rules = seqbuild.group_rules(seq.scheme)
        if args.action:
            flows = _action(args.action)[2]
    else:
        kind = args.rule or _DEFAULT_RULE[seq.scheme.to_dict()["kind"]]
        rules = [seqbuild.ActionRule(kind)]
    report = seqbuild.verify_phi_like(seq, rules, sys_, args.eps[0], flows)
    if args.format == "json":
        _emit(json.dumps(report.to_dict(), indent=2) + "\n", None)
    else:
        lines = [f"verify: {args.sequence}",
                 f"  eps = {report.eps}", f"  checked = {report.checked}",
                 f"  skipped = {report.skipped}",
                 f"  tail_ok_from = {report.to_dict()['tail_ok_from']}",
                 f"  violations = {len(report.violations)}"]
        lines += [f"    {v.to_dict()['index']} {v.rule} d={v.distance}" for v in report.violations]
        _emit("\n".join(lines) + "\n", None)
    return EXIT_OK if report.ok else EXIT_NONE


def _sequence_extract(args) -> int:
    seq = _load_sequence(args.sequence)
    sys_ = _load_system(args.system)
    if not args.eps:
        raise InputError("--eps is required")
    try:
        if args.at is not None:
            chain = seqbuild.extract_self_chain(seq, sys_, args.at, args.eps[0])
        else:
            if args.source is None or args.to is None:
                raise InputError("extract needs --from and --to, or --at")
            chain = seqbuild.extract_chain(seq, sys_, args.source, args.to, args.eps[0])
    except seqbuild.NotFoundError as exc:
        print(f"none: {exc}", file=sys.stderr)
        return EXIT_NONE
    if args.format == "json":
        _emit(json.dumps(chain.to_dict(), indent=2) + "\n", None)
    else:
        _emit(f"chain ({len(chain)} steps, eps={chain.resolution}): "
              + " -> ".join(map(str, chain.points)) + "\n", None)
    return EXIT_OK


def _sequence_check(args) -> int:
    seq = _load_sequence(args.sequence)
    sys_ = _load_system(args.system)
    if args.prefix is None:
        raise InputError("--prefix is required")
    ok = seqbuild.tail_dense_check(seq, sys_, args.cover or chaindyn.SINGLETON, args.prefix)
    rep = Report("sequence-check", args.sequence)
    rep.add(f"tail-dense@{args.cover or chaindyn.SINGLETON}(prefix={args.prefix})", ok)
    _emit(rep.render(args.format), None)
    return EXIT_OK if ok else EXIT_NONE


def cmd_sequence(args) -> int:
    handler = {"build": _sequence_build, "verify": _sequence_verify,
               "extract": _sequence_extract, "check": _sequence_check}[args.action_name]
    return handler(args)


# --- quotient ---------------------------------------------------------------

def quotient_dot(m: quotients.EquivariantMap) -> str:
    """Bipartite witness: source and target clusters, dynamics and the map."""
    q = chaindyn._dot_id
    lines = ["digraph witness {", "  rankdir=LR;"]
    for side, sys_ in (("source", m.source), ("target", m.target)):
        lines.append(f"  subgraph cluster_{side} {{")
        lines.append(f"    label={q(side)};")
        for x in sys_.states:
            lines.append(f"    {q(side + ':' + x)} [label={q(x)}];")
        for x in sys_.states:
            lines.append(f"    {q(side + ':' + x)} -> {q(side + ':' + sys_.map[x])} [step=1];")
        lines.append("  }")
    for x in m.source.states:
        lines.append(f"  {q('source:' + x)} -> {q('target:' + m.assignment[x])} [style=dashed, map=1];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_quotient(args) -> int:
    g_sys = _load_system(args.source)
    f_sys = _load_system(args.target)
    finder = quotients.find_subquotient if args.subquotient else quotients.find_quotient
    relation = "subquotient" if args.subquotient else "quotient"
    rep = Report("quotient", f"{args.source} -> {args.target}")
    try:
        m = finder(g_sys, f_sys, args.budget)
    except quotients.BudgetExhausted as exc:
        rep.add(relation, "budget-exhausted", provenance=str(exc))
        _emit(rep.render(args.format), None)
        return EXIT_BUDGET
    if m is None:
        rep.add(relation, None)
        _emit(rep.render(args.format), None)
        return EXIT_NONE
    rep.add(relation, {x: m.assignment[x] for x in g_sys.states})
    rep.add("surjective", m.surjective)
    rep.add("verified", quotients.verify_equivariant(m))
    _emit(rep.render(args.format), None)
    _write_dot(args.dot, quotient_dot(m))
    return EXIT_OK


# --- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="omegastar", description=__doc__.split("\n")[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="classify a permutation presentation")
    p.add_argument("input", help="catalog name (s, s_inv, r, t, z, c_5, t_join_r, ...) or JSON file")
    p.add_argument("--parameter", type=int, default=None, help="period for the bare name c_n")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("analyze", parents=[common], help="chain structure of a finite system")
    p.add_argument("system")
    p.add_argument("--eps", action="append", help="rational resolution, repeatable")
    p.add_argument("--cover", action="append", help="cover name, repeatable")
    p.add_argument("--oracle", action="store_true", help="cross-check with the clopen oracles")
    p.add_argument("--oracle-bound", type=int, default=chaindyn.DEFAULT_ORACLE_BOUND)
    p.add_argument("--dot", help="write the chain graph of the first resolution")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sequence", help="build, verify, extract from or check sequences")
    seq_sub = p.add_subparsers(dest="action_name", required=True)
    b = seq_sub.add_parser("build", parents=[common])
    b.add_argument("kind", choices=("s", "r", "t", "group"))
    b.add_argument("--system", required=True)
    b.add_argument("--dense", help="comma-separated dense sequence (default: full enumeration)")
    b.add_argument("--eps", action="append", help="epsilon schedule entry, repeatable")
    b.add_argument("--window", help="e.g. max_n=5 | rows=3,width=4 | length=2,horizon=4")
    b.add_argument("--action", help="group action JSON (alphabet, normal_form, flows)")
    b.add_argument("--out")
    v = seq_sub.add_parser("verify", parents=[common])
    v.add_argument("sequence")
    v.add_argument("--system", required=True)
    v.add_argument("--eps", action="append")
    v.add_argument("--rule", choices=("s", "t", "r", "u"))
    v.add_argument("--action", help="group action JSON for generator maps")
    e = seq_sub.add_parser("extract", parents=[common])
    e.add_argument("sequence")
    e.add_argument("--system", required=True)
    e.add_argument("--eps", action="append")
    e.add_argument("--from", dest="source")
    e.add_argument("--to")
    e.add_argument("--at", help="state for a self-chain (factorial-cycle sequences)")
    c = seq_sub.add_parser("check", parents=[common])
    c.add_argument("sequence")
    c.add_argument("--system", required=True)
    c.add_argument("--cover")
    c.add_argument("--prefix", type=int)
    p.set_defaults(func=cmd_sequence)

    p = sub.add_parser("quotient", parents=[common], help="search for an equivariant map")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--subquotient", action="store_true")
    p.add_argument("--budget", type=int, default=None, help="maximum search steps")
    p.add_argument("--dot", help="write the witness as a bipartite DOT graph")
    p.set_defaults(func=cmd_quotient)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, SystemSpecError, PresentationError, seqbuild.SequenceError,
            IndependentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
