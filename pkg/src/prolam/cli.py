"""Command-line entry point.

Terms are given inline, or as ``@path`` to read them from a file.  DFAs,
languages and approximants are JSON files; where an approximant is
expected a closed term may be given instead, and is embedded with ``--k``.
Exit status: 0 on success, 1 on domain errors, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
from typing import Any, Optional, Sequence

from . import automata, profinite, reglang
from ._decimal import to_decimal
from .definability import DEFAULT_BUDGET, def_set
from .errors import InvariantViolation, MismatchError, ProlamError
from .model import DEFAULT_CAP, Den, Element, digit, interpret
from .syntax import Arrow, Term, normalize, parse_term, parse_type, show, term_to_json, typecheck, uncurry

MAX_TABLE_ROWS = 4096


class UsageError(Exception):
    pass


# --- input helpers ------------------------------------------------------------------


def _read_term(src: str) -> Term:
    if src.startswith("@"):
        with open(src[1:], encoding="utf-8") as fh:
            src = fh.read()
    return parse_term(src.strip())


def _read_json(path: str) -> Any:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _load(kind: str, path: str, build):
    try:
        return build(_read_json(path))
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise MismatchError(f"malformed {kind} file {path}: {exc}") from exc


def _read_approximant(src: str, args) -> profinite.Approximant:
    if os.path.isfile(src):
        return _load("approximant", src, lambda obj: profinite.Approximant.from_json(obj, cap=args.cap))
    return profinite.iota(_read_term(src), args.k, args.cap)


def _read_language(path: str, args) -> reglang.RegLanguage:
    return _load("language", path, lambda obj: reglang.RegLanguage.from_json(obj, cap=args.cap))


def _read_dfa(path: str) -> automata.DFA:
    return _load("DFA", path, automata.DFA.from_json)


def _emit(args, human: str, payload: Any) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(human)


# --- commands -----------------------------------------------------------------------


def cmd_check(args) -> int:
    t = _read_term(args.term)
    ty = typecheck(t)
    _emit(args, f"{show(t)} : {ty}", {"term": show(t), "type": str(ty)})
    return 0


def cmd_normalize(args) -> int:
    t = _read_term(args.term)
    nf = normalize(t)
    _emit(args, show(nf), {"normal_form": show(nf), "type": str(typecheck(nf)), "term": term_to_json(nf)})
    return 0


def _table_rows(x: Element) -> Optional[list[tuple[list[int], int]]]:
    """Uncurried table of an arrow element, or None when too large."""
    args_ty, _ = uncurry(x.type)
    if not args_ty:
        return None
    sizes = [Den(a, x.q).size for a in args_ty]
    n = 1
    for s in sizes:
        n *= s
        if n > MAX_TABLE_ROWS:
            return None
    rows = []
    for combo in itertools.product(*(range(s) for s in sizes)):
        g, ty = x.index, x.type
        for a in combo:
            assert isinstance(ty, Arrow)
            g, ty = digit(g, Den(ty.cod, x.q).size, a), ty.cod
        rows.append((list(combo), g))
    return rows


def cmd_interp(args) -> int:
    t = _read_term(args.term)
    x = interpret(t, args.q, cap=args.cap)
    rows = _table_rows(x)
    lines = [f"type  {x.type}", f"q     {x.q}", f"index {to_decimal(x.index)}"]
    if rows is not None:
        lines.append("table")
        lines.extend("  " + " ".join(map(str, a)) + " -> " + str(v) for a, v in rows)
    payload = x.to_json()
    if rows is not None:
        payload["table"] = [{"args": a, "value": v} for a, v in rows]
    _emit(args, "\n".join(lines), payload)
    return 0


def cmd_def(args) -> int:
    ty = parse_type(args.type)
    ds = def_set(ty, args.q, budget=args.budget, cap=args.cap)
    status = "exact" if ds.exact else "lower bound"
    lines = [f"Def({ty}) at q={args.q}: {len(ds)} element(s), {status} ({ds.strategy})"]
    lines.extend(f"  {to_decimal(i)}  {show(ds.witness(i))}" for i in ds.elements)
    _emit(args, "\n".join(lines), ds.to_json())
    return 0


# lang


def cmd_lang_atom(args) -> int:
    t = _read_term(args.term)
    x = interpret(t, args.q, cap=args.cap)
    lang = reglang.atom_language(x.type, args.q, x)
    print(json.dumps(lang.to_json(), indent=2))
    return 0


def cmd_lang_member(args) -> int:
    lang = _read_language(args.language, args)
    ok = reglang.member(lang, _read_term(args.term))
    _emit(args, "member" if ok else "not a member", {"member": ok})
    return 0


def cmd_lang_op(args) -> int:
    a = _read_language(args.left, args)
    if args.op == "complement":
        if args.right is not None:
            raise UsageError("complement takes one language")
        out = reglang.complement(a)
    else:
        if args.right is None:
            raise UsageError(f"{args.op} takes two languages")
        out = reglang.boolean_op(args.op, a, _read_language(args.right, args))
    print(json.dumps(out.to_json(), indent=2))
    return 0


def cmd_lang_embed(args) -> int:
    out = reglang.embed(_read_language(args.language, args), args.q)
    print(json.dumps(out.to_json(), indent=2))
    return 0


def cmd_lang_intersect(args) -> int:
    out = reglang.intersect_across(_read_language(args.left, args), _read_language(args.right, args))
    print(json.dumps(out.to_json(), indent=2))
    return 0


# pro


def _describe_approximant(theta: profinite.Approximant) -> str:
    lines = [f"type {theta.type}, k={theta.k}"]
    for q in range(1, theta.k + 1):
        w = theta.witness(q)
        shown = show(w) if w is not None else "(definability deferred)"
        lines.append(f"  q={q}: {to_decimal(theta.components[q - 1])}  {shown}")
    return "\n".join(lines)


def cmd_pro_iota(args) -> int:
    theta = profinite.iota(_read_term(args.term), args.k, args.cap)
    _emit(args, _describe_approximant(theta), theta.to_json())
    return 0


def _counterexample_json(cx) -> Optional[dict]:
    if cx is None:
        return None
    q, q2, witness = cx
    return {"q": q, "q2": q2, "witness": witness.to_json()}


def cmd_pro_check_natural(args) -> int:
    theta = _read_approximant(args.approximant, args)
    res = profinite.check_natural(theta)
    if res.ok:
        human = f"natural ({res.checked} partial surjections checked)"
    else:
        q, q2, f = res.counterexample
        shown = ["-" if v is None else str(v) for v in f.map]
        human = f"not natural: f: [{q}] -> [{q2}] = [{', '.join(shown)}]"
    _emit(args, human, {"natural": res.ok, "checked": res.checked, "counterexample": _counterexample_json(res.counterexample)})
    return 0


def cmd_pro_check_parametric(args) -> int:
    theta = _read_approximant(args.approximant, args)
    res = profinite.check_parametric(theta, samples=args.samples, seed=args.seed)
    mode = "exhaustive" if res.exhaustive else f"sampled, seed {args.seed}"
    if res.ok:
        human = f"parametric ({res.checked} relations checked, {mode})"
    else:
        q, q2, r = res.counterexample
        human = f"not parametric: R on [{q}] x [{q2}] = {r.sorted_pairs()}"
    payload = {
        "parametric": res.ok,
        "checked": res.checked,
        "exhaustive": res.exhaustive,
        "seed": args.seed,
        "counterexample": _counterexample_json(res.counterexample),
    }
    _emit(args, human, payload)
    return 0


def cmd_pro_compose(args) -> int:
    out = profinite.compose(_read_approximant(args.first, args), _read_approximant(args.second, args))
    _emit(args, _describe_approximant(out), out.to_json())
    return 0


def cmd_pro_omega(args) -> int:
    if args.approximant is not None:
        out = profinite.apply_omega(_read_approximant(args.approximant, args))
    elif args.type is not None:
        out = profinite.omega_approximant(parse_type(args.type), args.k, args.cap)
    else:
        raise UsageError("omega needs --type A or an approximant at A -> A")
    _emit(args, _describe_approximant(out), out.to_json())
    return 0


def cmd_pro_word_omega(args) -> int:
    out = profinite.word_omega(_read_approximant(args.approximant, args))
    _emit(args, _describe_approximant(out), out.to_json())
    return 0


def cmd_pro_separate(args) -> int:
    q = profinite.separate(_read_term(args.left), _read_term(args.right), args.max_q, args.cap)
    human = f"separated at q={q}" if q is not None else f"not separated up to q={args.max_q}"
    _emit(args, human, {"separated": q is not None, "q": q, "max_q": args.max_q})
    return 0


# dfa


def cmd_dfa_run(args) -> int:
    d = _read_dfa(args.dfa)
    s = automata.run(d, args.word)
    ok = s in d.final
    _emit(args, f"state {s}, {'accepted' if ok else 'rejected'}", {"state": s, "accepted": ok})
    return 0


def cmd_dfa_accepts(args) -> int:
    d = _read_dfa(args.dfa)
    ok = automata.accepts(d, args.word)
    church = reglang.member(automata.language_of_dfa_as_reg(d, args.cap), automata.church_term(args.word, d.alphabet))
    if ok != church:
        raise InvariantViolation("automaton run and Church evaluation disagree")
    _emit(args, "accepted" if ok else "rejected", {"accepted": ok})
    return 0


def cmd_dfa_to_reg(args) -> int:
    lang = automata.language_of_dfa_as_reg(_read_dfa(args.dfa), args.cap)
    print(json.dumps(lang.to_json(), indent=2))
    return 0


def cmd_dfa_monoid(args) -> int:
    m = automata.transition_monoid(_read_dfa(args.dfa), args.cap)
    lines = [f"transition monoid of size {len(m)} on [{m.q}]"]
    for i, t in enumerate(m.elements):
        tags = (["unit"] if i == m.unit else []) + [a for a, g in zip(m.alphabet, m.generators) if g == i]
        lines.append(f"  {i}: {list(t)}" + (f"  ({', '.join(tags)})" if tags else ""))
    _emit(args, "\n".join(lines), m.to_json())
    return 0


# --- parser -------------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--cap", type=_positive, default=DEFAULT_CAP, help="materialization cap (default 2^20)")
    p.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET, help="enumeration budget in nodes")
    p.add_argument("--k", type=_positive, default=profinite.DEFAULT_K, help="approximant cutoff")
    p.add_argument("--seed", type=int, default=0, help="sampling seed")
    p.add_argument("--samples", type=_positive, default=profinite.DEFAULT_SAMPLES, help="relations per pair of levels")
    return p


def _positive(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {s}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="prolam", description="Finite semantics of simply typed lambda-terms.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def leaf(group, name, fn, help_):
        p = group.add_parser(name, parents=[common], help=help_)
        p.set_defaults(fn=fn)
        return p

    p = leaf(sub, "check", cmd_check, "typecheck a closed term")
    p.add_argument("term")
    p = leaf(sub, "normalize", cmd_normalize, "beta-normal eta-long form")
    p.add_argument("term")
    p = leaf(sub, "interp", cmd_interp, "interpret a closed term over [q]")
    p.add_argument("term")
    p.add_argument("--q", type=_positive, required=True)
    p = leaf(sub, "def", cmd_def, "definable elements of a type over [q]")
    p.add_argument("type")
    p.add_argument("--q", type=_positive, required=True)

    lang = sub.add_parser("lang", help="regular languages of lambda-terms").add_subparsers(
        dest="sub", required=True, metavar="SUBCOMMAND"
    )
    p = leaf(lang, "atom", cmd_lang_atom, "atom language of a term's interpretation")
    p.add_argument("term")
    p.add_argument("--q", type=_positive, required=True)
    p = leaf(lang, "member", cmd_lang_member, "membership of a closed term")
    p.add_argument("language")
    p.add_argument("term")
    p = leaf(lang, "op", cmd_lang_op, "Boolean operation at one level")
    p.add_argument("op", choices=["union", "intersection", "complement"])
    p.add_argument("left")
    p.add_argument("right", nargs="?")
    p = leaf(lang, "embed", cmd_lang_embed, "recognize a language at a larger set")
    p.add_argument("language")
    p.add_argument("--q", type=_positive, required=True)
    p = leaf(lang, "intersect", cmd_lang_intersect, "intersection across two levels")
    p.add_argument("left")
    p.add_argument("right")

    pro = sub.add_parser("pro", help="truncated profinite lambda-terms").add_subparsers(
        dest="sub", required=True, metavar="SUBCOMMAND"
    )
    p = leaf(pro, "iota", cmd_pro_iota, "embed a closed term")
    p.add_argument("term")
    p = leaf(pro, "check-natural", cmd_pro_check_natural, "naturality under partial surjections")
    p.add_argument("approximant")
    p = leaf(pro, "check-parametric", cmd_pro_check_parametric, "parametricity under relations")
    p.add_argument("approximant")
    p = leaf(pro, "compose", cmd_pro_compose, "first A -> B, then B -> C")
    p.add_argument("first")
    p.add_argument("second")
    p = leaf(pro, "omega", cmd_pro_omega, "idempotent-power family, or its action on an approximant")
    p.add_argument("approximant", nargs="?")
    p.add_argument("--type")
    p = leaf(pro, "word-omega", cmd_pro_word_omega, "omega-power of a Church-type approximant")
    p.add_argument("approximant")
    p = leaf(pro, "separate", cmd_pro_separate, "least q telling two terms apart")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--max-q", type=_positive, default=4)

    dfa = sub.add_parser("dfa", help="automata and Church-encoded words").add_subparsers(
        dest="sub", required=True, metavar="SUBCOMMAND"
    )
    for name, fn, help_ in (
        ("run", cmd_dfa_run, "final state on a word"),
        ("accepts", cmd_dfa_accepts, "acceptance, cross-checked by Church evaluation"),
    ):
        p = leaf(dfa, name, fn, help_)
        p.add_argument("dfa")
        p.add_argument("word", nargs="?", default="")
    p = leaf(dfa, "to-reg", cmd_dfa_to_reg, "the language as a regular language of Church terms")
    p.add_argument("dfa")
    p = leaf(dfa, "monoid", cmd_dfa_monoid, "transition monoid")
    p.add_argument("dfa")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"prolam: error: {exc}", file=sys.stderr)
        return 2
    except ProlamError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
