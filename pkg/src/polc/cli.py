"""``polc`` command-line front end.

Exit codes: 0 success, 2 input or resource error, 3 ``--expect`` mismatch,
4 an internal self-check tripped (including law-suite failures).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .algebra import DEFAULT_MONOID_CAP, SyntacticData, monoid_report, syntactic
from .automata import Alphabet, Dfa
from .baseclass import BaseClass, class_from_spec
from .decide import Verdict, decide
from .errors import InternalInvariantError, PolcError
from .forest import build_forest, dump, height_bound, validate_forest
from .laws import SUITES, format_report, run_laws
from .pairs import (
    check_relation_laws,
    compute_pairs,
    machine_pairs,
    render_pairs,
    saturated_by_closure,
    saturated_by_membership,
)
from .witness import synthesize

EXIT_OK, EXIT_INPUT, EXIT_EXPECT, EXIT_INTERNAL = 0, 2, 3, 4
# cross-check closure against subset enumeration up to this monoid size
ENUMERATION_CHECK_SIZE = 8


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polc", description="Decide Pol(C), co-Pol(C) and UPol(C) membership.")
    p.add_argument("--version", action="version", version=f"polc {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def language(sp: argparse.ArgumentParser) -> None:
        g = sp.add_mutually_exclusive_group(required=True)
        g.add_argument("--regex", help="regular expression over the alphabet")
        g.add_argument("--dfa", type=Path, help="DFA file in the text format")
        sp.add_argument("--alphabet", help="alphabet for --regex (default: letters of the pattern)")
        sp.add_argument("--monoid-cap", type=int, default=DEFAULT_MONOID_CAP)
        sp.add_argument("--machine", action="store_true", help="append a stable machine-readable block")

    sp = sub.add_parser("monoid", help="syntactic ordered monoid report")
    language(sp)

    sp = sub.add_parser("pairs", help="C-pairs and saturated C-pairs")
    language(sp)
    sp.add_argument("--class", dest="cls", required=True, help="st, at or lattice:<path>")

    sp = sub.add_parser("decide", help="membership in pol, copol or upol")
    language(sp)
    sp.add_argument("--class", dest="cls", required=True)
    sp.add_argument("--level", choices=["pol", "copol", "upol"], default="pol")
    sp.add_argument("--expect", choices=["yes", "no"])

    sp = sub.add_parser("witness", help="synthesize and verify a Pol(C) expression")
    language(sp)
    sp.add_argument("--class", dest="cls", required=True)
    sp.add_argument("--max-h", type=int)

    sp = sub.add_parser("forest", help="factorization forest of a word")
    language(sp)
    sp.add_argument("--word", required=True)
    sp.add_argument("--dump", action="store_true", help="print the tree")
    sp.add_argument("--class-independent", action="store_true", help="accepted for symmetry; forests ignore C")

    sp = sub.add_parser("laws", help="run seeded law suites")
    sp.add_argument("--suite", choices=[*SUITES, "all"], default="all")
    sp.add_argument("--seed", type=int, default=1)
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--machine", action="store_true")
    return p


def _load_language(args: argparse.Namespace) -> Dfa:
    if args.dfa is not None:
        try:
            text = args.dfa.read_text(encoding="utf-8")
        except OSError as exc:
            raise PolcError(f"cannot read {args.dfa}: {exc.strerror}") from None
        lang = Dfa.from_text(text)
        if args.alphabet and Alphabet.of(args.alphabet) != lang.alphabet:
            raise PolcError("--alphabet differs from the alphabet of the DFA file")
        return lang
    if args.alphabet:
        alphabet = Alphabet.of(args.alphabet)
    else:
        letters = sorted({c for c in args.regex if c not in "()|*" and not c.isspace()})
        if not letters:
            raise PolcError("cannot infer an alphabet from the pattern; pass --alphabet")
        alphabet = Alphabet.of(letters)
    return Dfa.from_regex(args.regex, alphabet)


def _class_label(oracle: BaseClass) -> str:
    return oracle.name


def _machine(payload: dict) -> str:
    return "--- machine ---\n" + json.dumps(payload, sort_keys=True, ensure_ascii=False)


def _cmd_monoid(args: argparse.Namespace, out) -> int:
    sd = syntactic(_load_language(args), args.monoid_cap)
    print(monoid_report(sd), file=out)
    if args.machine:
        m = sd.morphism
        print(
            _machine(
                {
                    "elements": list(m.representatives),
                    "omega": sd.monoid.omega,
                    "table": sd.monoid.table.tolist(),
                    "order": [[s, t] for s in range(m.size) for t in range(m.size) if sd.order[s, t]],
                    "idempotents": sd.monoid.idempotents(),
                    "accepting": sorted(m.accepting),
                }
            ),
            file=out,
        )
    return EXIT_OK


def _relations(sd: SyntacticData, oracle: BaseClass):
    plain = compute_pairs(sd.morphism, oracle)
    sat = saturated_by_closure(plain)
    if sd.size <= ENUMERATION_CHECK_SIZE and saturated_by_membership(sd.morphism, oracle) != sat:
        raise InternalInvariantError("saturated pairs: closure and enumeration disagree")
    return plain, sat


def _cmd_pairs(args: argparse.Namespace, out) -> int:
    lang = _load_language(args)
    oracle = class_from_spec(args.cls, lang.alphabet)
    sd = syntactic(lang, args.monoid_cap)
    m = sd.morphism
    plain, sat = _relations(sd, oracle)
    failed = False
    for title, rel, laws in (
        ("C-pairs", plain, check_relation_laws(plain, m)),
        ("saturated C-pairs", sat, check_relation_laws(sat, m, plain)),
    ):
        print(f"{title} for {_class_label(oracle)} ({int(rel.bits.sum())} of {m.size * m.size}):", file=out)
        print(render_pairs(rel, m), file=out)
        for law, ok in laws.checks.items():
            print(f"  {law}: {'ok' if ok else 'FAILED'}", file=out)
            failed |= not ok
    if args.machine:
        print("--- machine ---", file=out)
        print("\n".join(machine_pairs(plain, m)), file=out)
    if failed:
        raise InternalInvariantError("pair relation laws failed")
    return EXIT_OK


def _verdict_lines(v: Verdict, label: str) -> list[str]:
    lines = [f"{v.level}({label}): {'yes' if v.answer else 'no'}"]
    if v.violation is not None:
        lines.append(f"  violation: {v.violation.describe()}")
    lines.append(f"  equation: {v.equation_used}")
    return lines


def _cmd_decide(args: argparse.Namespace, out) -> int:
    lang = _load_language(args)
    oracle = class_from_spec(args.cls, lang.alphabet)
    sd = syntactic(lang, args.monoid_cap)
    plain, sat = _relations(sd, oracle) if args.level == "upol" else (compute_pairs(sd.morphism, oracle), None)
    v = decide(sd, args.level, plain, sat)
    print("\n".join(_verdict_lines(v, _class_label(oracle))), file=out)
    if args.machine:
        viol = v.violation
        print(
            _machine(
                {
                    "level": v.level,
                    "class": _class_label(oracle),
                    "answer": "yes" if v.answer else "no",
                    "violation": None if viol is None else {"s": viol.s_word, "t": viol.t_word},
                }
            ),
            file=out,
        )
    if args.expect is not None and (args.expect == "yes") != v.answer:
        print(f"expected {args.expect}", file=out)
        return EXIT_EXPECT
    return EXIT_OK


def _cmd_witness(args: argparse.Namespace, out) -> int:
    lang = _load_language(args)
    oracle = class_from_spec(args.cls, lang.alphabet)
    sd = syntactic(lang, args.monoid_cap)
    plain = compute_pairs(sd.morphism, oracle)
    v = decide(sd, "pol", plain)
    label = _class_label(oracle)
    if not v.answer:
        print("\n".join(_verdict_lines(v, label)), file=out)
        print("no witness: the language is not in the class", file=out)
        return EXIT_OK
    res = synthesize(sd, oracle, plain, max_h=args.max_h)
    print(f"pol({label}) witness:", file=out)
    print(res.render(), file=out)
    print("legend:", file=out)
    for name, d in res.bases.items():
        print(f"  {name}:", file=out)
        print("    " + d.to_text().rstrip("\n").replace("\n", "\n    "), file=out)
    print(f"verified: {'yes' if res.verified else 'no'}", file=out)
    print(f"level: {res.level} (bound {res.bound})", file=out)
    if args.machine:
        print(
            _machine(
                {"expression": res.render(), "verified": res.verified, "level": res.level, "bound": res.bound}
            ),
            file=out,
        )
    return EXIT_OK


def _cmd_forest(args: argparse.Namespace, out) -> int:
    lang = _load_language(args)
    m = syntactic(lang, args.monoid_cap).morphism
    f = build_forest(m, args.word)
    rep = validate_forest(f, m, args.word)
    if args.dump:
        print(dump(f, m), file=out)
    print(f"height: {rep.height} (bound {height_bound(m)})", file=out)
    print(f"valid: {'yes' if rep.valid else 'no'}", file=out)
    for line in rep.failures:
        print(f"  {line}", file=out)
    if args.machine:
        print(_machine({"height": rep.height, "valid": rep.valid, "value": m.representatives[rep.value]}), file=out)
    if not rep.valid:
        raise InternalInvariantError("constructed forest failed validation")
    return EXIT_OK


def _cmd_laws(args: argparse.Namespace, out) -> int:
    rep = run_laws(args.suite, args.seed, args.samples)
    print(format_report(rep), file=out)
    if args.machine:
        print(
            _machine(
                {
                    "suite": rep.suite,
                    "seed": rep.seed,
                    "cases": rep.cases,
                    "failures": [str(f) for f in rep.failures],
                }
            ),
            file=out,
        )
    return EXIT_OK if rep.ok else EXIT_INTERNAL


COMMANDS = {
    "monoid": _cmd_monoid,
    "pairs": _cmd_pairs,
    "decide": _cmd_decide,
    "witness": _cmd_witness,
    "forest": _cmd_forest,
    "laws": _cmd_laws,
}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_INPUT
    try:
        return COMMANDS[args.command](args, out)
    except PolcError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    except InternalInvariantError as exc:
        print(f"internal error: {exc}", file=err)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
