"""``omega-frag``: compute syntactic monoids and decide topological / logical fragments.

Exit codes for ``decide``: 0 = yes, 1 = no, 2 = unknown.  ``verify`` exits 1 on
a counterexample.  Any error exits with 3.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .algebra import RecognizedLanguage, syntactic_quotient
from .buchi import Buchi, recognize, regex_language
from .decide import (
    Verdict,
    check_witness,
    construct_representation,
    decide_alphabetic_boolean,
    decide_bsigma2,
    decide_cantor_boolean,
    get_oracle,
    saturation_evidence,
    verify_representation,
)
from .errors import BudgetExceeded, OmegaFragError
from .oracle import MAX_LASSO_BOUND

EXIT_ERROR = 3


@dataclass
class RunConfig:
    command: str
    regex: str | None = None
    automaton: Path | None = None
    monoid: Path | None = None
    alphabet: str | None = None
    which: str | None = None
    bounds: tuple = (6, 6)
    oracle: str = "unknown"
    json: bool = False
    force: bool = False
    mutate: str | None = None
    verify: bool = False
    k: int = 2
    length: int = 6

    def __post_init__(self):
        sources = [x for x in (self.regex, self.automaton, self.monoid) if x is not None]
        if len(sources) != 1:
            raise ValueError("give exactly one of REGEX, --automaton, --monoid")
        if not self.force and max(self.bounds) > MAX_LASSO_BOUND:
            raise BudgetExceeded(f"bounds above {MAX_LASSO_BOUND} need --force")

    def load(self) -> RecognizedLanguage:
        if self.regex is not None:
            return regex_language(self.regex, self.alphabet)
        if self.automaton is not None:
            a = Buchi.from_json(self.automaton.read_text())
            if self.alphabet:
                a = a.with_alphabet(self.alphabet)
            return recognize(a)
        return RecognizedLanguage.from_json(self.monoid.read_text())


def _bounds(text: str) -> tuple:
    try:
        u, v = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("bounds must look like U,V") from None
    if u < 0 or v < 0:
        raise argparse.ArgumentTypeError("bounds must be nonnegative")
    return u, v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="omega-frag", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def source(sp):
        sp.add_argument("regex", nargs="?", help="omega-regular expression, e.g. '([ab]*aa[ab]*)^w'")
        sp.add_argument("--automaton", type=Path, help="automaton JSON file (.aut.json)")
        sp.add_argument("--monoid", type=Path, help="monoid + acceptance JSON file (.monoid.json)")
        sp.add_argument("--alphabet", help="ambient alphabet (default: letters of the input)")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--force", action="store_true", help="lift enumeration guards")

    sp = sub.add_parser("synt", help="print the syntactic monoid")
    source(sp)
    sp.add_argument("--raw", action="store_true", help="print the transition monoid instead")

    sp = sub.add_parser("decide", help="decide a fragment")
    sp.add_argument("which", choices=["alph-bool", "cantor-bool", "bsigma2"])
    source(sp)
    sp.add_argument("--oracle", default="unknown", help="unknown | assume-yes | evidence:K[:BOUND]")
    sp.add_argument("--bounds", type=_bounds, default=None, help="also verify a YES representation on lassos up to U,V")

    sp = sub.add_parser("verify", help="check the constructive representation on bounded lassos")
    source(sp)
    sp.add_argument("--bounds", type=_bounds, default=(6, 6))
    sp.add_argument("--mutate", choices=["drop-block"], help="corrupt the representation (testing aid)")

    sp = sub.add_parser("evidence", help="search for words u ≡_k v with different syntactic images")
    source(sp)
    sp.add_argument("-k", type=int, default=2)
    sp.add_argument("--length", type=int, default=6)
    return p


def config_from_args(args) -> RunConfig:
    return RunConfig(
        command=args.command,
        regex=args.regex,
        automaton=args.automaton,
        monoid=args.monoid,
        alphabet=args.alphabet,
        which=getattr(args, "which", None),
        bounds=getattr(args, "bounds", None) or (6, 6),
        oracle=getattr(args, "oracle", "unknown"),
        json=args.json,
        force=args.force,
        mutate=getattr(args, "mutate", None),
        verify=args.command == "decide" and args.bounds is not None,
        k=getattr(args, "k", 2),
        length=getattr(args, "length", 6),
    )


# -- commands ---------------------------------------------------------------------


def _pair(names, p) -> str:
    return f"({names[p[0]]},{names[p[1]]})"


def cmd_synt(cfg: RunConfig, raw: bool = False, out=None) -> int:
    out = out or sys.stdout
    lang = cfg.load()
    if raw:
        lang = lang.restrict()
    else:
        lang = syntactic_quotient(lang).language
    m = lang.monoid
    if cfg.json:
        print(lang.to_json(indent=1), file=out)
        return 0
    names = m.names
    width = max(len(n) for n in names)
    print(f"elements ({m.size}): {', '.join(names)}", file=out)
    print("generators: " + ", ".join(f"{a} -> {names[x]}" for a, x in lang.hom.images.items()), file=out)
    print("table:", file=out)
    print(" " * (width + 3) + " ".join(n.rjust(width) for n in names), file=out)
    for i, row in enumerate(m.table):
        print(f"  {names[i].rjust(width)} " + " ".join(names[x].rjust(width) for x in row), file=out)
    print("idempotents: " + ", ".join(names[e] for e in m.idempotents), file=out)
    print("linked pairs: " + " ".join(_pair(names, p) for p in m.linked_pairs()), file=out)
    print("accepted: " + " ".join(f"[{names[s]}][{names[e]}]^w" for s, e in sorted(lang.accepted)), file=out)
    if m.order is not None:
        strict = sorted((s, t) for s, t in m.order if s != t)
        print("order: " + (" ".join(f"{names[s]}<={names[t]}" for s, t in strict) or "equality"), file=out)
    return 0


def _print_verdict(v: Verdict, cfg: RunConfig, out) -> None:
    if cfg.json:
        print(json.dumps(v.to_dict(), indent=1, ensure_ascii=False), file=out)
        return
    print(f"{v.question}: {v.answer.value.upper()}", file=out)
    if v.witness is not None:
        print(f"witness: {v.witness}", file=out)
    if v.representation is not None:
        print("representation: " + (" ∪ ".join(str(b) for b in v.representation) or "∅"), file=out)
    for k, val in v.checks.items():
        print(f"  {k}: {val}", file=out)
    for n in v.notes:
        print(f"  note: {n}", file=out)


def cmd_decide(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    # verdicts do not depend on the recognizer; the syntactic one gives readable witnesses
    lang = syntactic_quotient(cfg.load(), with_order=False).language
    if cfg.which == "alph-bool":
        v = decide_alphabetic_boolean(lang, verify_bounds=cfg.bounds if cfg.verify else None)
    elif cfg.which == "cantor-bool":
        v = decide_cantor_boolean(lang)
    else:
        v = decide_bsigma2(lang, get_oracle(cfg.oracle))
    if v.witness is not None and cfg.which == "alph-bool":
        problems = check_witness(lang, v.witness)
        v.checks["witness_valid"] = not problems
    _print_verdict(v, cfg, out)
    return v.exit_code


def cmd_verify(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    lang = cfg.load().restrict()
    blocks = construct_representation(lang)
    if cfg.mutate == "drop-block" and blocks:
        # drop the block with the largest alphabet: it covers the most lassos
        drop = max(range(len(blocks)), key=lambda i: (len(blocks[i].alphabet), i))
        blocks = blocks[:drop] + blocks[drop + 1:]
    res = verify_representation(lang, blocks, cfg.bounds)
    if cfg.json:
        print(json.dumps({
            "blocks": [b.to_dict() for b in blocks],
            "bounds": list(cfg.bounds),
            "checked": res.checked,
            "ok": res.ok,
            "counterexample": None if res.ok else str(res.counterexample),
        }, indent=1), file=out)
    else:
        print("blocks: " + (" ∪ ".join(str(b) for b in blocks) or "∅"), file=out)
        u, v = cfg.bounds
        if res.ok:
            print(f"pass: {res.checked} lassos with |u|<={u}, |v|<={v}", file=out)
        else:
            print(f"FAIL: disagreement on {res.counterexample} after {res.checked} lassos", file=out)
    return 0 if res.ok else 1


def cmd_evidence(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    rep = saturation_evidence(cfg.load(), cfg.k, cfg.length, force=cfg.force)
    if cfg.json:
        print(json.dumps({
            "k": rep.k, "length_bound": rep.length_bound, "words": rep.words_checked,
            "classes": rep.classes, "violation": rep.violation,
        }, ensure_ascii=False), file=out)
    else:
        print(rep.summary, file=out)
        print(f"  {rep.words_checked} words, {rep.classes} ≡_{rep.k}-classes seen", file=out)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args, extra = parser.parse_known_args(argv)
    # an optional positional is skipped when options come between it and the subcommand
    if extra and args.regex is None and len(extra) == 1 and not extra[0].startswith("-"):
        args.regex = extra.pop()
    if extra:
        parser.error(f"unrecognized arguments: {' '.join(extra)}")
    try:
        cfg = config_from_args(args)
        if cfg.command == "synt":
            return cmd_synt(cfg, raw=args.raw)
        if cfg.command == "decide":
            return cmd_decide(cfg)
        if cfg.command == "verify":
            return cmd_verify(cfg)
        return cmd_evidence(cfg)
    except (OmegaFragError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"omega-frag: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
