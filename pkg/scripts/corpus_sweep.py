"""Run every decision procedure over the fixture corpus and print a table (optionally CSV)."""
import argparse
import csv
import sys
import time

from omega_frag.algebra import syntactic_quotient
from omega_frag.buchi import regex_language
from omega_frag.corpus import CORPUS
from omega_frag.decide import (
    Answer,
    assume_yes_oracle,
    check_witness,
    decide_alphabetic_boolean,
    decide_bsigma2,
    decide_cantor_boolean,
    verify_representation,
)


def row(fixture, bounds):
    t0 = time.perf_counter()
    raw = regex_language(fixture.regex, fixture.alphabet)
    synt = syntactic_quotient(raw, with_order=False).language
    alph = decide_alphabetic_boolean(synt)
    if alph.answer is Answer.YES:
        check = "verified" if verify_representation(synt, alph.representation, bounds).ok else "COUNTEREXAMPLE"
    else:
        check = "witness ok" if not check_witness(synt, alph.witness) else "BAD WITNESS"
    return {
        "name": fixture.name,
        "regex": fixture.regex,
        "raw": raw.restrict().monoid.size,
        "synt": synt.monoid.size,
        "alph_bool": alph.answer.value,
        "alph_bool_raw": decide_alphabetic_boolean(raw).answer.value,
        "cantor_bool": decide_cantor_boolean(raw).answer.value,
        "bsigma2_assume_yes": decide_bsigma2(raw, assume_yes_oracle).answer.value,
        "check": check,
        "seconds": round(time.perf_counter() - t0, 2),
    }


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--bounds", default="5,5", help="lasso bounds for verifying YES representations")
    p.add_argument("--csv", action="store_true")
    args = p.parse_args()
    bounds = tuple(int(x) for x in args.bounds.split(","))
    rows = [row(f, bounds) for f in CORPUS]
    if args.csv:
        w = csv.DictWriter(sys.stdout, fieldnames=list(rows[0]))
        w.writeheader()
        w.writerows(rows)
        return
    print(f"{'name':22} {'raw':>4} {'synt':>4}  alph  (raw)  cantor  bsigma2  check")
    for r in rows:
        print(f"{r['name']:22} {r['raw']:4} {r['synt']:4}  {r['alph_bool']:4}  ({r['alph_bool_raw']:3})  "
              f"{r['cantor_bool']:6}  {r['bsigma2_assume_yes']:7}  {r['check']}")


if __name__ == "__main__":
    main()
