"""Walk through the worked example ({a,b}*aa{a,b}*)^w: syntactic monoid, linked pairs, verdicts."""
import argparse

from omega_frag.algebra import AlphImage, coset, syntactic_quotient, up_membership
from omega_frag.buchi import regex_language, to_automaton
from omega_frag.decide import (
    check_witness,
    decide_alphabetic_boolean,
    decide_bsigma2,
    decide_cantor_boolean,
    get_oracle,
    saturation_evidence,
)


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--regex", default="([ab]*aa[ab]*)^w")
    p.add_argument("--oracle", default="assume-yes")
    p.add_argument("-k", type=int, default=2)
    args = p.parse_args()

    aut = to_automaton(args.regex)
    raw = regex_language(args.regex)
    synt = syntactic_quotient(raw).language
    m = synt.monoid
    names = m.names
    print(f"automaton: {aut.n_states} states; transition monoid: {raw.restrict().monoid.size} elements")
    print(f"syntactic monoid: {', '.join(names)}")
    for x in range(m.size):
        print("   " + " ".join(names[m.mul(x, y)].rjust(3) for y in range(m.size)))
    print("idempotents:", ", ".join(names[e] for e in m.idempotents))
    print("accepted:", ", ".join(f"[{names[s]}][{names[e]}]^w" for s, e in sorted(synt.accepted)))

    img = AlphImage(synt.hom)
    print("\nloops with alphabet {a,b}:",
          ", ".join(f"{names[e]} <- {img.word(e, 'ab')}" for e in sorted(img.elements_with_alphabet("ab"))))
    aa = m.index("aa")
    print("coset aa.h({a,b}*) =", {names[x] for x in coset(synt.hom, aa, "ab")})

    v = decide_alphabetic_boolean(synt)
    print(f"\nalph-bool: {v.answer.value}")
    if v.witness is not None:
        w = v.witness
        print(f"  {w}")
        print(f"  alpha in L: {up_membership(synt, w.alpha)}, beta in L: {up_membership(synt, w.beta)}")
        print(f"  witness re-check: {check_witness(synt, w) or 'ok'}")
    print(f"cantor-bool: {decide_cantor_boolean(raw).answer.value}")
    b = decide_bsigma2(raw, get_oracle(args.oracle))
    print(f"bsigma2 with oracle {args.oracle}: {b.answer.value} {b.checks}")
    print(f"saturation evidence at k={args.k}: {saturation_evidence(synt, args.k, 6).summary}")


if __name__ == "__main__":
    main()
