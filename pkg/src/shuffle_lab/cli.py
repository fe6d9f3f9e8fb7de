"""``shuffle-lab`` command line.

Exit status: 0 when every check in the report passes, 1 when one fails,
2 on invalid input. JSON output has a fixed key order and carries no timing,
so identical arguments give byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import acceptance
from .arith import is_p_power, is_prime, necklace_phi, p_adic_valuation
from .indec import indec_report, integral_structure
from .magnus import magnus_eval, parse_group_word, render_group_word, rho_from_series, rho_modulus
from .shuffle_poly import WordPoly, concat_mul, shuffle
from .unipotent import DEFAULT_CAP, GroupTooLarge, verify_filtration_lemma
from .words import Alphabet, AlphabetError, lyndon_words

DEFAULT_SEED = 20260101


class InputError(ValueError):
    pass


def parse_alphabet(text: str) -> Alphabet:
    """``"3"`` gives letters a, b, c; ``"xyz"`` names them explicitly."""
    try:
        return Alphabet(int(text)) if text.isdigit() else Alphabet.from_letters(text)
    except AlphabetError as exc:
        raise InputError(str(exc)) from None


def _report(command: str, inputs: dict, outputs: dict, passed: bool = True) -> dict:
    return {"command": command, "inputs": inputs, "outputs": outputs, "passed": passed}


def cmd_lyndon(alphabet: Alphabet, s: int) -> dict:
    if s < 1:
        raise InputError("degree must be >= 1")
    words = [alphabet.render(w) for w in lyndon_words(alphabet, s)]
    return _report("lyndon", {"m": alphabet.size, "s": s},
                   {"words": words, "phi": necklace_phi(s, alphabet.size)},
                   len(words) == necklace_phi(s, alphabet.size))


def cmd_shuffle(f: str, g: str, alphabet: Alphabet, concat: bool = False) -> dict:
    F, G = WordPoly.parse(f, alphabet), WordPoly.parse(g, alphabet)
    out = concat_mul(F, G) if concat else shuffle(F, G)
    return _report("shuffle", {"f": str(F), "g": str(G), "product": "concat" if concat else "shuffle"},
                   {"result": str(out), "terms": out.to_json()})


def cmd_indec(alphabet: Alphabet, s: int, p: int, integral: bool = False) -> dict:
    if s < 1 or not is_prime(p):
        raise InputError("need s >= 1 and p prime")
    rep = indec_report(alphabet, s, p).to_json()
    rep["formula_applies"] = s < p
    if integral:
        rep["integral"] = integral_structure(alphabet, s)
    # the dimension formula is only claimed for s < p; a mismatch beyond is reported, not failed
    return _report("indec", {"m": alphabet.size, "s": s, "p": p}, rep, rep["match"] or s >= p)


def cmd_unipotent(n: int, s: int, p: int, cap: int) -> dict:
    if n < 2 or not 1 <= s <= n or not is_prime(p):
        raise InputError("need n >= 2, 1 <= s <= n and p prime")
    rep = verify_filtration_lemma(n, s, p, cap=cap)
    return _report("unipotent", {"n": n, "s": s, "p": p, "cap": cap}, rep.to_json(), rep.passed)


def cmd_magnus(sigma: str, w: str, n: int | None, p: int, alphabet: Alphabet, q: int | None = None) -> dict:
    word = alphabet.parse(w)
    s = len(word)
    if not is_prime(p):
        raise InputError("p must be prime")
    if q is not None:
        # q = p^(n-s+1) determines n
        if not is_p_power(q, p) or q < p:
            raise InputError(f"modulus {q} is not a positive power of {p}")
        k = p_adic_valuation(q, p)
        if n is not None and n != s - 1 + k:
            raise InputError(f"modulus {q} disagrees with n={n} (expected {rho_modulus(s, n, p)})")
        n = s - 1 + k
    if n is None:
        raise InputError("give --n or --modulus")
    if s < 1 or n < max(2, s):
        raise InputError("need 1 <= |w| <= n and n >= 2")
    g = parse_group_word(sigma, alphabet)
    q = rho_modulus(s, n, p)
    series = magnus_eval(g, q, s, alphabet.size)
    rho = rho_from_series(series, word)
    return _report("magnus", {"sigma": render_group_word(g, alphabet), "w": alphabet.render(word), "n": n, "p": p},
                   {"q": q, "degree_bound": s, "coefficients": series.to_json(alphabet),
                    "series": series.render(alphabet), "rho": rho.rows()})


def cmd_verify(profile: str, seed: int) -> tuple[dict, list]:
    results = acceptance.run_all(profile, seed)
    ordered = sorted(results, key=lambda r: r.name)
    rep = _report("verify", {"profile": profile, "seed": seed},
                  {"criteria": [{"name": r.name, "passed": r.passed, "details": r.details} for r in ordered]},
                  all(r.passed for r in results))
    return rep, results


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alphabet", default="2", help="alphabet size or explicit letters (default: 2)")
    common.add_argument("--json", action="store_true", help="emit the JSON report")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)

    parser = argparse.ArgumentParser(prog="shuffle-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("lyndon", parents=[common], help="list Lyndon words of one length")
    sp.add_argument("-s", "--degree", type=int, required=True)

    sp = sub.add_parser("shuffle", parents=[common], help="shuffle two word polynomials")
    sp.add_argument("f")
    sp.add_argument("g")
    sp.add_argument("--concat", action="store_true", help="concatenate instead of shuffling")

    sp = sub.add_parser("indec", parents=[common], help="mod-p dimension of the indecomposables")
    sp.add_argument("-s", "--degree", type=int, required=True)
    sp.add_argument("-p", "--prime", type=int, required=True)
    sp.add_argument("--integral", action="store_true", help="also report the structure over Z")

    sp = sub.add_parser("unipotent", parents=[common], help="lower p-central series of U_s(Z/p^(n-s+1))")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("-s", "--degree", type=int, required=True)
    sp.add_argument("-p", "--prime", type=int, required=True)
    sp.add_argument("--cap", type=int, default=DEFAULT_CAP)

    sp = sub.add_parser("magnus", parents=[common], help="Magnus coefficients and the rho^w matrix")
    sp.add_argument("sigma", help="group word, e.g. 'abA' or 'ab^-1'")
    sp.add_argument("w", help="word of length s")
    sp.add_argument("--n", type=int)
    sp.add_argument("-p", "--prime", type=int, required=True)
    sp.add_argument("-q", "--modulus", type=int, help="p^(n-s+1); alternative to --n")

    sp = sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    sp.add_argument("--profile", choices=sorted(acceptance.PROFILES), default="quick")
    sp.add_argument("--trials", type=int, help="cap on randomized trials per check")
    return parser


def _text(rep: dict) -> str:
    out = rep["outputs"]
    cmd = rep["command"]
    if cmd == "lyndon":
        return f"{' '.join(out['words']) or '(none)'}\nphi = {out['phi']}"
    if cmd == "shuffle":
        return out["result"]
    if cmd == "indec":
        flag = "match" if out["match"] else ("MISMATCH" if out["formula_applies"] else "mismatch (s >= p)")
        lines = [f"dim = {out['dim']}, phi = {out['phi']}, lyndon = {out['lyndon_count']}, "
                 f"decomposable rank = {out['decomposable_rank']}: {flag}"]
        if "integral" in out:
            lines.append(f"over Z: torsion {out['integral']['torsion']}, free rank {out['integral']['free_rank']}")
        return "\n".join(lines)
    if cmd == "unipotent":
        return "\n".join([
            f"|U| = {out['order']}, layers {out['layers']}",
            f"(a) U^(n,p) = I + Z p^(n-s) E_1,s+1 : {out['lemma_a']}",
            f"(b) central                        : {out['lemma_b']}",
            f"(c) U^(n+1,p) = 1                  : {out['lemma_c']}",
            f"exponent formula {out['exponent_formula']}, measured {out['exponent_measured']}",
        ])
    if cmd == "magnus":
        coeffs = out["series"]
        rows = "\n".join(" ".join(str(x) for x in r) for r in out["rho"])
        return f"over Z/{out['q']}: {coeffs}\nrho^w =\n{rows}"
    return json.dumps(rep, indent=2)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        alphabet = parse_alphabet(args.alphabet)
        if args.command == "lyndon":
            rep = cmd_lyndon(alphabet, args.degree)
        elif args.command == "shuffle":
            rep = cmd_shuffle(args.f, args.g, alphabet, args.concat)
        elif args.command == "indec":
            rep = cmd_indec(alphabet, args.degree, args.prime, args.integral)
        elif args.command == "unipotent":
            rep = cmd_unipotent(args.n, args.degree, args.prime, args.cap)
        elif args.command == "magnus":
            rep = cmd_magnus(args.sigma, args.w, args.n, args.prime, alphabet, args.modulus)
        else:
            saved = acceptance.PROFILES[args.profile]
            if args.trials is not None:
                if args.trials < 1:
                    raise InputError("--trials must be positive")
                acceptance.PROFILES[args.profile] = {**saved, "trials": args.trials}
            try:
                rep, results = cmd_verify(args.profile, args.seed)
            finally:
                acceptance.PROFILES[args.profile] = saved
            if not args.json:
                print("\n".join(r.line() for r in results))
                print(f"{'all criteria passed' if rep['passed'] else 'FAILED'} ({time.perf_counter() - t0:.1f}s)")
                return 0 if rep["passed"] else 1
    except (InputError, ValueError) as exc:
        print(f"shuffle-lab: error: {exc}", file=sys.stderr)
        return 2
    except GroupTooLarge as exc:
        print(f"shuffle-lab: error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(rep, indent=2))
    else:
        print(_text(rep))
        print(f"({time.perf_counter() - t0:.2f}s)", file=sys.stderr)
    return 0 if rep["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
