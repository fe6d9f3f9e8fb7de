"""The desk-scale verification suite behind ``shuffle-lab verify``.

Every criterion is a function returning a :class:`CriterionResult`. The
``quick`` profile caps enumerated group orders at 10^4 and random trials at
100; ``full`` uses the complete parameter ranges.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable

from . import arith
from .indec import indec_dim_mod_p, lyndon_span_report, radford_matrix, smith_normal_form, decomposable_matrix
from .magnus import (
    check_functoriality,
    check_magnus_homomorphism,
    check_rho_homomorphism,
    check_shuffle_relation,
    shuffle_relation_sweep,
)
from .shuffle_poly import radford_Q
from .unipotent import full_group_order, verify_exponent, verify_filtration_lemma
from .words import Alphabet, lyndon_words

PROFILES = {
    "quick": {"cap": 10**4, "trials": 100},
    "full": {"cap": 10**6, "trials": None},
}


@dataclass
class CriterionResult:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name} ({self.seconds:.2f}s)"


def _trials(profile: str, default: int) -> int:
    t = PROFILES[profile]["trials"]
    return default if t is None else min(t, default)


def load_calibration() -> dict:
    text = resources.files("shuffle_lab").joinpath("data/shuffle_calibration.json").read_text()
    return json.loads(text)


# -- criteria ----------------------------------------------------------------------


def dimension_formula(profile: str = "full", seed: int = 0) -> CriterionResult:
    rows, bad = [], []
    for m in (1, 2, 3):
        for p in (2, 3, 5, 7):
            for s in range(1, min(p, 7)):
                dim, phi = indec_dim_mod_p(m, s, p), arith.necklace_phi(s, m)
                rows.append((m, p, s, dim, phi))
                if dim != phi:
                    bad.append({"m": m, "p": p, "s": s, "dim": dim, "phi": phi})
    return CriterionResult("dimension_formula", not bad, {"cases": len(rows), "mismatches": bad})


def counterexample_at_p(profile: str = "full", seed: int = 0) -> CriterionResult:
    cases = []
    for p in (2, 3, 5):
        cases.append({
            "p": p,
            "dim": indec_dim_mod_p(1, p, p),
            "phi": arith.necklace_phi(p, 1),
            "lyndon": len(lyndon_words(1, p)),
            "lyndon_span_rank": lyndon_span_report(1, p, p).combined_rank,
        })
    ok = all(c["dim"] == 1 and c["phi"] == 0 and c["lyndon"] == 0 and c["lyndon_span_rank"] == 0 for c in cases)
    return CriterionResult("counterexample_s_equals_p", ok, {"cases": cases})


def radford_triangularity(profile: str = "full", seed: int = 0) -> CriterionResult:
    bad, checked = [], 0
    alph = Alphabet(2)
    for s in range(1, 7):
        for w in alph.words(s):
            Q = radford_Q(w, alph)  # raises if the factorial division is inexact
            checked += 1
            rest = Q - type(Q).word(w, alph)
            if Q[w] != 1 or any(len(v) != s or v >= w or c < 0 for v, c in rest.items()):
                bad.append(alph.render(w))
        M = radford_matrix(alph, s)
        n = len(M)
        if any(M[i][i] != 1 for i in range(n)) or any(M[i][j] for i in range(n) for j in range(i + 1, n)):
            bad.append(f"matrix s={s}")
    return CriterionResult("radford_triangularity", not bad, {"words": checked, "failures": bad})


def single_letter_structure(profile: str = "full", seed: int = 0) -> CriterionResult:
    snf_bad = []
    for s in range(2, 13):
        divs = smith_normal_form(decomposable_matrix(1, s))
        if divs != [arith.h_gcd(s)]:
            snf_bad.append({"s": s, "snf": divs, "h": arith.h_gcd(s)})
    pp_bad = [(s, p) for p in (2, 3, 5, 7) for s in range(2, 201)
              if (arith.h_gcd(s) % p == 0) != arith.is_p_power(s, p)]
    return CriterionResult("single_letter_structure", not snf_bad and not pp_bad,
                           {"snf_failures": snf_bad, "p_power_failures": pp_bad})


EXPONENT_CASES = ((1, 2), (1, 9), (2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (4, 2))


def unipotent_exponent(profile: str = "full", seed: int = 0) -> CriterionResult:
    cap = PROFILES[profile]["cap"]
    out, skipped = [], []
    for s, q in EXPONENT_CASES:
        if full_group_order(s, q) > cap:
            skipped.append([s, q])
            continue
        r = verify_exponent(s, q, None, cap=cap)
        out.append(r.to_json())
    ok = all(r["passed"] and r["exhaustive"] for r in out)
    return CriterionResult("unipotent_exponent", ok, {"cases": out, "skipped": skipped})


def filtration_cases(cap: int):
    for p in (2, 3, 5):
        for n in range(2, 5):
            for s in range(1, n + 1):
                if full_group_order(s, p ** (n - s + 1)) <= cap:
                    yield n, s, p


def filtration_lemma(profile: str = "full", seed: int = 0) -> CriterionResult:
    cap = PROFILES[profile]["cap"]
    reports = [verify_filtration_lemma(n, s, p, cap=cap) for n, s, p in filtration_cases(cap)]
    failed = [r.to_json() for r in reports if not r.passed]
    return CriterionResult("filtration_lemma", not failed,
                           {"cases": len(reports), "max_order": max(r.order for r in reports), "failures": failed})


def binomial_lemmas(profile: str = "full", seed: int = 0) -> CriterionResult:
    from math import comb, gcd

    fails: dict[str, list] = {"a": [], "b": [], "c": [], "d": []}
    for p in (2, 3, 5):
        for k in range(0, 5):
            pk = p**k
            row = [comb(pk, l) for l in range(pk + 1)]
            for l in range(1, pk + 1):
                if row[l] % (pk // gcd(pk, l)):
                    fails["a"].append((p, k, l))
                if arith.is_p_power(l, p) and arith.p_adic_valuation(row[l], p) != k - arith.floor_log(l, p):
                    fails["b"].append((p, k, l))
            for j in range(0, k + 3):
                qq = p**j
                ok_prefix = True
                for t in range(1, pk + 1):
                    ok_prefix = ok_prefix and row[t] % qq == 0
                    if ok_prefix != (pk % (qq * p ** arith.floor_log(t, p)) == 0):
                        fails["c"].append((p, k, j, t))
    for p in (2, 3, 5, 7):
        for m in range(1, 201):
            lhs = all(comb(m, l) % p == 0 for l in range(1, m))
            if lhs != arith.is_p_power(m, p):
                fails["d"].append((p, m))
    return CriterionResult("binomial_lemmas", not any(fails.values()), {"failures": fails})


MAGNUS_MODULI = (4, 8, 9, 25)


def magnus_properties(profile: str = "full", seed: int = 0) -> CriterionResult:
    trials = _trials(profile, 500)
    reports = []
    for i, q in enumerate(MAGNUS_MODULI):
        reports.append(check_magnus_homomorphism(q, 5, trials=trials, seed=seed + i))
        p, k = arith.prime_power_decompose(q)
        alph = Alphabet(2)
        for n in range(2, 6):
            s = n - k + 1
            if 1 <= s <= 4:
                reports.append(check_rho_homomorphism(alph.words(s), n, p, trials=trials, seed=seed + 100 * n + i))
    for j, (p, a, b) in enumerate(((2, 3, 2), (2, 3, 1), (3, 2, 1), (5, 2, 1))):
        reports.append(check_functoriality(p, a, b, 5, trials=trials, seed=seed + 1000 + j))
    failed = [r.to_json() for r in reports if not r.passed]
    return CriterionResult("magnus_properties", not failed,
                           {"checks": [(r.check, r.params) for r in reports], "failures": failed})


def shuffle_pairs(max_total: int = 5, m: int = 2):
    alph = Alphabet(m)
    return [(u, v) for a in range(1, max_total) for b in range(1, max_total - a + 1)
            for u in alph.words(a) for v in alph.words(b)]


def shuffle_relation(profile: str = "full", seed: int = 0) -> CriterionResult:
    trials = _trials(profile, 1000)
    cal = load_calibration()
    naive = cal["naive_counterexample"]
    x2 = ((0, 1), (0, 1))
    record_ok = (
        cal["selected"] == "infiltration"
        and naive["lhs"] != naive["shuffle_rhs"]
        and naive["lhs"] == naive["infiltration_rhs"]
        and not check_shuffle_relation((0,), (0,), x2, 125, normalization="shuffle")
        and check_shuffle_relation((0,), (0,), x2, 125, normalization="infiltration")
    )
    pairs = shuffle_pairs(5)
    reports = [shuffle_relation_sweep(pairs, q, trials, seed=seed + i) for i, q in enumerate((125, 8))]
    failed = [r.to_json() for r in reports if not r.passed]
    return CriterionResult("shuffle_relation", record_ok and not failed,
                           {"calibration_record_ok": record_ok, "pairs": len(pairs), "trials": trials,
                            "failures": failed[:1]})


def lyndon_count(profile: str = "full", seed: int = 0) -> CriterionResult:
    bad = [(m, s) for m in (1, 2, 3) for s in range(1, 8) if len(lyndon_words(m, s)) != arith.necklace_phi(s, m)]
    return CriterionResult("lyndon_count", not bad, {"mismatches": bad})


CRITERIA: dict[str, Callable[..., CriterionResult]] = {
    "dimension_formula": dimension_formula,
    "counterexample_s_equals_p": counterexample_at_p,
    "radford_triangularity": radford_triangularity,
    "single_letter_structure": single_letter_structure,
    "unipotent_exponent": unipotent_exponent,
    "filtration_lemma": filtration_lemma,
    "binomial_lemmas": binomial_lemmas,
    "magnus_properties": magnus_properties,
    "shuffle_relation": shuffle_relation,
    "lyndon_count": lyndon_count,
}


def run_criterion(name: str, profile: str = "full", seed: int = 0) -> CriterionResult:
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}")
    t0 = time.perf_counter()
    res = CRITERIA[name](profile, seed)
    res.seconds = time.perf_counter() - t0
    return res


def run_all(profile: str = "full", seed: int = 0) -> list[CriterionResult]:
    return [run_criterion(name, profile, seed) for name in CRITERIA]
