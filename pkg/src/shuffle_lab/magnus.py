"""Truncated Magnus expansion of free-group words over Z/q.

Group words are tuples of ``(letter, ±1)`` syllables and are never freely
reduced: the expansion is a homomorphism, so reduction cannot change the
result and skipping it keeps bugs visible.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .arith import prime_power_decompose
from .shuffle_poly import infiltration_words, shuffle_words
from .unipotent import UniMatrix, kernel
from .words import EMPTY, Alphabet, Word

GroupWord = tuple  # tuple[tuple[int, int], ...]


def parse_group_word(text: str, alphabet: Alphabet | int = 2) -> GroupWord:
    """``"ab^-1a"`` or ``"aBa"`` (capital letter = inverse); ``"1"`` is the identity."""
    alphabet = alphabet if isinstance(alphabet, Alphabet) else Alphabet(alphabet)
    text = text.replace(" ", "")
    if text in ("", "1"):
        return ()
    index = {n: i for i, n in enumerate(alphabet.names)}
    out, i = [], 0
    while i < len(text):
        c = text[i]
        if c in index:
            letter, sign = index[c], 1
        elif c.lower() in index and c.isupper():
            letter, sign = index[c.lower()], -1
        else:
            raise ValueError(f"unknown generator {c!r} in {text!r}")
        i += 1
        if text.startswith("^-1", i):
            sign, i = -sign, i + 3
        out.append((letter, sign))
    return tuple(out)


def render_group_word(sigma: GroupWord, alphabet: Alphabet | int = 2) -> str:
    alphabet = alphabet if isinstance(alphabet, Alphabet) else Alphabet(alphabet)
    if not sigma:
        return "1"
    return "".join(alphabet.names[a] if e == 1 else alphabet.names[a].upper() for a, e in sigma)


def random_group_word(rng: random.Random, m: int, max_len: int = 20) -> GroupWord:
    n = rng.randint(0, max_len)
    return tuple((rng.randrange(m), rng.choice((1, -1))) for _ in range(n))


def invert_group_word(sigma: GroupWord) -> GroupWord:
    return tuple((a, -e) for a, e in reversed(sigma))


@dataclass(frozen=True)
class TruncSeries:
    """Element of (Z/q)<<X>> modulo words longer than ``D``."""

    m: int
    D: int
    q: int
    coeffs: Mapping[Word, int] = field(default_factory=dict)

    def __post_init__(self):
        prime_power_decompose(self.q)
        clean = {}
        for w, c in self.coeffs.items():
            w = tuple(w)
            if len(w) > self.D:
                raise ValueError(f"word of length {len(w)} beyond degree bound {self.D}")
            if any(not 0 <= a < self.m for a in w):
                raise ValueError(f"letter outside alphabet of size {self.m}")
            c %= self.q
            if c:
                clean[w] = c
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    @classmethod
    def _trusted(cls, m: int, D: int, q: int, coeffs: dict) -> "TruncSeries":
        # caller guarantees reduced, nonzero, in-range coefficients
        obj = object.__new__(cls)
        object.__setattr__(obj, "m", m)
        object.__setattr__(obj, "D", D)
        object.__setattr__(obj, "q", q)
        object.__setattr__(obj, "coeffs", dict(sorted(coeffs.items())))
        return obj

    @classmethod
    def one(cls, m: int, D: int, q: int) -> "TruncSeries":
        return cls(m, D, q, {EMPTY: 1})

    @classmethod
    def letter(cls, x: int, m: int, D: int, q: int) -> "TruncSeries":
        """``1 + x``, the image of the generator ``x``."""
        return cls(m, D, q, {EMPTY: 1, (x,): 1} if D >= 1 else {EMPTY: 1})

    def __getitem__(self, w: Word) -> int:
        return self.coeffs.get(tuple(w), 0)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.m, self.D, self.q, self.coeffs) == (other.m, other.D, other.q, other.coeffs)

    def __hash__(self):
        return hash((self.m, self.D, self.q, tuple(self.coeffs.items())))

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        return trunc_mul(self, other)

    def reduce(self, q2: int) -> "TruncSeries":
        """Coefficientwise image under Z/q -> Z/q2 (``q2`` must divide ``q``)."""
        if self.q % q2:
            raise ValueError(f"{q2} does not divide {self.q}")
        return TruncSeries(self.m, self.D, q2, self.coeffs)

    def truncate(self, D2: int) -> "TruncSeries":
        return TruncSeries(self.m, D2, self.q, {w: c for w, c in self.coeffs.items() if len(w) <= D2})

    def render(self, alphabet: Alphabet | None = None) -> str:
        alphabet = alphabet or Alphabet(self.m)
        if not self.coeffs:
            return "0"
        return " + ".join((alphabet.render(w) if c == 1 and w else
                           f"{c}*{alphabet.render(w)}" if w else str(c)) for w, c in self.coeffs.items())

    def to_json(self, alphabet: Alphabet | None = None) -> list[dict]:
        alphabet = alphabet or Alphabet(self.m)
        return [{"word": alphabet.render(w), "coeff": c} for w, c in self.coeffs.items()]


def _same(f: TruncSeries, g: TruncSeries):
    if (f.m, f.D, f.q) != (g.m, g.D, g.q):
        raise ValueError(f"parameter mismatch: {(f.m, f.D, f.q)} vs {(g.m, g.D, g.q)}")


def trunc_mul(f: TruncSeries, g: TruncSeries) -> TruncSeries:
    _same(f, g)
    D, q = f.D, f.q
    acc: dict[Word, int] = defaultdict(int)
    g_items = list(g.coeffs.items())
    for u, a in f.coeffs.items():
        room = D - len(u)
        for v, b in g_items:
            if len(v) <= room:
                acc[u + v] += a * b
    out = {}
    for w, c in acc.items():
        c %= q
        if c:
            out[w] = c
    return TruncSeries._trusted(f.m, D, q, out)


def trunc_inv(f: TruncSeries) -> TruncSeries:
    """Inverse by the Neumann series of the augmentation part."""
    c0 = f[EMPTY]
    try:
        c0_inv = pow(c0, -1, f.q)
    except ValueError:
        raise ValueError(f"constant term {c0} is not a unit mod {f.q}") from None
    # f = c0 (1 + a) with a = c0^-1 (f - c0); f^-1 = c0^-1 Σ (-a)^i
    neg_a = TruncSeries(f.m, f.D, f.q, {w: -c0_inv * c for w, c in f.coeffs.items() if w})
    term = TruncSeries.one(f.m, f.D, f.q)
    total = dict(term.coeffs)
    for _ in range(f.D):
        term = trunc_mul(term, neg_a)
        for w, c in term.coeffs.items():
            total[w] = total.get(w, 0) + c
    return TruncSeries(f.m, f.D, f.q, {w: c * c0_inv for w, c in total.items()})


def magnus_eval(sigma: GroupWord, q: int, D: int, m: int = 2) -> TruncSeries:
    """Product of ``1 + x`` (or its inverse) over the syllables of ``sigma``."""
    images: dict[tuple[int, int], TruncSeries] = {}
    out = TruncSeries.one(m, D, q)
    for a, e in sigma:
        if e not in (1, -1):
            raise ValueError(f"exponent {e} must be +1 or -1")
        if (a, e) not in images:
            gen = TruncSeries.letter(a, m, D, q)
            images[a, e] = gen if e == 1 else trunc_inv(gen)
        out = trunc_mul(out, images[a, e])
    return out


def epsilon(sigma: GroupWord, w: Word, q: int, D: int | None = None, m: int = 2) -> int:
    """Coefficient of ``w`` in the Magnus expansion of ``sigma`` over Z/q."""
    w = tuple(w)
    D = len(w) if D is None else D
    if len(w) > D:
        raise ValueError(f"|w| = {len(w)} exceeds degree bound {D}")
    return magnus_eval(sigma, q, D, m)[w]


def rho_modulus(s: int, n: int, p: int) -> int:
    return p ** (n - s + 1)


def rho_from_series(series: TruncSeries, w: Word) -> UniMatrix:
    """Unitriangular matrix of subword coefficients of ``w`` read off ``series``."""
    w = tuple(w)
    s = len(w)
    if series.D < s:
        raise ValueError("series truncated below |w|")
    kn = kernel(s, series.q)
    return UniMatrix(s, series.q, tuple(series[w[i:j]] for i, j in kn.positions))


def _rho_params(w: Word, n: int, p: int) -> int:
    s = len(w)
    if s < 1 or n < max(2, s):
        raise ValueError(f"need 1 <= |w| <= n and n >= 2, got |w|={s}, n={n}")
    return rho_modulus(s, n, p)


def rho_w(sigma: GroupWord, w: Word, n: int, p: int, m: int | None = None) -> UniMatrix:
    """Entry ``(i, j)`` is the coefficient of ``w_i ... w_{j-1}`` in the
    expansion of ``sigma`` over Z/p^(n-|w|+1)."""
    w = tuple(w)
    q = _rho_params(w, n, p)
    if m is None:
        m = max([a for a in w] + [a for a, _ in sigma] + [1]) + 1
    return rho_from_series(magnus_eval(sigma, q, len(w), m), w)


@dataclass
class CheckReport:
    """Outcome of a randomized check family."""

    check: str
    params: dict
    trials: int
    seed: int
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"check": self.check, "params": self.params, "trials": self.trials,
                "failures": self.failures, "seed": self.seed, "passed": self.passed}


def check_magnus_homomorphism(q: int, D: int, m: int = 2, trials: int = 500, seed: int = 0,
                              max_len: int = 20) -> CheckReport:
    """``Λ(στ) = Λ(σ)Λ(τ)`` and ``Λ(σ^-1) = Λ(σ)^-1`` on random words."""
    rng = random.Random(seed)
    rep = CheckReport("magnus_homomorphism", {"q": q, "D": D, "m": m}, trials, seed)
    for _ in range(trials):
        s, t = random_group_word(rng, m, max_len), random_group_word(rng, m, max_len)
        es, et = magnus_eval(s, q, D, m), magnus_eval(t, q, D, m)
        if magnus_eval(s + t, q, D, m) != trunc_mul(es, et):
            rep.failures.append({"sigma": render_group_word(s, m), "tau": render_group_word(t, m),
                                 "kind": "product"})
        elif magnus_eval(invert_group_word(s), q, D, m) != trunc_inv(es):
            rep.failures.append({"sigma": render_group_word(s, m), "kind": "inverse"})
    return rep


def check_functoriality(p: int, a: int, b: int, D: int, m: int = 2, trials: int = 500,
                        seed: int = 0) -> CheckReport:
    """Reducing the expansion over Z/p^a mod p^b gives the expansion over Z/p^b."""
    if not 1 <= b < a:
        raise ValueError("need 1 <= b < a")
    rng = random.Random(seed)
    rep = CheckReport("functoriality", {"p": p, "a": a, "b": b, "D": D, "m": m}, trials, seed)
    for _ in range(trials):
        s = random_group_word(rng, m)
        if magnus_eval(s, p**a, D, m).reduce(p**b) != magnus_eval(s, p**b, D, m):
            rep.failures.append({"sigma": render_group_word(s, m)})
    return rep


def check_rho_homomorphism(words: Word | Sequence[Word], n: int, p: int, trials: int = 500,
                           seed: int = 0, m: int = 2) -> CheckReport:
    """``ρ^w(στ) = ρ^w(σ)ρ^w(τ)`` on random pairs, for one word or a batch.

    A batch must consist of words of one length; each random word is expanded
    once and shared by the whole batch.
    """
    words = list(words)
    batch = [tuple(words)] if words and isinstance(words[0], int) else [tuple(w) for w in words]
    if len({len(w) for w in batch}) != 1:
        raise ValueError("batched words must share one length")
    q = _rho_params(batch[0], n, p)
    D = len(batch[0])
    alph = Alphabet(m)
    rng = random.Random(seed)
    rep = CheckReport("rho_homomorphism",
                      {"words": [alph.render(w) for w in batch], "n": n, "p": p, "q": q}, trials, seed)
    for _ in range(trials):
        s, t = random_group_word(rng, m), random_group_word(rng, m)
        es, et, est = (magnus_eval(x, q, D, m) for x in (s, t, s + t))
        for w in batch:
            if rho_from_series(est, w) != rho_from_series(es, w) @ rho_from_series(et, w):
                rep.failures.append({"w": alph.render(w), "sigma": render_group_word(s, m),
                                     "tau": render_group_word(t, m)})
    return rep


# -- shuffle relations ---------------------------------------------------------

#: ``"infiltration"`` is the identity that holds for every group word;
#: ``"shuffle"`` is the naive top-degree form, kept to exhibit its failure.
NORMALIZATIONS = ("infiltration", "shuffle")


def relation_rhs(u: Word, v: Word, series: TruncSeries, normalization: str = "infiltration") -> int:
    if normalization == "infiltration":
        terms = infiltration_words(tuple(u), tuple(v))
    elif normalization == "shuffle":
        terms = shuffle_words(tuple(u), tuple(v))
    else:
        raise ValueError(f"unknown normalization {normalization!r}")
    return sum(c * series[w] for w, c in terms) % series.q


def check_shuffle_relation(u: Word, v: Word, sigma: GroupWord, q: int, D: int | None = None,
                           m: int = 2, normalization: str = "infiltration") -> bool:
    """Test ``ε_u(σ)·ε_v(σ) = Σ_w (u ∘ v)_w ε_w(σ)`` in Z/q.

    With the default ``"infiltration"`` the product ``∘`` is the infiltration
    product, whose degree-``|u|+|v|`` part is exactly ``u ⧢ v``; this holds
    for all ``σ``. The plain shuffle version drops the lower-degree
    correction and already fails for ``u = v = (x)``, ``σ = x^2``.
    """
    u, v = tuple(u), tuple(v)
    if not u or not v:
        raise ValueError("u and v must be nonempty")
    D = len(u) + len(v) if D is None else D
    if D < len(u) + len(v):
        raise ValueError("degree bound below |u| + |v|")
    series = magnus_eval(sigma, q, D, m)
    return series[u] * series[v] % q == relation_rhs(u, v, series, normalization)


def shuffle_relation_sweep(pairs: Iterable[tuple[Word, Word]], q: int, trials: int, seed: int = 0,
                           m: int = 2, normalization: str = "infiltration") -> CheckReport:
    """Check the relation for every pair against the same ``trials`` random words."""
    pairs = [(tuple(u), tuple(v)) for u, v in pairs]
    D = max(len(u) + len(v) for u, v in pairs)
    alph = Alphabet(m)
    rng = random.Random(seed)
    rep = CheckReport("shuffle_relation",
                      {"q": q, "m": m, "pairs": len(pairs), "normalization": normalization}, trials, seed)
    for _ in range(trials):
        s = random_group_word(rng, m)
        series = magnus_eval(s, q, D, m)
        for u, v in pairs:
            if series[u] * series[v] % q != relation_rhs(u, v, series, normalization):
                rep.failures.append({"u": alph.render(u), "v": alph.render(v), "sigma": render_group_word(s, m)})
    return rep
