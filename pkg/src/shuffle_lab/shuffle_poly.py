"""Integer word polynomials with concatenation and shuffle products."""

from __future__ import annotations

import math
import re
from collections import defaultdict
from functools import lru_cache
from typing import Iterable, Mapping

from .words import EMPTY, Alphabet, AlphabetError, Word, cfl_factorize


class WordPoly:
    """A finitely supported map from words to integers.

    Zero coefficients are never stored and iteration is always in
    lexicographic word order, so two equal polynomials render identically.
    """

    __slots__ = ("alphabet", "_terms")

    def __init__(self, terms: Mapping[Word, int] | Iterable[tuple[Word, int]] = (), alphabet: Alphabet | int = 2):
        self.alphabet = alphabet if isinstance(alphabet, Alphabet) else Alphabet(alphabet)
        acc: dict[Word, int] = defaultdict(int)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for w, c in items:
            w = tuple(w)
            self.alphabet.validate(w)
            acc[w] += int(c)
        self._terms = {w: acc[w] for w in sorted(acc) if acc[w]}

    @classmethod
    def word(cls, w: Word, alphabet: Alphabet | int = 2, coeff: int = 1) -> "WordPoly":
        return cls({tuple(w): coeff}, alphabet)

    @classmethod
    def one(cls, alphabet: Alphabet | int = 2) -> "WordPoly":
        return cls({EMPTY: 1}, alphabet)

    @classmethod
    def parse(cls, text: str, alphabet: Alphabet | int = 2) -> "WordPoly":
        """Parse the rendering format, e.g. ``"2*aab + aba - 3"``.

        ``"0"`` is the zero polynomial; an empty string is the empty word, as
        for word literals.
        """
        alphabet = alphabet if isinstance(alphabet, Alphabet) else Alphabet(alphabet)
        text = text.strip()
        if text == "":
            return cls.one(alphabet)
        if text == "0":
            return cls({}, alphabet)
        terms: list[tuple[Word, int]] = []
        for sign, body in re.findall(r"([+-]?)\s*([^+-]+)", text):
            body = body.strip()
            if "*" in body:
                c, w = body.split("*", 1)
                coeff, word = int(c), alphabet.parse(w)
            elif body.isdigit():
                coeff, word = int(body), EMPTY
            else:
                coeff, word = 1, alphabet.parse(body)
            terms.append((word, -coeff if sign == "-" else coeff))
        return cls(terms, alphabet)

    # -- container protocol ---------------------------------------------
    def items(self):
        return self._terms.items()

    def support(self) -> list[Word]:
        return list(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __getitem__(self, w: Word) -> int:
        return self._terms.get(tuple(w), 0)

    def __eq__(self, other):
        if isinstance(other, WordPoly):
            return self.alphabet.size == other.alphabet.size and self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        return hash((self.alphabet.size, tuple(self._terms.items())))

    def __repr__(self):
        return f"WordPoly({str(self)!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for w, c in self._terms.items():
            name = self.alphabet.render(w)
            mag = abs(c)
            if not w:
                body = str(mag)
            else:
                body = name if mag == 1 else f"{mag}*{name}"
            if not out:
                out.append(body if c > 0 else f"-{body}")
            else:
                out.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(out)

    def to_json(self) -> list[dict]:
        return [{"word": self.alphabet.render(w), "coeff": c} for w, c in self._terms.items()]

    # -- module structure -------------------------------------------------
    def _check(self, other: "WordPoly"):
        if not isinstance(other, WordPoly):
            raise TypeError(f"expected WordPoly, got {type(other).__name__}")
        if other.alphabet.size != self.alphabet.size:
            raise AlphabetError("alphabet mismatch")

    def __add__(self, other):
        self._check(other)
        return WordPoly(list(self.items()) + list(other.items()), self.alphabet)

    def __neg__(self):
        return WordPoly({w: -c for w, c in self.items()}, self.alphabet)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        return WordPoly({w: k * c for w, c in self.items()}, self.alphabet)

    def __mul__(self, other):
        if isinstance(other, int):
            return other * self
        return concat_mul(self, other)

    def degrees(self) -> set[int]:
        return {len(w) for w in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_part(self, s: int) -> "WordPoly":
        return WordPoly({w: c for w, c in self.items() if len(w) == s}, self.alphabet)

    def exact_div(self, k: int) -> "WordPoly":
        bad = [w for w, c in self.items() if c % k]
        if bad:
            raise ArithmeticError(f"coefficient of {self.alphabet.render(bad[0])} not divisible by {k}")
        return WordPoly({w: c // k for w, c in self.items()}, self.alphabet)


@lru_cache(maxsize=None)
def shuffle_words(u: Word, v: Word) -> tuple[tuple[Word, int], ...]:
    """``u ⧢ v`` as sorted ``(word, multiplicity)`` pairs.

    Merge recursion on the first letters: ``au ⧢ bv = a(u ⧢ bv) + b(au ⧢ v)``.
    """
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    acc: dict[Word, int] = defaultdict(int)
    for w, c in shuffle_words(u[1:], v):
        acc[(u[0],) + w] += c
    for w, c in shuffle_words(u, v[1:]):
        acc[(v[0],) + w] += c
    return tuple(sorted(acc.items()))


def shuffle(f: WordPoly, g: WordPoly) -> WordPoly:
    f._check(g)
    acc: dict[Word, int] = defaultdict(int)
    for u, a in f.items():
        for v, b in g.items():
            for w, c in shuffle_words(u, v):
                acc[w] += a * b * c
    return WordPoly(acc, f.alphabet)


def concat_mul(f: WordPoly, g: WordPoly) -> WordPoly:
    f._check(g)
    acc: dict[Word, int] = defaultdict(int)
    for u, a in f.items():
        for v, b in g.items():
            acc[u + v] += a * b
    return WordPoly(acc, f.alphabet)


def shuffle_power(u: Word, i: int, alphabet: Alphabet | int = 2) -> WordPoly:
    """The ``i``-fold shuffle product of ``u`` with itself."""
    if i < 1:
        raise ValueError("shuffle power needs i >= 1")
    base = WordPoly.word(u, alphabet)
    out = base
    for _ in range(i - 1):
        out = shuffle(out, base)
    return out


def radford_Q(w: Word, alphabet: Alphabet | int = 2) -> WordPoly:
    """Radford's polynomial of ``w``.

    The shuffle of the powers of the Chen-Fox-Lyndon factors is computed over
    the integers and then divided exactly by the product of the factorials of
    the multiplicities.
    """
    w = tuple(w)
    if not w:
        raise ValueError("radford_Q needs a nonempty word")
    alphabet = alphabet if isinstance(alphabet, Alphabet) else Alphabet(alphabet)
    fac = cfl_factorize(w)
    prod = WordPoly.one(alphabet)
    denom = 1
    for u, i in fac.factors:
        prod = shuffle(prod, shuffle_power(u, i, alphabet))
        denom *= math.factorial(i)
    return prod.exact_div(denom)


def coefficient(f: WordPoly, w: Word) -> int:
    return f[w]


@lru_cache(maxsize=None)
def infiltration_words(u: Word, v: Word) -> tuple[tuple[Word, int], ...]:
    """Chen-Fox-Lyndon infiltration product ``u ↑ v`` of two words.

    ``ua ↑ vb = (u ↑ vb)a + (ua ↑ v)b + [a == b](u ↑ v)a``. Its top-degree
    part is ``u ⧢ v``; the extra terms come from letters shared by both words.
    """
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    acc: dict[Word, int] = defaultdict(int)
    a, b = u[-1], v[-1]
    for w, c in infiltration_words(u[:-1], v):
        acc[w + (a,)] += c
    for w, c in infiltration_words(u, v[:-1]):
        acc[w + (b,)] += c
    if a == b:
        for w, c in infiltration_words(u[:-1], v[:-1]):
            acc[w + (a,)] += c
    return tuple(sorted(acc.items()))


def infiltration(f: WordPoly, g: WordPoly) -> WordPoly:
    f._check(g)
    acc: dict[Word, int] = defaultdict(int)
    for u, a in f.items():
        for v, b in g.items():
            for w, c in infiltration_words(u, v):
                acc[w] += a * b * c
    return WordPoly(acc, f.alphabet)
