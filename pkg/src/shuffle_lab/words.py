"""Words over a totally ordered finite alphabet.

A word is a plain tuple of letter indices. Python's tuple ordering is already
the lexicographic order in which a proper prefix precedes its extensions, so
words sort, hash and compare without any wrapper class.
"""

from __future__ import annotations

import itertools
import string
from dataclasses import dataclass, field
from typing import Iterator, Sequence

Word = tuple  # tuple[int, ...]

EMPTY: Word = ()


class AlphabetError(ValueError):
    pass


@dataclass(frozen=True)
class Alphabet:
    """Letters ``0 .. size-1`` ordered by index, with optional display names."""

    size: int
    names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.size < 1:
            raise AlphabetError("alphabet needs at least one letter")
        if not self.names:
            if self.size > len(string.ascii_lowercase):
                raise AlphabetError("give explicit names for alphabets over 26 letters")
            object.__setattr__(self, "names", tuple(string.ascii_lowercase[: self.size]))
        if len(self.names) != self.size or len(set(self.names)) != self.size:
            raise AlphabetError("names must be distinct and match size")
        if any(len(n) != 1 for n in self.names):
            raise AlphabetError("letter names must be single characters")

    @classmethod
    def from_letters(cls, letters: str | Sequence[str]) -> "Alphabet":
        names = tuple(letters)
        return cls(len(names), names)

    def validate(self, w: Word) -> Word:
        for a in w:
            if not (isinstance(a, int) and 0 <= a < self.size):
                raise AlphabetError(f"letter {a!r} outside alphabet of size {self.size}")
        return w

    def parse(self, text: str) -> Word:
        """``"aab" -> (0, 0, 1)``. The empty string and ``"1"`` give the empty word."""
        text = text.strip()
        if text in ("", "1"):
            return EMPTY
        index = {n: i for i, n in enumerate(self.names)}
        try:
            return tuple(index[c] for c in text)
        except KeyError as exc:
            raise AlphabetError(f"unknown letter {exc.args[0]!r} in {text!r}") from None

    def render(self, w: Word) -> str:
        if not w:
            return "1"
        return "".join(self.names[a] for a in w)

    def words(self, s: int) -> list[Word]:
        """All words of length ``s`` in lexicographic order."""
        return list(itertools.product(range(self.size), repeat=s))


def compare_lex(u: Word, v: Word, alphabet: Alphabet | None = None) -> int:
    """-1, 0 or 1 as ``u`` is less than, equal to or greater than ``v``."""
    if alphabet is not None:
        alphabet.validate(u)
        alphabet.validate(v)
    u, v = tuple(u), tuple(v)
    return (u > v) - (u < v)


def is_lyndon(w: Word) -> bool:
    w = tuple(w)
    return len(w) > 0 and all(w < w[i:] for i in range(1, len(w)))


def _duval_generate(m: int, n: int) -> Iterator[Word]:
    # Lyndon words of length <= n over m letters, in lexicographic order.
    w = [-1]
    while w:
        w[-1] += 1
        yield tuple(w)
        k = len(w)
        while len(w) < n:
            w.append(w[len(w) - k])
        while w and w[-1] == m - 1:
            w.pop()


def lyndon_words(alphabet: Alphabet | int, s: int) -> list[Word]:
    """Lyndon words of length exactly ``s``, increasing lexicographically."""
    m = alphabet.size if isinstance(alphabet, Alphabet) else int(alphabet)
    if s < 1:
        raise ValueError("s must be >= 1")
    return [w for w in _duval_generate(m, s) if len(w) == s]


@dataclass(frozen=True)
class CFLFactorization:
    """``w = u_1^{i_1} ... u_k^{i_k}`` with Lyndon ``u_1 > ... > u_k``."""

    factors: tuple[tuple[Word, int], ...]

    def word(self) -> Word:
        return tuple(itertools.chain.from_iterable(u * i for u, i in self.factors))

    def multiplicities(self) -> tuple[int, ...]:
        return tuple(i for _, i in self.factors)


def cfl_factorize(w: Word) -> CFLFactorization:
    """Chen-Fox-Lyndon factorization by Duval's algorithm."""
    w = tuple(w)
    if not w:
        raise ValueError("cannot factorize the empty word")
    pieces: list[Word] = []
    n, i = len(w), 0
    while i < n:
        j, k = i + 1, i
        while j < n and w[k] <= w[j]:
            k = i if w[k] < w[j] else k + 1
            j += 1
        while i <= k:
            pieces.append(w[i : i + j - k])
            i += j - k
    grouped = tuple((u, len(list(g))) for u, g in itertools.groupby(pieces))
    return CFLFactorization(grouped)
