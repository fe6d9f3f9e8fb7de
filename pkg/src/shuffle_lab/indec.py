"""The indecomposable quotient of the shuffle algebra, degree by degree.

Decomposable elements of degree ``s`` are spanned by the shuffles ``u ⧢ v`` of
nonempty words with ``|u| + |v| = s``. Everything here is computed from exact
integer shuffles, reduced mod ``p`` only at the very end.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from .arith import is_prime, necklace_phi
from .shuffle_poly import WordPoly, radford_Q, shuffle
from .words import Alphabet, Word, lyndon_words


def _alphabet(a: Alphabet | int) -> Alphabet:
    return a if isinstance(a, Alphabet) else Alphabet(a)


def word_index(w: Word, m: int) -> int:
    """Position of ``w`` among the words of its length in lexicographic order."""
    i = 0
    for a in w:
        i = i * m + a
    return i


def decomposable_generators(alphabet: Alphabet | int, s: int) -> list[WordPoly]:
    """``[u ⧢ v]`` over nonempty ``u <= v`` with ``|u| + |v| = s``."""
    if s < 2:
        raise ValueError("decomposable generators exist only in degree >= 2")
    alphabet = _alphabet(alphabet)
    gens = []
    for a in range(1, s):
        for u in alphabet.words(a):
            for v in alphabet.words(s - a):
                if u <= v:
                    gens.append(shuffle(WordPoly.word(u, alphabet), WordPoly.word(v, alphabet)))
    return gens


def to_vector(f: WordPoly, s: int) -> list[int]:
    """Dense integer coefficient vector of a degree-``s`` polynomial."""
    m = f.alphabet.size
    vec = [0] * m**s
    for w, c in f.items():
        if len(w) != s:
            raise ValueError(f"term of degree {len(w)} in a degree-{s} vector")
        vec[word_index(w, m)] = c
    return vec


def mod_p_vector(f: WordPoly, s: int, p: int) -> np.ndarray:
    return np.array(to_vector(f, s), dtype=np.int64) % p


def rank_mod_p(vectors: Sequence[Sequence[int]], p: int) -> int:
    """Rank over F_p of the span of ``vectors``.

    Column-by-column elimination; the pivot is the first remaining row (in
    input order) with a nonzero entry in the current column.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if len(vectors) == 0:
        return 0
    lengths = {len(v) for v in vectors}
    if len(lengths) != 1:
        raise ValueError(f"mixed vector lengths {sorted(lengths)}")
    A = np.array([[int(x) % p for x in v] for v in vectors], dtype=np.int64)
    if A.shape[1] == 0:
        return 0
    rank = 0
    rows, cols = A.shape
    for col in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(A[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            A[[rank, piv]] = A[[piv, rank]]
        inv = pow(int(A[rank, col]), -1, p)
        A[rank] = (A[rank] * inv) % p
        below = A[rank + 1 :, col]
        hit = np.nonzero(below)[0] + rank + 1
        if hit.size:
            A[hit] = (A[hit] - np.outer(A[hit, col], A[rank])) % p
        rank += 1
    return rank


def decomposable_rank_mod_p(alphabet: Alphabet | int, s: int, p: int) -> int:
    if s < 2:
        return 0
    return rank_mod_p([to_vector(g, s) for g in decomposable_generators(alphabet, s)], p)


def indec_dim_mod_p(alphabet: Alphabet | int, s: int, p: int) -> int:
    """Dimension over F_p of the degree-``s`` indecomposables tensored with Z/p."""
    alphabet = _alphabet(alphabet)
    if s < 1:
        raise ValueError("s must be >= 1")
    if s == 1:
        return alphabet.size
    return alphabet.size**s - decomposable_rank_mod_p(alphabet, s, p)


def smith_normal_form(M: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero elementary divisors ``d_1 | d_2 | ...`` of an integer matrix."""
    A = [[int(x) for x in row] for row in M]
    if not A or not A[0]:
        return []
    rows, cols = len(A), len(A[0])
    if any(len(r) != cols for r in A):
        raise ValueError("ragged matrix")
    divs: list[int] = []
    t = 0
    while t < min(rows, cols):
        nz = [(abs(A[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            clean = True
            piv = A[t][t]
            for i in range(t + 1, rows):
                q = A[i][t] // piv
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                if A[i][t]:
                    clean = False
            for j in range(t + 1, cols):
                q = A[t][j] // piv
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    clean = False
            if clean:
                bad = next(
                    (i for i in range(t + 1, rows) for j in range(t + 1, cols) if A[i][j] % piv),
                    None,
                )
                if bad is None:
                    break
                A[t] = [a + b for a, b in zip(A[t], A[bad])]
            # move the smallest nonzero entry of row t / column t to the pivot
            cand = [(abs(A[i][t]), i, t) for i in range(t, rows) if A[i][t]]
            cand += [(abs(A[t][j]), t, j) for j in range(t, cols) if A[t][j]]
            _, i, j = min(cand)
            A[t], A[i] = A[i], A[t]
            for row in A:
                row[t], row[j] = row[j], row[t]
        divs.append(abs(A[t][t]))
        t += 1
    return divs


def decomposable_matrix(alphabet: Alphabet | int, s: int) -> list[list[int]]:
    """Integer generator matrix of the degree-``s`` decomposables (one row per generator)."""
    return [to_vector(g, s) for g in decomposable_generators(alphabet, s)]


def integral_structure(alphabet: Alphabet | int, s: int) -> dict:
    """Invariant factors of the degree-``s`` indecomposables over Z.

    Returns ``{"torsion": [...], "free_rank": r}``; the quotient is
    ``Z^r ⊕ ⊕ Z/d`` over the listed ``d > 1``.
    """
    alphabet = _alphabet(alphabet)
    n = alphabet.size**s
    if s == 1:
        return {"torsion": [], "free_rank": n}
    divs = smith_normal_form(decomposable_matrix(alphabet, s))
    return {"torsion": [d for d in divs if d > 1], "free_rank": n - len(divs)}


def radford_matrix(alphabet: Alphabet | int, s: int) -> list[list[int]]:
    """Row ``w`` holds the coefficients of ``Q_w``; rows and columns in lex order.

    Radford's theorem makes this lower unitriangular in increasing
    lexicographic order (upper unitriangular if both orders are reversed).
    """
    alphabet = _alphabet(alphabet)
    return [to_vector(radford_Q(w, alphabet), s) for w in alphabet.words(s)]


@dataclass
class IndecReport:
    m: int
    s: int
    p: int
    dim: int
    phi: int
    lyndon_count: int
    decomposable_rank: int
    match: bool

    def to_json(self) -> dict:
        return asdict(self)


def indec_report(alphabet: Alphabet | int, s: int, p: int) -> IndecReport:
    alphabet = _alphabet(alphabet)
    m = alphabet.size
    rank = decomposable_rank_mod_p(alphabet, s, p)
    dim = m**s - rank
    phi = necklace_phi(s, m)
    return IndecReport(m, s, p, dim, phi, len(lyndon_words(m, s)), rank, dim == phi)


@dataclass
class LyndonBasisReport:
    m: int
    s: int
    p: int
    lyndon_count: int
    decomposable_rank: int
    combined_rank: int
    total: int
    basis: bool

    def to_json(self) -> dict:
        return asdict(self)


def lyndon_span_report(alphabet: Alphabet | int, s: int, p: int) -> LyndonBasisReport:
    """Ranks of the decomposables alone and together with the Lyndon words."""
    alphabet = _alphabet(alphabet)
    m = alphabet.size
    n = m**s
    dec = [to_vector(g, s) for g in decomposable_generators(alphabet, s)] if s >= 2 else []
    lyn = []
    for w in lyndon_words(m, s):
        e = [0] * n
        e[word_index(w, m)] = 1
        lyn.append(e)
    r_dec = rank_mod_p(dec, p)
    r_all = rank_mod_p(dec + lyn, p)
    ok = r_all == n and len(lyn) + r_dec == n
    return LyndonBasisReport(m, s, p, len(lyn), r_dec, r_all, n, ok)


def lyndon_basis_check(alphabet: Alphabet | int, s: int, p: int) -> LyndonBasisReport:
    """Do the Lyndon words of length ``s`` map to an F_p-basis of the indecomposables?

    Only meaningful for ``1 <= s < p``; other ``s`` are rejected.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not 1 <= s < p:
        raise ValueError(f"need 1 <= s < p, got s={s}, p={p}")
    return lyndon_span_report(alphabet, s, p)


def radford_determinant(alphabet: Alphabet | int, s: int) -> int:
    """Determinant of :func:`radford_matrix` via exact fraction-free elimination."""
    M = radford_matrix(alphabet, s)
    n = len(M)
    A = [row[:] for row in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


__all__ = [
    "IndecReport",
    "LyndonBasisReport",
    "decomposable_generators",
    "decomposable_matrix",
    "decomposable_rank_mod_p",
    "indec_dim_mod_p",
    "indec_report",
    "integral_structure",
    "lyndon_basis_check",
    "lyndon_span_report",
    "mod_p_vector",
    "radford_determinant",
    "radford_matrix",
    "rank_mod_p",
    "smith_normal_form",
    "to_vector",
    "word_index",
]
