"""Unitriangular groups U_s(Z/q) and brute-force lower p-central series.

Elements are encoded as the tuple of strictly-upper entries in row-major
order; the diagonal is implicitly 1. The encoding is hashable, which is all the
closure and filtration machinery needs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .arith import floor_log, is_p_power, is_prime, prime_power_decompose

DEFAULT_CAP = 10**6


class GroupTooLarge(RuntimeError):
    """Raised when an enumeration would exceed the configured cap."""


# -- arithmetic kernel ------------------------------------------------------


class Kernel:
    """Multiplication on encoded elements of U_s(Z/q).

    The product of two encodings is compiled once per ``(s, q)`` into a flat
    Python expression; this is the hot loop of every enumeration.
    """

    def __init__(self, s: int, q: int):
        if s < 1:
            raise ValueError("s must be >= 1")
        self.p, self.k = prime_power_decompose(q)
        self.s, self.q, self.dim = s, q, s + 1
        self.positions = [(i, j) for i in range(self.dim) for j in range(i + 1, self.dim)]
        self.index = {ij: x for x, ij in enumerate(self.positions)}
        self.identity = (0,) * len(self.positions)
        terms = []
        for (i, j), x in self.index.items():
            parts = [f"a[{x}]", f"b[{x}]"]
            parts += [f"a[{self.index[i, k]}]*b[{self.index[k, j]}]" for k in range(i + 1, j)]
            terms.append(f"({'+'.join(parts)})%{q}")
        src = f"def mul(a, b):\n    return ({', '.join(terms)},)\n"
        scope: dict = {}
        exec(src, scope)  # noqa: S102 - generated from integers only
        self.mul = scope["mul"]

    def entry(self, a: tuple, i: int, j: int) -> int:
        if i == j:
            return 1
        if i > j:
            return 0
        return a[self.index[i, j]]

    def inv(self, a: tuple) -> tuple:
        # back-substitution on A·B = I, by increasing distance from the diagonal
        b = [0] * len(a)
        ix = self.index
        for d in range(1, self.dim):
            for i in range(self.dim - d):
                j = i + d
                acc = a[ix[i, j]]
                for k in range(i + 1, j):
                    acc += a[ix[i, k]] * b[ix[k, j]]
                b[ix[i, j]] = -acc % self.q
        return tuple(b)

    def pow(self, a: tuple, e: int) -> tuple:
        if e < 0:
            return self.pow(self.inv(a), -e)
        out, base = self.identity, a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def comm(self, g: tuple, h: tuple) -> tuple:
        """``[g, h] = g^-1 h^-1 g h``."""
        return self.mul(self.mul(self.inv(g), self.inv(h)), self.mul(g, h))

    def conj(self, g: tuple, h: tuple) -> tuple:
        """``h^-1 g h``."""
        return self.mul(self.mul(self.inv(h), g), h)

    def order(self, a: tuple) -> int:
        e, x = 1, a
        while x != self.identity:
            x = self.pow(x, self.p)
            e *= self.p
        return e

    def elementary(self, i: int, j: int, c: int = 1) -> tuple:
        """Encoding of ``I + c·E_{i,j}`` (0-based, ``i < j``)."""
        out = [0] * len(self.positions)
        out[self.index[i, j]] = c % self.q
        return tuple(out)

    def random_element(self, rng: random.Random) -> tuple:
        return tuple(rng.randrange(self.q) for _ in self.positions)


@lru_cache(maxsize=None)
def kernel(s: int, q: int) -> Kernel:
    return Kernel(s, q)


# -- public matrix type ---------------------------------------------------------


@dataclass(frozen=True)
class UniMatrix:
    """Upper unitriangular ``(s+1) x (s+1)`` matrix over Z/q."""

    s: int
    q: int
    entries: tuple

    def __post_init__(self):
        kn = kernel(self.s, self.q)
        if len(self.entries) != len(kn.positions):
            raise ValueError("wrong number of strictly-upper entries")
        object.__setattr__(self, "entries", tuple(int(x) % self.q for x in self.entries))

    @property
    def kernel(self) -> Kernel:
        return kernel(self.s, self.q)

    @classmethod
    def identity(cls, s: int, q: int) -> "UniMatrix":
        return cls(s, q, kernel(s, q).identity)

    @classmethod
    def elementary(cls, s: int, q: int, i: int, j: int, c: int = 1) -> "UniMatrix":
        """``I + c·E_{i,j}`` with 1-based indices as usual for matrices."""
        return cls(s, q, kernel(s, q).elementary(i - 1, j - 1, c))

    @classmethod
    def superdiagonal(cls, s: int, q: int) -> "UniMatrix":
        """``I + N`` with ``N`` the all-ones superdiagonal."""
        kn = kernel(s, q)
        return cls(s, q, tuple(1 if j == i + 1 else 0 for i, j in kn.positions))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], q: int) -> "UniMatrix":
        n = len(rows)
        for i in range(n):
            if rows[i][i] % q != 1 or any(rows[i][j] % q for j in range(i)):
                raise ValueError("matrix is not upper unitriangular")
        kn = kernel(n - 1, q)
        return cls(n - 1, q, tuple(rows[i][j] for i, j in kn.positions))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.kernel.entry(self.entries, i - 1, j - 1)

    def rows(self) -> list[list[int]]:
        kn = self.kernel
        return [[kn.entry(self.entries, i, j) for j in range(kn.dim)] for i in range(kn.dim)]

    def _same(self, other: "UniMatrix"):
        if (self.s, self.q) != (other.s, other.q):
            raise ValueError(f"size/modulus mismatch: {(self.s, self.q)} vs {(other.s, other.q)}")

    def __matmul__(self, other: "UniMatrix") -> "UniMatrix":
        return uni_mul(self, other)

    def __str__(self):
        return "\n".join(" ".join(f"{x:>{len(str(self.q - 1))}}" for x in r) for r in self.rows())


def uni_mul(A: UniMatrix, B: UniMatrix) -> UniMatrix:
    A._same(B)
    return UniMatrix(A.s, A.q, A.kernel.mul(A.entries, B.entries))


def uni_inv(A: UniMatrix) -> UniMatrix:
    return UniMatrix(A.s, A.q, A.kernel.inv(A.entries))


def uni_pow(A: UniMatrix, e: int) -> UniMatrix:
    return UniMatrix(A.s, A.q, A.kernel.pow(A.entries, e))


def element_order(A: UniMatrix) -> int:
    return A.kernel.order(A.entries)


def group_exponent_formula(s: int, q: int) -> int:
    """Exponent ``q * p^floor(log_p s)`` of U_s(Z/q)."""
    p, _ = prime_power_decompose(q)
    if s < 1:
        raise ValueError("s must be >= 1")
    return q * p ** floor_log(s, p)


def standard_generators(s: int, q: int) -> list[UniMatrix]:
    """``I + E_{i,i+1}``; these generate all of U_s(Z/q)."""
    return [UniMatrix.elementary(s, q, i, i + 1) for i in range(1, s + 1)]


def full_group_order(s: int, q: int) -> int:
    return q ** (s * (s + 1) // 2)


# -- finite subgroups ------------------------------------------------------


@dataclass(frozen=True)
class FiniteGroupSet:
    """A finite subgroup of U_s(Z/q), held as the full set of encodings."""

    s: int
    q: int
    elements: frozenset
    generators: tuple = field(default=())

    @property
    def kernel(self) -> Kernel:
        return kernel(self.s, self.q)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x) -> bool:
        if isinstance(x, UniMatrix):
            x = x.entries
        return x in self.elements

    def matrices(self) -> list[UniMatrix]:
        return [UniMatrix(self.s, self.q, e) for e in sorted(self.elements)]

    def is_trivial(self) -> bool:
        return self.elements == {self.kernel.identity}

    def is_subgroup_of(self, other: "FiniteGroupSet") -> bool:
        return self.elements <= other.elements

    def is_normal_in(self, G: "FiniteGroupSet") -> bool:
        kn = self.kernel
        gens = self.generators or tuple(self.elements)
        return all(kn.conj(a, b) in self.elements for a in gens for b in G.generators)

    def exponent(self) -> int:
        return max((self.kernel.order(x) for x in self.elements), default=1)

    def is_central_in(self, G: "FiniteGroupSet", exhaustive: bool = True) -> bool:
        kn = self.kernel
        others = G.elements if exhaustive else G.generators
        return all(kn.mul(a, b) == kn.mul(b, a) for a in self.elements for b in others)


def closure(s: int, q: int, gens: Iterable[tuple], cap: int = DEFAULT_CAP) -> frozenset:
    """All products of ``gens`` by breadth-first right multiplication."""
    kn = kernel(s, q)
    gens = [g for g in dict.fromkeys(gens) if g != kn.identity]
    seen = {kn.identity}
    frontier = [kn.identity]
    mul = kn.mul
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        if len(seen) > cap:
            raise GroupTooLarge(f"subgroup exceeds cap of {cap} elements")
        frontier = nxt
    return frozenset(seen)


def generate_group(generators: Sequence[UniMatrix], s: int | None = None, q: int | None = None,
                   cap: int = DEFAULT_CAP) -> FiniteGroupSet:
    """The subgroup generated by ``generators``.

    ``s`` and ``q`` are needed only when ``generators`` is empty.
    """
    if generators:
        s, q = generators[0].s, generators[0].q
        for g in generators:
            generators[0]._same(g)
    elif s is None or q is None:
        raise ValueError("pass s and q for an empty generator list")
    enc = tuple(dict.fromkeys(g.entries for g in generators))
    return FiniteGroupSet(s, q, closure(s, q, enc, cap), enc)


def full_group(s: int, q: int, cap: int = DEFAULT_CAP) -> FiniteGroupSet:
    if full_group_order(s, q) > cap:
        raise GroupTooLarge(f"|U_{s}(Z/{q})| = {full_group_order(s, q)} exceeds cap {cap}")
    return generate_group(standard_generators(s, q), cap=cap)


def normal_closure(s: int, q: int, gens: Iterable[tuple], ambient_gens: Sequence[tuple],
                   cap: int = DEFAULT_CAP) -> FiniteGroupSet:
    """Smallest subgroup containing ``gens`` and normalised by ``ambient_gens``."""
    kn = kernel(s, q)
    L = [g for g in dict.fromkeys(gens) if g != kn.identity]
    H = closure(s, q, L, cap)
    i = 0
    while i < len(L):
        for b in ambient_gens:
            c = kn.conj(L[i], b)
            if c not in H:
                L.append(c)
                H = closure(s, q, L, cap)
        i += 1
    return FiniteGroupSet(s, q, H, tuple(L))


def lower_p_central_series(G: FiniteGroupSet, p: int, max_n: int,
                           cap: int = DEFAULT_CAP) -> list[FiniteGroupSet]:
    """``[G^(1,p), ..., G^(max_n,p)]``.

    Each term is the normal closure of ``a^p`` and ``[a, b]`` over generators
    ``a`` of the previous term and ``b`` of ``G``. Modulo that closure the
    previous term is central, hence abelian, so these generators suffice.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not is_p_power(G.order, p):
        raise ValueError(f"group of order {G.order} is not a {p}-group")
    if not G.generators and not G.is_trivial():
        raise ValueError("G needs a generating set")
    kn = G.kernel
    layers = [G]
    while len(layers) < max_n:
        K = layers[-1]
        if K.is_trivial():
            layers.append(K)
            continue
        new = [kn.pow(a, p) for a in K.generators]
        new += [kn.comm(a, b) for a in K.generators for b in G.generators]
        nxt = normal_closure(G.s, G.q, new, G.generators, cap)
        if not nxt.is_subgroup_of(K) or not nxt.is_normal_in(G):
            raise AssertionError("filtration layer is not a normal subgroup of the previous one")
        layers.append(nxt)
    return layers


# -- quotients ------------------------------------------------------------------


@dataclass
class QuotientGroup:
    """``G/N`` as coset representatives (minimal encodings) and a coset lookup."""

    G: FiniteGroupSet
    N: FiniteGroupSet
    reps: list
    coset_of: dict

    @property
    def order(self) -> int:
        return len(self.reps)

    def mul(self, i: int, j: int) -> int:
        return self.coset_of[self.G.kernel.mul(self.reps[i], self.reps[j])]

    def table(self, limit: int = 4096) -> list[list[int]]:
        if self.order > limit:
            raise GroupTooLarge(f"quotient of order {self.order} too large for a table")
        return [[self.mul(i, j) for j in range(self.order)] for i in range(self.order)]

    def element_order(self, i: int) -> int:
        kn = self.G.kernel
        x, e = self.reps[i], 1
        while x not in self.N.elements:
            x = kn.mul(x, self.reps[i])
            e += 1
        return e

    def exponent(self) -> int:
        return max(self.element_order(i) for i in range(self.order))

    def is_abelian(self) -> bool:
        kn = self.G.kernel
        return all(kn.comm(a, b) in self.N.elements for a in self.G.generators for b in self.G.generators)

    def is_cyclic(self) -> bool:
        return any(self.element_order(i) == self.order for i in range(self.order))


def quotient_mod(G: FiniteGroupSet, N: FiniteGroupSet) -> QuotientGroup:
    if (G.s, G.q) != (N.s, N.q):
        raise ValueError("size/modulus mismatch")
    if not N.is_subgroup_of(G) or not N.elements or G.kernel.identity not in N.elements:
        raise ValueError("N is not a subgroup of G")
    if not N.is_normal_in(G):
        raise ValueError("N is not normal in G")
    kn = G.kernel
    coset_of: dict = {}
    reps: list = []
    for g in sorted(G.elements):
        if g in coset_of:
            continue
        idx = len(reps)
        reps.append(g)
        for n in N.elements:
            coset_of[kn.mul(g, n)] = idx
    return QuotientGroup(G, N, reps, coset_of)


# -- verifications ---------------------------------------------------------------


@dataclass
class ExponentReport:
    s: int
    q: int
    exponent_formula: int
    exponent_measured: int
    checked: int
    exhaustive: bool
    witness_order: int
    passed: bool

    def to_json(self) -> dict:
        return dict(self.__dict__)


def verify_exponent(s: int, q: int, sample: int | None = None, seed: int = 0,
                    cap: int = DEFAULT_CAP) -> ExponentReport:
    """Check element orders against :func:`group_exponent_formula`.

    With ``sample=None`` (or a sample at least the group order) every element
    is enumerated; otherwise ``sample`` uniformly random elements are drawn.
    """
    kn = kernel(s, q)
    formula = group_exponent_formula(s, q)
    size = full_group_order(s, q)
    exhaustive = sample is None or sample >= size
    if exhaustive:
        if size > cap:
            raise GroupTooLarge(f"|U_{s}(Z/{q})| = {size} exceeds cap {cap}")
        elems: Iterable[tuple] = full_group(s, q, cap).elements
    else:
        rng = random.Random(seed)
        elems = [kn.random_element(rng) for _ in range(sample)]
    measured, checked = 1, 0
    for x in elems:
        measured = max(measured, kn.order(x))
        checked += 1
    witness = element_order(UniMatrix.superdiagonal(s, q))
    ok = formula % measured == 0 and witness == formula
    if exhaustive:
        ok = ok and measured == formula
    return ExponentReport(s, q, formula, measured, checked, exhaustive, witness, ok)


@dataclass
class FiltrationReport:
    n: int
    s: int
    p: int
    order: int
    layers: list
    lemma_a: bool
    lemma_b: bool
    lemma_c: bool
    exponent_formula: int
    exponent_measured: int

    @property
    def passed(self) -> bool:
        return self.lemma_a and self.lemma_b and self.lemma_c and self.exponent_formula == self.exponent_measured

    def to_json(self) -> dict:
        return dict(self.__dict__)


def verify_filtration_lemma(n: int, s: int, p: int, cap: int = DEFAULT_CAP,
                            measure_exponent: bool = True) -> FiltrationReport:
    """Brute-force check of the structure of U^(n,p) for U = U_s(Z/p^(n-s+1)).

    (a) U^(n,p) is exactly {I + c·p^(n-s)·E_{1,s+1}}, cyclic of order p;
    (b) it commutes with every element of U;
    (c) U^(n+1,p) is trivial.
    """
    if n < 2 or not 1 <= s <= n:
        raise ValueError("need n >= 2 and 1 <= s <= n")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    q = p ** (n - s + 1)
    kn = kernel(s, q)
    U = full_group(s, q, cap)
    series = lower_p_central_series(U, p, n + 1, cap)
    Un, Un1 = series[n - 1], series[n]
    expected = {kn.elementary(0, s, c * p ** (n - s)) for c in range(p)}
    lemma_a = Un.elements == expected and len(expected) == p
    lemma_b = Un.is_central_in(U, exhaustive=True)
    lemma_c = Un1.is_trivial()
    formula = group_exponent_formula(s, q)
    measured = U.exponent() if measure_exponent else formula
    return FiltrationReport(n, s, p, U.order, [L.order for L in series], lemma_a, lemma_b, lemma_c,
                            formula, measured)


def binomial_sum_power(A: UniMatrix, e: int) -> UniMatrix:
    """``(I + N)^e`` via the truncated sum ``Σ_{l <= min(s, e)} C(e, l) N^l``."""
    from math import comb

    dim, q = A.s + 1, A.q
    N = [[(A[i + 1, j + 1] if j > i else 0) for j in range(dim)] for i in range(dim)]
    total = [[int(i == j) for j in range(dim)] for i in range(dim)]
    Nl = [[int(i == j) for j in range(dim)] for i in range(dim)]
    for l in range(1, min(A.s, e) + 1):
        Nl = [[sum(Nl[i][k] * N[k][j] for k in range(dim)) for j in range(dim)] for i in range(dim)]
        c = comb(e, l)
        total = [[total[i][j] + c * Nl[i][j] for j in range(dim)] for i in range(dim)]
    return UniMatrix.from_rows([[x % q for x in r] for r in total], q)
