# # Shuffle products and the Radford basis
#
# The shuffle of two words sums over all interleavings. Polynomials parse
# and render in the same "2*aab + aba" syntax.

# %%
from shuffle_lab import WordPoly, radford_Q, shuffle, shuffle_power
from shuffle_lab.indec import radford_determinant, radford_matrix
from shuffle_lab.words import Alphabet

ab = Alphabet.from_letters("ab")
print(shuffle(WordPoly.parse("ab", ab), WordPoly.parse("a", ab)))
print(shuffle(WordPoly.parse("a - b", ab), WordPoly.parse("ab", ab)))

# %% [markdown]
# Shuffle powers of one letter pick up factorials: a^{sh k} = k! a^k.

# %%
for k in range(1, 6):
    print(k, shuffle_power((0,), k, ab))

# %% [markdown]
# Q_w is the shuffle of the CFL factors divided by the product of the
# factorials of their multiplicities. It equals w plus smaller words of the
# same length with nonnegative coefficients, so the Q_w form a basis.

# %%
for text in ("aab", "aba", "baa", "abab", "bbaa"):
    print(f"Q_{text} = {radford_Q(ab.parse(text), ab)}")

# %%
M = radford_matrix(ab, 4)
print("\n".join(" ".join(f"{x:2d}" for x in row) for row in M))
print("det =", radford_determinant(ab, 4))
