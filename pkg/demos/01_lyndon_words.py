# # Lyndon words and the Chen-Fox-Lyndon factorization
#
# A word is Lyndon when it is strictly smaller than each of its proper
# rotations. Every word factors uniquely as a non-increasing product of
# Lyndon words, and the number of Lyndon words of length s over m letters
# is the necklace count phi_s(m).

# %%
from shuffle_lab import Alphabet, cfl_factorize, lyndon_words, necklace_phi

abc = Alphabet.from_letters("abc")
print([abc.render(w) for w in lyndon_words(abc, 3)])

# %% [markdown]
# The enumeration count against the Moebius sum, for a small grid.

# %%
for m in (1, 2, 3):
    counts = [len(lyndon_words(m, s)) for s in range(1, 8)]
    phis = [necklace_phi(s, m) for s in range(1, 8)]
    print(f"m={m}: {counts}  {'ok' if counts == phis else 'MISMATCH'}")

# %% [markdown]
# Factorizations. The multiplicities (how often each factor repeats) are
# what the Radford construction divides by.

# %%
ab = Alphabet.from_letters("ab")
for text in ("babaab", "aabab", "bbba", "abab"):
    f = cfl_factorize(ab.parse(text))
    parts = [(f"({ab.render(u)})^{i}" if len(u) > 1 else f"{ab.render(u)}^{i}") if i > 1 else ab.render(u)
             for u, i in f.factors]
    print(f"{text:>7} = " + " . ".join(parts), f.multiplicities())
