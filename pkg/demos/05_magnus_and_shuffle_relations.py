# # Magnus expansion, rho^w and the shuffle relations
#
# The Magnus map sends a letter x to 1 + x (and x^-1 to 1 - x + x^2 - ...)
# in truncated noncommutative power series over Z/q.

# %%
from shuffle_lab import check_shuffle_relation, epsilon, magnus_eval, rho_w
from shuffle_lab.magnus import parse_group_word, shuffle_relation_sweep
from shuffle_lab.acceptance import load_calibration, shuffle_pairs
from shuffle_lab.words import Alphabet

xy = Alphabet.from_letters("xy")
sigma = parse_group_word("xyXY", xy)
print(magnus_eval(sigma, 9, 3).render(xy))

# %% [markdown]
# rho^w(sigma) puts the coefficient of the subword w[i:j] at entry (i, j+1).
# With q = p^(n-s+1) this is a homomorphism into U_s(Z/q).

# %%
w = xy.parse("xyx")
R = rho_w(sigma, w, n=3, p=3)
print(R.q)
print("\n".join(" ".join(map(str, r)) for r in R.rows()))

# %% [markdown]
# The Magnus coefficients multiply according to the infiltration product
# (shuffle plus overlapping terms). The plain shuffle form fails already at
# u = v = x, sigma = x^2: eps_x^2 = 4 while 2 eps_xx = 2.

# %%
x2 = parse_group_word("xx", xy)
print(epsilon(x2, (0,), 125) ** 2, 2 * epsilon(x2, (0, 0), 125))
print("shuffle form:", check_shuffle_relation((0,), (0,), x2, 125, normalization="shuffle"))
print("infiltration form:", check_shuffle_relation((0,), (0,), x2, 125))

# %%
cal = load_calibration()
for c in cal["candidates"]:
    print(f"{c['candidate']:<28} failures {c['failures']}/{c['checks']}")
rep = shuffle_relation_sweep(shuffle_pairs(5), 125, 200, seed=1)
print("sweep over |u|+|v| <= 5:", "pass" if rep.passed else rep.failures[:1])
