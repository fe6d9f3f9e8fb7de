# # Indecomposables of the shuffle algebra mod p
#
# The degree-s indecomposables are the degree-s words modulo shuffles of
# lower-degree words. Over F_p with s < p their dimension is phi_s(m); at
# s = p the formula breaks.

# %%
from shuffle_lab import indec_dim_mod_p, necklace_phi
from shuffle_lab.indec import indec_report, integral_structure

for m, p in ((2, 5), (3, 7)):
    for s in range(1, p):
        r = indec_report(m, s, p)
        print(f"m={m} p={p} s={s}: dim={r.dim} phi={r.phi} {'ok' if r.match else 'MISMATCH'}")

# %% [markdown]
# One letter: every x^s with 1 < s < p is decomposable, since x^{sh s} =
# s! x^s and s! is invertible. At s = p that factorial vanishes mod p.

# %%
for p in (2, 3, 5):
    print(f"p={p}: dim in degree p = {indec_dim_mod_p(1, p, p)}, phi_p(1) = {necklace_phi(p, 1)}")

# %% [markdown]
# Over the integers, the one-letter decomposables in degree s are spanned by
# h(s) x^s, so the quotient is cyclic of order h(s).

# %%
for s in range(2, 13):
    print(s, integral_structure(1, s))
