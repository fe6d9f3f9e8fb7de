# # Unitriangular groups and the lower p-central series
#
# U_s(Z/q) is the group of (s+1)x(s+1) upper unitriangular matrices mod q.
# Everything below is by exhaustive enumeration.

# %%
from shuffle_lab import UniMatrix, element_order, group_exponent_formula, verify_exponent
from shuffle_lab.unipotent import full_group, lower_p_central_series, quotient_mod

J = UniMatrix.superdiagonal(3, 4)
print(J.rows(), "order", element_order(J))

# %%
for s, q in ((1, 9), (2, 4), (3, 3), (4, 2)):
    r = verify_exponent(s, q)
    print(f"U_{s}(Z/{q}): measured {r.exponent_measured}, formula {group_exponent_formula(s, q)}")

# %% [markdown]
# For U = U_s(Z/p^(n-s+1)) the n-th term of the lower p-central series is
# the central cyclic group generated by I + p^(n-s) E_{1,s+1}, and the next
# term is trivial.

# %%
n, s, p = 4, 2, 2
U = full_group(s, p ** (n - s + 1))
series = lower_p_central_series(U, p, n + 1)
print("orders:", [G.order for G in series])
last = series[n - 1]
print([m.rows() for m in last.matrices()])
print("central:", last.is_central_in(U))

# %%
Q = quotient_mod(U, series[1])
print("U / U^(2,p): order", Q.order, "abelian", Q.is_abelian(), "exponent", Q.exponent())
