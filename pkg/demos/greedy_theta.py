# Greedy elements and theta functions
#
# The greedy element x[d1, d2] is built from a recursion on its coefficients.
# The theta function for exponent (-d1, -d2) sums final monomials of broken
# lines.  In rank 2 the two coincide.

from rank2scat.greedy import GreedyContext, greedy_element
from rank2scat.broken import theta
from rank2scat.scatter import ks_complete
from rank2scat.dyck import enumerate_weighted

l1, l2 = 2, 1
ctx = GreedyContext(2, 1, l1, l2)
P, Q = ctx.bound()
x = greedy_element(ctx, order=P + Q)
print("x[2,1] =", x)

# %% Each coefficient c(p, q) is a weighted count of compatible gradings.

for p in range(P + 1):
    for q in range(Q + 1):
        c = ctx.coeff(p, q)
        if c:
            same = c == enumerate_weighted(2, 1, p, q, l1, l2, "compatible")
            print((p, q), ctx.ring.to_str(c), same)

# %% Broken lines for m0 = (-2, -1) ending in the first quadrant.

D = ks_complete(l1, l2, P + Q)
th = theta(D, (-2, -1), keep_lines=True)
for b in th.lines:
    print(b.m, [(bd["u"], bd["j"]) for bd in b.bends], D.ring.to_str(b.coeff))
print("theta == greedy:", th.terms == x)
