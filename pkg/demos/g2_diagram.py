# Completing a rank-2 scattering diagram
#
# Start from the two initial lines with P1 = 1 + p11 x + p12 x^2 + p13 x^3 and
# P2 = 1 + p21 y, and ask for the rays that make every loop product trivial.

from rank2scat.scatter import ks_complete, is_consistent

# %% The completion, truncated at total coefficient degree 9

D = ks_complete(3, 1, 9)
R = D.ring
for w in D.nontrivial_rays():
    f = D.ray(*w)
    print(w, " + ".join(f"({R.to_str(c)}) z^{j}" for j, c in sorted(f.items()) if j))

# %% Four rays, each a polynomial.  The loop product around the origin is the
# identity modulo the truncation:

print("consistent:", is_consistent(D))

# %% The same diagram computed order by order gives the same rays.

E = ks_complete(3, 1, 9, method="order")
print("peel == order-by-order:", E.rays == D.rays)

# %% Lowering the order to 8 drops the degree-9 term p13^2 p21^3 z^3 on ray (2, 1).
# Capping each exponent separately keeps it while still bounding the work:

print(R.to_str(ks_complete(3, 1, 8).ray(2, 1).get(3, {})) or "0")
print(R.to_str(ks_complete(3, 1, 16, box=(8, 8)).ray(2, 1)[3]))
