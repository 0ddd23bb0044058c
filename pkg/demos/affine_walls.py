# The wall of slope one in the affine case l1 = l2 = 2
#
# Outside the cluster cone, ray wall functions are infinite series.  Two routes
# compute them: the order-by-order completion and a weighted count of tight
# gradings on maximal Dyck paths.

from rank2scat.poly import Ring, uni_clean
from rank2scat.scatter import ks_complete, wall_fn_tight

R = Ring(2, 2)

# %% Completion through total degree 12 keeps z^k on ray (1, 1) for k <= 6.

D = ks_complete(2, 2, 12, ring=R)
f = D.ray(1, 1)
for j in sorted(f):
    print(j, R.to_str(f[j]))

# %% The grading count, one coefficient at a time, agrees term by term.

g = wall_fn_tight(1, 1, 1, 2, 2, 6, ring=R)
print("tight == completion:", uni_clean(g) == uni_clean(f))

# %% Setting p11 = p21 = 0 and p12 = p22 = 1 collapses the series to sum (k + 1) z^(2k).

spec = R.binomial_spec()
print({j: R.specialize(c, spec).get(0, 0) for j, c in sorted(f.items())})
