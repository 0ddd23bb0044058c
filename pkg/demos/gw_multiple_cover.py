# Euler characteristics and relative Gromov-Witten invariants
#
# Specialize p_{1,j} and p_{2,j} to elementary symmetric functions in s and t.
# The coefficient of s^P1 t^P2 in a power of the wall function is the Euler
# characteristic of a framed quiver moduli space, and an alternating sum over
# powers gives a relative Gromov-Witten invariant.

from rank2scat.invariants import euler_char, gw_invariant, gw_table

# %% chi for the slope-one wall with l1 = l2 = 2

for P1, P2 in [((1, 0), (0, 1)), ((1, 1), (1, 1)), ((2, 0), (2, 0))]:
    print(P1, P2, euler_char(1, 1, sum(P1), P1, P2))

# %% The multiple-cover contribution: tangency 3 at one point on each side

print(gw_invariant(1, 1, 3, (3, 0, 0), (3, 0)))

# %% Every nonzero invariant with k <= 2 for l1 = l2 = 2

for (k, P1, P2), N in sorted(gw_table(1, 1, 2, 2, 2).items()):
    print(k, P1, P2, N)
