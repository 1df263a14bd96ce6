"""Symbolic powers of fat point schemes supported on coordinate subspaces."""

from fractions import Fraction

from resurgence import alpha_symbolic, coordinate_points, sdefect_zero, symbolic_power, waldschmidt
from resurgence.fatpoints import format_scheme
from resurgence.monomial import format_monomial

Z = coordinate_points(2)
print(format_scheme(Z))
for m in range(1, 4):
    gens = [format_monomial(g) for g in symbolic_power(Z, m).gens]
    print(f"I({m}Z): {gens}   equals I^{m}: {sdefect_zero(Z, m)}")

# the Waldschmidt constant is an LP optimum; initial degrees approach it from above
w = waldschmidt(Z)
print("waldschmidt =", w)
print("alpha(I(mZ))/m:", [str(Fraction(alpha_symbolic(Z, m), m)) for m in range(1, 9)])
