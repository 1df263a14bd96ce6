"""Monomial ideals: powers, membership in powers, and containment witnesses."""

from resurgence import ideal_in_power, in_power, minimalize, power
from resurgence.monomial import format_ideal, format_monomial, power_decomposition

# the ideal of the three coordinate points of the projective plane
I = minimalize([(1, 1, 0), (1, 0, 1), (0, 1, 1)])
print("I =", format_ideal(I).replace("\n", "  "))
print("I^2 =", [format_monomial(g) for g in power(I, 2).gens])

# membership in I^r is a search for r generators whose product divides the monomial
a = (2, 2, 2)
print(f"{format_monomial(a)} in I^3:", in_power(a, I, 3), power_decomposition(a, I, 3))
print(f"{format_monomial(a)} in I^4:", in_power(a, I, 4))

# with a slack requirement the leftover cofactor must have a minimum degree
print("in M^2 * I^2:", in_power(a, I, 2, min_slack_degree=2))

# whole-ideal containment returns the first generator that fails
J = minimalize([(1, 1, 1), (2, 2, 0), (2, 0, 2), (0, 2, 2)])
res = ideal_in_power(J, I, 2)
print("J in I^2:", bool(res), "witness:", format_monomial(res.witness))
