"""Newton polyhedra and integral closures of powers."""

from resurgence import closure_of_power, facet_valuations, is_normal_up_to, minimalize, np_contains
from resurgence.engine import K_search, rho_int_search
from resurgence.monomial import format_monomial

cubes = minimalize([(3, 0, 0), (0, 3, 0), (0, 0, 3)])
for f in facet_valuations(cubes):
    print(f"facet {f.normal} >= {f.value_on_ideal}")

# x^2 y^2 z^2 lies on the segment between two generators of I^2 but is not in I
print("(2,2,2) in NP(I^2):", np_contains(cubes, (2, 2, 2), scale=2))
cl = closure_of_power(cubes, 2)
print("closure(I^2) has", len(cl.gens), "generators; normal?", is_normal_up_to(cubes, 2))

# that single monomial drives both ratio searches
for name, fn in (("rho_int", rho_int_search), ("K", K_search)):
    res = fn(cubes)
    w = res.witness
    print(f"{name} = {res.value} ({res.certificate}), witness {format_monomial(w.monomial)} at m={w.m}, r={w.r}")
