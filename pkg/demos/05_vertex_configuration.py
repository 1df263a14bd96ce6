"""A scheme whose symbolic powers equal its ordinary powers, with explicit factorisations."""

from resurgence import decompose, ideal_of, symbolic_power, verify_vertex_theorem, vertex_scheme
from resurgence.fatpoints import format_scheme
from resurgence.monomial import format_monomial

Z = vertex_scheme(2)
print(format_scheme(Z))
print("I(Z) =", [format_monomial(g) for g in ideal_of(Z).gens])

m = 3
for g in symbolic_power(Z, m).gens[:6]:
    parts = " * ".join(format_monomial(h) for h in decompose(g, 2, m))
    print(f"{format_monomial(g):>14} >= {parts}")

for N, m_max in [(2, 5), (3, 4), (4, 3)]:
    print(f"N={N}, m<={m_max}:", verify_vertex_theorem(N, m_max))
