"""Bounding and computing resurgence for three and four coordinate points."""

from fractions import Fraction

from resurgence import (build_report, coordinate_points, dd_window, denkert_estimate, rho_hat,
                        symbolic_in_power)
from resurgence.engine import frac_str

Z = coordinate_points(2)
w = symbolic_in_power(Z, 6, 5)
print("I(6Z) in I^5?", bool(w), "witness", w.to_dict())

rh = rho_hat(Z)
print("rho_hat =", rh.value, "certified:", rh.certified, "via facet", rh.normal)

# beyond rho_hat + epsilon only finitely many pairs can fail, so check them all
for eps in (Fraction(1, 3), Fraction(1, 12)):
    print(f"epsilon {eps}:", dd_window(Z, rh, eps).to_dict())

# one containment I(AZ) in I^B at a time: the bracket tightens as s grows
for s in (1, 2, 3):
    e = denkert_estimate(Z, 2, s)
    print(f"s={s}: A={e.A} B={e.B}  rho >= {e.rho_lower}  rho_hat <= {e.rho_hat_upper}")

for N in (2, 3):
    rep = build_report(coordinate_points(N))
    d = rep.to_dict()
    print(f"N={N}: rho_hat {d['rho_hat']['value']}, rho {d['rho']}, K {d['K']}, flags {d['consistency']}")
