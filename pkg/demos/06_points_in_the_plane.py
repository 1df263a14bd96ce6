"""Eight points in the plane over F_p: three vertices plus five on a line.

Comparing the order of vanishing along the line shows that I(25Z) is not
contained in I(Z)^20, without ever building generators of I(Z)^20.
"""

import time

from resurgence.points_p2 import alpha_p2, build_ex3, hilbert_dim, order_certificate

Z, L = build_ex3(seed=0)
print("line coefficients", L.coeffs, "prime", Z.p)
print("Hilbert function of I(Z):", [hilbert_dim(Z, 1, d) for d in range(7)])
print("alpha(I(mZ)) for m = 1, 2, 4:", [alpha_p2(Z, m) for m in (1, 2, 4)])

t = time.perf_counter()
cert = order_certificate(Z, L, m=25, r=20, d=65)
print(cert.to_dict(), f"({time.perf_counter() - t:.1f}s)")
