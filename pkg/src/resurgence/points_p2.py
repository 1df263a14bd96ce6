"""Fat points at arbitrary positions in P^2 over a prime field.

Forms of degree d are coefficient vectors over the monomials x^a y^b z^c,
a + b + c = d.  Vanishing to order mu at a point is the vanishing of all
Taylor coefficients of order < mu in an affine chart around it; at a
coordinate vertex this simply removes the monomials of too low order.
Results over F_p are evidence for characteristic 0, not proof.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, lcm

import numpy as np

from .errors import CharacteristicError, ParseError, PreconditionError, SeedError
from .modp import DEFAULT_PRIME, bareiss_rank, check_prime, matmul_mod, nullspace_mod, rank_mod


def _normalize(coords, p):
    c = [int(x) % p for x in coords]
    if len(c) != 3 or not any(c):
        raise ValueError(f"need three coordinates, not all zero mod {p}: {coords}")
    last = max(i for i in range(3) if c[i])
    inv = pow(c[last], p - 2, p)
    return tuple(x * inv % p for x in c)


@dataclass(frozen=True)
class PlanePoint:
    """Homogeneous coordinates mod p, scaled so the last nonzero entry is 1."""

    coords: tuple
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        object.__setattr__(self, "coords", _normalize(self.coords, self.p))

    @property
    def vertex(self) -> int | None:
        """Index k if this is the coordinate vertex e_k."""
        nz = [i for i, x in enumerate(self.coords) if x]
        return nz[0] if len(nz) == 1 else None


@dataclass(frozen=True)
class LinearForm:
    """c0 x + c1 y + c2 z up to scalar, scaled like a PlanePoint."""

    coeffs: tuple
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _normalize(self.coeffs, self.p))

    def __call__(self, point) -> int:
        return sum(a * b for a, b in zip(self.coeffs, point)) % self.p

    def points(self, count: int) -> list:
        """``count`` distinct points of the line (needs count <= p)."""
        c = self.coeffs
        k = max(i for i in range(3) if c[i])
        i, j = [t for t in range(3) if t != k]
        inv = pow(c[k], self.p - 2, self.p)
        # basis of the kernel: e_i - (c_i/c_k) e_k and e_j - (c_j/c_k) e_k
        P1 = [0, 0, 0]
        P1[i], P1[k] = 1, (-c[i] * inv) % self.p
        P2 = [0, 0, 0]
        P2[j], P2[k] = 1, (-c[j] * inv) % self.p
        out = [tuple(P2)]
        for s in range(count - 1):
            out.append(tuple((x + s * y) % self.p for x, y in zip(P1, P2)))
        return out


@dataclass(frozen=True)
class PlaneFatScheme:
    points: tuple          # ((PlanePoint, mult), ...)
    p: int = DEFAULT_PRIME
    seed: int | None = None

    def __post_init__(self):
        pts = []
        for pt, mult in self.points:
            if not isinstance(pt, PlanePoint):
                pt = PlanePoint(tuple(pt), self.p)
            elif pt.p != self.p:
                pt = PlanePoint(pt.coords, self.p)
            if int(mult) < 1:
                raise ValueError("multiplicities must be positive")
            pts.append((pt, int(mult)))
        if len({pt.coords for pt, _ in pts}) != len(pts):
            raise ValueError("points must be distinct")
        if not pts:
            raise ValueError("scheme has no points")
        object.__setattr__(self, "points", tuple(pts))

    @property
    def is_reduced(self) -> bool:
        return all(m == 1 for _, m in self.points)

    def __len__(self):
        return len(self.points)


@lru_cache(maxsize=64)
def monomials(d: int) -> tuple:
    """Exponents of degree d in x, y, z, x-heavy first."""
    return tuple((a, b, d - a - b) for a in range(d, -1, -1) for b in range(d - a, -1, -1))


def _binomials_mod(n, p):
    return np.array([[comb(i, j) % p for j in range(n + 1)] for i in range(n + 1)], dtype=np.int64)


def _powers_mod(x, n, p):
    out = np.ones(n + 1, dtype=np.int64)
    for k in range(1, n + 1):
        out[k] = out[k - 1] * x % p
    return out


def _check_char(p, m, d, Z):
    if p <= max(d, max(m * mu for _, mu in Z.points)):
        raise CharacteristicError(f"characteristic {p} too small for degree {d}, multiplicity {m}")


def _taylor_rows(point: PlanePoint, mu: int, cols: np.ndarray, p: int) -> np.ndarray:
    """Conditions: every Taylor coefficient of order < mu at the point vanishes."""
    c = point.coords
    k = max(i for i in range(3) if c[i])           # chart x_k = 1
    u, v = [t for t in range(3) if t != k]
    d = int(cols[0].sum()) if len(cols) else 0
    Bn = _binomials_mod(max(d, mu), p)
    Pu, Pv = _powers_mod(c[u], d, p), _powers_mod(c[v], d, p)
    au, av = cols[:, u], cols[:, v]
    rows = []
    for i in range(mu):
        for j in range(mu - i):
            ok = (au >= i) & (av >= j)
            eu = np.where(ok, au - i, 0)
            ev = np.where(ok, av - j, 0)
            val = Bn[au, i] * Bn[av, j] % p
            val = val * Pu[eu] % p * Pv[ev] % p
            rows.append(np.where(ok, val, 0))
    return np.array(rows, dtype=np.int64).reshape(-1, len(cols))


def _taylor_rows_exact(point_coords, mu, cols):
    c = point_coords
    k = max(i for i in range(3) if c[i])
    u, v = [t for t in range(3) if t != k]
    rows = []
    for i in range(mu):
        for j in range(mu - i):
            row = []
            for a in cols:
                if a[u] >= i and a[v] >= j:
                    row.append(Fraction(comb(a[u], i) * comb(a[v], j))
                               * Fraction(c[u], c[k]) ** (a[u] - i)
                               * Fraction(c[v], c[k]) ** (a[v] - j))
                else:
                    row.append(Fraction(0))
            rows.append(row)
    return rows


def condition_system(Z: PlaneFatScheme, m: int, d: int, rational: bool = False, raw=None):
    """(surviving monomials, condition matrix) for (I(mZ))_d.

    Coordinate vertices only delete monomials; other points add Taylor rows.
    ``raw`` optionally gives the integer coordinates to use in rational mode.
    """
    if m < 1 or d < 0:
        raise ValueError("need m >= 1 and d >= 0")
    mons = monomials(d)
    keep = np.ones(len(mons), dtype=bool)
    arr = np.array(mons, dtype=np.int64).reshape(-1, 3)
    general = []
    for idx, (pt, mu) in enumerate(Z.points):
        k = pt.vertex
        if k is not None:
            keep &= (d - arr[:, k]) >= m * mu
        else:
            general.append((idx, pt, m * mu))
    cols = arr[keep]
    if len(cols) == 0:
        return cols, ([] if rational else np.zeros((0, 0), dtype=np.int64))
    if rational:
        rows = []
        for idx, pt, mu in general:
            coords = raw[idx] if raw is not None else pt.coords
            rows.extend(_taylor_rows_exact(coords, mu, [tuple(map(int, a)) for a in cols]))
        return cols, rows
    blocks = [_taylor_rows(pt, mu, cols, Z.p) for _, pt, mu in general]
    M = np.vstack(blocks) if blocks else np.zeros((0, len(cols)), dtype=np.int64)
    return cols, M


def hilbert_dim(Z: PlaneFatScheme, m: int, d: int, rational: bool = False, raw=None) -> int:
    """dim_K (I(mZ))_d."""
    if not rational:
        _check_char(Z.p, m, d, Z)
    cols, M = condition_system(Z, m, d, rational, raw)
    if rational:
        den = 1
        for row in M:
            for x in row:
                den = lcm(den, x.denominator)
        rank = bareiss_rank([[int(x * den) for x in row] for row in M])
    else:
        rank = rank_mod(M, Z.p)
    return len(cols) - rank


def expected_dim(Z: PlaneFatScheme, m: int, d: int) -> int:
    """C(d+2,2) minus the number of conditions, a lower bound for hilbert_dim."""
    return comb(d + 2, 2) - sum(comb(m * mu + 1, 2) for _, mu in Z.points)


def alpha_p2(Z: PlaneFatScheme, m: int, rational: bool = False, raw=None) -> int:
    """Least degree of a nonzero form in I(mZ)."""
    if m < 1:
        raise ValueError("m must be positive")
    d = max(m * mu for _, mu in Z.points)     # a form of degree < k cannot vanish to order k
    while hilbert_dim(Z, m, d, rational, raw) == 0:
        d += 1
    return d


def regularity_reduced(Z: PlaneFatScheme) -> int:
    """1 + the degree at which the points impose independent conditions."""
    if not Z.is_reduced:
        raise PreconditionError("regularity is only computed for reduced points")
    n = len(Z)
    d = 0
    while comb(d + 2, 2) - hilbert_dim(Z, 1, d) != n:
        d += 1
    return d + 1


def basis(Z: PlaneFatScheme, m: int, d: int):
    """(monomials, K) with the columns of K spanning (I(mZ))_d mod p."""
    _check_char(Z.p, m, d, Z)
    cols, M = condition_system(Z, m, d)
    return cols, nullspace_mod(M, Z.p) if len(cols) else np.zeros((0, 0), dtype=np.int64)


def vanishing_order_on_line(Z: PlaneFatScheme, m: int, d: int, F: LinearForm) -> int:
    """Largest k with F^k dividing every form in (I(mZ))_d.

    D^j f, the j-th Hasse derivative in a direction transversal to F = 0, is a
    form of degree d - j; it vanishes on the line iff it vanishes at d + 1
    distinct points of it.  k is the first j with D^j f nonzero on the line
    for some basis element f.
    """
    p = Z.p
    cols, K = basis(Z, m, d)
    if K.size == 0 or K.shape[1] == 0:
        raise PreconditionError(f"(I({m}Z))_{d} is zero")
    t = max(i for i in range(3) if F.coeffs[i])      # F(e_t) != 0
    Q = F.points(d + 1)
    Pw = np.array([[_powers_mod(q[i], d, p) for i in range(3)] for q in Q])   # (d+1, 3, d+1)
    Bn = _binomials_mod(d, p)
    at = cols[:, t]
    for j in range(d + 1):
        ok = at >= j
        e = cols.copy()
        e[:, t] = np.where(ok, at - j, 0)
        E = Bn[at, j][None, :] % p
        for i in range(3):
            E = E * Pw[:, i, :][:, e[:, i]] % p
        E = np.where(ok[None, :], E, 0)
        if matmul_mod(E, K, p).any():
            return j
    raise AssertionError("a nonzero form of degree d cannot vanish to order > d")


# -- the eight-point example ---------------------------------------------------------

def _ex3_candidate(seed: int, p: int):
    rng = random.Random(seed)
    coeffs = tuple(rng.randrange(1, p) for _ in range(3))
    L = LinearForm(coeffs, p)
    c = L.coeffs
    inv = pow(c[2], p - 2, p)
    pts = set()
    while len(pts) < 5:
        x, y = rng.randrange(1, p), rng.randrange(1, p)
        z = (-(c[0] * x + c[1] * y) * inv) % p
        if z:
            pts.add(PlanePoint((x, y, z), p).coords)
    verts = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    comps = [(PlanePoint(v, p), 1) for v in verts] + [(PlanePoint(q, p), 1) for q in sorted(pts)]
    return PlaneFatScheme(tuple(comps), p, seed), L


def build_ex3(seed: int = 0, p: int = DEFAULT_PRIME, attempts: int = 8):
    """Three coordinate vertices plus five random points on a random line.

    The configuration is accepted once alpha(I(Z)) = 3 and alpha(I(2Z)) = 5;
    otherwise the next seed is tried.
    """
    if p <= 65:
        raise CharacteristicError(f"characteristic {p} too small (need p > 65)")
    check_prime(p)
    for k in range(attempts):
        Z, L = _ex3_candidate(seed + k, p)
        if alpha_p2(Z, 1) == 3 and alpha_p2(Z, 2) == 5:
            return Z, L
    raise SeedError(f"no generic configuration from seeds {seed}..{seed + attempts - 1}")


def power_order_bound(Z: PlaneFatScheme, F: LinearForm, r: int, d: int) -> int | None:
    """Lower bound for the vanishing order along F = 0 of every form in (I(Z)^r)_d.

    (I(Z)^r)_d is spanned by products of r forms of I(Z).  Let c be the first
    degree in which I(Z) is not divisible by F; factors of degree below c
    contribute at least one each, and a degree budget of d forces at least
    r - floor((d - alpha r) / (c - alpha)) of them.  None if (I(Z)^r)_d = 0.
    """
    a0 = alpha_p2(Z, 1)
    if d < a0 * r:
        return None
    c = a0
    while vanishing_order_on_line(Z, 1, c, F) > 0:
        c += 1
    if c == a0:
        return 0
    return max(0, r - (d - a0 * r) // (c - a0))


@dataclass(frozen=True)
class OrderCertificate:
    """Non-containment (I(mZ))_d ⊄ (I(Z)^r)_d from comparing orders along a line."""

    m: int
    r: int
    d: int
    order: int
    power_bound: int | None

    @property
    def not_contained(self) -> bool:
        return self.power_bound is None or self.order < self.power_bound

    def to_dict(self) -> dict:
        return {"m": self.m, "r": self.r, "d": self.d, "order": self.order,
                "power_bound": self.power_bound, "not_contained": self.not_contained}


def order_certificate(Z: PlaneFatScheme, F: LinearForm, m: int, r: int, d: int) -> OrderCertificate:
    return OrderCertificate(m, r, d, vanishing_order_on_line(Z, m, d, F),
                            power_order_bound(Z, F, r, d))


# -- text format ----------------------------------------------------------------

def parse_p2_scheme(text: str, p: int = DEFAULT_PRIME):
    """Parse a ``p2-scheme`` file; returns (scheme, lines, raw integer coordinates)."""
    seen_header = False
    pts, raw, lines = [], [], []
    for lineno, line_raw in enumerate(text.splitlines(), start=1):
        line = line_raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == "p2-scheme":
            seen_header = True
            continue
        if not seen_header:
            raise ParseError("missing 'p2-scheme' header", lineno)
        try:
            if line.startswith("prime:"):
                p = int(line.split(":", 1)[1])
            elif line.startswith("point:"):
                body = line[len("point:"):]
                if "mult:" not in body:
                    raise ParseError("missing 'mult:'", lineno)
                coords, mult = body.split("mult:", 1)
                c = tuple(int(x) for x in coords.split())
                if len(c) != 3:
                    raise ParseError("a point needs three coordinates", lineno)
                raw.append(c)
                pts.append((c, int(mult)))
            elif line.startswith("line:"):
                c = tuple(int(x) for x in line[len("line:"):].split())
                if len(c) != 3:
                    raise ParseError("a line needs three coefficients", lineno)
                lines.append(c)
            else:
                raise ParseError(f"unrecognised line {line!r}", lineno)
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"non-integer field in {line!r}", lineno) from None
    if not seen_header:
        raise ParseError("missing 'p2-scheme' header")
    if not pts:
        raise ParseError("no points")
    check_prime(p)
    try:
        Z = PlaneFatScheme(tuple((PlanePoint(c, p), m) for c, m in pts), p)
        Ls = [LinearForm(c, p) for c in lines]
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    return Z, Ls, raw


def format_p2_scheme(Z: PlaneFatScheme, lines=()) -> str:
    out = ["p2-scheme", f"prime: {Z.p}"]
    out += [f"point: {' '.join(map(str, pt.coords))} mult: {mu}" for pt, mu in Z.points]
    out += [f"line: {' '.join(map(str, L.coeffs))}" for L in lines]
    return "\n".join(out) + "\n"
