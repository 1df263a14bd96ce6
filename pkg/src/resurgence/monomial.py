"""Exponent vectors and monomial ideals.

A monomial x_0^{a_0} ... x_N^{a_N} is stored as the plain tuple (a_0, ..., a_N).
A monomial ideal is the antichain of its minimal generators, kept in a canonical
graded order so that equal ideals compare (and print) identically.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, ParseError, ResourceLimitError, UndefinedValueError

ExponentVector = tuple  # tuple[int, ...]

DEFAULT_MAX_GENERATORS = 200_000

# numpy fast paths are only taken when every entry stays far below int64 range
_NUMPY_SAFE = 1 << 40


def exponent_vector(entries: Iterable[int], nvars: int | None = None) -> ExponentVector:
    vec = tuple(int(e) for e in entries)
    if any(e < 0 for e in vec):
        raise ValueError(f"negative exponent in {vec}")
    if nvars is not None and len(vec) != nvars:
        raise DimensionError(f"expected {nvars} exponents, got {len(vec)}")
    return vec


def degree(a: ExponentVector) -> int:
    return sum(a)


def divides(a: ExponentVector, b: ExponentVector) -> bool:
    """True iff x^a divides x^b."""
    return all(x <= y for x, y in zip(a, b))


def grlex_key(a: ExponentVector):
    """Sort key for the canonical order: degree first, then x_0-heavy first."""
    return (sum(a), tuple(-x for x in a))


def _check_dims(vectors, nvars):
    for v in vectors:
        if len(v) != nvars:
            raise DimensionError(f"vector {v} does not have {nvars} entries")


def _antichain(vectors: Iterable[ExponentVector]) -> tuple:
    """Minimal elements under divisibility, in canonical order."""
    uniq = sorted(set(vectors), key=grlex_key)
    if len(uniq) <= 64 or max(max(v, default=0) for v in uniq) >= _NUMPY_SAFE:
        kept = []
        for v in uniq:
            if not any(divides(k, v) for k in kept):
                kept.append(v)
        return tuple(kept)

    # Equal-degree distinct vectors never divide each other, so each degree
    # class is screened in one vectorised pass against what was kept so far.
    arr = np.array(uniq, dtype=np.int64)
    degs = arr.sum(axis=1)
    keep = np.zeros(len(uniq), dtype=bool)
    kept_rows = np.empty((0, arr.shape[1]), dtype=np.int64)
    bounds = np.flatnonzero(np.diff(degs)) + 1
    for block in np.split(np.arange(len(uniq)), bounds):
        cand = arr[block]
        if len(kept_rows):
            hit = np.zeros(len(block), dtype=bool)
            step = max(1, 2_000_000 // (len(kept_rows) * arr.shape[1] + 1))
            for s in range(0, len(block), step):
                c = cand[s:s + step]
                hit[s:s + step] = (kept_rows[None, :, :] <= c[:, None, :]).all(axis=2).any(axis=1)
            survivors = block[~hit]
        else:
            survivors = block
        keep[survivors] = True
        kept_rows = np.vstack([kept_rows, arr[survivors]])
    return tuple(uniq[i] for i in np.flatnonzero(keep))


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal in nvars variables, stored by its minimal generators.

    Build instances through :func:`minimalize` (or the ``zero``/``unit``
    constructors); the raw constructor trusts that ``gens`` is already a
    canonical antichain.
    """

    nvars: int
    gens: tuple

    @classmethod
    def zero(cls, nvars: int) -> "MonomialIdeal":
        return cls(nvars, ())

    @classmethod
    def unit(cls, nvars: int) -> "MonomialIdeal":
        return cls(nvars, ((0,) * nvars,))

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return len(self.gens) == 1 and not any(self.gens[0])

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __contains__(self, m) -> bool:
        return contains_monomial(self, tuple(m))

    def max_exponents(self) -> tuple:
        if self.is_zero:
            return (0,) * self.nvars
        return tuple(max(col) for col in zip(*self.gens))

    def __str__(self):
        return format_ideal(self)


def minimalize(gens: Iterable[Sequence[int]], nvars: int | None = None) -> MonomialIdeal:
    vecs = [tuple(int(e) for e in g) for g in gens]
    if nvars is None:
        if not vecs:
            raise DimensionError("cannot infer the ambient dimension of an empty generator set")
        nvars = len(vecs[0])
    _check_dims(vecs, nvars)
    if any(e < 0 for v in vecs for e in v):
        raise ValueError("negative exponent")
    return MonomialIdeal(nvars, _antichain(vecs))


def irrelevant_ideal(nvars: int) -> MonomialIdeal:
    """M = (x_0, ..., x_N)."""
    return MonomialIdeal(nvars, tuple(
        tuple(1 if j == i else 0 for j in range(nvars)) for i in range(nvars)))


def _same_ring(I: MonomialIdeal, J: MonomialIdeal):
    if I.nvars != J.nvars:
        raise DimensionError(f"ideals live in {I.nvars} and {J.nvars} variables")


def multiply(I: MonomialIdeal, J: MonomialIdeal,
             max_generators: int = DEFAULT_MAX_GENERATORS) -> MonomialIdeal:
    _same_ring(I, J)
    if len(I) * len(J) > 50 * max_generators:
        raise ResourceLimitError(
            f"product would expand {len(I) * len(J)} candidate generators")
    sums = {tuple(a + b for a, b in zip(g, h)) for g in I.gens for h in J.gens}
    out = MonomialIdeal(I.nvars, _antichain(sums))
    if len(out) > max_generators:
        raise ResourceLimitError(f"product has {len(out)} generators (cap {max_generators})")
    return out


def power(I: MonomialIdeal, r: int, max_generators: int = DEFAULT_MAX_GENERATORS) -> MonomialIdeal:
    """I^r by repeated squaring.

    The generator count can grow exponentially in r; past ``max_generators``
    a ResourceLimitError is raised and callers should use :func:`in_power`.
    """
    if r < 0:
        raise ValueError("power must be nonnegative")
    result = MonomialIdeal.unit(I.nvars)
    base = I
    while r:
        if r & 1:
            result = multiply(result, base, max_generators)
        r >>= 1
        if r:
            base = multiply(base, base, max_generators)
    return result


def intersect(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same_ring(I, J)
    lcms = {tuple(max(a, b) for a, b in zip(g, h)) for g in I.gens for h in J.gens}
    return MonomialIdeal(I.nvars, _antichain(lcms))


def contains_monomial(I: MonomialIdeal, m: ExponentVector) -> bool:
    if len(m) != I.nvars:
        raise DimensionError(f"monomial {m} not in {I.nvars} variables")
    return any(divides(g, m) for g in I.gens)


def alpha(I: MonomialIdeal) -> int:
    """Least degree of a nonzero element."""
    if I.is_zero:
        raise UndefinedValueError("alpha of the zero ideal is undefined")
    return min(sum(g) for g in I.gens)


# -- membership in powers ---------------------------------------------------

def power_decomposition(m: ExponentVector, I: MonomialIdeal, r: int,
                        min_slack_degree: int = 0, *, weights=(), _fails=None):
    """Generators g_1..g_r of I with sum(g) <= m and deg(m) - sum deg(g) >= slack.

    Returns the tuple of generators, or None when no such decomposition exists.
    Depth-first search over generators ordered by overlap with the residual,
    with failed (residual, depth) states memoised.  ``weights`` is an optional
    list of (w, w_of_I) pairs with w >= 0; each gives the necessary condition
    <w, residual> >= depth * w_of_I used for pruning.
    """
    if len(m) != I.nvars:
        raise DimensionError(f"monomial {m} not in {I.nvars} variables")
    if r < 0:
        raise ValueError("r must be nonnegative")
    k = min_slack_degree
    if r == 0:
        return () if sum(m) >= k else None
    if I.is_zero:
        return None
    gens = I.gens
    n = I.nvars
    min_deg = min(sum(g) for g in gens)
    coord_min = [min(g[i] for g in gens) for i in range(n)]
    bounds = [(tuple(w), int(v)) for w, v in weights if v > 0]
    fails = set() if _fails is None else _fails

    def search(res, depth):
        if depth == 0:
            return () if sum(res) >= k else None
        if sum(res) - depth * min_deg < k:
            return None
        for i in range(n):
            if res[i] < depth * coord_min[i]:
                return None
        for w, v in bounds:
            if sum(a * b for a, b in zip(w, res)) < depth * v:
                return None
        key = (res, depth)
        if key in fails:
            return None
        cands = [g for g in gens if all(x <= y for x, y in zip(g, res))]
        cands.sort(key=lambda g: -sum(x * y for x, y in zip(g, res)))
        for g in cands:
            sub = search(tuple(y - x for x, y in zip(g, res)), depth - 1)
            if sub is not None:
                return (g,) + sub
        fails.add(key)
        return None

    return search(tuple(m), r)


def in_power(m: ExponentVector, I: MonomialIdeal, r: int, min_slack_degree: int = 0,
             **kwargs) -> bool:
    """Whether x^m lies in M^k I^r with k = min_slack_degree (M irrelevant ideal)."""
    if r < 1:
        raise ValueError("r must be positive")
    return power_decomposition(m, I, r, min_slack_degree, **kwargs) is not None


@dataclass(frozen=True)
class Containment:
    """Outcome of an ideal containment test; falsy when a witness was found."""

    contained: bool
    witness: ExponentVector | None = None

    def __bool__(self):
        return self.contained


def ideal_in_power(J: MonomialIdeal, I: MonomialIdeal, r: int, min_slack_degree: int = 0,
                   *, weights=()) -> Containment:
    """Decide J ⊆ M^k I^r generator by generator; report the first failure."""
    _same_ring(I, J)
    fails = set()
    for g in J.gens:
        if power_decomposition(g, I, r, min_slack_degree, weights=weights, _fails=fails) is None:
            return Containment(False, g)
    return Containment(True)


# -- text format ------------------------------------------------------------

_FACTOR = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def parse_monomial(text: str, nvars: int) -> ExponentVector:
    text = text.strip()
    vec = [0] * nvars
    if text == "1":
        return tuple(vec)
    for factor in text.split("*"):
        hit = _FACTOR.match(factor.strip())
        if not hit:
            raise ParseError(f"bad monomial factor {factor!r}")
        idx = int(hit.group(1))
        if idx >= nvars:
            raise DimensionError(f"variable x{idx} outside x0..x{nvars - 1}")
        vec[idx] += int(hit.group(2) or 1)
    return tuple(vec)


def format_monomial(a: ExponentVector) -> str:
    parts = [f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(a) if e]
    return "*".join(parts) if parts else "1"


def parse_ideal(text: str) -> MonomialIdeal:
    """Parse the line format: a ``vars: n`` header, then one monomial per line."""
    nvars = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vars:"):
            try:
                nvars = int(line.split(":", 1)[1])
            except ValueError:
                raise ParseError(f"bad header {line!r}", lineno) from None
            if nvars < 1:
                raise ParseError("vars must be positive", lineno)
            continue
        if nvars is None:
            raise ParseError("monomial before 'vars:' header", lineno)
        try:
            gens.append(parse_monomial(line, nvars))
        except (ParseError, DimensionError) as exc:
            raise ParseError(str(exc), lineno) from None
    if nvars is None:
        raise ParseError("missing 'vars:' header")
    return minimalize(gens, nvars)


def format_ideal(I: MonomialIdeal) -> str:
    lines = [f"vars: {I.nvars}"]
    lines.extend(format_monomial(g) for g in I.gens)
    return "\n".join(lines) + "\n"
