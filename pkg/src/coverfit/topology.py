"""Exact integer bookkeeping for the covering bound on even-dimensional rotation groups.

Everything here is combinatorial: Z2 Betti sequences of SO(2n) and PSO(4),
the power-of-two divisor s of 2n, the resulting antipodal-index bounds, and
the facet bound they imply for circumscribed symmetric polytopes.  All
arithmetic is carried out in exact integers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError

SUPPORTED_GROUPS = (2, 4, 6, 8)


@dataclass(frozen=True)
class BettiSequence:
    """Z2 Betti numbers of a compact group, as coefficients of its Poincare polynomial."""

    coefficients: tuple[int, ...]
    label: str

    def __len__(self) -> int:
        return len(self.coefficients)

    def is_palindromic(self) -> bool:
        return self.coefficients == self.coefficients[::-1]

    def total(self) -> int:
        return sum(self.coefficients)


@dataclass(frozen=True)
class IndexBounds:
    """Bounds on the antipodal (Smith) index of SO(2n).

    ``lower`` is s - 1 where s is the largest power of two dividing 2n;
    ``upper`` is 2n - 1, the index of the sphere S^{2n-1} that SO(2n) maps
    onto equivariantly.  ``exact`` is set to 2n - 1 when n itself is a power
    of two, the case where the two bounds meet.
    """

    n_half: int
    s: int
    lower: int
    upper: int
    exact: int | None


def largest_power_two(two_n: int) -> int:
    """Largest power of 2 dividing the even integer two_n (the value, not the exponent)."""
    if two_n < 2 or two_n % 2 != 0:
        raise InputError(f"expected a positive even integer, got {two_n}")
    return two_n & (-two_n)


def _is_power_of_two(m: int) -> bool:
    return m >= 1 and (m & (m - 1)) == 0


def index_bounds(two_n: int) -> IndexBounds:
    """Antipodal-index bounds for SO(two_n), two_n even."""
    s = largest_power_two(two_n)
    n_half = two_n // 2
    upper = two_n - 1
    exact = upper if _is_power_of_two(n_half) else None
    return IndexBounds(n_half=n_half, s=s, lower=s - 1, upper=upper, exact=exact)


def poly_multiply(a: list[int], b: list[int]) -> list[int]:
    """Exact integer product of two coefficient lists (index = degree)."""
    if len(a) == 0 or len(b) == 0:
        return []
    conv = np.convolve(np.array(a, dtype=object), np.array(b, dtype=object))
    return [int(c) for c in conv]


def poincare_so(two_n: int) -> BettiSequence:
    """Z2 Betti sequence of SO(two_n): expansion of prod_{i=1}^{two_n - 1} (1 + t^i)."""
    if two_n not in SUPPORTED_GROUPS:
        raise InputError(f"supported group sizes are {SUPPORTED_GROUPS}, got {two_n}")
    coeffs = [1]
    for i in range(1, two_n):
        factor = [0] * (i + 1)
        factor[0] = 1
        factor[i] = 1
        coeffs = poly_multiply(coeffs, factor)
    return BettiSequence(coefficients=tuple(coeffs), label=f"SO({two_n})")


def poincare_pso4() -> BettiSequence:
    """Z2 Betti sequence of PSO(4), via PSO(4) = SO(3) x SO(3).

    SO(3) is real projective 3-space with Z2 Betti numbers (1, 1, 1, 1); the
    Kuenneth product squares that polynomial.
    """
    so3 = [1, 1, 1, 1]
    return BettiSequence(coefficients=tuple(poly_multiply(so3, so3)), label="PSO(4)")


@dataclass(frozen=True)
class PartialSumEntry:
    i: int
    orbit_betti: int
    partial_sum: int

    @property
    def equal(self) -> bool:
        return self.orbit_betti == self.partial_sum


def partial_sum_check(b_rho: BettiSequence, b: BettiSequence, upto: int) -> list[PartialSumEntry]:
    """Compare b_rho[i] with sum_{j<=i} b[j] for each i <= upto.

    Returns one entry per index, with no aggregation: callers see exactly
    which indices satisfy the relation and which do not.
    """
    if len(b_rho) != len(b):
        raise InputError(
            f"sequence lengths differ: {len(b_rho)} vs {len(b)}"
        )
    if upto >= len(b):
        raise InputError(f"upto={upto} exceeds sequence length {len(b)}")
    report = []
    running = 0
    for i in range(upto + 1):
        running += b.coefficients[i]
        report.append(
            PartialSumEntry(i=i, orbit_betti=b_rho.coefficients[i], partial_sum=running)
        )
    return report


def facet_bound(dim: int) -> int:
    """Facet count up to which the covering argument closes in R^dim (dim even).

    With k strips and dim of them used as a frame, the residual lands in
    R^{k - dim}; a zero is forced whenever the sphere S^{k - dim - 1} has
    antipodal index below that of SO(dim), i.e. k - dim - 1 < ind(SO(dim)).
    That gives k <= dim + ind and hence at most 2*dim + 2*ind facets.  The
    best available value of ind is used: exact when dim/2 is a power of two,
    otherwise the lower bound s - 1.
    """
    ib = index_bounds(dim)
    ind = ib.exact if ib.exact is not None else ib.lower
    return 2 * dim + 2 * ind


def facet_bound_is_from_exact_index(dim: int) -> bool:
    """Whether facet_bound(dim) used the exact index rather than its lower bound."""
    return index_bounds(dim).exact is not None


def bounds_report(dim: int) -> dict:
    """Machine-readable summary of every finitely computable bound for R^dim.

    The partial-sum report (group vs orbit-space Betti numbers) is included
    for dim 4, the one case with a product-group ground truth for the orbit
    space.  Note the relation orbit_betti[i] == sum(group_betti[:i+1]) holds
    for i <= 2 and fails at i = 3, where the Kuenneth value is 4 but the
    partial sum is 5; the report carries both numbers so the discrepancy is
    visible rather than averaged away.
    """
    ib = index_bounds(dim)
    so = poincare_so(dim)
    report: dict = {
        "dim": dim,
        "s": ib.s,
        "ind_lower": ib.lower,
        "ind_upper": ib.upper,
        "facet_bound": facet_bound(dim),
        "facet_bound_from_exact_index": facet_bound_is_from_exact_index(dim),
        "betti_so": list(so.coefficients),
    }
    if ib.exact is not None:
        report["ind_exact"] = ib.exact
    if dim == 4:
        pso = poincare_pso4()
        report["betti_pso"] = list(pso.coefficients)
        report["partial_sum_report"] = [
            {
                "i": e.i,
                "orbit_betti": e.orbit_betti,
                "partial_sum": e.partial_sum,
                "equal": e.equal,
            }
            for e in partial_sum_check(pso, so, upto=ib.s - 1)
        ]
    return report
