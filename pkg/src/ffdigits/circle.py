"""Farey-arc machinery and the count pipeline: arc enumeration and partition,
the square-root-cancellation error check at rational points, the main-term and
predictor formulas, the error budget, and the orthogonality-identity count.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .charsum import RestrictedSet, _digit_weights, _irreducible_coeffs, s_at
from .field import FieldSpec, get_field
from .laurent import RationalPoint, e_q_of
from .polys import Poly, euler_phi, mobius, poly_gcd, prime_count


class NumericalError(RuntimeError):
    """The orthogonality average failed to land on an integer."""


ORTH_TOLERANCE = 1e-6
_CHUNK = 1 << 14


@dataclass(frozen=True)
class FareyArc:
    """Ball around a/g of radius q^(-radius_exponent)."""

    center: RationalPoint
    radius_exponent: int

    def contains(self, x: RationalPoint) -> bool:
        return (x - self.center).norm_less_than(-self.radius_exponent)


def _polys_below_degree(field: FieldSpec, d: int):
    """All polynomials of degree < d, by ascending code."""
    q = field.q
    for v in range(q**d):
        coeffs = []
        w = v
        for _ in range(d):
            coeffs.append(w % q)
            w //= q
        yield Poly(field, coeffs)


def farey_enumerate(field: FieldSpec, d_max: int):
    """Every reduced fraction a/g with g monic and deg a < deg g <= d_max.

    Starts with 0/1; then denominators by increasing degree.
    """
    if d_max < 0:
        raise ValueError("d_max must be >= 0")
    yield RationalPoint.zero(field)
    from .polys import enumerate_monic

    one = Poly.one(field)
    for d in range(1, d_max + 1):
        for g in enumerate_monic(field, d):
            for a in _polys_below_degree(field, d):
                if a.is_zero:
                    continue
                if poly_gcd(a, g) == one:
                    yield RationalPoint(a, g)


def arc_partition_check(field: FieldSpec, n: int) -> bool:
    """True iff the arcs at level n cover each discretized point exactly once."""
    if n < 2:
        raise ValueError("need n >= 2")
    half_up = (n + 1) // 2
    half_down = n // 2
    arcs = [
        FareyArc(c, c.g.degree + half_up)
        for c in farey_enumerate(field, half_down)
    ]
    t_m = Poly.t(field, n)
    for a in _polys_below_degree(field, n):
        x = RationalPoint(a, t_m)
        hits = sum(1 for arc in arcs if arc.contains(x))
        if hits != 1:
            return False
    return True


# ---------------------------------------------------------------------------
# error at a rational point against the major-arc main term

@dataclass(frozen=True)
class PointErrorReport:
    main: complex
    error: complex
    bound: float

    @property
    def ok(self) -> bool:
        return abs(self.error) <= self.bound + 1e-9


def lemma1_error(a: Poly, g: Poly, gamma, n: int) -> PointErrorReport:
    """Split S(a/g + gamma) into its major-arc main term and the remainder.

    The remainder is checked against the square-root cancellation bound
    q^(n - floor(n/2)/2).
    """
    field = g.field
    if gamma is None:
        gamma = RationalPoint.zero(field)
    if poly_gcd(a, g) != Poly.one(field) and not a.is_zero:
        raise ValueError("a and g must be coprime")
    half_down = n // 2
    half_up = (n + 1) // 2
    if not (a.degree < g.degree or a.is_zero) or g.degree > half_down:
        raise ValueError("need |a| < |g| <= q^(n/2)")
    if not gamma.norm_less_than(-(g.degree + half_up)):
        raise ValueError("gamma outside the arc radius")
    q = field.q
    mu = mobius(g.monic())
    main = 0j
    if mu != 0 and gamma.norm_less_than(-n):
        phi = euler_phi(g.monic())
        main = (
            Fraction(mu, phi)
            * prime_count(field, n)
            * 1.0
            * e_q_of(Poly.t(field, n), gamma)
        )
    total = s_at(field, n, RationalPoint(a, g) + gamma)
    bound = q ** (n - half_down / 2)
    return PointErrorReport(main=complex(main), error=total - main, bound=bound)


def lemma5_ratio(g: Poly):
    """(q^deg g / phi(g), (1 + log_q(deg g)) * e) for monic g of positive degree."""
    if g.degree < 1:
        raise ValueError("need deg g >= 1")
    q = g.field.q
    ratio = Fraction(q**g.degree, euler_phi(g.monic()))
    bound = (1 + math.log(g.degree, q)) * math.e
    return float(ratio), bound


# ---------------------------------------------------------------------------
# predictor and error budget

@dataclass(frozen=True)
class PredictorParams:
    q: int
    s: int
    n: int
    zero_in_R: bool

    def __post_init__(self):
        if not 0 <= self.s < self.q:
            raise ValueError("need 0 <= s < q")

    @classmethod
    def from_restricted(cls, R: RestrictedSet, n: int) -> "PredictorParams":
        return cls(q=R.spec.q, s=R.s, n=n, zero_in_R=R.zero_in_R)

    @property
    def lam(self) -> Fraction:
        if self.zero_in_R:
            return Fraction(1)
        return 1 - Fraction(1, self.q - self.s)

    @property
    def flagged(self) -> bool:
        """True when s exceeds the sqrt(q)/2 comfort zone of the asymptotic."""
        return 4 * self.s**2 > self.q


def main_term(P: PredictorParams) -> Fraction:
    """Exact main term (q*Lambda/(q-1)) * pi(n) * (1 - s/q)^n."""
    return (
        Fraction(P.q, P.q - 1)
        * P.lam
        * prime_count(P.q, P.n)
        * Fraction(P.q - P.s, P.q) ** P.n
    )


def predictor(P: PredictorParams) -> float:
    """(q/(q-1)) * (q-s)^n / n * Lambda."""
    return float(Fraction(P.q, P.q - 1) * Fraction((P.q - P.s) ** P.n, P.n) * P.lam)


def _safe_exp(x: float) -> float:
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


@dataclass(frozen=True)
class ErrorBudget:
    """Reported (never asserted) error terms with all implied constants set to 1."""

    term_weil: float
    term_minor_small: float
    term_minor_large: float
    total: float
    U: float


def error_budget(q: int, s: int, n: int, U: float | None = None) -> ErrorBudget:
    if U is None:
        U = math.sqrt(2 * n / 5)
    if not 1 <= U <= n / 2:
        raise ValueError(f"need 1 <= U <= n/2, got U={U}")
    lq = math.log(q)
    l_cs = math.log(math.sqrt(s) + 1 - 2 * s / q)  # >= 0 for s < q
    l_qs = math.log(q - s)
    # Square-root cancellation term, normalized by the main-term scale
    # (q/(q-1)) * (q-s)^n / n.
    term_weil = _safe_exp(
        (n - (n // 2) / 2) * lq + n * l_cs - n * l_qs + math.log(n) + math.log((q - 1) / q)
    )
    if s == 0:
        term_minor_small = 0.0
    else:
        term_minor_small = _safe_exp(U * lq + (n / U) * (math.log(s) - l_qs))
    term_minor_large = _safe_exp(U / 2 * lq + U * (l_cs - l_qs))
    total = _safe_exp(-math.sqrt(n) / (2 * math.sqrt(10)) * lq) + _safe_exp(
        n * (0.75 * lq + math.log(math.sqrt(s) + 1) - l_qs)
    )
    return ErrorBudget(
        term_weil=term_weil,
        term_minor_small=term_minor_small,
        term_minor_large=term_minor_large,
        total=total,
        U=U,
    )


# ---------------------------------------------------------------------------
# the orthogonality-identity count

def _orth_chunk(args):
    p, k, modulus, forbidden, n, start, stop = args
    field = get_field(p, k, modulus)
    R = RestrictedSet(field, frozenset(forbidden))
    W = _digit_weights(R)
    irr = _irreducible_coeffs(field, n)
    psi = field.psi
    mul = field.mul
    add = field.add
    q = field.q
    m = n + 1
    total = 0j
    for v in range(start, stop):
        # digits of the numerator a; window[j] = a_{m-1-j}
        coeffs = []
        w = v
        for _ in range(m):
            coeffs.append(w % q)
            w //= q
        window = coeffs[::-1]
        s_val = 0j
        for hc in irr:
            acc = 0
            for hj, xj in zip(hc, window):
                if hj:
                    acc = add(acc, mul(hj, xj))
            s_val += psi(acc)
        sr = psi(window[n])
        for i in range(n):
            sr *= W[window[i]]
        total += s_val * sr.conjugate()
    return total


def orthogonality_count(R: RestrictedSet, n: int, workers: int = 1) -> int:
    """Count restricted irreducibles through the discrete orthogonality average.

    Averages S(a/t^(n+1)) * conj(S_R(a/t^(n+1))) over all q^(n+1) points and
    rounds; a deviation of 1e-6 or more from an integer is a hard error.
    Chunked with a fixed summation order, so results do not depend on workers.
    """
    field = R.spec
    m = n + 1
    npoints = field.q**m
    chunks = [
        (field.p, field.k, field.modulus, tuple(sorted(R.forbidden)), n, lo, min(lo + _CHUNK, npoints))
        for lo in range(0, npoints, _CHUNK)
    ]
    if workers > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(_orth_chunk, chunks))
    else:
        partials = [_orth_chunk(c) for c in chunks]
    total = 0j
    for part in partials:
        total += part
    value = total / npoints
    nearest = round(value.real)
    deviation = max(abs(value.imag), abs(value.real - nearest))
    if deviation >= ORTH_TOLERANCE:
        raise NumericalError(
            f"orthogonality average {value} deviates {deviation:.3g} from an integer"
        )
    return int(nearest)
