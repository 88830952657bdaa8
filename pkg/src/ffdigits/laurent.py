"""Points of the function-field unit interval: reduced fractions a/g with
deg a < deg g, their digit expansions at 1/t, the norm, and the additive
character that reads off the t^{-1} digit.
"""

from __future__ import annotations

from fractions import Fraction

from .field import FieldSpec
from .polys import Poly, poly_gcd


class RationalPoint:
    """A point a/g of the unit interval: g monic, deg a < deg g, gcd(a, g) = 1."""

    __slots__ = ("a", "g")

    def __init__(self, a: Poly, g: Poly):
        if g.is_zero:
            raise ZeroDivisionError("zero denominator")
        if a.field != g.field:
            raise ValueError("numerator and denominator over different fields")
        lead = g.leading
        if lead != 1:
            # divide both by the leading unit so the value is unchanged
            a = a.scale(g.field.inv(lead))
            g = g.monic()
        a = a % g
        if a.is_zero:
            g = Poly.one(a.field)
        else:
            d = poly_gcd(a, g)
            if d.degree > 0:
                a, g = a // d, g // d
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "g", g)

    def __setattr__(self, *_):
        raise AttributeError("RationalPoint is immutable")

    @classmethod
    def zero(cls, field: FieldSpec) -> "RationalPoint":
        return cls(Poly.zero(field), Poly.one(field))

    @property
    def field(self) -> FieldSpec:
        return self.g.field

    @property
    def is_zero(self) -> bool:
        return self.a.is_zero

    def norm_exponent(self):
        """j with |x| = q^j, or None for the zero point."""
        if self.is_zero:
            return None
        return self.a.degree - self.g.degree

    def __add__(self, other: "RationalPoint") -> "RationalPoint":
        return RationalPoint(self.a * other.g + other.a * self.g, self.g * other.g)

    def __neg__(self) -> "RationalPoint":
        return RationalPoint(-self.a, self.g)

    def __sub__(self, other: "RationalPoint") -> "RationalPoint":
        return self + (-other)

    def mul_poly(self, h: Poly) -> "RationalPoint":
        """Fractional part of h * a/g."""
        return RationalPoint(h * self.a, self.g)

    def norm_less_than(self, exponent: int) -> bool:
        """Exact test |x| < q^exponent."""
        e = self.norm_exponent()
        return True if e is None else e < exponent

    def __eq__(self, other):
        return (
            isinstance(other, RationalPoint)
            and self.a == other.a
            and self.g == other.g
        )

    def __hash__(self):
        return hash((self.a, self.g))

    def __repr__(self):
        return f"RationalPoint({self.a.format()}/{self.g.format()})"

    def __str__(self):
        return f"{self.a.format()}/{self.g.format()}"


def norm_of(x: RationalPoint) -> Fraction:
    """|a/g| = q^(deg a - deg g) as an exact rational, 0 for the zero point."""
    e = x.norm_exponent()
    if e is None:
        return Fraction(0)
    q = x.field.q
    return Fraction(q**e) if e >= 0 else Fraction(1, q**-e)


def frac_digits(x: RationalPoint, m: int) -> tuple:
    """First m digits (x_{-1}, ..., x_{-m}) of the expansion of a/g in powers of 1/t.

    One division step per digit: shift the remainder by t, extract the (constant)
    quotient, keep the reduced remainder.
    """
    if m < 1:
        raise ValueError("window length must be >= 1")
    digits = []
    r = x.a
    g = x.g
    for _ in range(m):
        quo, r = divmod(r.shift(1), g)
        digits.append(quo[0])
    return tuple(digits)


def e_q_of(h: Poly, x: RationalPoint) -> complex:
    """psi of the t^{-1} coefficient of the fractional part of h*x."""
    F = h.field
    if h.is_zero or x.is_zero:
        return F.psi(0)
    window = frac_digits(x, h.degree + 1)
    acc = 0
    for hj, xj in zip(h.coeffs, window):
        acc = F.add(acc, F.mul(hj, xj))
    return F.psi(acc)
