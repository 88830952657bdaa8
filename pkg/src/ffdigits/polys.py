"""The ring F_q[t]: arithmetic, gcd, irreducibility, factorization and counting.

Polynomials are immutable dense coefficient tuples (ascending powers of t) of
field element codes.  The zero polynomial is the empty tuple with degree -1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .field import FieldError, FieldSpec


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, *_):
        raise AttributeError("Poly is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def one(cls, field):
        return cls(field, (1,))

    @classmethod
    def t(cls, field, power: int = 1):
        return cls(field, (0,) * power + (1,))

    @classmethod
    def constant(cls, field, c: int):
        return cls(field, (c,))

    # -- basic queries -------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    @property
    def leading(self) -> int:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def norm(self) -> int:
        """|f| = q^deg f, with |0| = 0."""
        return 0 if self.is_zero else self.field.q ** self.degree

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    # -- arithmetic ----------------------------------------------------------

    def _same(self, other):
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldError("polynomials over different fields")

    def __add__(self, other):
        self._same(other)
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(F, (F.add(self[i], other[i]) for i in range(n)))

    def __neg__(self):
        F = self.field
        return Poly(F, (F.neg(c) for c in self.coeffs))

    def __sub__(self, other):
        self._same(other)
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(F, (F.sub(self[i], other[i]) for i in range(n)))

    def __mul__(self, other):
        self._same(other)
        if self.is_zero or other.is_zero:
            return Poly.zero(self.field)
        F = self.field
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = F.add(out[i + j], F.mul(a, b))
        return Poly(F, out)

    def scale(self, c: int) -> "Poly":
        F = self.field
        return Poly(F, (F.mul(c, x) for x in self.coeffs))

    def shift(self, j: int) -> "Poly":
        """Multiply by t^j."""
        if self.is_zero:
            return self
        return Poly(self.field, (0,) * j + self.coeffs)

    def __divmod__(self, other):
        self._same(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        dg = other.degree
        inv_lead = F.inv(other.leading)
        rem = list(self.coeffs)
        quo = [0] * max(len(rem) - dg, 0)
        for i in range(len(rem) - 1, dg - 1, -1):
            c = rem[i]
            if c:
                c = F.mul(c, inv_lead)
                quo[i - dg] = c
                for j in range(dg + 1):
                    rem[i - dg + j] = F.sub(rem[i - dg + j], F.mul(c, other.coeffs[j]))
        return Poly(F, quo), Poly(F, rem[:dg])

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def monic(self) -> "Poly":
        if self.is_zero or self.is_monic:
            return self
        return self.scale(self.field.inv(self.leading))

    def derivative(self) -> "Poly":
        F = self.field
        out = []
        for i in range(1, len(self.coeffs)):
            scalar = i % F.p  # prime-subfield scalar has code i mod p
            out.append(F.mul(scalar, self.coeffs[i]))
        return Poly(F, out)

    def __call__(self, x: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    # -- identity / display --------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f"Poly({self.format()!r})"

    def format(self) -> str:
        """Comma-separated coefficients, constant term first."""
        if self.is_zero:
            return "0" if self.field.k == 1 else self.field.format_element(0)
        return ",".join(self.field.format_element(c) for c in self.coeffs)

    @classmethod
    def parse(cls, field: FieldSpec, text: str) -> "Poly":
        text = text.strip()
        if field.k > 1 and "[" in text:
            parts, depth, cur = [], 0, ""
            for ch in text:
                if ch == "," and depth == 0:
                    parts.append(cur)
                    cur = ""
                    continue
                if ch == "[":
                    depth += 1
                if ch == "]":
                    depth -= 1
                cur += ch
            parts.append(cur)
        else:
            parts = text.split(",")
        return cls(field, (field.parse_element(p) for p in parts))


# ---------------------------------------------------------------------------
# gcd and modular powers

def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd; gcd(f, 0) is the monic normalization of f, gcd(0, 0) = 0."""
    while not g.is_zero:
        f, g = g, f % g
    if f.degree == 0:
        return Poly.one(f.field)
    return f.monic()


def pow_mod(base: Poly, e: int, mod: Poly) -> Poly:
    if e < 0:
        raise ValueError("negative exponent")
    result = Poly.one(base.field) % mod
    base = base % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        e >>= 1
    return result


# ---------------------------------------------------------------------------
# irreducibility (Rabin) and cached irreducible lists

def _prime_factors(n: int) -> list:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: Poly) -> bool:
    """Rabin test: t^{q^n} = t mod f and gcd(t^{q^{n/l}} - t, f) = 1 for primes l | n."""
    if not f.is_monic or f.degree < 1:
        raise ValueError("irreducibility test needs a monic polynomial of degree >= 1")
    n = f.degree
    if n == 1:
        return True
    q = f.field.q
    t = Poly.t(f.field)
    check_at = {n // ell for ell in _prime_factors(n)}
    h = t
    for j in range(1, n + 1):
        h = pow_mod(h, q, f)  # h = t^{q^j} mod f
        if j in check_at and poly_gcd(h - t, f).degree != 0:
            return False
    return h == t


@lru_cache(maxsize=None)
def irreducible_polys(field: FieldSpec, d: int) -> tuple:
    """All monic irreducibles of degree d, in enumeration order."""
    if d < 1:
        return ()
    if d == 1:
        return tuple(Poly(field, (c, 1)) for c in field.elements())
    return tuple(f for f in enumerate_monic(field, d) if is_irreducible(f))


# ---------------------------------------------------------------------------
# factorization

@dataclass(frozen=True)
class Factorization:
    field: "FieldSpec"
    unit: int  # field element code
    factors: tuple  # ((Poly, multiplicity), ...) sorted by (degree, coeffs)

    def reassemble(self) -> Poly:
        out = Poly.constant(self.field, self.unit)
        for w, m in self.factors:
            for _ in range(m):
                out = out * w
        return out


def _pth_root(f: Poly) -> Poly:
    # f with zero derivative is g(t^p); coefficient p-th root is c^(q/p)
    F = f.field
    e = F.q // F.p
    return Poly(F, (F.pow(f[i * F.p], e) for i in range(f.degree // F.p + 1)))


def _trial_poly(field, counter: int) -> Poly:
    digits = []
    w = counter
    while w:
        digits.append(w % field.q)
        w //= field.q
    return Poly(field, digits)


def _equal_degree_split(f: Poly, d: int) -> list:
    """Split a monic product of distinct degree-d irreducibles.

    Trial elements come from a counter so runs are reproducible.
    """
    if f.degree == d:
        return [f]
    F = f.field
    one = Poly.one(F)
    counter = F.q  # first trial of degree >= 1
    while True:
        r = _trial_poly(F, counter) % f
        counter += 1
        if r.degree < 1:
            continue
        if F.p == 2:
            m = d * F.k
            s, acc = r, r
            for _ in range(m - 1):
                s = (s * s) % f
                acc = acc + s
            g = poly_gcd(acc, f)
        else:
            g = poly_gcd(pow_mod(r, (F.q**d - 1) // 2, f) - one, f)
        if 0 < g.degree < f.degree:
            return _equal_degree_split(g, d) + _equal_degree_split(f // g, d)


def _factor_squarefree(f: Poly) -> list:
    """Distinct-degree then equal-degree factorization of a monic squarefree f."""
    out = []
    F = f.field
    t = Poly.t(F)
    h = t
    d = 0
    while f.degree > 0:
        d += 1
        if 2 * d > f.degree:
            out.append(f)
            break
        h = pow_mod(h, F.q, f)
        g = poly_gcd(h - t, f)
        if g.degree > 0:
            out.extend(_equal_degree_split(g, d))
            f = f // g
            h = h % f
    return out


def factorize(f: Poly) -> Factorization:
    """Full factorization into monic irreducibles times a unit."""
    if f.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    unit = f.leading
    factors = {}

    def work(g: Poly, mult: int):
        if g.degree < 1:
            return
        dg = g.derivative()
        if dg.is_zero:
            work(_pth_root(g), mult * f.field.p)
            return
        squarefree = g // poly_gcd(g, dg)
        for w in _factor_squarefree(squarefree):
            m = 0
            while True:
                quo, rem = divmod(g, w)
                if not rem.is_zero:
                    break
                g = quo
                m += 1
            factors[w] = factors.get(w, 0) + mult * m
        if g.degree > 0:
            work(g, mult)  # leftover is a p-th power

    work(f.monic(), 1)
    ordered = tuple(sorted(factors.items(), key=lambda fm: (fm[0].degree, fm[0].coeffs)))
    return Factorization(field=f.field, unit=unit, factors=ordered)


def mobius(f: Poly) -> int:
    """(-1)^(number of distinct irreducible factors) if squarefree, else 0."""
    if not f.is_monic:
        raise ValueError("mobius is defined for monic polynomials")
    if f.degree == 0:
        return 1
    fac = factorize(f)
    if any(m > 1 for _, m in fac.factors):
        return 0
    return -1 if len(fac.factors) % 2 else 1


def euler_phi(f: Poly) -> int:
    """Size of (F_q[t]/(f))^x, exactly: |f| * prod over factors (1 - 1/|w|)."""
    if not f.is_monic:
        raise ValueError("euler_phi is defined for monic polynomials")
    if f.degree == 0:
        return 1
    q = f.field.q
    out = 1
    for w, m in factorize(f).factors:
        d = w.degree
        out *= q ** (d * (m - 1)) * (q**d - 1)
    return out


# ---------------------------------------------------------------------------
# counting and enumeration

def int_mobius(n: int) -> int:
    """Integer Mobius function by trial factorization."""
    if n < 1:
        raise ValueError("int_mobius needs n >= 1")
    out = 1
    f = 2
    while f * f <= n:
        if n % f == 0:
            n //= f
            if n % f == 0:
                return 0
            out = -out
        f += 1
    if n > 1:
        out = -out
    return out


def _divisors(n: int) -> list:
    return [d for d in range(1, n + 1) if n % d == 0]


def prime_count(q, n: int) -> int:
    """pi(n) = (1/n) sum_{d|n} mu(n/d) q^d, exact in big integers."""
    if isinstance(q, FieldSpec):
        q = q.q
    if n < 1:
        raise ValueError("prime_count needs n >= 1")
    total = sum(int_mobius(n // d) * q**d for d in _divisors(n))
    assert total % n == 0
    return total // n


def enumerate_monic(field: FieldSpec, n: int, allowed=None):
    """Monic degree-n polynomials whose n non-leading coefficients lie in `allowed`.

    Yields in lexicographic order of the coefficient vector (c_0, ..., c_{n-1}).
    """
    if n < 0:
        raise ValueError("degree must be >= 0")
    if allowed is None:
        allowed = tuple(field.elements())
    else:
        allowed = tuple(sorted(allowed))
        if not allowed:
            raise ValueError("allowed coefficient set must be nonempty")
    if n == 0:
        yield Poly.one(field)
        return
    for lower in product(allowed, repeat=n):
        yield Poly(field, lower + (1,))
