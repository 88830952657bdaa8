"""Arithmetic in the finite field F_q (q = p^k), its trace map and additive character.

Elements are stored as integer codes in [0, q): an element with polynomial-basis
coordinates (c_0, ..., c_{k-1}) relative to the defining modulus has code
sum_i c_i * p^i.  For prime fields the code is just the residue, so ordinary
integers double as field elements.  All operations keep elements fully reduced.
"""

from __future__ import annotations

import cmath
from functools import lru_cache

import numpy as np

# Extension fields larger than this would need prohibitively large op tables.
_TABLE_LIMIT = 4096


class FieldError(ValueError):
    """Invalid field construction or mixed-field operands."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# Small helpers on F_p coefficient lists, used only to pick/validate the
# defining modulus of an extension field (before FieldSpec exists).

def _fp_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _fp_trim(out)


def _fp_mod(a, m, p):
    # m monic
    a = list(a)
    dm = len(m) - 1
    while len(a) > dm:
        c = a[-1]
        if c:
            for j in range(dm):
                a[len(a) - 1 - dm + j] = (a[len(a) - 1 - dm + j] - c * m[j]) % p
        a.pop()
    return _fp_trim(a)


def _fp_monic_polys(p, d):
    """All monic F_p coefficient lists of degree d, lexicographic in the code."""
    for v in range(p**d):
        coeffs = []
        w = v
        for _ in range(d):
            coeffs.append(w % p)
            w //= p
        coeffs.append(1)
        yield coeffs


def _fp_irreducible(m, p):
    """Trial-division irreducibility of a monic F_p polynomial."""
    d = len(m) - 1
    if d < 1:
        return False
    for e in range(1, d // 2 + 1):
        for g in _fp_monic_polys(p, e):
            if not _fp_mod(m, g, p):
                return False
    return True


@lru_cache(maxsize=None)
def default_modulus(p: int, k: int) -> tuple:
    """Lexicographically smallest (by element code) monic irreducible of degree k over F_p."""
    for m in _fp_monic_polys(p, k):
        if _fp_irreducible(m, p):
            return tuple(m)
    raise FieldError(f"no irreducible modulus of degree {k} over F_{p}")  # unreachable


class FieldSpec:
    """The field F_q with q = p^k elements, with all scalar ops on element codes."""

    def __init__(self, p: int, k: int = 1, modulus=None):
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if k < 1:
            raise FieldError("extension degree must be >= 1")
        self.p = p
        self.k = k
        self.q = p**k
        if k == 1:
            if modulus is not None:
                raise FieldError("modulus only applies to extension fields")
            self.modulus = None
        else:
            if self.q > _TABLE_LIMIT:
                raise FieldError(f"extension field of size {self.q} unsupported")
            if modulus is None:
                modulus = default_modulus(p, k)
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise FieldError("modulus must be monic of degree k")
            if not _fp_irreducible(list(modulus), p):
                raise FieldError("modulus is reducible over the prime field")
            self.modulus = modulus
        self._mul_table = None
        self._add_table = None
        self._inv_table = None
        self._trace_table = None
        self._psi_table = None

    # -- identity / serialization -------------------------------------------

    def _key(self):
        return (self.p, self.k, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __reduce__(self):
        return (FieldSpec, (self.p, self.k, self.modulus))

    def __repr__(self):
        return f"FieldSpec({self.spec_string()!r})"

    def spec_string(self) -> str:
        """`p^k:m_0,...,m_k` wire form, modulus omitted for prime fields."""
        if self.k == 1:
            return str(self.p)
        mods = ",".join(str(c) for c in self.modulus)
        return f"{self.p}^{self.k}:{mods}"

    @classmethod
    def from_string(cls, text: str) -> "FieldSpec":
        text = text.strip()
        if "^" not in text:
            return cls.from_q(int(text))
        head, _, tail = text.partition(":")
        ps, _, ks = head.partition("^")
        p, k = int(ps), int(ks)
        modulus = tuple(int(c) for c in tail.split(",")) if tail else None
        return cls(p, k, modulus)

    @classmethod
    def from_q(cls, q: int, modulus=None) -> "FieldSpec":
        """Build F_q from the prime power q alone."""
        if q < 2:
            raise FieldError(f"{q} is not a prime power")
        p = q
        for f in range(2, q):
            if f * f > q:
                break
            if q % f == 0:
                p = f
                break
        k = 0
        w = q
        while w % p == 0 and w > 1:
            w //= p
            k += 1
        if w != 1 or p**k != q:
            raise FieldError(f"{q} is not a prime power")
        return cls(p, k, modulus)

    # -- element coding ------------------------------------------------------

    def elements(self) -> range:
        return range(self.q)

    def coords(self, a: int) -> tuple:
        """Polynomial-basis coordinates (c_0, ..., c_{k-1}) of an element code."""
        self._check(a)
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def encode(self, coords) -> int:
        a = 0
        for c in reversed(list(coords)):
            a = a * self.p + (c % self.p)
        return a

    def _check(self, a: int):
        if not 0 <= a < self.q:
            raise FieldError(f"element code {a} out of range for {self.spec_string()}")

    def format_element(self, a: int) -> str:
        if self.k == 1:
            return str(a)
        return "[" + " ".join(str(c) for c in self.coords(a)) + "]"

    def parse_element(self, text: str) -> int:
        text = text.strip()
        if text.startswith("["):
            coords = [int(c) for c in text.strip("[]").split()]
            if len(coords) > self.k:
                raise FieldError(f"too many coordinates in {text!r}")
            a = self.encode(coords)
        else:
            a = int(text)
        self._check(a)
        return a

    # -- arithmetic ----------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self.add_table[a, b].item()

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self.encode((-c) % self.p for c in self.coords(a))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        return self.mul_table[a, b].item()

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        """Power by repeated squaring; negative exponents invert first."""
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    # -- trace and characters ------------------------------------------------

    def trace(self, a: int) -> int:
        """Trace down to F_p, returned as a residue in [0, p)."""
        if self.k == 1:
            self._check(a)
            return a
        return int(self.trace_table[a])

    def psi(self, a: int) -> complex:
        """The additive character exp(2*pi*i*trace(a)/p)."""
        if self._psi_table is None:
            roots = [cmath.exp(2j * cmath.pi * r / self.p) for r in range(self.p)]
            self._psi_table = [roots[self.trace(x)] for x in self.elements()]
        return self._psi_table[a]

    # -- dense op tables (extension fields; also reused by the census) -------

    def _raw_mul(self, a: int, b: int) -> int:
        prod = _fp_mul(list(self.coords(a)), list(self.coords(b)), self.p)
        return self.encode(_fp_mod(prod, list(self.modulus), self.p))

    @property
    def mul_table(self) -> np.ndarray:
        if self._mul_table is None:
            q = self.q
            t = np.zeros((q, q), dtype=np.int64)
            for a in range(1, q):
                for b in range(a, q):
                    v = self._raw_mul(a, b)
                    t[a, b] = v
                    t[b, a] = v
            self._mul_table = t
        return self._mul_table

    @property
    def add_table(self) -> np.ndarray:
        if self._add_table is None:
            q = self.q
            if self.p == 2:
                codes = np.arange(q, dtype=np.int64)
                self._add_table = codes[:, None] ^ codes[None, :]
            else:
                t = np.zeros((q, q), dtype=np.int64)
                for a in range(q):
                    ca = self.coords(a)
                    for b in range(q):
                        cb = self.coords(b)
                        t[a, b] = self.encode((x + y) % self.p for x, y in zip(ca, cb))
                self._add_table = t
        return self._add_table

    @property
    def inv_table(self) -> np.ndarray:
        if self._inv_table is None:
            t = np.zeros(self.q, dtype=np.int64)
            for a in range(1, self.q):
                t[a] = self.pow(a, self.q - 2)
            self._inv_table = t
        return self._inv_table

    @property
    def trace_table(self) -> np.ndarray:
        if self._trace_table is None:
            t = np.zeros(self.q, dtype=np.int64)
            for a in self.elements():
                acc, frob = 0, a
                for _ in range(self.k):
                    acc = self.add(acc, frob)
                    frob = self.pow(frob, self.p)
                if acc >= self.p:
                    raise FieldError("trace left the prime subfield")  # sanity
                t[a] = acc
            self._trace_table = t
        return self._trace_table


@lru_cache(maxsize=None)
def get_field(p: int, k: int = 1, modulus=None) -> FieldSpec:
    """Interned FieldSpec constructor, so worker processes share table work."""
    return FieldSpec(p, k, modulus)
