"""Coefficient rings: ZZ, ZZ/p^e, GF(p) and GF(p^k).

Elements are plain Python ints for ZZ, ZZ/p^e and GF(p), and tuples of
ints (coefficients of the generator polynomial, low degree first) for
GF(p^k).  Rings are immutable and hashable; all element operations are
pure functions on the ring object.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence, Tuple


class RingError(ValueError):
    pass


# ---------------------------------------------------------------------------
# primality


_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 3.3 * 10^24, error < 2^-64 above."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # these bases are a deterministic witness set for n < 3.3 * 10^24
    bases = _SMALL_PRIMES if n < 3317044064679887385961981 else _SMALL_PRIMES * 3
    for a in bases:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# univariate polynomials over GF(p), used for GF(p^k) moduli and in the
# field-tower code.  Polynomials are tuples of ints in [0, p), low degree
# first, with no trailing zeros.


def fp_trim(c: Sequence[int], p: int) -> Tuple[int, ...]:
    c = [x % p for x in c]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def fp_add(a, b, p):
    n = max(len(a), len(b))
    return fp_trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                    for i in range(n)], p)


def fp_sub(a, b, p):
    n = max(len(a), len(b))
    return fp_trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)
                    for i in range(n)], p)


def fp_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return fp_trim(out, p)


def fp_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    a = list(a)
    binv = pow(b[-1], -1, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        d = len(a) - len(b)
        c = a[-1] * binv % p
        q[d] = c
        for i, y in enumerate(b):
            a[d + i] = (a[d + i] - c * y) % p
        while a and a[-1] == 0:
            a.pop()
    return fp_trim(q, p), fp_trim(a, p)


def fp_mod(a, b, p):
    return fp_divmod(a, b, p)[1]


def fp_gcd(a, b, p):
    while b:
        a, b = b, fp_mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = fp_trim([x * inv for x in a], p)
    return a


def fp_powmod(a, n: int, mod, p):
    result = (1,)
    a = fp_mod(a, mod, p)
    while n:
        if n & 1:
            result = fp_mod(fp_mul(result, a, p), mod, p)
        a = fp_mod(fp_mul(a, a, p), mod, p)
        n >>= 1
    return result


def fp_is_squarefree(f, p) -> bool:
    deriv = fp_trim([i * f[i] for i in range(1, len(f))], p)
    if not deriv:
        return False
    return fp_gcd(f, deriv, p) == (1,)


def fp_is_irreducible(f, p) -> bool:
    """Irreducibility over GF(p) via the x^(p^d) - x ladder."""
    n = len(f) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    x = (0, 1)
    # x^(p^n) == x mod f
    if fp_powmod(x, p ** n, f, p) != fp_mod(x, f, p):
        return False
    for q in sorted({d for d in range(2, n + 1) if n % d == 0 and is_prime(d)}):
        h = fp_sub(fp_powmod(x, p ** (n // q), f, p), x, p)
        if fp_gcd(h, f, p) != (1,):
            return False
    return True


def find_irreducible(p: int, k: int) -> Tuple[int, ...]:
    """First monic irreducible of degree k over GF(p), scanning coefficient
    vectors (c_0, ..., c_{k-1}) in ascending lexicographic order."""
    if k == 1:
        return (0, 1)
    coeffs = [0] * k
    while True:
        f = tuple(coeffs) + (1,)
        if fp_is_irreducible(f, p):
            return f
        i = 0
        while i < k and coeffs[i] == p - 1:
            coeffs[i] = 0
            i += 1
        if i == k:
            raise RingError(f"no irreducible of degree {k} over GF({p})")
        coeffs[i] += 1


# ---------------------------------------------------------------------------
# rings


class CoefficientRing:
    """One of ZZ, ZZ/p^e, GF(p), GF(p^k).

    kind is "ZZ", "Zmod", "GF" or "GFext".
    """

    __slots__ = ("kind", "p", "e", "k", "modulus", "m")

    def __init__(self, kind, p=None, e=None, k=None, modulus=None):
        self.kind = kind
        self.p = p
        self.e = e
        self.k = k
        self.modulus = modulus
        self.m = p ** e if kind == "Zmod" else None

    # -- constructors

    @staticmethod
    def ZZ() -> "CoefficientRing":
        return CoefficientRing("ZZ")

    @staticmethod
    def Zmod(p: int, e: int) -> "CoefficientRing":
        if not is_prime(p):
            raise RingError(f"{p} is not prime")
        if e < 1:
            raise RingError("exponent must be >= 1")
        if e == 1:
            return CoefficientRing.GF(p)
        return CoefficientRing("Zmod", p=p, e=e)

    @staticmethod
    def GF(p: int, k: int = 1, modulus: Optional[Sequence[int]] = None):
        if not is_prime(p):
            raise RingError(f"{p} is not prime")
        if k == 1:
            return CoefficientRing("GF", p=p, e=1, k=1)
        if modulus is None:
            modulus = find_irreducible(p, k)
        modulus = fp_trim(modulus, p)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise RingError("modulus must be monic of degree k")
        if not fp_is_irreducible(modulus, p):
            raise RingError("modulus is not irreducible over GF(p)")
        return CoefficientRing("GFext", p=p, e=1, k=k, modulus=modulus)

    # -- structure

    def is_field(self) -> bool:
        return self.kind in ("GF", "GFext")

    def __eq__(self, other):
        return (isinstance(other, CoefficientRing)
                and self.kind == other.kind and self.p == other.p
                and self.e == other.e and self.k == other.k
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.kind, self.p, self.e, self.k, self.modulus))

    def __repr__(self):
        if self.kind == "ZZ":
            return "ZZ"
        if self.kind == "Zmod":
            return f"ZZ/{self.p}^{self.e}"
        if self.kind == "GF":
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"

    # -- element operations

    def coerce(self, x):
        if self.kind == "ZZ":
            return int(x)
        if self.kind in ("Zmod", "GF"):
            mod = self.m if self.kind == "Zmod" else self.p
            return int(x) % mod
        if isinstance(x, tuple):
            return fp_trim(x, self.p)
        return fp_trim((int(x),), self.p)

    def zero(self):
        return () if self.kind == "GFext" else 0

    def one(self):
        return (1,) if self.kind == "GFext" else 1

    def is_zero(self, a) -> bool:
        return a == self.zero()

    def add(self, a, b):
        if self.kind == "ZZ":
            return a + b
        if self.kind == "GFext":
            return fp_add(a, b, self.p)
        return (a + b) % (self.m or self.p)

    def sub(self, a, b):
        if self.kind == "ZZ":
            return a - b
        if self.kind == "GFext":
            return fp_sub(a, b, self.p)
        return (a - b) % (self.m or self.p)

    def neg(self, a):
        if self.kind == "ZZ":
            return -a
        if self.kind == "GFext":
            return fp_trim([-x for x in a], self.p)
        return (-a) % (self.m or self.p)

    def mul(self, a, b):
        if self.kind == "ZZ":
            return a * b
        if self.kind == "GFext":
            return fp_mod(fp_mul(a, b, self.p), self.modulus, self.p)
        return (a * b) % (self.m or self.p)

    def mul_int(self, a, n: int):
        return self.mul(a, self.coerce(n))

    def is_unit(self, a) -> bool:
        if self.is_zero(a):
            return False
        if self.kind == "ZZ":
            return a in (1, -1)
        if self.kind == "Zmod":
            return a % self.p != 0
        return True

    def inv(self, a):
        if not self.is_unit(a):
            raise RingError(f"{a!r} is not a unit in {self!r}")
        if self.kind == "ZZ":
            return a
        if self.kind in ("Zmod", "GF"):
            return pow(a, -1, self.m or self.p)
        # extended euclid in GF(p)[t]
        r0, r1 = self.modulus, a
        s0, s1 = (), (1,)
        while r1:
            q, r = fp_divmod(r0, r1, self.p)
            r0, r1 = r1, r
            s0, s1 = s1, fp_sub(s0, fp_mul(q, s1, self.p), self.p)
        c = pow(r0[-1], -1, self.p)
        return fp_mod(fp_trim([c * x for x in s0], self.p), self.modulus, self.p)

    def unit_val(self, a):
        """Split a nonzero element as unit * p^v (ZZ: sign * |a|, v unused).

        Returns (v, u) with a = u * p^v for chain rings; for ZZ returns
        (0, sign); for fields (0, a).
        """
        if self.is_zero(a):
            raise RingError("zero has no unit part")
        if self.kind == "ZZ":
            return 0, (1 if a > 0 else -1)
        if self.kind == "Zmod":
            v = 0
            b = a
            while b % self.p == 0:
                b //= self.p
                v += 1
            return v, b % self.m
        return 0, a

    def divides(self, a, b) -> bool:
        """Whether a divides b exactly (a nonzero)."""
        if self.is_field():
            return not self.is_zero(a)
        if self.kind == "ZZ":
            return b % a == 0
        va, _ = self.unit_val(a)
        if self.is_zero(b):
            return True
        vb, _ = self.unit_val(b)
        return va <= vb

    def exact_div(self, b, a):
        """b / a, assuming divides(a, b)."""
        if self.is_field():
            return self.mul(b, self.inv(a))
        if self.kind == "ZZ":
            q, r = divmod(b, a)
            if r:
                raise RingError(f"{a} does not divide {b}")
            return q
        va, ua = self.unit_val(a)
        if self.is_zero(b):
            return 0
        return (b // self.p ** va) * pow(ua, -1, self.m) % self.m

    def element_repr(self, a) -> str:
        if self.kind != "GFext":
            return str(a)
        if not a:
            return "0"
        parts = []
        for i in range(len(a) - 1, -1, -1):
            c = a[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*g" if c != 1 else "g")
            else:
                parts.append(f"{c}*g^{i}" if c != 1 else f"g^{i}")
        return "(" + " + ".join(parts) + ")"


ZZ = CoefficientRing.ZZ()
