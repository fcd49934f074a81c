"""Exact arithmetic in cyclotomic fields Q(zeta_n).

A scalar is a polynomial in zeta_n with rational coefficients, reduced
modulo the n-th cyclotomic polynomial and stored on the power basis
zeta_n^0 .. zeta_n^(phi(n)-1).  Mixed conductors are promoted to the lcm
before any arithmetic, so every operation is closed and exact.  There is
no floating point anywhere; an optional decimal rendering exists for
display only.
"""

from fractions import Fraction
from functools import lru_cache
import math


class CycDomainError(ValueError):
    pass


class CycDivisionError(ZeroDivisionError):
    def __init__(self, num, den):
        super().__init__(f"division by zero: {num!r} / {den!r}")
        self.num = num
        self.den = den


def euler_phi(n):
    if n < 1:
        raise CycDomainError(f"conductor must be positive, got {n}")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_divmod(a, b):
    # exact division in Q[x], coefficients ascending
    a = [Fraction(x) for x in a]
    b = _poly_trim([Fraction(x) for x in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    r = list(a)
    while len(_poly_trim(r)) >= len(b):
        r = _poly_trim(r)
        shift = len(r) - len(b)
        coef = r[-1] / b[-1]
        q[shift] = coef
        for i, bc in enumerate(b):
            r[shift + i] -= coef * bc
    return q, _poly_trim(r)


@lru_cache(maxsize=None)
def cyclotomic_poly(n):
    """Coefficients (ascending, Fractions) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise CycDomainError(f"conductor must be positive, got {n}")
    poly = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, cyclotomic_poly(d))
            assert not rem
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(n):
    """zeta_n^e for e in range(2n), each as a coefficient tuple of length phi(n)."""
    phi = euler_phi(n)
    mod = cyclotomic_poly(n)
    table = []
    cur = [Fraction(0)] * phi
    if phi > 0:
        cur[0] = Fraction(1)
    for _ in range(2 * n + 1):
        table.append(tuple(cur))
        # multiply by x, reduce by mod (monic of degree phi)
        nxt = [Fraction(0)] + cur[:]
        if len(nxt) > phi:
            top = nxt.pop()
            if top:
                for i in range(phi):
                    nxt[i] -= top * mod[i]
        nxt += [Fraction(0)] * (phi - len(nxt))
        cur = nxt
    return tuple(table)


def _reduce_poly(n, coeffs):
    """Reduce an arbitrary-length coefficient list mod the n-th cyclotomic polynomial."""
    phi = euler_phi(n)
    table = _power_table(n)
    out = [Fraction(0)] * phi
    for e, c in enumerate(coeffs):
        if not c:
            continue
        if e < phi:
            out[e] += c
        else:
            pw = table[e] if e < len(table) else None
            if pw is None:
                # fall back: split exponent using zeta^n = 1
                pw = table[e % n]
            for i, t in enumerate(pw):
                if t:
                    out[i] += c * t
    return out


class Cyc:
    """An element of Q(zeta_n), canonical on the power basis."""

    __slots__ = ("n", "c")

    def __init__(self, n, coeffs):
        phi = euler_phi(n)
        coeffs = tuple(Fraction(x) for x in coeffs)
        if len(coeffs) != phi:
            raise CycDomainError(
                f"need {phi} coefficients for conductor {n}, got {len(coeffs)}")
        self.n = n
        self.c = coeffs

    # -- constructors ------------------------------------------------------

    @classmethod
    def rational(cls, x):
        return cls(1, (Fraction(x),))

    @classmethod
    def zeta(cls, n, k=1):
        """zeta_n^k, reduced."""
        if n < 1:
            raise CycDomainError(f"order of the root of unity must be >= 1, got {n}")
        k %= n
        coeffs = [Fraction(0)] * (k + 1)
        coeffs[k] = Fraction(1)
        return cls(n, _reduce_poly(n, coeffs))

    @classmethod
    def _coerce(cls, x):
        if isinstance(x, Cyc):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.rational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into a cyclotomic scalar")

    # -- structure ---------------------------------------------------------

    def embed(self, m):
        """Image of self in Q(zeta_m); requires n | m."""
        if m % self.n:
            raise CycDomainError(f"no embedding of conductor {self.n} into {m}")
        if m == self.n:
            return self
        step = m // self.n
        big = [Fraction(0)] * (len(self.c) * step + 1)
        for i, coef in enumerate(self.c):
            if coef:
                big[i * step] += coef
        return Cyc(m, _reduce_poly(m, big))

    @staticmethod
    def _match(a, b):
        if a.n == b.n:
            return a, b, a.n
        m = a.n * b.n // math.gcd(a.n, b.n)
        return a.embed(m), b.embed(m), m

    def is_zero(self):
        return all(x == 0 for x in self.c)

    def is_rational(self):
        return all(x == 0 for x in self.c[1:])

    def as_fraction(self):
        if not self.is_rational():
            raise CycDomainError(f"{self} is not rational")
        return self.c[0]

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        try:
            other = Cyc._coerce(other)
        except TypeError:
            return NotImplemented
        a, b, m = Cyc._match(self, other)
        return Cyc(m, tuple(x + y for x, y in zip(a.c, b.c)))

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.n, tuple(-x for x in self.c))

    def __sub__(self, other):
        try:
            other = Cyc._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Cyc._coerce(other) - self

    def __mul__(self, other):
        try:
            other = Cyc._coerce(other)
        except TypeError:
            return NotImplemented
        a, b, m = Cyc._match(self, other)
        if b.is_rational():
            q = b.c[0]
            return Cyc(m, tuple(x * q for x in a.c))
        if a.is_rational():
            q = a.c[0]
            return Cyc(m, tuple(q * y for y in b.c))
        prod = [Fraction(0)] * (len(a.c) + len(b.c) - 1)
        for i, x in enumerate(a.c):
            if not x:
                continue
            for j, y in enumerate(b.c):
                if y:
                    prod[i + j] += x * y
        return Cyc(m, _reduce_poly(m, prod))

    __rmul__ = __mul__

    def inv(self):
        if self.is_zero():
            raise CycDivisionError(Cyc.rational(1), self)
        if self.is_rational():
            return Cyc(self.n, (1 / self.c[0],) + self.c[1:])
        # extended Euclid in Q[x] against the cyclotomic polynomial
        mod = list(cyclotomic_poly(self.n))
        r0, r1 = mod, _poly_trim(self.c)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while True:
            q, r = _poly_divmod(r0, r1)
            if not r:
                break
            # s = s0 - q*s1
            s = list(s0) + [Fraction(0)] * max(0, len(q) + len(s1) - 1 - len(s0))
            for i, qc in enumerate(q):
                if not qc:
                    continue
                for j, sc in enumerate(s1):
                    if sc:
                        s[i + j] -= qc * sc
            r0, r1, s0, s1 = r1, r, s1, _poly_trim(s) or [Fraction(0)]
        lead = r1[-1] if r1 else None
        if lead is None or len(r1) != 1:
            raise CycDivisionError(Cyc.rational(1), self)
        coeffs = [x / lead for x in s1]
        return Cyc(self.n, _reduce_poly(self.n, coeffs))

    def __truediv__(self, other):
        try:
            other = Cyc._coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_zero():
            raise CycDivisionError(self, other)
        return self * other.inv()

    def __rtruediv__(self, other):
        return Cyc._coerce(other) / self

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        out = Cyc.rational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        try:
            other = Cyc._coerce(other)
        except TypeError:
            return NotImplemented
        a, b, _ = Cyc._match(self, other)
        return a.c == b.c

    def __bool__(self):
        return not self.is_zero()

    __hash__ = None  # mutable-free but equality crosses conductors; do not key on these

    # -- output ------------------------------------------------------------

    def to_json(self):
        return {"conductor": self.n,
                "coeffs": [f"{x.numerator}/{x.denominator}" for x in self.c]}

    def __repr__(self):
        if self.is_rational():
            return str(self.c[0])
        parts = []
        for e, x in enumerate(self.c):
            if not x:
                continue
            if e == 0:
                parts.append(str(x))
            else:
                head = "" if x == 1 else ("-" if x == -1 else f"{x}*")
                parts.append(f"{head}z{self.n}^{e}" if e > 1 else f"{head}z{self.n}")
        return " + ".join(parts) if parts else "0"

    def approx(self):
        """Display-only complex approximation."""
        import cmath
        z = cmath.exp(2j * cmath.pi / self.n)
        return sum(float(x) * z ** e for e, x in enumerate(self.c))


ZERO = Cyc.rational(0)
ONE = Cyc.rational(1)
I = Cyc.zeta(4)
HALF = Cyc.rational(Fraction(1, 2))


def root_of_unity(n, k=1):
    """zeta_n^k as a canonical scalar; errors if n < 1."""
    return Cyc.zeta(n, k)


def field_arith(a, b, op):
    """Dispatch arithmetic by name; exists for the CLI/config surface."""
    a, b = Cyc._coerce(a), Cyc._coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise CycDomainError(f"unknown operation {op!r}")


def multiplicative_order(x, bound=1000):
    """Order of x in the unit group, or None if none found below bound."""
    acc = Cyc.rational(1)
    for k in range(1, bound + 1):
        acc = acc * x
        if acc == ONE:
            return k
    return None
