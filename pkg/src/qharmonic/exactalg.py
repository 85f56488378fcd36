"""Exact arithmetic: integer polynomials in q, the field Q(q), cyclotomic
coefficients, and deterministic nullspaces over these fields.

Everything here is immutable. Field elements used by the rest of the
package are ``Fraction`` (a specialized q), ``RatFuncQ`` (formal q) and
``CycElem`` (values of characters).
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Sequence


class PoleAtQ0(ArithmeticError):
    """The denominator of a rational function vanishes at the requested q."""


class OrderMismatch(ValueError):
    """Cyclotomic elements of different root-of-unity orders were combined."""


# --------------------------------------------------------------------------
# Integer polynomials in q
# --------------------------------------------------------------------------


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class QPoly:
    """Dense integer polynomial in q; ``coeffs[i]`` is the coefficient of q^i."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable[int] = ()):
        self.c = _trim(int(a) for a in coeffs)

    @classmethod
    def _raw(cls, c: tuple) -> "QPoly":
        obj = object.__new__(cls)
        obj.c = c
        return obj

    @classmethod
    def q(cls) -> "QPoly":
        return cls._raw((0, 1))

    @classmethod
    def const(cls, a: int) -> "QPoly":
        return cls._raw((a,) if a else ())

    @property
    def coeffs(self) -> list[int]:
        return list(self.c)

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    @property
    def lc(self) -> int:
        return self.c[-1] if self.c else 0

    def is_const(self) -> bool:
        return len(self.c) <= 1

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, QPoly):
            return self.c == other.c
        if isinstance(other, int):
            return self.c == ((other,) if other else ())
        return NotImplemented

    def __hash__(self):
        return hash(("QPoly", self.c))

    def __repr__(self):
        return f"QPoly({list(self.c)})"

    def __str__(self):
        return poly_to_str(self)

    def __neg__(self):
        return QPoly._raw(tuple(-a for a in self.c))

    def __add__(self, other):
        if isinstance(other, int):
            other = QPoly.const(other)
        elif not isinstance(other, QPoly):
            return NotImplemented
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        if len(a) == len(b):
            return QPoly._raw(_trim(out))
        return QPoly._raw(tuple(out))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = QPoly.const(other)
        elif not isinstance(other, QPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return QPoly._raw(())
            return QPoly._raw(tuple(a * other for a in self.c))
        if not isinstance(other, QPoly):
            return NotImplemented
        return QPoly._raw(_pmul(self.c, other.c))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = QPoly._raw((1,))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __call__(self, x):
        acc = 0
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def content(self) -> int:
        g = 0
        for a in self.c:
            g = math.gcd(g, a)
            if g == 1:
                break
        return g

    def divexact_int(self, k: int) -> "QPoly":
        return QPoly._raw(tuple(a // k for a in self.c))

    def divexact(self, other: "QPoly") -> "QPoly":
        """Quotient in Z[q]; raises ArithmeticError if the division is not exact."""
        res = _pdivexact(self.c, other.c)
        if res is None:
            raise ArithmeticError(f"{other} does not divide {self}")
        return QPoly._raw(res)


def _pmul(a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return ()
    if len(a) == 1:
        k = a[0]
        return tuple(k * v for v in b)
    if len(b) == 1:
        k = b[0]
        return tuple(k * v for v in a)
    if len(a) > 24 and len(b) > 24:
        return _kronecker_mul(a, b)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _kronecker_mul(a: tuple, b: tuple) -> tuple:
    # pack into one big integer, multiply, unpack with balanced digits
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    bits = bound.bit_length() + 2
    A = _pack(a, bits)
    B = _pack(b, bits)
    return _unpack(A * B, bits, len(a) + len(b) - 1)


def _pack(c, bits):
    acc = 0
    for v in reversed(c):
        acc = (acc << bits) + v
    return acc


def _unpack(N, bits, length):
    mask = (1 << bits) - 1
    half = 1 << (bits - 1)
    out = []
    for _ in range(length):
        d = N & mask
        N >>= bits
        if d >= half:
            d -= 1 << bits
            N += 1
        out.append(d)
    return _trim(out)


def _pdivexact(a: tuple, b: tuple):
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if not a:
        return ()
    if len(b) == 1:
        k = b[0]
        if any(v % k for v in a):
            return None
        return tuple(v // k for v in a)
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    n = len(r) - 1 - db
    if n < 0:
        return None
    quo = [0] * (n + 1)
    for i in range(n, -1, -1):
        t = r[i + db]
        if t:
            qv, rem = divmod(t, lb)
            if rem:
                return None
            quo[i] = qv
            for j in range(db + 1):
                r[i + j] -= qv * b[j]
    if any(r[:db]):
        return None
    return tuple(quo)


def _prem(a: list, b: tuple) -> list:
    """Pseudo-remainder of a by b (lists of ints, low degree first)."""
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [v * lb for v in r]
        for j in range(db + 1):
            r[shift + j] -= lr * b[j]
        while r and r[-1] == 0:
            r.pop()
    return r


def _primitive(c: tuple) -> tuple:
    g = 0
    for a in c:
        g = math.gcd(g, a)
        if g == 1:
            break
    if c and c[-1] < 0:
        g = -g
    if g in (1,):
        return c
    return tuple(a // g for a in c)


def _gcd_prs(a: tuple, b: tuple) -> tuple:
    a, b = _primitive(a), _primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _prem(list(a), b)
        a, b = b, (_primitive(tuple(r)) if r else ())
    return _primitive(a)


def _heu_gcd(f: tuple, g: tuple):
    # Char-Geddes-Gonnet heuristic gcd on primitive inputs; None on failure
    norm = min(max(map(abs, f)), max(map(abs, g)))
    x = 2 * norm + 29
    for _ in range(6):
        fx = _peval(f, x)
        gx = _peval(g, x)
        if fx and gx:
            h = math.gcd(fx, gx)
            cand = _primitive(_unpack_balanced(h, x))
            if cand and _pdivexact(f, cand) is not None and _pdivexact(g, cand) is not None:
                return cand
        x = x * 73794 // 27011 + 1
    return None


def _peval(c, x):
    acc = 0
    for a in reversed(c):
        acc = acc * x + a
    return acc


def _unpack_balanced(h, x):
    out = []
    half = x // 2
    while h:
        d = h % x
        if d > half:
            d -= x
        out.append(d)
        h = (h - d) // x
    return tuple(out)


def poly_gcd(a: QPoly, b: QPoly) -> QPoly:
    """Greatest common divisor in Z[q], positive leading coefficient."""
    if not a:
        return QPoly._raw(_primitive_sign(b.c))
    if not b:
        return QPoly._raw(_primitive_sign(a.c))
    ca, cb = a.content(), b.content()
    cg = math.gcd(ca, cb)
    if len(a.c) == 1 or len(b.c) == 1:
        return QPoly._raw((cg,))
    pa, pb = _primitive(a.c), _primitive(b.c)
    if pa == pb:
        h = pa
    else:
        h = _heu_gcd(pa, pb)
        if h is None:
            h = _gcd_prs(pa, pb)
    if cg != 1:
        h = tuple(cg * v for v in h)
    return QPoly._raw(h)


def _primitive_sign(c):
    if c and c[-1] < 0:
        return tuple(-v for v in c)
    return c


_POLY_TERM = re.compile(r"^([+-]?\d+)(?:\*q(?:\^(\d+))?)?$")


def poly_to_str(p: QPoly) -> str:
    if not p.c:
        return "0"
    terms = []
    for i, a in enumerate(p.c):
        if not a:
            continue
        if i == 0:
            terms.append(str(a))
        elif i == 1:
            terms.append(f"{a}*q")
        else:
            terms.append(f"{a}*q^{i}")
    return "+".join(terms)


def poly_from_str(s: str) -> QPoly:
    s = s.replace(" ", "")
    if s == "0":
        return QPoly()
    out: dict[int, int] = {}
    for term in s.split("+"):
        mt = _POLY_TERM.match(term)
        if not mt:
            raise ValueError(f"bad polynomial term {term!r} in {s!r}")
        coef = int(mt.group(1))
        if "*q" in term:
            k = int(mt.group(2)) if mt.group(2) else 1
        else:
            k = 0
        if k in out:
            raise ValueError(f"repeated power q^{k} in {s!r}")
        out[k] = coef
    n = max(out) + 1
    return QPoly(out.get(i, 0) for i in range(n))


# --------------------------------------------------------------------------
# The field Q(q)
# --------------------------------------------------------------------------


class RatFuncQ:
    """Element of Q(q) stored as a reduced pair of integer polynomials.

    ``num`` and ``den`` share no common factor in Z[q] (so the pair is
    jointly primitive) and ``den`` has a positive leading coefficient.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = _to_qpoly(num)
        den = _to_qpoly(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        self.num, self.den = _normalize(num, den)

    @classmethod
    def _raw(cls, num: QPoly, den: QPoly) -> "RatFuncQ":
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    @classmethod
    def q(cls) -> "RatFuncQ":
        return cls._raw(QPoly.q(), _ONE_POLY)

    @classmethod
    def from_value(cls, v) -> "RatFuncQ":
        if isinstance(v, RatFuncQ):
            return v
        if isinstance(v, int):
            return cls._raw(QPoly.const(v), _ONE_POLY)
        if isinstance(v, Fraction):
            return cls._raw(QPoly.const(v.numerator), QPoly.const(v.denominator))
        if isinstance(v, QPoly):
            return cls._raw(v, _ONE_POLY)
        raise TypeError(f"cannot convert {type(v).__name__} to RatFuncQ")

    def is_const(self) -> bool:
        return self.num.is_const() and self.den.is_const()

    def to_fraction(self) -> Fraction:
        if not self.is_const():
            raise ValueError(f"{self} depends on q")
        return Fraction(self.num.lc, self.den.lc)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, RatFuncQ):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self == RatFuncQ.from_value(other)
        return NotImplemented

    def __hash__(self):
        if self.is_const():
            return hash(Fraction(self.num.lc, self.den.lc))
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFuncQ({self})"

    def __str__(self):
        return f"({poly_to_str(self.num)})/({poly_to_str(self.den)})"

    def __neg__(self):
        return RatFuncQ._raw(-self.num, self.den)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return _make(self.num + other.num, self.den)
        if self.den.is_const() and other.den.is_const():
            return _make(self.num * other.den.lc + other.num * self.den.lc,
                         self.den * other.den.lc)
        g = poly_gcd(self.den, other.den)
        if g == 1:
            return _make(self.num * other.den + other.num * self.den,
                         self.den * other.den)
        d1 = self.den.divexact(g)
        d2 = other.den.divexact(g)
        return _make(self.num * d2 + other.num * d1, self.den * d2)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return _ZERO
        # cross-cancel before multiplying
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1, d2 = (self.num, other.den) if g1 == 1 else (self.num.divexact(g1), other.den.divexact(g1))
        n2, d1 = (other.num, self.den) if g2 == 1 else (other.num.divexact(g2), self.den.divexact(g2))
        num = n1 * n2
        den = d1 * d2
        if den.lc < 0:
            num, den = -num, -den
        return RatFuncQ._raw(num, den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFuncQ":
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        num, den = self.den, self.num
        if den.lc < 0:
            num, den = -num, -den
        return RatFuncQ._raw(num, den)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFuncQ._raw(self.num ** k, self.den ** k)

    def subs(self, value):
        """Compose with q -> value, where value is a Fraction or a RatFuncQ."""
        if isinstance(value, (int, Fraction)):
            return specialize(self, Fraction(value))
        return _poly_subs(self.num, value) / _poly_subs(self.den, value)


def _poly_subs(p: QPoly, value: RatFuncQ) -> RatFuncQ:
    acc = _ZERO
    for a in reversed(p.c):
        acc = acc * value + a
    return acc


def _to_qpoly(v) -> QPoly:
    if isinstance(v, QPoly):
        return v
    if isinstance(v, int):
        return QPoly.const(v)
    raise TypeError(f"expected int or QPoly, got {type(v).__name__}")


def _normalize(num: QPoly, den: QPoly):
    if not num:
        return num, _ONE_POLY
    g = poly_gcd(num, den)
    if g != 1:
        num = num.divexact(g)
        den = den.divexact(g)
    if den.lc < 0:
        num, den = -num, -den
    return num, den


def _make(num: QPoly, den: QPoly) -> RatFuncQ:
    n, d = _normalize(num, den)
    return RatFuncQ._raw(n, d)


def _coerce(v):
    if isinstance(v, RatFuncQ):
        return v
    if isinstance(v, (int, Fraction, QPoly)):
        return RatFuncQ.from_value(v)
    return NotImplemented


_ONE_POLY = QPoly._raw((1,))
_ZERO = RatFuncQ._raw(QPoly._raw(()), _ONE_POLY)


def ratfunc_to_str(r) -> str:
    """Canonical "(num)/(den)" string for any Q(q) value (ints and Fractions included)."""
    return str(RatFuncQ.from_value(r))


def ratfunc_from_str(s: str) -> RatFuncQ:
    mt = re.fullmatch(r"\s*\((.*)\)\s*/\s*\((.*)\)\s*", s)
    if not mt:
        raise ValueError(f"not a rational function string: {s!r}")
    num = poly_from_str(mt.group(1))
    den = poly_from_str(mt.group(2))
    r = RatFuncQ(num, den)
    if (r.num, r.den) != (num, den):
        raise ValueError(f"non-canonical rational function string: {s!r}")
    return r


def specialize(r, q0) -> Fraction:
    """Evaluate a Q(q) value at the rational q0."""
    if isinstance(r, (int, Fraction)):
        return Fraction(r)
    q0 = Fraction(q0)
    if isinstance(r, QPoly):
        return Fraction(r(q0))
    den = r.den(q0)
    if den == 0:
        raise PoleAtQ0(f"{r} has a pole at q = {q0}")
    return Fraction(r.num(q0)) / den


# --------------------------------------------------------------------------
# Cyclotomic coefficients
# --------------------------------------------------------------------------


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple:
    """Coefficients (low degree first) of the m-th cyclotomic polynomial."""
    if m < 1:
        raise ValueError("m must be positive")
    num = (-1,) + (0,) * (m - 1) + (1,)
    for d in range(1, m):
        if m % d == 0:
            num = _pdivexact(num, cyclotomic_poly(d))
    return num


@lru_cache(maxsize=None)
def _power_table(m: int) -> tuple:
    """Power-basis coordinates of zeta^k for 0 <= k < 2*deg(Phi_m)."""
    phi = cyclotomic_poly(m)
    deg = len(phi) - 1
    rows = []
    cur = [1] + [0] * (deg - 1)
    for _ in range(max(2 * deg, m)):
        rows.append(tuple(cur))
        # multiply by zeta and reduce with the monic Phi_m
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(deg):
                cur[j] -= top * phi[j]
    return tuple(rows)


class CycElem:
    """Element of Q(zeta_m)(q) in the power basis 1, zeta, ..., zeta^(deg-1)."""

    __slots__ = ("m", "coords")

    def __init__(self, m: int, coords: Sequence):
        deg = len(cyclotomic_poly(m)) - 1
        coords = tuple(coords)
        if len(coords) != deg:
            raise ValueError(f"Q(zeta_{m}) needs {deg} coordinates, got {len(coords)}")
        self.m = m
        self.coords = coords

    @classmethod
    def zeta_power(cls, m: int, k: int, scale=1) -> "CycElem":
        row = _power_table(m)[k % m]
        return cls(m, [scale * a for a in row])

    @classmethod
    def scalar(cls, m: int, v) -> "CycElem":
        deg = len(cyclotomic_poly(m)) - 1
        return cls(m, [v] + [0] * (deg - 1))

    def __bool__(self):
        return any(bool(c) for c in self.coords)

    def __eq__(self, other):
        if isinstance(other, CycElem):
            return self.m == other.m and all(a == b for a, b in zip(self.coords, other.coords))
        if isinstance(other, (int, Fraction, RatFuncQ)):
            return self.coords[0] == other and not any(self.coords[1:])
        return NotImplemented

    def __hash__(self):
        return hash((self.m, self.coords))

    def __repr__(self):
        return f"CycElem({self.m}, {[str(c) for c in self.coords]})"

    def _check(self, other):
        if isinstance(other, (int, Fraction, RatFuncQ)):
            return CycElem.scalar(self.m, other)
        if not isinstance(other, CycElem):
            return None
        if other.m != self.m:
            raise OrderMismatch(f"orders {self.m} and {other.m} differ")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return CycElem(self.m, [a + b for a, b in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __neg__(self):
        return CycElem(self.m, [-a for a in self.coords])

    def __sub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RatFuncQ)):
            return CycElem(self.m, [a * other for a in self.coords])
        other = self._check(other)
        if other is None:
            return NotImplemented
        return cyc_mul(self, other)

    __rmul__ = __mul__

    def galois(self, k: int) -> "CycElem":
        """Image under the automorphism zeta -> zeta^k (k coprime to m)."""
        if math.gcd(k, self.m) != 1:
            raise ValueError(f"{k} is not a unit modulo {self.m}")
        acc = CycElem.scalar(self.m, 0)
        for i, a in enumerate(self.coords):
            if a:
                acc = acc + CycElem.zeta_power(self.m, i * k, a)
        return acc

    def norm(self):
        units = [k for k in range(1, max(self.m, 2)) if math.gcd(k, self.m) == 1] or [1]
        acc = self
        for k in units[1:]:
            acc = acc * self.galois(k)
        return acc.coords[0]

    def inverse(self) -> "CycElem":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        units = [k for k in range(1, max(self.m, 2)) if math.gcd(k, self.m) == 1] or [1]
        adj = CycElem.scalar(self.m, 1)
        for k in units[1:]:
            adj = adj * self.galois(k)
        nrm = (self * adj).coords[0]
        return adj * (1 / nrm if isinstance(nrm, RatFuncQ) else Fraction(1) / nrm)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, RatFuncQ)):
            other = CycElem.scalar(self.m, other)
        return self * other.inverse()

    def to_strings(self) -> list[str]:
        return [ratfunc_to_str(c) for c in self.coords]


def cyc_mul(a: CycElem, b: CycElem) -> CycElem:
    """Product in Q(zeta_m)(q), reduced modulo the m-th cyclotomic polynomial."""
    if a.m != b.m:
        raise OrderMismatch(f"orders {a.m} and {b.m} differ")
    deg = len(a.coords)
    table = _power_table(a.m)
    out = [0] * deg
    for i, x in enumerate(a.coords):
        if not x:
            continue
        for j, y in enumerate(b.coords):
            if not y:
                continue
            xy = x * y
            for t, r in enumerate(table[i + j]):
                if r:
                    out[t] = out[t] + r * xy
    return CycElem(a.m, out)


# --------------------------------------------------------------------------
# Matrices and nullspaces
# --------------------------------------------------------------------------


class ExactMatrix:
    """Dense row-major matrix of exact field elements."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence | None = None):
        if entries is None:
            entries = [0] * (rows * cols)
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise ValueError(f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "ExactMatrix":
        rows = [tuple(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, [v for r in rows for v in r])

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def row_list(self) -> list[tuple]:
        return [self.row(i) for i in range(self.rows)]

    def vstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if other.cols != self.cols:
            raise ValueError("column counts differ")
        return ExactMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def apply(self, vec: Sequence) -> list:
        out = []
        for i in range(self.rows):
            acc = 0
            for a, v in zip(self.row(i), vec):
                if a and v:
                    acc = acc + a * v
            out.append(acc)
        return out

    def rank(self) -> int:
        return self.cols - len(nullspace(self))

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols})"


def nullspace(M: ExactMatrix) -> list[tuple]:
    """Basis of {v : M v = 0} in reduced echelon form.

    Each returned vector has a leading 1 (its first nonzero entry) and is
    zero at the leading positions of the other vectors; the result depends
    only on the row space of M.
    """
    return nullspace_rows(M.row_list(), M.cols)


def nullspace_rows(rows: Iterable[Sequence], ncols: int) -> list[tuple]:
    rows = [r for r in rows if any(bool(v) for v in r)]
    kind = _field_kind(v for r in rows for v in r)
    if kind == "cyc":
        return _nullspace_field(rows, ncols)
    sparse = [_clear_denominators(r, kind) for r in rows]
    sparse = [r for r in sparse if r]
    return kernel_from_sparse(sparse, ncols, kind)


def nullspace_sparse(rows: Iterable[dict], ncols: int) -> list[tuple]:
    """Like ``nullspace`` for rows given as {column index: field value}."""
    rows = [{j: v for j, v in r.items() if v} for r in rows]
    rows = [r for r in rows if r]
    kind = _field_kind(v for r in rows for v in r.values())
    if kind == "cyc":
        dense = [[r.get(j, 0) for j in range(ncols)] for r in rows]
        return _nullspace_field(dense, ncols)
    sparse = []
    for r in rows:
        dense_like = [0] * ncols
        for j, v in r.items():
            dense_like[j] = v
        c = _clear_denominators(dense_like, kind)
        if c:
            sparse.append(c)
    return kernel_from_sparse(sparse, ncols, kind)


def _field_kind(values) -> str:
    kind = "int"
    for v in values:
        if isinstance(v, CycElem):
            return "cyc"
        if isinstance(v, (RatFuncQ, QPoly)):
            kind = "poly"
    return kind


def _clear_denominators(row: Sequence, kind: str) -> dict:
    """Scale a row to integer (or Z[q]) entries; returns a primitive sparse row."""
    if kind == "int":
        den = 1
        for v in row:
            if v:
                d = v.denominator if isinstance(v, Fraction) else 1
                den = den * d // math.gcd(den, d)
        out = {}
        for j, v in enumerate(row):
            if v:
                out[j] = int(v * den)
        return _prim_int(out)
    den = _ONE_POLY
    vals = {}
    for j, v in enumerate(row):
        if v:
            r = RatFuncQ.from_value(v)
            vals[j] = r
            if r.den != den:
                g = poly_gcd(den, r.den)
                den = den * r.den.divexact(g)
    out = {}
    for j, r in vals.items():
        out[j] = r.num * den.divexact(r.den) if r.den != den else r.num
    return _prim_poly(out)


def _prim_int(row: dict) -> dict:
    if not row:
        return row
    g = 0
    for v in row.values():
        g = math.gcd(g, v)
        if g == 1:
            return row
    return {j: v // g for j, v in row.items()}


def _prim_poly(row: dict) -> dict:
    if not row:
        return row
    vals = sorted(row.values(), key=lambda p: len(p.c))
    g = vals[0]
    if g.is_const():
        c = 0
        for v in vals:
            c = math.gcd(c, v.content())
            if c == 1:
                return row
        return {j: v.divexact_int(c) for j, v in row.items()}
    for v in vals[1:]:
        g = poly_gcd(g, v)
        if g == 1:
            return row
    g = QPoly._raw(_primitive_sign(g.c))
    if g == 1:
        return row
    return {j: v.divexact(g) for j, v in row.items()}


def _row_cost(row: dict, kind: str):
    if kind == "int":
        return (len(row), 0)
    return (len(row), sum(len(v.c) for v in row.values()))


def kernel_from_sparse(rows: list[dict], ncols: int, kind: str) -> list[tuple]:
    """Fraction-free elimination on sparse integer (or Z[q]) rows.

    Columns are eliminated from the last to the first, so that the kernel
    vector attached to each free column has its leading 1 there and is zero
    at every other free column: the kernel basis comes out reduced.
    """
    prim = _prim_int if kind == "int" else _prim_poly
    active = [r for r in rows if r]
    pivots: dict[int, dict] = {}
    for col in range(ncols - 1, -1, -1):
        hits = [i for i, r in enumerate(active) if col in r]
        if not hits:
            continue
        # sparsest row first keeps fill-in low; ties go to the earliest row
        best = min(hits, key=lambda i: (_row_cost(active[i], kind), i))
        prow = active[best]
        p = prow[col]
        keep = []
        for i, r in enumerate(active):
            if i == best:
                continue
            a = r.get(col)
            if a is None:
                keep.append(r)
                continue
            g = _ring_gcd(p, a, kind)
            pf = _ring_div(p, g, kind)
            af = _ring_div(a, g, kind)
            new = {}
            for j, v in r.items():
                if j != col:
                    new[j] = v * pf
            for j, v in prow.items():
                if j == col:
                    continue
                t = new.get(j)
                t = -(v * af) if t is None else t - v * af
                if t:
                    new[j] = t
                else:
                    new.pop(j, None)
            if new:
                keep.append(prim(new))
        active = keep
        pivots[col] = prow
    return _back_substitute(pivots, ncols, kind)


def _ring_gcd(a, b, kind):
    if kind == "int":
        return math.gcd(a, b)
    return poly_gcd(a, b)


def _ring_div(a, g, kind):
    if kind == "int":
        return a // g
    if g == 1:
        return a
    return a.divexact(g)


def _back_substitute(pivots: dict, ncols: int, kind: str) -> list[tuple]:
    pcols = sorted(pivots)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = {f: 1 if kind == "int" else _ONE_POLY}
        for c in pcols:
            if c < f:
                continue
            row = pivots[c]
            s = 0 if kind == "int" else QPoly()
            for j, v in row.items():
                if j != c and j in x:
                    s = s + v * x[j]
            if not s:
                continue
            p = row[c]
            g = _ring_gcd(p, s, kind)
            scale = _ring_div(p, g, kind)
            if kind == "int":
                if scale < 0:
                    scale, g = -scale, -g
            elif scale.lc < 0:
                scale, g = -scale, -g
            if scale != 1:
                x = {j: v * scale for j, v in x.items()}
            x[c] = -_ring_div(s, g, kind)
        lead = x[f]
        vec = [0] * ncols if kind == "int" else [_ZERO] * ncols
        for j, v in x.items():
            if kind == "int":
                vec[j] = Fraction(v, lead)
            else:
                vec[j] = _make(v, lead)
        if kind == "int":
            vec = [v if v else Fraction(0) for v in vec]
        basis.append(tuple(vec))
    return basis


def _nullspace_field(rows: list[Sequence], ncols: int) -> list[tuple]:
    """Plain Gauss-Jordan over a field whose elements support division."""
    rows = [list(r) for r in rows]
    pivots: dict[int, list] = {}
    active = rows
    for col in range(ncols - 1, -1, -1):
        hits = [i for i, r in enumerate(active) if r[col]]
        if not hits:
            continue
        best = hits[0]
        prow = active[best]
        inv = 1 / prow[col] if not isinstance(prow[col], CycElem) else prow[col].inverse()
        prow = [v * inv if v else v for v in prow]
        keep = []
        for i, r in enumerate(active):
            if i == best:
                continue
            a = r[col]
            if a:
                r = [u - a * v if v else u for u, v in zip(r, prow)]
            if any(bool(v) for v in r):
                keep.append(r)
        active = keep
        pivots[col] = prow
    pcols = sorted(pivots)
    basis = []
    for f in (c for c in range(ncols) if c not in pivots):
        x: dict[int, object] = {f: 1}
        for c in pcols:
            if c < f:
                continue
            s = 0
            for j, v in x.items():
                w = pivots[c][j]
                if w:
                    s = s + w * v
            if s:
                x[c] = -s
        basis.append(tuple(x.get(j, 0) for j in range(ncols)))
    return basis


def solve_unique(rows: Sequence[Sequence], rhs: Sequence) -> list:
    """Solve A x = b for a square nonsingular system over Q or Q(q)."""
    n = len(rows)
    aug = [list(r) + [-b] for r, b in zip(rows, rhs)]
    ker = nullspace_rows(aug, n + 1)
    sol = [v for v in ker if v[-1]]
    if len(ker) != 1 or not sol:
        raise ValueError("system is singular or inconsistent")
    vec = sol[0]
    last = vec[-1]
    return [v / last for v in vec[:-1]]


def rank_of(rows: Sequence[Sequence], ncols: int) -> int:
    return ncols - len(nullspace_rows(rows, ncols))


def reduce_lcm(values: Iterable[int]) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)
