"""Exact arithmetic in GF(p^k) and in the rationals.

Finite-field elements are stored internally as integer codes: the code of
``c_0 + c_1 t + ... + c_{k-1} t^{k-1}`` is ``sum c_i p^i``.  Fields expose
scalar operations on codes (``add``, ``mul``, ...) for the hot loops and
wrap codes in :class:`FieldElement` for the public API.  Small fields also
carry log/exp tables and vectorized numpy operations used by the
enumeration kernels.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np


class FieldError(ValueError):
    pass


# Fields up to this size get numpy log/exp tables.
VECTOR_TABLE_LIMIT = 1 << 22
# Fields up to this size also get python-list tables for scalar ops.
SCALAR_TABLE_LIMIT = 1 << 16


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


def _prime_factors(n: int) -> list[int]:
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


# -- univariate polynomials over GF(p), little-endian coefficient lists ------

def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _ptrim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _ptrim(a)
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(base: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def is_irreducible_mod_p(f: Sequence[int], p: int) -> bool:
    """Ben-Or test: ``gcd(f, t^(p^i) - t) = 1`` for ``i <= deg f / 2``."""
    f = _ptrim([c % p for c in f])
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    h = [0, 1]
    for _ in range(k // 2):
        h = _ppowmod(h, p, f, p)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(f, _ptrim(diff), p)
        if len(g) > 1:
            return False
    return True


def _smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    # Integer order of the code with the leading coefficients most significant
    # is lexicographic order on coefficient vectors (constant term last).
    for n in range(p**k):
        digits = [(n // p**i) % p for i in range(k)]
        f = digits + [1]
        if is_irreducible_mod_p(f, p):
            return tuple(f)
    raise FieldError(f"no irreducible polynomial of degree {k} over GF({p})")


class FiniteField:
    """GF(p^k) with a deterministic modulus."""

    is_finite = True

    def __init__(self, p: int, k: int, modulus: Sequence[int]):
        self.p = p
        self.k = k
        self.characteristic = p
        self.modulus = tuple(modulus)
        self.order = p**k
        self.zero_code = 0
        self.one_code = 1
        self._mod_int = sum(c * p**i for i, c in enumerate(self.modulus))
        self._log = None
        self._exp = None
        self._vlog = None
        self._vexp = None
        self._gen = None
        if self.order <= VECTOR_TABLE_LIMIT:
            self._build_tables()

    def __reduce__(self):
        return (field_make, (self.p, self.k))

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})"

    @property
    def spec(self) -> str:
        return f"GF({self.p}^{self.k})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteField) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self) -> int:
        return hash(("GF", self.p, self.k))

    # -- table construction -------------------------------------------------

    def _slow_mul(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        if p == 2:
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if a >> k & 1:
                    a ^= self._mod_int
            return r
        if k == 1:
            return a * b % p
        da = [(a // p**i) % p for i in range(k)]
        db = [(b // p**i) % p for i in range(k)]
        prod = _pmod(_pmul(_ptrim(da), _ptrim(db), p), list(self.modulus), p)
        return sum(c * p**i for i, c in enumerate(prod))

    def _slow_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return r

    def _find_generator(self) -> int:
        q1 = self.order - 1
        if q1 == 1:
            return 1
        factors = _prime_factors(q1)
        for g in range(2, self.order):
            if all(self._slow_pow(g, q1 // r) != 1 for r in factors):
                return g
        raise FieldError("no primitive element found")

    def _build_tables(self) -> None:
        q = self.order
        q1 = q - 1
        g = self._find_generator()
        self._gen = g
        exp = np.zeros(2 * q1 + 1, dtype=np.int64)
        block = min(q1, 256)
        cur = 1
        for i in range(block):
            exp[i] = cur
            cur = self._slow_mul(cur, g)
        step = cur  # g^block
        filled = block
        mult = step
        while filled < q1:
            n = min(block, q1 - filled)
            exp[filled:filled + n] = self._vmul_const_slow(exp[:n], mult)
            filled += n
            mult = self._slow_mul(mult, step)
        exp[q1:2 * q1] = exp[:q1]
        exp[2 * q1] = exp[0]
        log = np.full(q, -1, dtype=np.int64)
        log[exp[:q1]] = np.arange(q1, dtype=np.int64)
        self._vexp = exp
        self._vlog = log
        if q <= SCALAR_TABLE_LIMIT:
            self._exp = exp.tolist()
            self._log = log.tolist()

    def _vmul_const_slow(self, arr: np.ndarray, c: int) -> np.ndarray:
        if self.p == 2:
            k = self.k
            a = arr.copy()
            r = np.zeros_like(arr)
            while c:
                if c & 1:
                    r ^= a
                c >>= 1
                a = a << 1
                hi = (a >> k) & 1
                a ^= hi * self._mod_int
            return r
        return np.array([self._slow_mul(int(x), c) for x in arr], dtype=np.int64)

    # -- scalar operations on codes ----------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.k == 1:
            return (a + b) % self.p
        p = self.p
        r, m = 0, 1
        while a or b:
            r += ((a % p + b % p) % p) * m
            a //= p
            b //= p
            m *= p
        return r

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.k == 1:
            return (-a) % self.p
        p = self.p
        r, m = 0, 1
        while a:
            r += ((-(a % p)) % p) * m
            a //= p
            m *= p
        return r

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._log is not None:
            return self._exp[self._log[a] + self._log[b]]
        if self._vlog is not None:
            return int(self._vexp[self._vlog[a] + self._vlog[b]])
        return self._slow_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("division by zero in " + self.spec)
        if self._log is not None:
            return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]
        if self._vlog is not None:
            return int(self._vexp[(self.order - 1 - int(self._vlog[a])) % (self.order - 1)])
        return self._slow_pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a = self.inv(a)
            e = -e
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self._log is not None:
            return self._exp[self._log[a] * e % (self.order - 1)]
        if self._vlog is not None:
            return int(self._vexp[int(self._vlog[a]) * e % (self.order - 1)])
        return self._slow_pow(a, e)

    def frob(self, a: int, e: int = 1) -> int:
        e %= self.k
        return self.pow(a, self.p**e)

    def sqrt_code(self, a: int) -> int:
        if self.p != 2:
            raise FieldError("unique square root only in characteristic 2")
        return self.frob(a, self.k - 1)

    def is_square_code(self, a: int) -> bool:
        if a == 0 or self.p == 2:
            return True
        return self.pow(a, (self.order - 1) // 2) == 1

    def some_sqrt_code(self, a: int) -> int | None:
        """A square root of ``a`` or ``None``; Tonelli-Shanks in odd characteristic."""
        if self.p == 2:
            return self.sqrt_code(a)
        if a == 0:
            return 0
        if not self.is_square_code(a):
            return None
        q1 = self.order - 1
        s, m = 0, q1
        while m % 2 == 0:
            s += 1
            m //= 2
        z = next(c for c in range(2, self.order) if not self.is_square_code(c))
        c = self.pow(z, m)
        x = self.pow(a, (m + 1) // 2)
        t = self.pow(a, m)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = self.mul(t2, t2)
                i += 1
            b = c
            for _ in range(s - i - 1):
                b = self.mul(b, b)
            x = self.mul(x, b)
            c = self.mul(b, b)
            t = self.mul(t, c)
            s = i
        return x

    def from_int(self, n: int) -> int:
        return n % self.p

    def is_zero(self, a: int) -> bool:
        return a == 0

    def codes(self) -> range:
        return range(self.order)

    def coeffs(self, a: int) -> list[int]:
        return [(a // self.p**i) % self.p for i in range(self.k)]

    def from_coeffs(self, cs: Sequence[int]) -> int:
        if len(cs) > self.k:
            raise FieldError(f"too many coefficients for {self.spec}: {list(cs)}")
        return sum((c % self.p) * self.p**i for i, c in enumerate(cs))

    def fmt(self, a: int) -> str:
        return "[" + ",".join(str(c) for c in self.coeffs(a)) + "]"

    def to_json(self, a: int):
        return self.coeffs(a)

    # -- element API ---------------------------------------------------------

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.parent == self:
                return value
            if value.parent.characteristic == 0:
                return self(value.value)
            if value.parent.k == 1 and value.parent.p == self.p:
                return FieldElement(self, value.value)
            raise FieldError(f"cannot coerce {value.parent!r} element into {self!r}")
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return FieldElement(self, self.from_int(value))
        if isinstance(value, Fraction):
            return FieldElement(self, self.div(self.from_int(value.numerator), self.from_int(value.denominator)))
        if isinstance(value, (list, tuple)):
            return FieldElement(self, self.from_coeffs(value))
        raise FieldError(f"cannot build an element of {self.spec} from {value!r}")

    def element(self, code: int) -> "FieldElement":
        return FieldElement(self, code)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def gen(self) -> "FieldElement":
        """The class of ``t`` (a generator of the extension, not necessarily primitive)."""
        return FieldElement(self, self.p % self.order if self.k > 1 else 0)

    def elements(self) -> Iterator["FieldElement"]:
        for c in range(self.order):
            yield FieldElement(self, c)

    # -- vectorized operations (numpy int64 code arrays) ---------------------

    @property
    def vectorized(self) -> bool:
        return self._vlog is not None

    def _need_tables(self):
        if self._vlog is None:
            raise FieldError(f"{self.spec} is too large for vectorized kernels")

    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.k == 1:
            return (a + b) % self.p
        p = self.p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        m = 1
        for _ in range(self.k):
            out += (((a // m) % p + (b // m) % p) % p) * m
            m *= p
        return out

    def vneg(self, a: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return a
        if self.k == 1:
            return (-a) % self.p
        p = self.p
        out = np.zeros_like(a)
        m = 1
        for _ in range(self.k):
            out += ((-((a // m) % p)) % p) * m
            m *= p
        return out

    def vmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        self._need_tables()
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        la = self._vlog[a]
        lb = self._vlog[b]
        out = self._vexp[np.maximum(la, 0) + np.maximum(lb, 0)]
        return np.where((a == 0) | (b == 0), 0, out)

    def vmul_scalar(self, a: np.ndarray, c: int) -> np.ndarray:
        self._need_tables()
        if c == 0:
            return np.zeros_like(a)
        if c == 1:
            return a
        la = self._vlog[a]
        out = self._vexp[np.maximum(la, 0) + int(self._vlog[c])]
        return np.where(a == 0, 0, out)

    def vpow(self, a: np.ndarray, e: int) -> np.ndarray:
        self._need_tables()
        if e == 0:
            return np.ones_like(a)
        la = self._vlog[a]
        out = self._vexp[(np.maximum(la, 0) * e) % (self.order - 1)]
        return np.where(a == 0, 0, out)

    def vinv(self, a: np.ndarray) -> np.ndarray:
        self._need_tables()
        la = self._vlog[a]
        out = self._vexp[(self.order - 1 - np.maximum(la, 0)) % (self.order - 1)]
        return np.where(a == 0, 0, out)


class RationalField:
    """The rationals, with ``fractions.Fraction`` values."""

    is_finite = False
    characteristic = 0
    p = 0
    k = 1
    spec = "QQ"
    zero_code = Fraction(0)
    one_code = Fraction(1)
    vectorized = False

    def __repr__(self) -> str:
        return "QQ"

    def __reduce__(self):
        return (_get_qq, ())

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("division by zero in QQ")
        return 1 / Fraction(a)

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in QQ")
        return Fraction(a) / b

    def pow(self, a, e: int):
        return Fraction(a) ** e

    def frob(self, a, e: int = 1):
        raise FieldError("Frobenius undefined over QQ")

    def sqrt_code(self, a):
        raise FieldError("unique square root only in characteristic 2")

    def some_sqrt_code(self, a):
        a = Fraction(a)
        if a < 0:
            return None
        from math import isqrt

        n, d = a.numerator, a.denominator
        rn, rd = isqrt(n), isqrt(d)
        if rn * rn == n and rd * rd == d:
            return Fraction(rn, rd)
        return None

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def is_zero(self, a) -> bool:
        return a == 0

    def fmt(self, a) -> str:
        a = Fraction(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def to_json(self, a):
        return self.fmt(a)

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.parent == self:
                return value
            raise FieldError(f"cannot coerce {value.parent!r} element into QQ")
        if isinstance(value, str):
            return FieldElement(self, Fraction(value))
        return FieldElement(self, Fraction(value))

    def element(self, code) -> "FieldElement":
        return FieldElement(self, Fraction(code))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, Fraction(0))

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, Fraction(1))


QQ = RationalField()


def _get_qq() -> RationalField:
    return QQ


Field = FiniteField | RationalField


class FieldElement:
    """Immutable element of a finite field or of QQ."""

    __slots__ = ("parent", "value")

    def __init__(self, parent, value):
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.parent != self.parent:
                raise FieldError(f"mismatched parents: {self.parent!r} and {other.parent!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.parent(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.parent, self.parent.add(self.value, o.value))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.parent, self.parent.sub(self.value, o.value))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return FieldElement(self.parent, self.parent.neg(self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.parent, self.parent.mul(self.value, o.value))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.parent, self.parent.div(self.value, o.value))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, e: int):
        return FieldElement(self.parent, self.parent.pow(self.value, e))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.parent == other.parent and self.value == other.value
        if isinstance(other, int):
            return self.value == self.parent.from_int(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.parent, self.value))

    def __bool__(self) -> bool:
        return not self.parent.is_zero(self.value)

    def __repr__(self) -> str:
        return self.parent.fmt(self.value)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.parent, self.parent.inv(self.value))

    def frobenius(self, e: int = 1) -> "FieldElement":
        return frobenius(self, e)

    def sqrt(self) -> "FieldElement":
        return sqrt_char2(self)


# -- module-level operations ----------------------------------------------

@lru_cache(maxsize=None)
def field_make(p: int, k: int = 1) -> FiniteField:
    """GF(p^k) with the smallest monic irreducible modulus (lexicographic, constant term last)."""
    if not is_prime(p):
        raise FieldError("composite characteristic")
    if k < 1:
        raise FieldError("extension degree must be >= 1")
    return FiniteField(p, k, _smallest_irreducible(p, k))


def GF(q: int) -> FiniteField:
    """Convenience: the field with ``q = p^k`` elements."""
    for p in range(2, q + 1):
        if q % p == 0:
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            if r != 1:
                raise FieldError(f"{q} is not a prime power")
            return field_make(p, k)
    raise FieldError(f"{q} is not a prime power")


def arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    if a.parent != b.parent:
        raise FieldError("mismatched parents")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise FieldError(f"unknown operation {op!r}")


def frobenius(a: FieldElement, e: int = 1) -> FieldElement:
    """``a^(p^e)``; ``e = -1`` gives the p-th root."""
    if not a.parent.is_finite:
        raise FieldError("Frobenius undefined")
    return FieldElement(a.parent, a.parent.frob(a.value, e))


def sqrt_char2(a: FieldElement) -> FieldElement:
    if a.parent.characteristic != 2:
        raise FieldError("unique square root only in characteristic 2")
    return FieldElement(a.parent, a.parent.sqrt_code(a.value))


_FIELD_RE = re.compile(r"^\s*GF\(\s*(\d+)\s*(?:\^\s*(\d+)\s*)?\)\s*$")


def parse_field(spec: str):
    """Parse ``"GF(p^k)"``, ``"GF(p)"`` or ``"QQ"``."""
    s = spec.strip()
    if s.upper() in ("QQ", "Q"):
        return QQ
    m = _FIELD_RE.match(s)
    if not m:
        raise FieldError(f"bad field spec {spec!r}")
    p = int(m.group(1))
    k = int(m.group(2) or 1)
    return field_make(p, k)


def parse_element(field, text: str) -> FieldElement:
    """Parse an element literal.

    Finite fields accept a little-endian coefficient list ``"[1,0,1]"`` or a
    non-negative integer, read as the code whose base-p digits are the
    coefficients.  QQ accepts ``"3/4"``.
    """
    s = text.strip()
    if field.characteristic == 0:
        try:
            return QQ(Fraction(s))
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"bad rational literal {text!r}") from exc
    if s.startswith("["):
        if not s.endswith("]"):
            raise FieldError(f"bad element literal {text!r}")
        body = s[1:-1].strip()
        cs = [int(c) for c in body.split(",")] if body else []
        return FieldElement(field, field.from_coeffs(cs))
    try:
        n = int(s)
    except ValueError as exc:
        raise FieldError(f"bad element literal {text!r}") from exc
    if not 0 <= n < field.order:
        raise FieldError(f"element code {n} out of range for {field.spec}")
    return FieldElement(field, n)


def format_element(a: FieldElement) -> str:
    return a.parent.fmt(a.value)


@lru_cache(maxsize=None)
def embedding(small: FiniteField, big: FiniteField) -> tuple[int, ...]:
    """Code table of a field embedding GF(p^k) -> GF(p^m), ``k | m``.

    The image of the generator ``t`` is the smallest-code root of the small
    field's modulus in the big field.
    """
    if small.p != big.p or big.k % small.k:
        raise FieldError(f"{small.spec} does not embed in {big.spec}")
    if small.k == 1:
        return tuple(range(small.order))
    mod = small.modulus
    if big.vectorized:
        xs = np.arange(big.order, dtype=np.int64)
        acc = np.zeros_like(xs)
        for c in reversed(mod):
            acc = big.vadd(big.vmul(acc, xs), np.full_like(xs, big.from_int(c)))
        roots = np.nonzero(acc == 0)[0]
        root = int(roots[0])
    else:
        root = None
        for x in range(big.order):
            acc = 0
            for c in reversed(mod):
                acc = big.add(big.mul(acc, x), big.from_int(c))
            if acc == 0:
                root = x
                break
        if root is None:
            raise FieldError("modulus has no root in the big field")
    powers = [1]
    for _ in range(1, small.k):
        powers.append(big.mul(powers[-1], root))
    table = []
    for code in range(small.order):
        acc = 0
        for i, c in enumerate(small.coeffs(code)):
            if c:
                acc = big.add(acc, big.mul(big.from_int(c), powers[i]))
        table.append(acc)
    return tuple(table)


def lift(a: FieldElement, big: FiniteField) -> FieldElement:
    return FieldElement(big, embedding(a.parent, big)[a.value])
