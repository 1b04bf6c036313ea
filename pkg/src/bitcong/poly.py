"""Sparse multivariate polynomials, binary forms and their discriminants.

Coefficients are stored as raw field codes (ints for finite fields,
``Fraction`` for QQ); the owning field supplies the arithmetic.  The global
monomial order is graded lexicographic with variables in declaration order.
"""
from __future__ import annotations

import heapq
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from .fields import QQ, FieldElement, FieldError, field_make

Exps = tuple


class PolyError(ValueError):
    pass


def _grlex_key(e: Exps):
    return (sum(e), e)


def _raw(field, c):
    """Coerce an int / Fraction / FieldElement to a raw code of ``field``."""
    if isinstance(c, FieldElement):
        if c.parent != field:
            raise PolyError(f"coefficient from {c.parent!r} used in {field!r}")
        return c.value
    if isinstance(c, int):
        return field.from_int(c)
    if isinstance(c, Fraction):
        return field(c).value
    raise PolyError(f"bad coefficient {c!r}")


class MultiPoly:
    """A polynomial in ``nvars`` variables over a field; immutable by convention."""

    __slots__ = ("field", "nvars", "terms", "_hash")

    def __init__(self, field, nvars: int, terms: dict | None = None):
        self.field = field
        self.nvars = nvars
        is_zero = field.is_zero
        self.terms = {e: c for e, c in (terms or {}).items() if not is_zero(c)}
        self._hash = None

    # -- construction -------------------------------------------------------

    @classmethod
    def zero(cls, field, nvars: int) -> "MultiPoly":
        return cls(field, nvars)

    @classmethod
    def const(cls, field, nvars: int, c=1) -> "MultiPoly":
        return cls(field, nvars, {(0,) * nvars: _raw(field, c)})

    @classmethod
    def var(cls, field, nvars: int, i: int) -> "MultiPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(field, nvars, {tuple(e): field.one_code})

    @classmethod
    def monomial(cls, field, exps: Sequence[int], c=1) -> "MultiPoly":
        return cls(field, len(exps), {tuple(exps): _raw(field, c)})

    @classmethod
    def gens(cls, field, nvars: int) -> list["MultiPoly"]:
        return [cls.var(field, nvars, i) for i in range(nvars)]

    # -- basic properties -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> int | None:
        """The common total degree, or ``None`` if inhomogeneous (or zero)."""
        degs = {sum(e) for e in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def leading_monomial(self) -> Exps:
        if not self.terms:
            raise PolyError("zero polynomial has no leading term")
        return max(self.terms, key=_grlex_key)

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def coefficient(self, exps: Sequence[int]) -> FieldElement:
        return FieldElement(self.field, self.terms.get(tuple(exps), self.field.zero_code))

    def monomial_content(self) -> Exps:
        """Componentwise minimum exponent over all terms."""
        if not self.terms:
            return (0,) * self.nvars
        it = iter(self.terms)
        lo = list(next(it))
        for e in it:
            for i, v in enumerate(e):
                if v < lo[i]:
                    lo[i] = v
        return tuple(lo)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "MultiPoly"):
        if other.nvars != self.nvars or other.field != self.field:
            raise PolyError("mismatched arity or field")

    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.const(self.field, self.nvars, other)

    def __add__(self, other) -> "MultiPoly":
        other = self._lift(other)
        add = self.field.add
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = add(out[e], c) if e in out else c
        return MultiPoly(self.field, self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        neg = self.field.neg
        return MultiPoly(self.field, self.nvars, {e: neg(c) for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return self.scale(_raw(self.field, other))
        self._check(other)
        f = self.field
        add, mul = f.add, f.mul
        out: dict = {}
        n = self.nvars
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(e1[i] + e2[i] for i in range(n))
                c = mul(c1, c2)
                if e in out:
                    out[e] = add(out[e], c)
                else:
                    out[e] = c
        return MultiPoly(f, n, out)

    __rmul__ = __mul__

    def scale(self, c) -> "MultiPoly":
        mul = self.field.mul
        return MultiPoly(self.field, self.nvars, {e: mul(v, c) for e, v in self.terms.items()})

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise PolyError("negative power")
        result = MultiPoly.const(self.field, self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.field == other.field and self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, FieldElement)):
            return self == MultiPoly.const(self.field, self.nvars, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return format_poly(self, names=default_names(self.nvars))

    # -- evaluation, substitution, derivatives -------------------------------

    def eval_codes(self, values: Sequence):
        f = self.field
        add, mul, pw = f.add, f.mul, f.pow
        acc = f.zero_code
        cache: dict = {}
        for e, c in self.terms.items():
            t = c
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    v = cache.get(key)
                    if v is None:
                        v = pw(values[i], k)
                        cache[key] = v
                    t = mul(t, v)
            acc = add(acc, t)
        return acc

    def evaluate(self, values: Sequence) -> FieldElement:
        codes = [_raw(self.field, v) for v in values]
        return FieldElement(self.field, self.eval_codes(codes))

    def partial(self, i: int) -> "MultiPoly":
        """Formal derivative; in characteristic p exponents divisible by p drop out."""
        f = self.field
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k == 0:
                continue
            kc = f.from_int(k)
            if f.is_zero(kc):
                continue
            ne = list(e)
            ne[i] -= 1
            out[tuple(ne)] = f.mul(c, kc)
        return MultiPoly(f, self.nvars, out)

    def map_coeffs(self, func, field) -> "MultiPoly":
        return MultiPoly(field, self.nvars, {e: func(c) for e, c in self.terms.items()})

    def permute_vars(self, perm: Sequence[int]) -> "MultiPoly":
        """Rename variable ``i`` to ``perm[i]``."""
        out = {}
        for e, c in self.terms.items():
            ne = [0] * self.nvars
            for i, k in enumerate(e):
                ne[perm[i]] = k
            out[tuple(ne)] = c
        return MultiPoly(self.field, self.nvars, out)


def default_names(nvars: int) -> list[str]:
    if nvars == 4:
        return ["x", "y", "z", "w"]
    if nvars == 3:
        return ["x", "y", "z"]
    return [f"x{i}" for i in range(nvars)]


# -- operations on MultiPoly ------------------------------------------------

def mp_arith(f: MultiPoly, g: MultiPoly, op: str) -> MultiPoly:
    f._check(g)
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise PolyError(f"unknown operation {op!r}")


def substitute(f: MultiPoly, images: Sequence[MultiPoly], require_homogeneous: bool = False) -> MultiPoly:
    """``f(images[0], ..., images[n-1])``."""
    if len(images) != f.nvars:
        raise PolyError(f"expected {f.nvars} images, got {len(images)}")
    if not images:
        return f
    target = images[0]
    for im in images:
        if im.nvars != target.nvars or im.field != f.field:
            raise PolyError("images must share arity and field with f")
    if require_homogeneous:
        degs = {im.is_homogeneous() for im in images if im}
        if None in degs or len(degs) > 1:
            raise PolyError("images are not homogeneous of a common degree")
    powers: list[dict] = [{} for _ in images]

    def power(i: int, k: int) -> MultiPoly:
        cache = powers[i]
        if k not in cache:
            if k == 1:
                cache[k] = images[i]
            else:
                half = power(i, k // 2)
                sq = half * half
                cache[k] = sq * images[i] if k % 2 else sq
        return cache[k]

    result = MultiPoly.zero(f.field, target.nvars)
    for e, c in f.sorted_terms():
        term = MultiPoly.const(f.field, target.nvars, FieldElement(f.field, c))
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        result = result + term
    return result


def partials(F: MultiPoly) -> list[MultiPoly]:
    return [F.partial(i) for i in range(F.nvars)]


def _divide(f: MultiPoly, g: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
    """Leading-term division of ``f`` by ``g`` (grlex): returns ``(q, r)``."""
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    f._check(g)
    fld = f.field
    n = f.nvars
    lm = g.leading_monomial()
    lc_inv = fld.inv(g.terms[lm])
    g_rest = [(e, c) for e, c in g.terms.items() if e != lm]
    p = dict(f.terms)
    heap = [(-sum(e), tuple(-v for v in e)) for e in p]
    heapq.heapify(heap)
    q: dict = {}
    r: dict = {}
    add, sub, mul, is_zero = fld.add, fld.sub, fld.mul, fld.is_zero
    while heap:
        _, neg_e = heapq.heappop(heap)
        e = tuple(-v for v in neg_e)
        c = p.pop(e, None)
        if c is None or is_zero(c):
            continue
        # skip duplicate heap entries for the same monomial
        while heap and heap[0][1] == neg_e:
            heapq.heappop(heap)
        if all(e[i] >= lm[i] for i in range(n)):
            shift = tuple(e[i] - lm[i] for i in range(n))
            cq = mul(c, lc_inv)
            q[shift] = add(q[shift], cq) if shift in q else cq
            for ge, gc in g_rest:
                m = tuple(ge[i] + shift[i] for i in range(n))
                v = mul(cq, gc)
                if m in p:
                    nv = sub(p[m], v)
                    if is_zero(nv):
                        del p[m]
                    else:
                        p[m] = nv
                else:
                    p[m] = fld.neg(v)
                    heapq.heappush(heap, (-sum(m), tuple(-x for x in m)))
        else:
            r[e] = c
    return MultiPoly(fld, n, q), MultiPoly(fld, n, r)


def divide_exact(f: MultiPoly, g: MultiPoly) -> MultiPoly | None:
    """``q`` with ``f = q*g``, or ``None`` when ``g`` does not divide ``f``."""
    q, r = _divide(f, g)
    return q if not r else None


def reduce_mod(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Remainder of ``f`` under repeated leading-term reduction by ``g``."""
    return _divide(f, g)[1]


# -- text format ---------------------------------------------------------------

def format_poly(f: MultiPoly, names: Sequence[str] | None = None) -> str:
    """Canonical text: terms ``coeff*x0^e0*...`` in decreasing grlex order."""
    if names is None:
        names = [f"x{i}" for i in range(f.nvars)]
    if not f.terms:
        return "0"
    fld = f.field
    parts = []
    for e, c in f.sorted_terms():
        factors = [f"{names[i]}^{k}" if k > 1 else names[i] for i, k in enumerate(e) if k]
        cs = fld.fmt(c)
        if not factors:
            parts.append(cs)
        elif c == fld.one_code:
            parts.append("*".join(factors))
        else:
            parts.append(cs + "*" + "*".join(factors))
    return " + ".join(parts)


_TOKEN = re.compile(r"\s*(?:(\[[^\]]*\])|(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def parse_poly(text: str, field, nvars: int, names: Sequence[str] | None = None) -> MultiPoly:
    """Parse a polynomial; accepts ``x0..x{n-1}`` and the short names (x, y, z, w)."""
    lookup = {f"x{i}": i for i in range(nvars)}
    for i, nm in enumerate(names or default_names(nvars)):
        lookup[nm] = i
    tokens = []
    pos = 0
    s = text.strip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            raise PolyError(f"cannot parse {text!r} at position {pos}")
        pos = m.end()
        if m.group(1):
            tokens.append(("elt", m.group(1)))
        elif m.group(2):
            tokens.append(("int", int(m.group(2))))
        elif m.group(3):
            if m.group(3) not in lookup:
                raise PolyError(f"unknown variable {m.group(3)!r}")
            tokens.append(("var", lookup[m.group(3)]))
        else:
            op = m.group(4)
            tokens.append(("op", "^" if op == "**" else op))
    idx = 0

    def peek():
        return tokens[idx] if idx < len(tokens) else (None, None)

    def take():
        nonlocal idx
        tok = tokens[idx]
        idx += 1
        return tok

    def expr() -> MultiPoly:
        result = MultiPoly.zero(field, nvars)
        sign = 1
        if peek() == ("op", "-"):
            take()
            sign = -1
        elif peek() == ("op", "+"):
            take()
        t = term()
        result = result + (t if sign > 0 else -t)
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            t = term()
            result = result + t if op == "+" else result - t
        return result

    def term() -> MultiPoly:
        result = power()
        while peek() in (("op", "*"), ("op", "/")):
            op = take()[1]
            rhs = power()
            if op == "*":
                result = result * rhs
            else:
                if rhs.is_homogeneous() != 0:
                    raise PolyError("division only by constants")
                c = rhs.terms[(0,) * nvars]
                result = result.scale(field.inv(c))
        return result

    def power() -> MultiPoly:
        base = atom()
        if peek() == ("op", "^"):
            take()
            kind, val = take()
            if kind != "int":
                raise PolyError("exponent must be an integer")
            base = base**val
        return base

    def atom() -> MultiPoly:
        kind, val = take() if idx < len(tokens) else (None, None)
        if kind == "int":
            return MultiPoly.const(field, nvars, val)
        if kind == "elt":
            from .fields import parse_element

            return MultiPoly.const(field, nvars, parse_element(field, val))
        if kind == "var":
            return MultiPoly.var(field, nvars, val)
        if (kind, val) == ("op", "("):
            inner = expr()
            if take() != ("op", ")"):
                raise PolyError("unbalanced parentheses")
            return inner
        if (kind, val) == ("op", "-"):
            return -atom()
        raise PolyError(f"unexpected token {val!r} in {text!r}")

    out = expr()
    if idx != len(tokens):
        raise PolyError(f"trailing input in {text!r}")
    return out


# -- univariate helpers (little-endian code lists) -----------------------------

def u_trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _ut(field, a: Sequence) -> list:
    is_zero = field.is_zero
    a = list(a)
    while a and is_zero(a[-1]):
        a.pop()
    return a


def u_add(field, a, b) -> list:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else field.zero_code
        y = b[i] if i < len(b) else field.zero_code
        out.append(field.add(x, y))
    return _ut(field, out)


def u_sub(field, a, b) -> list:
    return u_add(field, a, [field.neg(c) for c in b])


def u_mul(field, a, b) -> list:
    if not a or not b:
        return []
    add, mul = field.add, field.mul
    out = [field.zero_code] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if field.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = add(out[i + j], mul(x, y))
    return _ut(field, out)


def u_divmod(field, a, b) -> tuple[list, list]:
    b = _ut(field, b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = _ut(field, a)
    inv = field.inv(b[-1])
    q = [field.zero_code] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        c = field.mul(a[-1], inv)
        shift = len(a) - len(b)
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = field.sub(a[shift + i], field.mul(c, bi))
        a = _ut(field, a)
    return _ut(field, q), a


def u_monic(field, a) -> list:
    a = _ut(field, a)
    if not a:
        return a
    inv = field.inv(a[-1])
    return [field.mul(c, inv) for c in a]


def u_gcd(field, a, b) -> list:
    a, b = _ut(field, a), _ut(field, b)
    while b:
        a, b = b, u_divmod(field, a, b)[1]
    return u_monic(field, a)


def u_deriv(field, a) -> list:
    return _ut(field, [field.mul(field.from_int(i), a[i]) for i in range(1, len(a))])


def u_pth_root(field, a) -> list:
    p = field.characteristic
    out = []
    for i in range(0, len(a), p):
        out.append(field.frob(a[i], -1))
    return _ut(field, out)


def u_pow(field, a, n: int) -> list:
    out = [field.one_code]
    for _ in range(n):
        out = u_mul(field, out, a)
    return out


def u_squarefree(field, f) -> list[tuple[list, int]]:
    """Squarefree decomposition of a monic polynomial: ``[(factor, mult)]``, merged by multiplicity."""
    f = u_monic(field, f)
    if len(f) <= 1:
        return []
    out: dict[int, list] = {}

    def put(g, m):
        if len(g) > 1:
            out[m] = u_mul(field, out[m], g) if m in out else g

    c = u_gcd(field, f, u_deriv(field, f))
    w = u_divmod(field, f, c)[0]
    i = 1
    while len(w) > 1:
        y = u_gcd(field, w, c)
        fac = u_divmod(field, w, y)[0]
        put(u_monic(field, fac), i)
        w = y
        c = u_divmod(field, c, y)[0]
        i += 1
    if len(c) > 1:
        if field.characteristic == 0:
            raise PolyError("squarefree decomposition failed to terminate in characteristic 0")
        root = u_pth_root(field, c)
        for g, m in u_squarefree(field, root):
            put(g, m * field.characteristic)
    return [(g, m) for m, g in sorted(out.items())]


# -- binary forms --------------------------------------------------------------

@dataclass(frozen=True)
class BinaryForm:
    """``sum coeffs[i] * s^(d-i) * t^i`` with raw codes."""

    field: object
    coeffs: tuple

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return all(self.field.is_zero(c) for c in self.coeffs)

    @classmethod
    def from_elements(cls, field, coeffs: Iterable) -> "BinaryForm":
        return cls(field, tuple(_raw(field, c) for c in coeffs))

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self.field, c) for c in self.coeffs]

    def t_multiplicity(self) -> int:
        m = 0
        for c in self.coeffs:
            if not self.field.is_zero(c):
                break
            m += 1
        return m

    def dehomogenize(self) -> list:
        """``f(s, 1)`` as a little-endian list in ``s``."""
        return _ut(self.field, list(reversed(self.coeffs)))

    @classmethod
    def homogenize(cls, field, u: Sequence, degree: int) -> "BinaryForm":
        u = list(u) + [field.zero_code] * (degree + 1 - len(u))
        return cls(field, tuple(reversed(u[: degree + 1])))

    def __mul__(self, other: "BinaryForm") -> "BinaryForm":
        f = self.field
        out = [f.zero_code] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if f.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = f.add(out[i + j], f.mul(a, b))
        return BinaryForm(f, tuple(out))

    def scale(self, c) -> "BinaryForm":
        return BinaryForm(self.field, tuple(self.field.mul(x, c) for x in self.coeffs))

    def __pow__(self, n: int) -> "BinaryForm":
        out = BinaryForm(self.field, (self.field.one_code,))
        for _ in range(n):
            out = out * self
        return out

    def __repr__(self) -> str:
        f = self.field
        d = self.degree
        parts = []
        for i, c in enumerate(self.coeffs):
            if f.is_zero(c):
                continue
            mon = "*".join(x for x in (
                ("s" if d - i == 1 else f"s^{d - i}") if d - i else "",
                ("t" if i == 1 else f"t^{i}") if i else "",
            ) if x)
            cs = f.fmt(c)
            parts.append(mon if c == f.one_code and mon else (cs + ("*" + mon if mon else "")))
        return " + ".join(parts) if parts else "0"


def restrict_to_line(F: MultiPoly, v: Sequence, v2: Sequence) -> BinaryForm:
    """``F(s*v + t*v2)`` as a binary form of degree ``deg F``."""
    fld = F.field
    v = [_raw(fld, c) for c in v]
    v2 = [_raw(fld, c) for c in v2]
    if _proportional(fld, v, v2):
        raise PolyError("degenerate line")
    d = F.is_homogeneous()
    if d is None:
        if F:
            raise PolyError("restrict_to_line needs a homogeneous polynomial")
        d = 0
    return BinaryForm(fld, tuple(restrict_codes(F, v, v2, d)))


def _proportional(fld, a, b) -> bool:
    n = len(a)
    if all(fld.is_zero(x) for x in a) or all(fld.is_zero(x) for x in b):
        return True
    for i in range(n):
        for j in range(i + 1, n):
            if not fld.is_zero(fld.sub(fld.mul(a[i], b[j]), fld.mul(a[j], b[i]))):
                return False
    return True


def _binom_mod(n: int, k: int, fld):
    return fld.from_int(comb(n, k))


def restrict_codes(F: MultiPoly, v: Sequence, v2: Sequence, d: int) -> list:
    """Coefficient list of ``F(s*v + t*v2)`` (index i is the coefficient of s^(d-i) t^i)."""
    fld = F.field
    add, mul = fld.add, fld.mul
    zero = fld.zero_code
    n = F.nvars
    maxe = [0] * n
    for e in F.terms:
        for i, k in enumerate(e):
            if k > maxe[i]:
                maxe[i] = k
    # lin_pows[i][k] = coefficients of (v_i s + v2_i t)^k
    lin_pows = []
    for i in range(n):
        a, b = v[i], v2[i]
        pows = [[fld.one_code]]
        apow = [fld.one_code]
        bpow = [fld.one_code]
        for _ in range(maxe[i]):
            apow.append(mul(apow[-1], a))
            bpow.append(mul(bpow[-1], b))
        for k in range(1, maxe[i] + 1):
            pows.append([mul(_binom_mod(k, j, fld), mul(apow[k - j], bpow[j])) for j in range(k + 1)])
        lin_pows.append(pows)
    out = [zero] * (d + 1)
    for e, c in F.terms.items():
        acc = [c]
        for i, k in enumerate(e):
            if not k:
                continue
            lp = lin_pows[i][k]
            new = [zero] * (len(acc) + k)
            for x, ax in enumerate(acc):
                if fld.is_zero(ax):
                    continue
                for y, by in enumerate(lp):
                    if not fld.is_zero(by):
                        new[x + y] = add(new[x + y], mul(ax, by))
            acc = new
        for i, ci in enumerate(acc):
            out[i] = add(out[i], ci)
    return out


@dataclass(frozen=True)
class SquarefreeDecomposition:
    factors: tuple  # ((BinaryForm, multiplicity), ...)
    unit: FieldElement

    def expand(self) -> BinaryForm:
        f = self.unit.parent
        out = BinaryForm(f, (self.unit.value,))
        for g, m in self.factors:
            out = out * (g**m)
        return out

    def signature(self) -> tuple[int, ...]:
        """Root multiplicities over the algebraic closure, sorted decreasing."""
        sig = []
        for g, m in self.factors:
            sig.extend([m] * g.degree)
        return tuple(sorted(sig, reverse=True))


def squarefree_decomposition(f: BinaryForm) -> SquarefreeDecomposition:
    fld = f.field
    if f.is_zero():
        raise PolyError("squarefree decomposition of the zero form")
    tm = f.t_multiplicity()
    g = f.dehomogenize()
    unit = g[-1]
    parts: dict[int, BinaryForm] = {}
    for fac, m in u_squarefree(fld, g):
        parts[m] = BinaryForm.homogenize(fld, fac, len(fac) - 1)
    if tm:
        tform = BinaryForm(fld, (fld.zero_code, fld.one_code))
        parts[tm] = parts[tm] * tform if tm in parts else tform
    factors = tuple((parts[m], m) for m in sorted(parts))
    return SquarefreeDecomposition(factors, FieldElement(fld, unit))


def is_square_form(f: BinaryForm) -> tuple[bool, BinaryForm | None]:
    """Whether ``f`` is the square of a form over its own field, and the root."""
    fld = f.field
    if f.degree % 2:
        return False, None
    if f.is_zero():
        return True, BinaryForm(fld, (fld.zero_code,) * (f.degree // 2 + 1))
    dec = squarefree_decomposition(f)
    if any(m % 2 for _, m in dec.factors):
        return False, None
    r = fld.some_sqrt_code(dec.unit.value)
    if r is None:
        return False, None
    root = BinaryForm(fld, (r,))
    for g, m in dec.factors:
        root = root * (g ** (m // 2))
    return True, root


def resultant(f: Sequence, g: Sequence, field) -> FieldElement:
    """Sylvester resultant of univariate polynomials (little-endian code lists)."""
    f = _ut(field, f)
    g = _ut(field, g)
    if not f or not g:
        raise PolyError("resultant of a zero polynomial")
    m, n = len(f) - 1, len(g) - 1
    if m == 0 and n == 0:
        return FieldElement(field, field.one_code)
    mat = sylvester_matrix(list(reversed(f)), list(reversed(g)), field.zero_code)
    return FieldElement(field, det_field(mat, field))


def sylvester_matrix(fb: list, gb: list, zero) -> list[list]:
    """Sylvester matrix from big-endian coefficient lists."""
    m, n = len(fb) - 1, len(gb) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([zero] * i + list(fb) + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + list(gb) + [zero] * (size - n - 1 - i))
    return rows


def det_field(mat: list[list], field):
    """Determinant by Gaussian elimination over a field (raw codes)."""
    a = [list(r) for r in mat]
    n = len(a)
    det = field.one_code
    for col in range(n):
        piv = next((r for r in range(col, n) if not field.is_zero(a[r][col])), None)
        if piv is None:
            return field.zero_code
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = field.neg(det)
        pv = a[col][col]
        det = field.mul(det, pv)
        inv = field.inv(pv)
        for r in range(col + 1, n):
            if field.is_zero(a[r][col]):
                continue
            fac = field.mul(a[r][col], inv)
            for c in range(col, n):
                a[r][c] = field.sub(a[r][c], field.mul(fac, a[col][c]))
    return det


def det_bareiss(mat: list[list[MultiPoly]]) -> MultiPoly:
    """Fraction-free determinant of a square matrix of polynomials."""
    a = [list(r) for r in mat]
    n = len(a)
    f0 = a[0][0]
    one = MultiPoly.const(f0.field, f0.nvars, 1)
    prev = one
    sign = 1
    for k in range(n - 1):
        if not a[k][k]:
            piv = next((r for r in range(k + 1, n) if a[r][k]), None)
            if piv is None:
                return MultiPoly.zero(f0.field, f0.nvars)
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                q = divide_exact(num, prev)
                if q is None:
                    raise PolyError("Bareiss step not exact")
                a[i][j] = q
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


MAX_DISC_DEGREE = 6


@lru_cache(maxsize=None)
def _universal_discriminant_zz(d: int) -> MultiPoly:
    nv = d + 1
    a = MultiPoly.gens(QQ, nv)
    # f(s) = a0 s^d + ... + ad ; f'(s) = sum (d-i) a_i s^(d-1-i)
    fb = list(a)
    gb = [a[i] * (d - i) for i in range(d)]
    zero = MultiPoly.zero(QQ, nv)
    mat = sylvester_matrix(fb, gb, zero)
    res = det_bareiss(mat)
    q = divide_exact(res, a[0])
    if q is None:
        raise PolyError("resultant not divisible by a0")
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return q if sign > 0 else -q


def universal_discriminant(d: int, char2: bool = False) -> MultiPoly:
    """Discriminant of the universal binary form ``sum a_i s^(d-i) t^i`` in ``a_0..a_d``.

    Normalized as ``(-1)^(d(d-1)/2) Res(f, f_s) / a_0``; with ``char2`` the
    integer coefficients are reduced mod 2.
    """
    if not 2 <= d <= MAX_DISC_DEGREE:
        raise PolyError(f"discriminant degree {d} outside the supported range 2..{MAX_DISC_DEGREE}")
    D = _universal_discriminant_zz(d)
    if not char2:
        return D
    return reduce_integer_poly(D, field_make(2, 1))


def reduce_integer_poly(D: MultiPoly, field) -> MultiPoly:
    out = {}
    for e, c in D.terms.items():
        if c.denominator != 1:
            raise PolyError("non-integral coefficient")
        out[e] = field.from_int(c.numerator)
    return MultiPoly(field, D.nvars, out)


@lru_cache(maxsize=None)
def disc_sqrt_char2(d: int) -> MultiPoly:
    """``P`` over GF(2) with ``P^2`` equal to the universal discriminant mod 2."""
    D = universal_discriminant(d, char2=True)
    out = {}
    for e, c in D.terms.items():
        if any(k % 2 for k in e):
            raise AssertionError(f"discriminant mod 2 has an odd exponent {e}; it is not a square")
        out[tuple(k // 2 for k in e)] = c
    P = MultiPoly(D.field, D.nvars, out)
    if P.is_homogeneous() != d - 1:
        raise AssertionError(f"square root of the degree-{d} discriminant is not homogeneous of degree {d - 1}")
    return P


def discriminant(f: BinaryForm) -> FieldElement:
    """Discriminant of a concrete binary form through the universal polynomial."""
    fld = f.field
    d = f.degree
    if fld.characteristic == 2:
        D = universal_discriminant(d, char2=True)
        Dm = D.map_coeffs(lambda c: c, fld)
    elif fld.characteristic == 0:
        Dm = universal_discriminant(d)
    else:
        Dm = reduce_integer_poly(universal_discriminant(d), fld)
    return Dm.evaluate([FieldElement(fld, c) for c in f.coeffs])
