"""Exact one-variable arithmetic over the integers.

Three value types live here:

* :class:`IntPoly`    -- dense polynomials in ``u`` with integer coefficients,
* :class:`LaurentPoly` -- sparse Laurent polynomials in ``u``,
* :class:`RatFunc`    -- elements of Q(u) stored as a reduced quotient of two
  :class:`IntPoly` with positive leading denominator coefficient.

All values are immutable and hashable.  Coefficients are Python ints, so no
overflow can occur.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Mapping

__all__ = [
    "IntPoly",
    "LaurentPoly",
    "RatFunc",
    "PoleError",
    "rf_add",
    "rf_sub",
    "rf_mul",
    "rf_div",
    "rf_eval",
]


class PoleError(ZeroDivisionError):
    """Evaluation point is a zero of the denominator."""


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class IntPoly:
    """Polynomial in ``u`` over Z; ``coeffs[k]`` is the coefficient of ``u^k``."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[int] = ()):
        self.coeffs = _trim(int(c) for c in coeffs)
        self._hash = None

    @classmethod
    def constant(cls, c: int) -> "IntPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPoly":
        if k < 0:
            raise ValueError("negative exponent in IntPoly")
        return cls((0,) * k + (c,))

    # -- basic queries -------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for zero

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def content(self) -> int:
        """gcd of the coefficients, signed like the leading coefficient."""
        if not self.coeffs:
            return 0
        g = reduce(gcd, self.coeffs)
        return g if self.lc > 0 else -g

    def primitive_part(self) -> "IntPoly":
        if not self.coeffs:
            return self
        c = self.content()
        return IntPoly(x // c for x in self.coeffs)

    # -- ring operations -------------------------------------------------
    def __add__(self, other):
        other = _as_intpoly(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPoly(tuple(x + y for x, y in zip(a, b)) + a[len(b):])

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(-x for x in self.coeffs)

    def __sub__(self, other):
        other = _as_intpoly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_intpoly(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of IntPoly")
        out = IntPoly((1,))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale_div(self, c: int) -> "IntPoly":
        """Exact division of every coefficient by the integer ``c``."""
        out = []
        for x in self.coeffs:
            q, r = divmod(x, c)
            if r:
                raise ArithmeticError(f"{c} does not divide {self}")
            out.append(q)
        return IntPoly(out)

    def pseudo_rem(self, other: "IntPoly") -> "IntPoly":
        """Pseudo-remainder: ``lc(other)^(d+1) * self mod other`` over Z."""
        if other.is_zero():
            raise ZeroDivisionError("pseudo-remainder by zero polynomial")
        r = list(self.coeffs)
        b = other.coeffs
        db = len(b) - 1
        lb = b[-1]
        e = max(len(r) - 1 - db + 1, 0)
        while len(r) - 1 >= db and r:
            lr = r[-1]
            shift = len(r) - 1 - db
            r = [lb * x for x in r]
            for j, y in enumerate(b):
                r[shift + j] -= lr * y
            e -= 1
            while r and r[-1] == 0:
                r.pop()
        if e > 0:
            f = lb**e
            r = [f * x for x in r]
        return IntPoly(r)

    def exact_div(self, other: "IntPoly") -> "IntPoly":
        """Quotient ``self / other`` when it is known to lie in Z[u]."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        r = list(self.coeffs)
        b = other.coeffs
        db = len(b) - 1
        q = [0] * max(len(r) - db, 0)
        while r and len(r) - 1 >= db:
            shift = len(r) - 1 - db
            c, rem = divmod(r[-1], b[-1])
            if rem:
                raise ArithmeticError("inexact polynomial division")
            q[shift] = c
            for j, y in enumerate(b):
                r[shift + j] -= c * y
            while r and r[-1] == 0:
                r.pop()
        if r:
            raise ArithmeticError("inexact polynomial division")
        return IntPoly(q)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- identity --------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly.constant(other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("IntPoly", self.coeffs))
        return self._hash

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self):
        return _render({k: c for k, c in enumerate(self.coeffs) if c})


def _as_intpoly(x):
    if isinstance(x, IntPoly):
        return x
    if isinstance(x, int):
        return IntPoly.constant(x)
    return NotImplemented


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """gcd in Z[u] by the primitive PRS; result has positive leading coefficient."""
    if a.is_zero():
        return b.primitive_part() * abs(b.content()) if b.coeffs else b
    if b.is_zero():
        return a.primitive_part() * abs(a.content())
    c = gcd(abs(a.content()), abs(b.content()))
    p, q = a.primitive_part(), b.primitive_part()
    if p.degree < q.degree:
        p, q = q, p
    while not q.is_zero():
        r = p.pseudo_rem(q)
        p, q = q, (r.primitive_part() if not r.is_zero() else r)
    return p.primitive_part() * c


def _render(terms: Mapping[int, int]) -> str:
    """Render ``{exponent: coeff}`` in descending order, e.g. ``u^2 - 2*u + 1``."""
    if not terms:
        return "0"
    parts = []
    for k in sorted(terms, reverse=True):
        c = terms[k]
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            mono = "u" if k == 1 else f"u^{k}"
            body = mono if a == 1 else f"{a}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


class LaurentPoly:
    """Element of Z[u, u^-1] stored as ``{exponent: nonzero coeff}``."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        self.terms = {int(k): int(c) for k, c in (terms or {}).items() if c}
        self._hash = None

    @classmethod
    def u(cls, k: int = 1) -> "LaurentPoly":
        return cls({k: 1})

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                out[i + j] = out.get(i + j, 0) + a * b
        return LaurentPoly(out)

    __rmul__ = __mul__

    def valuation(self) -> int:
        return min(self.terms) if self.terms else 0

    def to_ratfunc(self) -> "RatFunc":
        if not self.terms:
            return RatFunc.zero()
        v = min(self.terms)
        top = max(self.terms)
        num = IntPoly(self.terms.get(k, 0) for k in range(v, top + 1))
        if v >= 0:
            return RatFunc(num * IntPoly.monomial(v))
        return RatFunc(num, IntPoly.monomial(-v))

    def __call__(self, x):
        return sum(c * Fraction(x) ** k for k, c in self.terms.items())

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("LaurentPoly", frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({dict(sorted(self.terms.items()))})"

    def __str__(self):
        return _render(self.terms)


def _as_laurent(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.constant(x)
    return NotImplemented


class RatFunc:
    """Element of Q(u) as ``num/den`` with gcd(num, den) = 1 in Z[u] and lc(den) > 0.

    The canonical form makes ``==`` a comparison of coefficient tuples.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: IntPoly | int = 0, den: IntPoly | int = 1, *, _reduced: bool = False):
        num = _as_intpoly(num)
        den = _as_intpoly(den)
        if den is NotImplemented or num is NotImplemented:
            raise TypeError("RatFunc parts must be IntPoly or int")
        if den.is_zero():
            raise ZeroDivisionError("RatFunc with zero denominator")
        if not _reduced:
            if num.is_zero():
                den = IntPoly((1,))
            else:
                g = poly_gcd(num, den)
                if g.coeffs != (1,):
                    num, den = num.exact_div(g), den.exact_div(g)
                if den.lc < 0:
                    num, den = -num, -den
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def zero(cls) -> "RatFunc":
        return cls(IntPoly(), IntPoly((1,)), _reduced=True)

    @classmethod
    def one(cls) -> "RatFunc":
        return cls(IntPoly((1,)), IntPoly((1,)), _reduced=True)

    @classmethod
    def u(cls, k: int = 1) -> "RatFunc":
        """The monomial ``u^k`` (``k`` may be negative)."""
        if k >= 0:
            return cls(IntPoly.monomial(k), IntPoly((1,)), _reduced=True)
        return cls(IntPoly((1,)), IntPoly.monomial(-k), _reduced=True)

    @classmethod
    def from_laurent(cls, p: LaurentPoly) -> "RatFunc":
        return p.to_ratfunc()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        """True when the denominator is a monomial ``c*u^k`` with ``c = 1``."""
        return self.den.coeffs[-1] == 1 and all(c == 0 for c in self.den.coeffs[:-1])

    def to_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise ValueError(f"{self} is not a Laurent polynomial")
        shift = self.den.degree
        return LaurentPoly({k - shift: c for k, c in enumerate(self.num.coeffs) if c})

    def __add__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero() or other.num.is_zero():
            return RatFunc.zero()
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(u)")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _as_ratfunc(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num**k, self.den**k)

    def eval(self, point) -> Fraction:
        x = Fraction(point)
        d = self.den(x)
        if d == 0:
            raise PoleError(f"{self} has a pole at u = {x}")
        return Fraction(self.num(x)) / d

    def __eq__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        return f"({self.num})/({self.den})"


def _as_ratfunc(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, IntPoly)):
        return RatFunc(x)
    if isinstance(x, LaurentPoly):
        return x.to_ratfunc()
    if isinstance(x, Fraction):
        return RatFunc(x.numerator, x.denominator)
    return NotImplemented


def rf_add(a: RatFunc, b: RatFunc) -> RatFunc:
    return a + b


def rf_sub(a: RatFunc, b: RatFunc) -> RatFunc:
    return a - b


def rf_mul(a: RatFunc, b: RatFunc) -> RatFunc:
    return a * b


def rf_div(a: RatFunc, b: RatFunc) -> RatFunc:
    """Quotient in Q(u); raises ZeroDivisionError when ``b`` is zero."""
    return a / b


def rf_eval(a: RatFunc, point) -> Fraction:
    """Exact value of ``a`` at the rational ``point``; raises PoleError at a pole."""
    return a.eval(point)
