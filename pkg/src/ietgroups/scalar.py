"""Exact scalars: rationals and elements of the cubic field Q(a).

``a`` is the unique real root of ``x**3 + x**2 + x - 1``.  Rationals are
plain :class:`fractions.Fraction` values; elements of Q(a) that are not
rational are :class:`Qa` instances.  Every arithmetic operation on a
:class:`Qa` returns a ``Fraction`` whenever the result happens to be rational,
so ``Qa`` values are always genuinely irrational.

Signs of ``Qa`` elements are decided by evaluating ``c0 + c1*x + c2*x**2`` on
a rational bracket of ``a`` refined by bisection.
"""

from __future__ import annotations

import math
from decimal import Decimal, localcontext
from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = [
    "Qa",
    "Scalar",
    "A",
    "as_scalar",
    "qa",
    "sign",
    "floor",
    "is_rational",
    "a_bracket",
    "encode_scalar",
    "decode_scalar",
    "to_decimal",
    "format_scalar",
    "parse_scalar",
]

#: Hard cap on bisection depth when deciding the sign of a Q(a) element.
MAX_BISECTIONS = 256

# Depths at which the interval evaluation is attempted; the bracket itself is
# refined one bisection at a time.
_CHECK_DEPTHS = (0, 8, 16, 24, 32, 48, 64, 96, 128, 192, MAX_BISECTIONS)


def _minpoly(x: Fraction) -> Fraction:
    return x * x * x + x * x + x - 1


_BRACKETS: list[tuple[Fraction, Fraction]] = [(Fraction(1, 2), Fraction(3, 5))]


def a_bracket(depth: int) -> tuple[Fraction, Fraction]:
    """Rational bracket ``(lo, hi)`` of ``a`` after ``depth`` bisections.

    Always satisfies ``p(lo) < 0 < p(hi)`` for ``p(x) = x^3 + x^2 + x - 1``.
    """
    if depth > MAX_BISECTIONS:
        raise ArithmeticError("bisection cap exceeded for Q(a) enclosure")
    while len(_BRACKETS) <= depth:
        lo, hi = _BRACKETS[-1]
        mid = (lo + hi) / 2
        # p has no rational root, so p(mid) != 0
        if _minpoly(mid) < 0:
            _BRACKETS.append((mid, hi))
        else:
            _BRACKETS.append((lo, mid))
    return _BRACKETS[depth]


def _bracket_ints(depth: int) -> tuple[int, int, int]:
    """Bracket of ``a`` at ``depth`` as integers ``(l, h, den)`` with ``lo = l/den``."""
    while len(_BRACKET_INTS) <= depth:
        lo, hi = a_bracket(len(_BRACKET_INTS))
        den = lo.denominator * hi.denominator // math.gcd(lo.denominator, hi.denominator)
        _BRACKET_INTS.append((lo.numerator * (den // lo.denominator), hi.numerator * (den // hi.denominator), den))
    return _BRACKET_INTS[depth]


_BRACKET_INTS: list[tuple[int, int, int]] = []


def _int_sign(n0: int, n1: int, n2: int) -> int:
    """Sign of ``n0 + n1*a + n2*a**2`` for integers with ``(n1, n2) != (0, 0)``."""
    for depth in _CHECK_DEPTHS:
        low, high, _ = _int_range(n0, n1, n2, depth)
        if low > 0:
            return 1
        if high < 0:
            return -1
    raise ArithmeticError("sign undecided after bisection cap; value is not a nonzero Q(a) element")


def _make(n0: int, n1: int, n2: int, d: int):
    """Normalised scalar ``(n0 + n1*a + n2*a**2) / d`` with ``d > 0``."""
    if not n1 and not n2:
        return Fraction(n0, d)
    g = math.gcd(math.gcd(n0, n1), math.gcd(n2, d))
    if g != 1:
        n0, n1, n2, d = n0 // g, n1 // g, n2 // g, d // g
    x = Qa.__new__(Qa)
    x._n = (n0, n1, n2, d)
    x._sign = None
    return x


class Qa:
    """Element ``c0 + c1*a + c2*a**2`` of Q(a) with ``(c1, c2) != (0, 0)``.

    Stored as integer numerators over one positive denominator.  Use
    :func:`qa` to build values; it normalises rational results to
    ``Fraction``.
    """

    __slots__ = ("_n", "_sign")

    def __init__(self, c0, c1, c2):
        c0, c1, c2 = Fraction(c0), Fraction(c1), Fraction(c2)
        if not c1 and not c2:
            raise ValueError("rational element must be stored as Fraction; use qa()")
        d = math.lcm(c0.denominator, c1.denominator, c2.denominator)
        self._n = (
            c0.numerator * (d // c0.denominator),
            c1.numerator * (d // c1.denominator),
            c2.numerator * (d // c2.denominator),
            d,
        )
        self._sign = None

    @property
    def coefficients(self) -> tuple[Fraction, Fraction, Fraction]:
        n0, n1, n2, d = self._n
        return Fraction(n0, d), Fraction(n1, d), Fraction(n2, d)

    @property
    def c0(self) -> Fraction:
        return Fraction(self._n[0], self._n[3])

    @property
    def c1(self) -> Fraction:
        return Fraction(self._n[1], self._n[3])

    @property
    def c2(self) -> Fraction:
        return Fraction(self._n[2], self._n[3])

    def __repr__(self):
        c0, c1, c2 = self.coefficients
        return f"Qa({c0}, {c1}, {c2})"

    def __str__(self):
        return format_scalar(self)

    def __hash__(self):
        return hash((Qa, self._n))

    # -- arithmetic ---------------------------------------------------------

    def __neg__(self):
        n0, n1, n2, d = self._n
        return _make(-n0, -n1, -n2, d)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __add__(self, other):
        o = _ints(other)
        if o is None:
            return NotImplemented
        n0, n1, n2, d = self._n
        m0, m1, m2, e = o
        if d == e:
            return _make(n0 + m0, n1 + m1, n2 + m2, d)
        return _make(n0 * e + m0 * d, n1 * e + m1 * d, n2 * e + m2 * d, d * e)

    __radd__ = __add__

    def __sub__(self, other):
        o = _ints(other)
        if o is None:
            return NotImplemented
        n0, n1, n2, d = self._n
        m0, m1, m2, e = o
        if d == e:
            return _make(n0 - m0, n1 - m1, n2 - m2, d)
        return _make(n0 * e - m0 * d, n1 * e - m1 * d, n2 * e - m2 * d, d * e)

    def __rsub__(self, other):
        o = _ints(other)
        if o is None:
            return NotImplemented
        n0, n1, n2, d = self._n
        m0, m1, m2, e = o
        return _make(m0 * d - n0 * e, m1 * d - n1 * e, m2 * d - n2 * e, d * e)

    def __mul__(self, other):
        o = _ints(other)
        if o is None:
            return NotImplemented
        return _mul(self._n, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _ints(other)
        if o is None:
            return NotImplemented
        return _mul(self._n, _inverse(o))

    def __rtruediv__(self, other):
        o = _ints(other)
        if o is None:
            return NotImplemented
        return _mul(o, _inverse(self._n))

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (1 / self) ** (-n)
        result: Scalar = Fraction(1)
        base: Scalar = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- order --------------------------------------------------------------

    def sign(self) -> int:
        """Exact sign, by interval evaluation on a bisected bracket of ``a``."""
        if self._sign is None:
            n0, n1, n2, _ = self._n
            self._sign = _int_sign(n0, n1, n2)
        return self._sign

    def _cmp(self, other):
        if isinstance(other, float):
            if math.isinf(other):
                return -1 if other > 0 else 1
            return None
        o = _ints(other)
        if o is None:
            return None
        n0, n1, n2, d = self._n
        m0, m1, m2, e = o
        a1, a2 = n1 * e - m1 * d, n2 * e - m2 * d
        a0 = n0 * e - m0 * d
        if not a1 and not a2:
            return (a0 > 0) - (a0 < 0)
        return _int_sign(a0, a1, a2)

    def __eq__(self, other):
        if isinstance(other, Qa):
            return self._n == other._n
        if isinstance(other, (int, Fraction)):
            return False
        return NotImplemented

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    def __bool__(self):
        return True

    def __floor__(self):
        return floor(self)

    def __float__(self):
        lo, hi = enclosure(self, Fraction(1, 2**60))
        return float((lo + hi) / 2)


Scalar = Union[Fraction, Qa]

#: The generator ``a`` of Q(a).
A = Qa(0, 1, 0)


def qa(c0, c1=0, c2=0) -> Scalar:
    """Build ``c0 + c1*a + c2*a**2``, returning a ``Fraction`` when rational."""
    c0, c1, c2 = Fraction(c0), Fraction(c1), Fraction(c2)
    if not c1 and not c2:
        return c0
    return Qa(c0, c1, c2)


def _ints(x):
    if isinstance(x, Qa):
        return x._n
    if isinstance(x, Fraction):
        return x.numerator, 0, 0, x.denominator
    if isinstance(x, int) and not isinstance(x, bool):
        return x, 0, 0, 1
    if isinstance(x, Rational):
        return x.numerator, 0, 0, x.denominator
    return None


def _mul(x, y) -> Scalar:
    x0, x1, x2, d = x
    y0, y1, y2, e = y
    z0 = x0 * y0
    z1 = x0 * y1 + x1 * y0
    z2 = x0 * y2 + x1 * y1 + x2 * y0
    z3 = x1 * y2 + x2 * y1
    z4 = x2 * y2
    # a^3 = 1 - a - a^2, a^4 = 2a - 1
    return _make(z0 + z3 - z4, z1 - z3 + 2 * z4, z2 - z3, d * e)


def _inverse(x):
    """Integer form of ``1/x`` from the multiplication matrix of ``x``."""
    x0, x1, x2, d = x
    if not x0 and not x1 and not x2:
        raise ZeroDivisionError("division by zero in Q(a)")
    if not x1 and not x2:
        return (d, 0, 0, x0) if x0 > 0 else (-d, 0, 0, -x0)
    # columns: x*1, x*a, x*a^2 in the basis (1, a, a^2), numerators only
    c0 = (x0, x1, x2)
    c1 = (x2, x0 - x2, x1 - x2)
    c2 = (x1 - x2, 2 * x2 - x1, x0 - x1)
    m = [[Fraction(c0[i]), Fraction(c1[i]), Fraction(c2[i]), Fraction(int(i == 0))] for i in range(3)]
    for col in range(3):
        piv = next(r for r in range(col, 3) if m[r][col])
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [v / p for v in m[col]]
        for r in range(3):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    # (numerators of x) * y = 1  =>  x * (d*y) = 1
    sol = [m[i][3] * d for i in range(3)]
    den = math.lcm(*(s.denominator for s in sol))
    return tuple(s.numerator * (den // s.denominator) for s in sol) + (den,)


def as_scalar(x) -> Scalar:
    """Coerce ints, fractions, ``"p/q"`` strings and Q(a) values to a Scalar."""
    if isinstance(x, Qa):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"cannot interpret {x!r} as an exact scalar")


def is_rational(x: Scalar) -> bool:
    return not isinstance(x, Qa)


def sign(x: Scalar) -> int:
    if isinstance(x, Qa):
        return x.sign()
    return (x > 0) - (x < 0)


def _int_range(n0: int, n1: int, n2: int, depth: int) -> tuple[int, int, int]:
    """``(L, H, D)`` with ``L/D <= n0 + n1*a + n2*a**2 <= H/D`` at bracket ``depth``."""
    l, h, den = _bracket_ints(depth)
    base = n0 * den * den
    t1 = (n1 * l * den, n1 * h * den) if n1 >= 0 else (n1 * h * den, n1 * l * den)
    t2 = (n2 * l * l, n2 * h * h) if n2 >= 0 else (n2 * h * h, n2 * l * l)
    return base + t1[0] + t2[0], base + t1[1] + t2[1], den * den


def enclosure(x: Scalar, width: Fraction) -> tuple[Fraction, Fraction]:
    """Rational interval ``[lo, hi]`` containing ``x`` with ``hi - lo <= width``."""
    if not isinstance(x, Qa):
        x = Fraction(x)
        return x, x
    n0, n1, n2, d = x._n
    depth = 0
    while True:
        L, H, D = _int_range(n0, n1, n2, depth)
        if Fraction(H - L, D * d) <= width or depth == MAX_BISECTIONS:
            return Fraction(L, D * d), Fraction(H, D * d)
        depth += 1


def floor(x: Scalar) -> int:
    """Exact floor of a scalar."""
    if not isinstance(x, Qa):
        return math.floor(x)
    n0, n1, n2, d = x._n
    for depth in _CHECK_DEPTHS:
        L, H, D = _int_range(n0, n1, n2, depth)
        lo, hi = L // (D * d), H // (D * d)
        if lo == hi:
            return lo
    raise ArithmeticError("floor undecided after bisection cap")


# -- serialisation ----------------------------------------------------------


def _frac_str(x: Fraction) -> str:
    return str(Fraction(x))


def encode_scalar(x: Scalar) -> dict:
    """JSON encoding: ``{"Q": "p/q"}`` or ``{"Qa": [c0, c1, c2]}``."""
    if isinstance(x, Qa):
        return {"Qa": [_frac_str(c) for c in x.coefficients]}
    return {"Q": _frac_str(as_scalar(x))}


def decode_scalar(obj) -> Scalar:
    if isinstance(obj, dict):
        # a "decimal" rendering may ride along; it is never read back
        obj = {k: v for k, v in obj.items() if k != "decimal"}
        if set(obj) == {"Q"}:
            return Fraction(str(obj["Q"]))
        if set(obj) == {"Qa"}:
            coeffs = obj["Qa"]
            if not isinstance(coeffs, list) or len(coeffs) != 3:
                raise ValueError("Qa scalar needs exactly three coefficients")
            return qa(*(Fraction(str(c)) for c in coeffs))
        raise ValueError(f"unknown scalar encoding {obj!r}")
    if isinstance(obj, bool):
        raise ValueError("booleans are not scalars")
    if isinstance(obj, (int, str)):
        return Fraction(obj)
    raise ValueError(f"unknown scalar encoding {obj!r}")


def format_scalar(x: Scalar) -> str:
    """Human readable exact form, e.g. ``1/2 - 1/2*a + a^2``."""
    if not isinstance(x, Qa):
        return str(Fraction(x))
    parts = []
    for c, mono in zip(x.coefficients, ("", "a", "a^2")):
        if not c:
            continue
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{mag}*{mono}"
        else:
            body = str(mag)
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


def parse_scalar(text: str) -> Scalar:
    """Parse ``"p/q"`` or a JSON scalar object given as text."""
    text = text.strip()
    if text.startswith("{"):
        import json

        return decode_scalar(json.loads(text))
    return Fraction(text)


def to_decimal(x: Scalar, digits: int = 30) -> Decimal:
    """Correctly rounded decimal approximation with ``digits`` significant digits."""
    with localcontext() as ctx:
        ctx.prec = digits
        if not isinstance(x, Qa):
            x = Fraction(x)
            return Decimal(x.numerator) / Decimal(x.denominator)
        rel = Fraction(1, 10 ** (digits + 8))
        lo, hi = enclosure(x, rel)
        while not (lo > 0 or hi < 0):
            rel /= 10**6
            lo, hi = enclosure(x, rel)
        mag = min(abs(lo), abs(hi))
        lo, hi = enclosure(x, mag * rel)
        mid = (lo + hi) / 2
        return Decimal(mid.numerator) / Decimal(mid.denominator)
