"""Exact arithmetic over Q(sqrt d), with the 2D vectors and matrices built on it.

Every geometric quantity in this package is a :class:`Scalar`: an element
``a + b*sqrt(d)`` of a real quadratic field, ``a`` and ``b`` rational and ``d``
a squarefree integer.  Rational values are normalized to ``d = 1`` so they are
compatible with every ambient field.  Signs, comparisons and equality are
decided by exact case analysis on the rational parts; no floating point enters
anywhere in the kernel.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd, isqrt


class MixedFieldError(ValueError):
    """Raised when combining scalars from two genuinely different fields."""


def _squarefree(d: int) -> bool:
    if d < 1:
        return False
    f = 2
    while f * f <= d:
        if d % (f * f) == 0:
            return False
        f += 1
    return True


class Scalar:
    """An element a + b*sqrt(d), stored with reduced fractions.

    ``b == 0`` forces ``d == 1``, so plain rationals compare equal across
    fields.  Construction from int/Fraction is cheap; all operations are pure
    and the value is immutable.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d=1):
        if not isinstance(a, Fraction):
            a = Fraction(a)
        if not isinstance(b, Fraction):
            b = Fraction(b)
        if b == 0:
            d = 1
        elif d <= 1:
            raise ValueError("irrational part needs d > 1, got d=%r" % (d,))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, *args):
        raise AttributeError("Scalar is immutable")

    @staticmethod
    def root(d: int) -> "Scalar":
        """The element sqrt(d) itself."""
        if not _squarefree(d):
            raise ValueError("d must be squarefree and >= 1, got %r" % (d,))
        if d == 1:
            return Scalar(1)
        return Scalar(0, 1, d)

    # -- coercion ---------------------------------------------------------

    @staticmethod
    def _as_scalar(x):
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return Scalar(x)
        return None

    def _join(self, other):
        """Common field discriminant for a binary operation."""
        if self.d == other.d:
            return self.d
        if self.b == 0:
            return other.d
        if other.b == 0:
            return self.d
        raise MixedFieldError(
            "cannot mix sqrt(%d) and sqrt(%d) values" % (self.d, other.d)
        )

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = self._as_scalar(other)
        if other is None:
            return NotImplemented
        d = self._join(other)
        return Scalar(self.a + other.a, self.b + other.b, d)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._as_scalar(other)
        if other is None:
            return NotImplemented
        d = self._join(other)
        return Scalar(self.a - other.a, self.b - other.b, d)

    def __rsub__(self, other):
        other = self._as_scalar(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._as_scalar(other)
        if other is None:
            return NotImplemented
        d = self._join(other)
        if self.b == 0:
            return Scalar(self.a * other.a, self.a * other.b, d)
        if other.b == 0:
            return Scalar(self.a * other.a, self.b * other.a, d)
        return Scalar(
            self.a * other.a + self.b * other.b * d,
            self.a * other.b + self.b * other.a,
            d,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._as_scalar(other)
        if other is None:
            return NotImplemented
        d = self._join(other)
        if other.a == 0 and other.b == 0:
            raise ZeroDivisionError("scalar division by zero")
        if other.b == 0:
            return Scalar(self.a / other.a, self.b / other.a, d)
        # 1/(a + b sqrt d) = (a - b sqrt d) / (a^2 - b^2 d)
        norm = other.a * other.a - other.b * other.b * d
        inv = Scalar(other.a / norm, -other.b / norm, d)
        return self * inv

    def __rtruediv__(self, other):
        other = self._as_scalar(other)
        if other is None:
            return NotImplemented
        return other / self

    def __neg__(self):
        return Scalar(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __bool__(self):
        return self.a != 0 or self.b != 0

    # -- order ------------------------------------------------------------

    def sign(self) -> int:
        """Exact sign in {-1, 0, +1}.

        On the ambiguous branch (a, b of opposite signs) the comparison of
        a^2 with b^2 d decides, entirely in rational arithmetic.
        """
        a, b = self.a, self.b
        if b == 0:
            return -1 if a < 0 else (0 if a == 0 else 1)
        if a == 0:
            return -1 if b < 0 else 1
        sa = -1 if a < 0 else 1
        sb = -1 if b < 0 else 1
        if sa == sb:
            return sa
        lhs = a * a
        rhs = b * b * self.d
        if lhs == rhs:
            return 0
        return sa if lhs > rhs else sb

    def _cmp(self, other):
        other = self._as_scalar(other)
        if other is None:
            return NotImplemented
        if self.b == 0 and other.b == 0:
            # Fraction comparison cross-multiplies without re-reducing
            if self.a < other.a:
                return -1
            return 1 if self.a > other.a else 0
        return (self - other).sign()

    def __eq__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c == 0

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c >= 0

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    # -- misc -------------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if self.b != 0:
            raise ValueError("%s is irrational" % (self,))
        return self.a

    def floor(self) -> int:
        """Largest integer n with n <= self, by exact bisection."""
        if self.b == 0:
            return self.a.numerator // self.a.denominator
        bound = abs(self.a) + abs(self.b) * (isqrt(self.d) + 1)
        lo = -(int(bound) + 2)
        hi = int(bound) + 2
        # invariant: lo <= self < hi
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if (self - mid).sign() >= 0:
                lo = mid
            else:
                hi = mid
        return lo

    def __float__(self):
        # rendering support only; exact code never calls this
        return float(self.a) + float(self.b) * self.d ** 0.5

    def __repr__(self):
        return "Scalar(%r)" % (str(self),)

    def __str__(self):
        return format_scalar(self)


def format_scalar(s: Scalar) -> str:
    """Render exactly: ``p/q`` when rational, else ``p/q+r/s√d``."""
    if s.b == 0:
        return str(s.a)
    tail = "%s√%d" % (str(abs(s.b)), s.d)
    op = "+" if s.b > 0 else "-"
    return "%s%s%s" % (str(s.a), op, tail)


_RAT = r"[+-]?\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    r"^\s*(?P<a>%(r)s)?\s*"
    r"(?:(?P<op>[+-])?\s*(?P<b>\d+(?:/\d+)?)?\s*(?:√|sqrt\()\s*(?P<d>\d+)\)?)?\s*$"
    % {"r": _RAT}
)


def parse_scalar(text: str) -> Scalar:
    """Parse the exact rendering produced by :func:`format_scalar`.

    Accepts ``3``, ``-5/2``, ``1/2+1/3√3``, ``√3``, ``2sqrt(3)`` and the like.
    """
    m = _SCALAR_RE.match(text)
    if not m or (m.group("a") is None and m.group("d") is None):
        raise ValueError("cannot parse scalar %r" % (text,))
    a = Fraction(m.group("a")) if m.group("a") is not None else Fraction(0)
    if m.group("d") is None:
        return Scalar(a)
    d = int(m.group("d"))
    b = Fraction(m.group("b")) if m.group("b") is not None else Fraction(1)
    if m.group("op") == "-":
        b = -b
    if m.group("a") is not None and m.group("op") is None:
        # forms like "2√3" with no separating sign: the rational part was
        # actually the coefficient of the root
        b = a if m.group("b") is None else b
        a = Fraction(0) if m.group("b") is None else a
    return Scalar(a, b, d)


def scalar_sign(s: Scalar) -> int:
    """Exact sign of a scalar; the kernel's basic decision procedure."""
    return s.sign()


class Vec2:
    """A vector in the plane with Scalar coordinates."""

    __slots__ = ("x", "y")

    def __init__(self, x, y):
        if not isinstance(x, Scalar):
            x = Scalar(x)
        if not isinstance(y, Scalar):
            y = Scalar(y)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def __setattr__(self, *args):
        raise AttributeError("Vec2 is immutable")

    def __add__(self, other):
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other):
        return Vec2(self.x - other.x, self.y - other.y)

    def __neg__(self):
        return Vec2(-self.x, -self.y)

    def __mul__(self, s):
        return Vec2(self.x * s, self.y * s)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Vec2):
            return NotImplemented
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.x, self.y))

    def __iter__(self):
        return iter((self.x, self.y))

    def __bool__(self):
        return bool(self.x) or bool(self.y)

    def __repr__(self):
        return "Vec2(%s, %s)" % (self.x, self.y)


def cross(u: Vec2, v: Vec2) -> Scalar:
    """u.x*v.y - u.y*v.x, the orientation test used throughout tracing."""
    return u.x * v.y - u.y * v.x


def dot(u: Vec2, v: Vec2) -> Scalar:
    return u.x * v.x + u.y * v.y


class Mat2:
    """A 2x2 matrix with Scalar entries, rows (a b / c d)."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        vals = [v if isinstance(v, Scalar) else Scalar(v) for v in (a, b, c, d)]
        for name, v in zip(("a", "b", "c", "d"), vals):
            object.__setattr__(self, name, v)

    def __setattr__(self, *args):
        raise AttributeError("Mat2 is immutable")

    @staticmethod
    def identity() -> "Mat2":
        return Mat2(1, 0, 0, 1)

    @staticmethod
    def diagonal(x, y) -> "Mat2":
        return Mat2(x, 0, 0, y)

    def det(self) -> Scalar:
        return self.a * self.d - self.b * self.c

    def apply(self, v: Vec2) -> Vec2:
        return Vec2(self.a * v.x + self.b * v.y, self.c * v.x + self.d * v.y)

    def __mul__(self, other):
        if isinstance(other, Vec2):
            return self.apply(other)
        if isinstance(other, Mat2):
            return Mat2(
                self.a * other.a + self.b * other.c,
                self.a * other.b + self.b * other.d,
                self.c * other.a + self.d * other.c,
                self.c * other.b + self.d * other.d,
            )
        return NotImplemented

    def inverse(self) -> "Mat2":
        det = self.det()
        if det.sign() == 0:
            raise ZeroDivisionError("matrix is singular")
        return Mat2(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def __eq__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        return (
            self.a == other.a
            and self.b == other.b
            and self.c == other.c
            and self.d == other.d
        )

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def __repr__(self):
        return "Mat2(%s %s / %s %s)" % (self.a, self.b, self.c, self.d)


def direction_frame(p: int, q: int) -> Mat2:
    """An integer matrix g with det 1 sending (p, q) to (1, 0).

    Replaces a rotation by the saddle direction with a unimodular change of
    frame, so every later computation stays inside the field.  Requires
    (p, q) primitive and nonzero.
    """
    if (p, q) == (0, 0):
        raise ValueError("direction (0, 0) is not allowed")
    if gcd(p, q) != 1:
        raise ValueError("direction (%d, %d) is not primitive" % (p, q))
    u, v = _bezout(p, q)
    return Mat2(u, v, -q, p)


def _bezout(p: int, q: int):
    """u, v with u*p + v*q == 1 from the extended Euclidean algorithm."""
    old_r, r = p, q
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        k = old_r // r
        old_r, r = r, old_r - k * r
        old_s, s = s, old_s - k * s
        old_t, t = t, old_t - k * t
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    return old_s, old_t
