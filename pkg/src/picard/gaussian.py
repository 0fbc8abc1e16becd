"""Exact arithmetic in the Gaussian integers Z[i] and on integral 3-vectors."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

IntLike = Union[int, "GaussInt"]

_GI_RE = re.compile(
    r"""^\s*(?:
        (?P<re>[+-]?\d+)(?:\s*(?P<sign>[+-])\s*(?P<im1>\d*)\s*i)?   # a, a+bi, a-i
      | (?P<im2>[+-]?\d*)\s*i                                       # bi, i, -i
    )\s*$""",
    re.VERBOSE,
)


@dataclass(frozen=True, slots=True)
class GaussInt:
    re: int = 0
    im: int = 0

    @classmethod
    def of(cls, x: IntLike | complex) -> GaussInt:
        if isinstance(x, GaussInt):
            return x
        if isinstance(x, int):
            return cls(x, 0)
        if isinstance(x, complex):
            a, b = round(x.real), round(x.imag)
            if a != x.real or b != x.imag:
                raise ValueError(f"{x!r} is not a Gaussian integer")
            return cls(int(a), int(b))
        raise TypeError(f"cannot convert {type(x).__name__} to GaussInt")

    @classmethod
    def parse(cls, text: str) -> GaussInt:
        """Parse ``"a"``, ``"bi"``, ``"a+bi"`` or ``"a-bi"`` (e.g. ``"-1+2i"``, ``"i"``)."""
        m = _GI_RE.match(text)
        if m is None:
            raise ValueError(f"malformed Gaussian integer {text!r}")
        if m.group("re") is not None:
            a = int(m.group("re"))
            if m.group("sign") is None:
                return cls(a, 0)
            b = int(m.group("im1") or 1)
            return cls(a, b if m.group("sign") == "+" else -b)
        s = m.group("im2")
        b = -1 if s == "-" else 1 if s in ("", "+") else int(s)
        return cls(0, b)

    def __str__(self) -> str:
        a, b = self.re, self.im
        if b == 0:
            return str(a)
        ib = "i" if abs(b) == 1 else f"{abs(b)}i"
        if a == 0:
            return ib if b > 0 else "-" + ib
        return f"{a}{'+' if b > 0 else '-'}{ib}"

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    def __bool__(self) -> bool:
        return self.re != 0 or self.im != 0

    def __add__(self, other: IntLike) -> GaussInt:
        o = GaussInt.of(other)
        return GaussInt(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: IntLike) -> GaussInt:
        o = GaussInt.of(other)
        return GaussInt(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: IntLike) -> GaussInt:
        return GaussInt.of(other) - self

    def __neg__(self) -> GaussInt:
        return GaussInt(-self.re, -self.im)

    def __mul__(self, other: IntLike) -> GaussInt:
        o = GaussInt.of(other)
        return GaussInt(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> GaussInt:
        if k < 0:
            raise ValueError("negative powers are not Gaussian integers in general")
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self) -> GaussInt:
        return GaussInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def is_unit(self) -> bool:
        return self.norm() == 1

    def divmod(self, other: IntLike) -> tuple[GaussInt, GaussInt]:
        """Euclidean division with the quotient rounded to the nearest Gaussian integer.

        The remainder satisfies ``norm(rem) <= norm(other) / 2``.
        """
        d = GaussInt.of(other)
        n = d.norm()
        if n == 0:
            raise ZeroDivisionError("Gaussian division by zero")
        num = self * d.conj()
        q = GaussInt(_round_div(num.re, n), _round_div(num.im, n))
        return q, self - q * d

    def exact_div(self, other: IntLike) -> GaussInt:
        q, r = self.divmod(other)
        if r:
            raise ValueError(f"{other} does not divide {self}")
        return q

    def divides(self, other: IntLike) -> bool:
        if not self:
            return not GaussInt.of(other)
        return not GaussInt.of(other).divmod(self)[1]

    def key(self) -> tuple[int, int]:
        return (self.re, self.im)


def _round_div(a: int, b: int) -> int:
    """Nearest integer to a/b for b > 0, ties rounded up."""
    return (2 * a + b) // (2 * b)


ZERO = GaussInt(0, 0)
ONE = GaussInt(1, 0)
I = GaussInt(0, 1)
UNITS = (ONE, I, -ONE, -I)


def gi_gcd(a: IntLike, b: IntLike) -> GaussInt:
    a, b = GaussInt.of(a), GaussInt.of(b)
    if not a and not b:
        raise ValueError("gcd(0, 0) is undefined")
    while b:
        a, b = b, a.divmod(b)[1]
    return a


def gaussian_integers(max_norm: int) -> Iterator[GaussInt]:
    """All Gaussian integers of norm at most ``max_norm``, in (re, im) order."""
    m = int(max_norm**0.5) + 1
    for a in range(-m, m + 1):
        for b in range(-m, m + 1):
            if a * a + b * b <= max_norm:
                yield GaussInt(a, b)


@dataclass(frozen=True, slots=True)
class GaussVec3:
    """Column vector (n, p, q) over Z[i]."""

    n: GaussInt
    p: GaussInt
    q: GaussInt

    @classmethod
    def of(cls, n: IntLike | complex, p: IntLike | complex, q: IntLike | complex) -> GaussVec3:
        return cls(GaussInt.of(n), GaussInt.of(p), GaussInt.of(q))

    @classmethod
    def parse(cls, text: str) -> GaussVec3:
        parts = text.split(",")
        if len(parts) != 3:
            raise ValueError(f"expected three comma-separated entries, got {text!r}")
        return cls(*(GaussInt.parse(s) for s in parts))

    def __iter__(self) -> Iterator[GaussInt]:
        return iter((self.n, self.p, self.q))

    def __str__(self) -> str:
        return f"{self.n},{self.p},{self.q}"

    def __bool__(self) -> bool:
        return bool(self.n or self.p or self.q)

    def scale(self, c: IntLike) -> GaussVec3:
        return GaussVec3(self.n * c, self.p * c, self.q * c)

    def to_complex(self) -> tuple[complex, complex, complex]:
        return (complex(self.n), complex(self.p), complex(self.q))

    def key(self) -> tuple[int, ...]:
        return (*self.n.key(), *self.p.key(), *self.q.key())

    def max_norm(self) -> int:
        return max(x.norm() for x in self)


def content(v: GaussVec3) -> GaussInt:
    if not v:
        raise ValueError("zero vector has no content")
    g = ZERO
    for x in v:
        if x:
            g = x if not g else gi_gcd(g, x)
    return g


def is_primitive(v: GaussVec3) -> bool:
    return content(v).is_unit()


def _orient_key(v: GaussVec3) -> tuple:
    # Larger is better: first nonzero entry wants re > 0, else re == 0 and im > 0.
    first = next(x for x in v if x)
    return (first.re > 0, first.re == 0 and first.im > 0, v.key())


def canonical_unit_rep(v: GaussVec3) -> GaussVec3:
    """The representative of ``{v, iv, -v, -iv}`` whose first nonzero entry lies in
    the half-open quadrant ``re > 0`` or ``re == 0, im > 0``.

    Exactly one unit multiple satisfies this; the lexicographic tie-break never
    fires but keeps the order total.
    """
    if not v:
        raise ValueError("zero vector has no unit representative")
    return max((v.scale(u) for u in UNITS), key=_orient_key)
