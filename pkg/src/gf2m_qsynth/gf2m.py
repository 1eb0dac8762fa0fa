"""Arithmetic over GF(2)[x] and the binary fields GF(2^n) it defines.

Polynomials are stored as nonnegative integers: bit ``i`` is the coefficient
of ``x^i``.  Everything here is an exact software model and serves as the
reference the synthesized circuits are checked against.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

__all__ = [
    "BinaryPolynomial",
    "FieldSpec",
    "FieldElement",
    "ReducibleModulusError",
    "poly_mul",
    "poly_mod",
    "poly_divmod",
    "poly_gcd",
    "is_irreducible",
    "gf_add",
    "gf_mul",
    "gf_square",
    "gf_exp_fermat",
    "frobenius_matrix",
    "low_weight_irreducible",
]


class ReducibleModulusError(ValueError):
    """The requested field modulus is not irreducible over GF(2)."""


# byte -> the same bits spread to even positions (b7..b0 -> b7 0 b6 0 ... b0)
_SPREAD = tuple(sum(((b >> k) & 1) << (2 * k) for k in range(8)) for b in range(256))


def _spread(a: int) -> int:
    out = 0
    shift = 0
    while a:
        out |= _SPREAD[a & 0xFF] << shift
        a >>= 8
        shift += 16
    return out


def poly_mul(a: int, b: int) -> int:
    """Carry-less product of two coefficient masks."""
    if a < b:
        a, b = b, a
    c = 0
    while b:
        if b & 1:
            c ^= a
        a <<= 1
        b >>= 1
    return c


def poly_divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    db = b.bit_length() - 1
    q = 0
    while a and a.bit_length() - 1 >= db:
        shift = a.bit_length() - 1 - db
        a ^= b << shift
        q |= 1 << shift
    return q, a


def poly_mod(a, f):
    """Reduce ``a`` modulo ``f`` by repeated XOR of shifted copies of ``f``.

    Accepts plain integers or :class:`BinaryPolynomial` and returns the same
    kind as ``a``.
    """
    wrap = isinstance(a, BinaryPolynomial)
    av = a.coeffs if wrap else a
    fv = f.coeffs if isinstance(f, BinaryPolynomial) else f
    if fv == 0:
        raise ZeroDivisionError("reduction modulo the zero polynomial")
    r = poly_divmod(av, fv)[1]
    return BinaryPolynomial(r) if wrap else r


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_divmod(a, b)[1]
    return a


def _sqr_mod(a: int, f: int) -> int:
    return poly_divmod(_spread(a), f)[1]


def is_irreducible(p) -> bool:
    """Decide irreducibility over GF(2) exactly (Ben-Or's test).

    ``p`` is irreducible iff ``gcd(p, x^(2^d) - x) = 1`` for every
    ``1 <= d <= deg(p) // 2``.
    """
    pv = p.coeffs if isinstance(p, BinaryPolynomial) else p
    deg = pv.bit_length() - 1
    if deg < 1:
        raise ValueError("irreducibility is only defined for degree >= 1")
    if deg == 1:
        return True
    if not pv & 1:
        return False
    u = 0b10
    for _ in range(deg // 2):
        u = _sqr_mod(u, pv)
        if poly_gcd(pv, u ^ 0b10) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def low_weight_irreducible(n: int) -> "BinaryPolynomial":
    """Lowest-weight irreducible of degree ``n``, lexicographically least.

    Trinomials ``x^n + x^k + 1`` are tried for ascending ``k``, then
    pentanomials ``x^n + x^a + x^b + x^c + 1`` ordered by ``(a, b, c)``
    with ``a > b > c`` ascending.
    """
    if n < 2:
        raise ValueError("degree must be at least 2")
    top = (1 << n) | 1
    for k in range(1, n):
        if is_irreducible(top | (1 << k)):
            return BinaryPolynomial(top | (1 << k))
    for a in range(3, n):
        for b in range(2, a):
            for c in range(1, b):
                cand = top | (1 << a) | (1 << b) | (1 << c)
                if is_irreducible(cand):
                    return BinaryPolynomial(cand)
    raise LookupError(f"no irreducible trinomial or pentanomial of degree {n}")


_TERM = re.compile(r"^(?:(?P<one>1)|x(?:\^(?P<exp>\d+))?)$")


@dataclass(frozen=True)
class BinaryPolynomial:
    """Polynomial over GF(2) backed by an integer coefficient mask."""

    coeffs: int = 0

    def __post_init__(self):
        if self.coeffs < 0:
            raise ValueError("coefficient mask must be nonnegative")

    @classmethod
    def from_exponents(cls, exponents) -> "BinaryPolynomial":
        mask = 0
        for e in exponents:
            mask ^= 1 << e
        return cls(mask)

    @classmethod
    def parse(cls, text: str) -> "BinaryPolynomial":
        """Parse ``"x^10+x^3+1"`` style text or a big-endian hex mask ``"0x409"``."""
        s = text.replace(" ", "").lower()
        if not s:
            raise ValueError("empty polynomial text")
        if s.startswith("0x"):
            try:
                return cls(int(s, 16))
            except ValueError:
                raise ValueError(f"bad hex coefficient mask: {text!r}") from None
        if s == "0":
            return cls(0)
        mask = 0
        for term in s.split("+"):
            m = _TERM.match(term)
            if m is None:
                raise ValueError(f"cannot parse term {term!r} in {text!r}")
            e = 0 if m["one"] else int(m["exp"] or 1)
            mask ^= 1 << e
        return cls(mask)

    @property
    def degree(self) -> int:
        """Degree, or -1 for the zero polynomial."""
        return self.coeffs.bit_length() - 1

    @property
    def is_zero(self) -> bool:
        return self.coeffs == 0

    @property
    def weight(self) -> int:
        return bin(self.coeffs).count("1")

    def exponents(self) -> list[int]:
        """Powers of ``x`` with nonzero coefficient, ascending."""
        v, out, i = self.coeffs, [], 0
        while v:
            if v & 1:
                out.append(i)
            v >>= 1
            i += 1
        return out

    def __getitem__(self, i: int) -> int:
        return (self.coeffs >> i) & 1

    def __add__(self, other: "BinaryPolynomial") -> "BinaryPolynomial":
        return BinaryPolynomial(self.coeffs ^ other.coeffs)

    __sub__ = __add__
    __xor__ = __add__

    def __mul__(self, other: "BinaryPolynomial") -> "BinaryPolynomial":
        return BinaryPolynomial(poly_mul(self.coeffs, other.coeffs))

    def __mod__(self, other: "BinaryPolynomial") -> "BinaryPolynomial":
        return poly_mod(self, other)

    def to_hex(self) -> str:
        return hex(self.coeffs)

    def __str__(self) -> str:
        if self.coeffs == 0:
            return "0"
        terms = []
        for e in reversed(self.exponents()):
            terms.append("1" if e == 0 else "x" if e == 1 else f"x^{e}")
        return "+".join(terms)


@dataclass(frozen=True)
class FieldSpec:
    """GF(2^n) in polynomial basis, defined by the modulus ``f(x)``.

    Irreducibility is checked on construction unless ``allow_reducible`` is
    set, which exists for experiments only; synthesis over a reducible
    modulus is expected to fail.
    """

    modulus: BinaryPolynomial
    allow_reducible: bool = field(default=False, compare=False)

    def __post_init__(self):
        if isinstance(self.modulus, int):
            object.__setattr__(self, "modulus", BinaryPolynomial(self.modulus))
        if self.modulus.degree < 2:
            raise ValueError(f"field modulus must have degree >= 2, got {self.modulus}")
        if not self.allow_reducible:
            if not self.modulus[0] or not is_irreducible(self.modulus):
                raise ReducibleModulusError(f"{self.modulus} is reducible over GF(2)")

    @classmethod
    def parse(cls, text: str, allow_reducible: bool = False) -> "FieldSpec":
        return cls(BinaryPolynomial.parse(text), allow_reducible=allow_reducible)

    @property
    def n(self) -> int:
        return self.modulus.degree

    @property
    def order(self) -> int:
        return 1 << self.n

    def element(self, value) -> "FieldElement":
        if isinstance(value, BinaryPolynomial):
            value = value.coeffs
        return FieldElement(value, self)

    def elements(self):
        for v in range(self.order):
            yield FieldElement(v, self)

    def __str__(self) -> str:
        return str(self.modulus)


@dataclass(frozen=True)
class FieldElement:
    value: int
    field: FieldSpec

    def __post_init__(self):
        if not 0 <= self.value < self.field.order:
            raise ValueError(f"{self.value:#x} does not fit in {self.field.n} bits")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return gf_add(self, other)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        return gf_mul(self, other)

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def bits(self) -> str:
        """Bit string ``α_{n-1} ... α_0``."""
        return format(self.value, f"0{self.field.n}b")

    def __str__(self) -> str:
        return str(BinaryPolynomial(self.value))


def _check_same(a: FieldElement, b: FieldElement, spec: FieldSpec | None = None) -> FieldSpec:
    if a.field != b.field:
        raise ValueError(f"elements belong to different fields: {a.field} vs {b.field}")
    if spec is not None and spec != a.field:
        raise ValueError(f"elements belong to {a.field}, not {spec}")
    return a.field


def gf_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return FieldElement(a.value ^ b.value, _check_same(a, b))


def gf_mul(a: FieldElement, b: FieldElement, spec: FieldSpec | None = None) -> FieldElement:
    """Shift-and-add multiplication with the reduction interleaved."""
    spec = _check_same(a, b, spec)
    n, f = spec.n, spec.modulus.coeffs
    x, y, acc = a.value, b.value, 0
    top = 1 << n
    while y:
        if y & 1:
            acc ^= x
        y >>= 1
        x <<= 1
        if x & top:
            x ^= f
    return FieldElement(acc, spec)


def gf_square(a: FieldElement, spec: FieldSpec | None = None) -> FieldElement:
    """Square by spreading ``α_i`` to ``x^(2i)`` and reducing the result."""
    if spec is not None and spec != a.field:
        raise ValueError(f"element belongs to {a.field}, not {spec}")
    spec = a.field
    return FieldElement(_sqr_mod(a.value, spec.modulus.coeffs), spec)


def gf_exp_fermat(a: FieldElement, spec: FieldSpec | None = None) -> FieldElement:
    """``a^(2^n - 2)`` by square-and-multiply.

    This is the multiplicative inverse for nonzero ``a``; zero maps to zero.
    """
    if spec is not None and spec != a.field:
        raise ValueError(f"element belongs to {a.field}, not {spec}")
    spec = a.field
    e = spec.order - 2
    result = FieldElement(1, spec)
    base = a
    while e:
        if e & 1:
            result = gf_mul(result, base)
        base = gf_mul(base, base)
        e >>= 1
    return result


def frobenius_matrix(spec: FieldSpec) -> np.ndarray:
    """Bit matrix of the squaring map; column ``i`` holds ``x^(2i) mod f``.

    Entry ``[j, i]`` is the coefficient of ``x^j`` in ``x^(2i) mod f(x)``, so
    ``M @ a % 2`` is the coefficient vector of ``a^2``.
    """
    n, f = spec.n, spec.modulus.coeffs
    m = np.zeros((n, n), dtype=np.uint8)
    for i in range(n):
        col = poly_divmod(1 << (2 * i), f)[1]
        for j in range(n):
            m[j, i] = (col >> j) & 1
    return m
