"""Exact arithmetic in cyclotomic fields.

A value is a rational linear combination of powers of a primitive N-th
root of unity zeta_N, kept in the canonical power basis
1, zeta, ..., zeta^(phi(N)-1) by reduction modulo the N-th cyclotomic
polynomial.  Values at different levels N interoperate: binary
operations lift both sides to the least common multiple level using
zeta_N = zeta_L^(L/N).

The canonical basis is an integral basis, so "all coefficients are
integers" is exactly "the value is an algebraic integer".
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence


class LevelError(ValueError):
    """A rational turn does not embed into the requested level."""

    def __init__(self, message: str, required_level: int):
        super().__init__(message)
        self.required_level = required_level


class BudgetError(RuntimeError):
    """An exhaustive scan or search would exceed its configured budget."""


class NonIntegralError(ValueError):
    """An operation restricted to algebraic integers got a non-integer."""


class ContradictionError(RuntimeError):
    """An exact computation contradicts a proved statement.

    Raised when a unit-modulus cyclotomic integer fails to be a root of
    unity within its guaranteed order bound.  Reaching this is a bug
    (or a disproof), never a data error.
    """


ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# cyclotomic polynomials and reduction tables


def _poly_divide(num: list[int], den: list[int]) -> list[int]:
    """Exact quotient of integer polynomials (coefficients low to high)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        if c % den[-1]:
            raise ArithmeticError("non-exact polynomial division")
        q = c // den[-1]
        out[i] = q
        if q:
            for j, d in enumerate(den):
                num[i + j] -= q * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("non-exact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients (low to high) of the n-th cyclotomic polynomial.

    Computed by dividing x^n - 1 by the cyclotomic polynomials of the
    proper divisors of n.

    >>> cyclotomic_poly(12)
    (1, 0, -1, 0, 1)
    """
    if n < 1:
        raise ValueError("level must be >= 1")
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divide(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _phi(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Canonical integer coordinates of zeta_n^e for e = 0..n-1."""
    d = _phi(n)
    poly = cyclotomic_poly(n)
    # x^d = -(poly[0] + poly[1] x + ... + poly[d-1] x^(d-1)), poly monic
    top = tuple(-c for c in poly[:d])
    rows = [tuple(1 if i == e else 0 for i in range(d)) for e in range(d)]
    for _ in range(d, n):
        prev = rows[-1]
        shifted = [0] + list(prev[: d - 1])
        carry = prev[d - 1]
        if carry:
            shifted = [s + carry * t for s, t in zip(shifted, top)]
        rows.append(tuple(shifted))
    return tuple(rows)


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


@lru_cache(maxsize=None)
def _embed_roots(n: int) -> tuple[complex, ...]:
    tau = 2.0 * math.pi / n
    return tuple(complex(math.cos(tau * e), math.sin(tau * e)) for e in range(n))


# ---------------------------------------------------------------------------
# the number class


class Cyc:
    """An element of Q(zeta_level) in the canonical power basis.

    Construct from a coefficient sequence for powers zeta^0, zeta^1, ...
    (any length up to the level; exponents are taken mod the level) or
    via the helpers `cyc_root`, `Cyc.rational`, `Cyc.imag_unit`.
    """

    __slots__ = ("level", "coeffs", "_minform")

    def __init__(self, level: int, coeffs: Iterable[Fraction | int]):
        if level < 1:
            raise ValueError("level must be >= 1")
        vals = [Fraction(c) for c in coeffs]
        if len(vals) > level:
            raise ValueError("more coefficients than the level allows")
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "coeffs", _reduce(level, dict(enumerate(vals))))
        object.__setattr__(self, "_minform", None)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("Cyc is immutable")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def _raw(level: int, canonical: tuple[Fraction, ...]) -> "Cyc":
        out = object.__new__(Cyc)
        object.__setattr__(out, "level", level)
        object.__setattr__(out, "coeffs", canonical)
        object.__setattr__(out, "_minform", None)
        return out

    @staticmethod
    def from_terms(level: int, terms: Mapping[int, Fraction | int]) -> "Cyc":
        """Build from a sparse {exponent: coefficient} mapping."""
        return Cyc._raw(
            level, _reduce(level, {e: Fraction(c) for e, c in terms.items()})
        )

    @staticmethod
    def rational(value: Fraction | int) -> "Cyc":
        return Cyc._raw(1, (Fraction(value),))

    @staticmethod
    def zero() -> "Cyc":
        return _ZERO

    @staticmethod
    def one() -> "Cyc":
        return _ONE

    @staticmethod
    def imag_unit() -> "Cyc":
        return _I

    # -- level handling ------------------------------------------------------

    def lift(self, level: int) -> "Cyc":
        """The same value expressed at a multiple of the current level."""
        if level == self.level:
            return self
        if level % self.level:
            raise LevelError(
                f"cannot lift level {self.level} into level {level}",
                required_level=lcm(level, self.level),
            )
        step = level // self.level
        return Cyc.from_terms(
            level, {e * step: c for e, c in enumerate(self.coeffs) if c}
        )

    def _pair(self, other: "Cyc") -> tuple["Cyc", "Cyc"]:
        if self.level == other.level:
            return self, other
        common = lcm(self.level, other.level)
        return self.lift(common), other.lift(common)

    # -- ring operations -----------------------------------------------------

    def __add__(self, other) -> "Cyc":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._pair(other)
        return Cyc._raw(a.level, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "Cyc":
        return Cyc._raw(self.level, tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "Cyc":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._pair(other)
        return Cyc._raw(a.level, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other) -> "Cyc":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other) -> "Cyc":
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return Cyc._raw(self.level, tuple(c * f for c in self.coeffs))
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._pair(other)
        sa = [(e, c) for e, c in enumerate(a.coeffs) if c]
        sb = [(e, c) for e, c in enumerate(b.coeffs) if c]
        if not sa or not sb:
            return Cyc._raw(a.level, (ZERO,) * _phi(a.level))
        if len(sb) < len(sa):
            sa, sb = sb, sa
        acc: dict[int, Fraction] = {}
        n = a.level
        for ea, ca in sa:
            for eb, cb in sb:
                e = ea + eb
                if e >= n:
                    e -= n
                acc[e] = acc.get(e, ZERO) + ca * cb
        return Cyc._raw(n, _reduce(n, acc))

    __rmul__ = __mul__

    def inverse(self) -> "Cyc":
        """Multiplicative inverse, via the extended Euclidean algorithm
        against the cyclotomic polynomial."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        mod = [Fraction(c) for c in cyclotomic_poly(self.level)]
        inv = _poly_modinv(list(self.coeffs), mod)
        return Cyc._raw(self.level, _reduce(self.level, dict(enumerate(inv))))

    def __truediv__(self, other) -> "Cyc":
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            if f == 0:
                raise ZeroDivisionError("division by zero")
            return Cyc._raw(self.level, tuple(c / f for c in self.coeffs))
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "Cyc":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int) -> "Cyc":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        out = _ONE
        base = self
        e = exponent
        while e:
            if e & 1:
                out = out * base
            base = base * base if e > 1 else base
            e >>= 1
        return out

    # -- Galois actions ------------------------------------------------------

    def conj(self) -> "Cyc":
        """Complex conjugate (the Galois action zeta -> zeta^-1)."""
        n = self.level
        return Cyc._raw(
            n,
            _reduce(
                n, {(n - e) % n: c for e, c in enumerate(self.coeffs) if c}
            ),
        )

    def galois(self, j: int) -> "Cyc":
        """The automorphism zeta -> zeta^j; j must be coprime to the level."""
        n = self.level
        if gcd(j, n) != 1:
            raise ValueError(f"galois exponent {j} not coprime to level {n}")
        return Cyc._raw(
            n, _reduce(n, {(e * j) % n: c for e, c in enumerate(self.coeffs) if c})
        )

    # -- predicates and conversions -------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("value is not rational")
        return self.coeffs[0]

    def is_integral(self) -> bool:
        """True when the value is an algebraic integer."""
        return all(c.denominator == 1 for c in self.coeffs)

    def embed(self) -> complex:
        """Double-precision image under zeta -> exp(2*pi*i/level).

        With coefficients of magnitude at most B the rounding error is
        below phi(level) * B * 1e-15, far inside the 1e-9 tolerances
        used by callers.
        """
        roots = _embed_roots(self.level)
        out = 0j
        for e, c in enumerate(self.coeffs):
            if c:
                out += float(c) * roots[e]
        return out

    # -- canonical minimal form (for equality across levels and hashing) ------

    def min_form(self) -> tuple[int, tuple[Fraction, ...]]:
        """(N, coefficients) at the smallest level N containing the value."""
        cached = self._minform
        if cached is not None:
            return cached
        out = _descend(self)
        object.__setattr__(self, "_minform", out)
        return out

    def sort_key(self):
        n, coeffs = self.min_form()
        return (n,) + coeffs

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.level == other.level:
            return self.coeffs == other.coeffs
        a, b = self._pair(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        return hash(("Cyc",) + self.sort_key())

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        if self.is_rational():
            return f"Cyc({self.coeffs[0]})"
        terms = []
        for e, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*z{self.level}^{e}" if e else f"{c}")
        return "Cyc(" + " + ".join(terms) + ")"

    # -- unit-modulus machinery ------------------------------------------------

    def abs_sq(self) -> "Cyc":
        """|a|^2 = a * conj(a), exactly."""
        return self * self.conj()

    def is_root_of_unity(self) -> int | None:
        """The multiplicative order if the value is a root of unity, else None.

        Requires an algebraic integer.  An integral value with |a|^2 = 1
        must be a root of unity of order dividing M, where M is the level
        when the level is even and twice the level when odd; if the power
        check nonetheless fails, ContradictionError is raised.
        """
        if not self.is_integral():
            raise NonIntegralError("root-of-unity test needs an algebraic integer")
        if self.abs_sq() != _ONE:
            return None
        n = self.level
        bound = n if n % 2 == 0 else 2 * n
        for d in _divisors(bound):
            if (self**d) == _ONE:
                return d
        raise ContradictionError(
            f"unit-modulus integer at level {n} has no order dividing {bound}"
        )


def _coerce(value) -> "Cyc | type(NotImplemented)":
    if isinstance(value, Cyc):
        return value
    if isinstance(value, (int, Fraction)):
        return Cyc.rational(value)
    return NotImplemented


def _reduce(n: int, terms: Mapping[int, Fraction]) -> tuple[Fraction, ...]:
    """Canonical coordinates of sum(c_e * zeta_n^e)."""
    d = _phi(n)
    table = _power_table(n)
    out = [ZERO] * d
    for e, c in terms.items():
        if not c:
            continue
        row = table[e % n]
        if e % n < d:
            out[e % n] += c
        else:
            for i, t in enumerate(row):
                if t:
                    out[i] += c * t
    return tuple(out)


def _poly_modinv(a: list[Fraction], mod: list[Fraction]) -> list[Fraction]:
    """Inverse of a modulo mod in Q[x]; mod is irreducible here."""

    def trim(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    def divmod_(num, den):
        num = list(num)
        q = [ZERO] * max(1, len(num) - len(den) + 1)
        for i in range(len(num) - len(den), -1, -1):
            c = num[i + len(den) - 1] / den[-1]
            q[i] = c
            if c:
                for j, dj in enumerate(den):
                    num[i + j] -= c * dj
        return trim(q), trim(num)

    r0, r1 = list(mod), trim([Fraction(c) for c in a])
    s0, s1 = [ZERO], [ONE]
    while r1:
        q, r = divmod_(r0, r1)
        r0, r1 = r1, r
        prod = [ZERO] * (len(q) + len(s1) - 1) if s1 else []
        for i, qi in enumerate(q):
            if qi:
                for j, sj in enumerate(s1):
                    prod[i + j] += qi * sj
        new = [
            (s0[i] if i < len(s0) else ZERO) - (prod[i] if i < len(prod) else ZERO)
            for i in range(max(len(s0), len(prod), 1))
        ]
        s0, s1 = s1, trim(new)
    if len(r0) != 1:
        raise ZeroDivisionError("value shares a factor with the modulus")
    return [c / r0[0] for c in s0]


# ---------------------------------------------------------------------------
# descent to the minimal level


def _descend(a: Cyc) -> tuple[int, tuple[Fraction, ...]]:
    n = a.level
    support = [e for e, c in enumerate(a.coeffs) if c]
    if not support:
        return (1, (ZERO,))
    if support == [0]:
        return (1, (a.coeffs[0],))
    units = [j for j in range(1, n + 1) if gcd(j, n) == 1]
    for cand in _divisors(n):
        if cand == n:
            return (n, a.coeffs)
        fixed = all(
            a.galois(j) == a for j in units if j % cand == 1 and j != 1
        )
        if fixed:
            coeffs = _subfield_coords(a, cand)
            if coeffs is not None:
                return (cand, coeffs)
    return (n, a.coeffs)


def _subfield_coords(a: Cyc, sub: int) -> tuple[Fraction, ...] | None:
    """Coordinates of a in the power basis of level sub, or None."""
    n, d = a.level, _phi(sub)
    step = n // sub
    basis = [
        _reduce(n, {(t * step) % n: ONE}) for t in range(d)
    ]
    # solve sum_t x_t basis[t] = a.coeffs by exact Gaussian elimination
    rows = _phi(n)
    mat = [[basis[t][r] for t in range(d)] + [a.coeffs[r]] for r in range(rows)]
    piv = 0
    for col in range(d):
        sel = next((r for r in range(piv, rows) if mat[r][col]), None)
        if sel is None:
            return None
        mat[piv], mat[sel] = mat[sel], mat[piv]
        lead = mat[piv][col]
        mat[piv] = [v / lead for v in mat[piv]]
        for r in range(rows):
            if r != piv and mat[r][col]:
                f = mat[r][col]
                mat[r] = [v - f * w for v, w in zip(mat[r], mat[piv])]
        piv += 1
    sol = [ZERO] * d
    row = 0
    for col in range(d):
        sol[col] = mat[row][d]
        row += 1
    for r in range(row, rows):
        if mat[r][d]:
            return None
    # verify (cheap, guards pivot bookkeeping)
    back = Cyc.from_terms(n, {t * step: c for t, c in enumerate(sol)})
    if back != a:
        return None
    return tuple(sol)


# ---------------------------------------------------------------------------
# roots of unity and rational turns


def cyc_root(level: int, exponent: int = 1) -> Cyc:
    """zeta_level^exponent in canonical form.

    >>> cyc_root(3, 2) == Cyc(3, [-1, -1])
    True
    """
    return Cyc.from_terms(level, {exponent % level: ONE})


_ZERO = Cyc._raw(1, (ZERO,))
_ONE = Cyc._raw(1, (ONE,))
_I = Cyc._raw(4, (ZERO, ONE))


@dataclass(frozen=True, order=True)
class Turn:
    """An angle as an exact fraction of a full turn, normalized to [0, 1)."""

    fraction: Fraction

    def __init__(self, fraction: Fraction | int, _den: int | None = None):
        f = Fraction(fraction, _den) if _den is not None else Fraction(fraction)
        object.__setattr__(self, "fraction", f % 1)

    @property
    def numerator(self) -> int:
        return self.fraction.numerator

    @property
    def denominator(self) -> int:
        return self.fraction.denominator

    def __add__(self, other: "Turn") -> "Turn":
        return Turn(self.fraction + other.fraction)

    def __sub__(self, other: "Turn") -> "Turn":
        return Turn(self.fraction - other.fraction)

    def __neg__(self) -> "Turn":
        return Turn(-self.fraction)

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"

    def angle(self) -> float:
        return 2.0 * math.pi * float(self.fraction)


HALF_TURN = Turn(1, 2)


def turn_to_root(turn: Turn, level: int | None = None) -> Cyc:
    """The unit vector exp(2*pi*i*turn) as an exact cyclotomic value.

    With no level the minimal one (the turn's denominator) is used; an
    explicit level must be a multiple of the denominator, otherwise a
    LevelError reports the least level accommodating both.
    """
    den = turn.denominator
    if level is None:
        level = den
    if level % den:
        raise LevelError(
            f"turn {turn} needs level divisible by {den}, got {level}",
            required_level=lcm(level, den),
        )
    return cyc_root(level, turn.numerator * (level // den))


# ---------------------------------------------------------------------------
# exhaustive unit scan (desk-scale check of the root-of-unity proposition)


def enumerate_unit_elements(
    level: int,
    bound: int,
    *,
    max_level: int = 12,
    max_bound: int = 3,
    max_boxsize: int = 5_000_000,
) -> list[Cyc]:
    """All algebraic integers with |a|^2 = 1 reachable from coefficient
    tuples (c_0, ..., c_{level-1}) with |c_e| <= bound.

    The scan runs over the exact interval image of that box in the
    canonical basis (a superset, covering every +-zeta^k), using pure
    integer arithmetic.  Every returned element is verified to be a
    root of unity; a unit-modulus integer that is not one would raise
    ContradictionError.
    """
    if level < 1 or bound < 1:
        raise ValueError("level and bound must be positive")
    if level > max_level or bound > max_bound:
        raise BudgetError(
            f"enumerate_unit_elements(level={level}, bound={bound}) exceeds "
            f"budget (max_level={max_level}, max_bound={max_bound})"
        )
    d = _phi(level)
    table = _power_table(level)
    radii = [bound * sum(abs(table[e][i]) for e in range(level)) for i in range(d)]
    size = 1
    for r in radii:
        size *= 2 * r + 1
    if size > max_boxsize:
        raise BudgetError(
            f"canonical scan box has {size} tuples, over the {max_boxsize} cap"
        )
    # |a|^2 in coordinates: sum over basis pairs of c_i c_j zeta^(i-j)
    delta_rows = [table[(i) % level] for i in range(-(d - 1), d)]
    unit = tuple(1 if i == 0 else 0 for i in range(d))
    found: list[tuple[int, ...]] = []
    for tup in itertools.product(*(range(-r, r + 1) for r in radii)):
        acc = [0] * d
        for i in range(d):
            ci = tup[i]
            if not ci:
                continue
            for j in range(d):
                cj = tup[j]
                if not cj:
                    continue
                row = delta_rows[i - j + d - 1]
                f = ci * cj
                for t in range(d):
                    rt = row[t]
                    if rt:
                        acc[t] += f * rt
        if tuple(acc) == unit:
            found.append(tup)
    out = []
    for tup in sorted(found):
        val = Cyc._raw(level, tuple(Fraction(c) for c in tup))
        if val.is_root_of_unity() is None:  # pragma: no cover - impossible
            raise ContradictionError("unit element failed root-of-unity check")
        out.append(val)
    return out


# ---------------------------------------------------------------------------
# serialization


def cyc_to_json(a: Cyc) -> dict:
    return {
        "level": a.level,
        "coeffs": [[str(c.numerator), str(c.denominator)] for c in a.coeffs],
    }


def cyc_from_json(data: dict) -> Cyc:
    coeffs = [Fraction(int(num), int(den)) for num, den in data["coeffs"]]
    return Cyc(int(data["level"]), coeffs)


def turn_to_json(t: Turn) -> str:
    return f"{t.numerator}/{t.denominator}"


def turn_from_json(s: str) -> Turn:
    num, _, den = s.partition("/")
    return Turn(int(num), int(den) if den else 1)
