"""Exact arithmetic in a number field Q(theta) = Q[t]/(m(t)).

Every scalar in the package is a :class:`FieldElement`: a coordinate vector
over Q in the power basis 1, theta, ..., theta^(deg-1), with arithmetic done
by polynomial multiplication reduced mod the monic minimal polynomial m.
Equality is exact and decidable; nothing in here ever touches a float.

The rational field itself is the degree-1 case (minimal polynomial t), kept
as the module-level singleton :data:`QQ_FIELD`.

sympy is used for two pieces of classical machinery only: the irreducibility
check of m over Q at construction, and factorisation of univariate
polynomials over Q(theta) (which backs :func:`quadratic_roots` and
:func:`roots_in_field`). All field arithmetic is local.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import (
    DivisionByZero,
    FieldMismatch,
    FieldNotSplit,
    NotMonic,
    Reducible,
    ZeroInput,
)

Rat = Union[int, Fraction, str]


def _to_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"expected a rational, got {type(c).__name__}")


class NumberField:
    """The field Q[t]/(m(t)) for a monic irreducible m over Q.

    Degree 1 denotes Q itself. Instances are immutable; two fields compare
    equal iff their minimal polynomials do, so elements of independently
    constructed copies interoperate.
    """

    __slots__ = ("minpoly", "generator_name", "_reduction_rows", "_sympy_cache")

    def __init__(self, minpoly: Sequence[Fraction], generator_name: str = "t"):
        self.minpoly = tuple(minpoly)  # ascending, monic; validated in field_make
        self.generator_name = generator_name
        # theta^k for k = deg .. 2deg-2 rewritten in the power basis,
        # precomputed once for multiplication.
        deg = self.degree
        rows = []
        if deg > 1:
            prev = [-c for c in self.minpoly[:-1]]  # theta^deg
            rows.append(tuple(prev))
            for _ in range(deg - 2):
                shifted = [Fraction(0)] + prev[:-1]
                top = prev[-1]
                prev = [shifted[i] - top * self.minpoly[i] for i in range(deg)]
                rows.append(tuple(prev))
        self._reduction_rows = tuple(rows)
        self._sympy_cache = None

    @property
    def degree(self) -> int:
        return len(self.minpoly) - 1

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.minpoly == other.minpoly

    def __hash__(self):
        return hash(self.minpoly)

    def __repr__(self):
        if self.is_rational:
            return "NumberField(Q)"
        return f"NumberField(Q({self.generator_name}), minpoly={_poly_text(self.minpoly, self.generator_name)})"

    # -- element constructors ------------------------------------------------

    def element(self, coeffs) -> "FieldElement":
        """Element from its power-basis coordinates (length = degree)."""
        cs = [_to_fraction(c) for c in coeffs]
        if len(cs) != self.degree:
            raise FieldMismatch(
                f"expected {self.degree} coordinates, got {len(cs)}"
            )
        return FieldElement(self, tuple(cs))

    def from_rational(self, c: Rat) -> "FieldElement":
        q = _to_fraction(c)
        return FieldElement(self, (q,) + (Fraction(0),) * (self.degree - 1))

    def zero(self) -> "FieldElement":
        return self.from_rational(0)

    def one(self) -> "FieldElement":
        return self.from_rational(1)

    def gen(self) -> "FieldElement":
        """The generator theta (for Q this is the rational root of m)."""
        if self.is_rational:
            return self.from_rational(-self.minpoly[0])
        coords = [Fraction(0)] * self.degree
        coords[1] = Fraction(1)
        return FieldElement(self, tuple(coords))

    def coerce(self, value) -> "FieldElement":
        """Accept a FieldElement of this field, or a rational."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch("element belongs to a different field")
            return value
        return self.from_rational(value)

    # -- internal reduction --------------------------------------------------

    def _reduce(self, raw):
        """Reduce a coefficient list of length <= 2*deg-1 mod m."""
        deg = self.degree
        out = list(raw[:deg]) + [Fraction(0)] * (deg - len(raw[:deg]))
        for k in range(deg, len(raw)):
            c = raw[k]
            if c:
                row = self._reduction_rows[k - deg]
                for i in range(deg):
                    out[i] += c * row[i]
        return tuple(out)

    # -- sympy bridge (lazy) ---------------------------------------------------

    def _sympy_domain(self):
        """(domain, theta_root) for factorisation work; cached."""
        if self._sympy_cache is None:
            import sympy

            t = sympy.Symbol("t")
            if self.is_rational:
                self._sympy_cache = (sympy.QQ, None)
            else:
                poly = sympy.Poly(
                    [sympy.Rational(c) for c in reversed(self.minpoly)], t
                )
                root = sympy.CRootOf(poly, 0)
                self._sympy_cache = (sympy.QQ.algebraic_field(root), root)
        return self._sympy_cache

    def _elem_to_domain(self, a: "FieldElement"):
        dom, _ = self._sympy_domain()
        if self.is_rational:
            q = a.coeffs[0]
            return dom(q.numerator, q.denominator)
        from sympy import QQ
        from sympy.polys.polyclasses import ANP

        desc = [QQ(c.numerator, c.denominator) for c in reversed(a.coeffs)]
        mod = [QQ(c.numerator, c.denominator) for c in reversed(self.minpoly)]
        return ANP(desc, mod, QQ)

    def _elem_from_domain(self, x) -> "FieldElement":
        if self.is_rational:
            return self.from_rational(Fraction(int(x.numerator), int(x.denominator)))
        desc = x.to_list()
        asc = [Fraction(int(c.numerator), int(c.denominator)) for c in reversed(desc)]
        asc += [Fraction(0)] * (self.degree - len(asc))
        return FieldElement(self, tuple(asc))


class FieldElement:
    """An exact element of a :class:`NumberField`. Immutable."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs):
        self.field = field
        self.coeffs = coeffs  # tuple[Fraction], length = field.degree

    # -- basic predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and all(c == 0 for c in self.coeffs[1:])

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise FieldMismatch("element is not rational")
        return self.coeffs[0]

    def sort_key(self):
        """Total order key; the field itself is unordered, this is only a
        deterministic tie-break for canonical output."""
        return self.coeffs

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch("operands belong to different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(
            self.field, tuple(x + y for x, y in zip(self.coeffs, b.coeffs))
        )

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(
            self.field, tuple(x - y for x, y in zip(self.coeffs, b.coeffs))
        )

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return b - self

    def __neg__(self):
        return FieldElement(self.field, tuple(-x for x in self.coeffs))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        deg = self.field.degree
        if deg == 1:
            return FieldElement(self.field, (self.coeffs[0] * b.coeffs[0],))
        raw = [Fraction(0)] * (2 * deg - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        raw[i + j] += x * y
        return FieldElement(self.field, self.field._reduce(raw))

    __rmul__ = __mul__

    def inv(self) -> "FieldElement":
        """Multiplicative inverse via the extended Euclidean algorithm in Q[t]."""
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if self.field.degree == 1:
            return FieldElement(self.field, (1 / self.coeffs[0],))
        # gcd(poly, m) = 1 since m is irreducible and poly != 0
        r0, r1 = list(self.field.minpoly), list(self.coeffs)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while any(c != 0 for c in r1):
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        lead = _poly_trim(r0)[-1]
        inv_coeffs = [c / lead for c in s0]
        raw = inv_coeffs[: 2 * self.field.degree - 1]
        return FieldElement(self.field, self.field._reduce(raw))

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return self * b.inv()

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return b * self.inv()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self
        if n < 0:
            base = self.inv()
            n = -n
        result = self.field.one()
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.minpoly, self.coeffs))

    # -- presentation ----------------------------------------------------------

    def to_json(self):
        """Bare rational string over Q, coordinate list otherwise."""
        if self.field.is_rational:
            return str(self.coeffs[0])
        return [str(c) for c in self.coeffs]

    def __str__(self):
        if self.field.is_rational:
            return str(self.coeffs[0])
        return _poly_text(self.coeffs, self.field.generator_name)

    def __repr__(self):
        return f"FieldElement({self})"


# ---------------------------------------------------------------------------
# rational polynomial helpers (dense ascending lists of Fractions)
# ---------------------------------------------------------------------------

def _poly_trim(p):
    n = len(p)
    while n > 0 and p[n - 1] == 0:
        n -= 1
    return p[:n]


def _poly_sub(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return _poly_trim(out)


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_trim(out)


def _poly_divmod(a, b):
    b = _poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(_poly_trim(a))
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b):
        shift = len(a) - len(b)
        factor = a[-1] / lead
        q[shift] = factor
        for i, c in enumerate(b):
            a[shift + i] -= factor * c
        a = list(_poly_trim(a))
    return _poly_trim(q), a


def _poly_text(coeffs, var):
    parts = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            v = var if i == 1 else f"{var}^{i}"
            if c == 1:
                parts.append(v)
            elif c == -1:
                parts.append(f"-{v}")
            else:
                parts.append(f"{c}*{v}")
    if not parts:
        return "0"
    text = parts[0]
    for part in parts[1:]:
        text += f" - {part[1:]}" if part.startswith("-") else f" + {part}"
    return text


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def field_make(minpoly, name: str = "t") -> NumberField:
    """Build a number field from an ascending monic coefficient list.

    Degree-1 inputs [c, 1] denote Q itself; the singleton [1] is accepted as
    shorthand for Q (minimal polynomial t). Raises :class:`NotMonic` or
    :class:`Reducible` (with a nontrivial factor as witness).
    """
    coeffs = [_to_fraction(c) for c in minpoly]
    if not coeffs:
        raise NotMonic("empty coefficient list")
    if coeffs == [Fraction(1)]:
        coeffs = [Fraction(0), Fraction(1)]
    if coeffs[-1] != 1:
        raise NotMonic(f"leading coefficient is {coeffs[-1]}, expected 1")
    if len(coeffs) < 2:
        raise NotMonic("a minimal polynomial must have degree >= 1")
    if len(coeffs) > 2:
        factor = _find_rational_factor(coeffs)
        if factor is not None:
            raise Reducible(
                f"minimal polynomial is reducible over Q; factor {_poly_text(factor, name)}",
                factor,
            )
    return NumberField(tuple(coeffs), name)


def _find_rational_factor(coeffs):
    """A nontrivial monic factor over Q, or None if irreducible."""
    import sympy

    t = sympy.Symbol("t")
    poly = sympy.Poly([sympy.Rational(c) for c in reversed(coeffs)], t, domain=sympy.QQ)
    if poly.is_irreducible:
        return None
    _, factors = poly.factor_list()
    fac = factors[0][0].monic()
    desc = fac.all_coeffs()
    return [Fraction(str(c)) for c in reversed(desc)]


def field_arith(op: str, a: FieldElement, b: Optional[FieldElement] = None):
    """Dispatch wrapper over the operator methods (the JSON/CLI surface)."""
    if op in ("add", "sub", "mul", "div", "eq") and b is None:
        raise FieldMismatch(f"operation {op!r} needs two operands")
    if isinstance(b, FieldElement) and b.field != a.field:
        raise FieldMismatch("operands belong to different fields")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b.is_zero():
            raise DivisionByZero("division by zero")
        return a / b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv()
    if op == "eq":
        return a == b
    raise ValueError(f"unknown operation {op!r}")


def _totient(n: int) -> int:
    result = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def root_of_unity_order(a: FieldElement) -> Optional[int]:
    """Least N with a^N = 1, or None.

    Terminating and exact: a root of unity of order N generates a cyclotomic
    subfield of degree phi(N), so only N with phi(N) <= deg(m) can occur.
    """
    if a.is_zero():
        raise ZeroInput("zero is not a root of unity")
    d = a.field.degree
    candidates = [n for n in range(1, 2 * d * d + 2) if _totient(n) <= d]
    one = a.field.one()
    for n in sorted(candidates):
        if a ** n == one:
            return n
    return None


def geometric_sum(eta: FieldElement, n: int) -> FieldElement:
    """Sum of eta^i for i = 0..n-1, by direct summation (valid at eta = 1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    acc = eta.field.zero()
    power = eta.field.one()
    for _ in range(n):
        acc = acc + power
        power = power * eta
    return acc


def _rational_sqrt(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    if q == 0:
        return Fraction(0)
    pn, pd = q.numerator, q.denominator
    rn, rd = math.isqrt(pn), math.isqrt(pd)
    if rn * rn == pn and rd * rd == pd:
        return Fraction(rn, rd)
    return None


def field_sqrt(a: FieldElement) -> Optional[FieldElement]:
    """A square root of ``a`` inside the field, or None if there is none."""
    field = a.field
    if field.is_rational:
        r = _rational_sqrt(a.coeffs[0])
        return None if r is None else field.from_rational(r)
    roots, _ = roots_in_field(field, [-a, field.zero(), field.one()])
    if not roots:
        return None
    return roots[0][0]


def roots_in_field(field: NumberField, coeffs) -> tuple:
    """Roots of a univariate polynomial with FieldElement coefficients.

    Returns ``(roots, nonsplit)`` where ``roots`` is a list of
    (root, multiplicity) pairs sorted by descending coordinate key and
    ``nonsplit`` lists the monic irreducible factors of degree > 1
    (ascending FieldElement coefficients each).
    """
    import sympy

    cs = [field.coerce(c) for c in coeffs]
    while len(cs) > 1 and cs[-1].is_zero():
        cs.pop()
    if len(cs) <= 1:
        raise ValueError("polynomial must have degree >= 1")
    dom, _ = field._sympy_domain()
    lam = sympy.Symbol("lam")
    poly = sympy.Poly([field._elem_to_domain(c) for c in reversed(cs)], lam, domain=dom)
    _, factors = poly.factor_list()
    roots = []
    nonsplit = []
    for fac, mult in factors:
        fac = fac.monic()
        fac_cs = [
            field._elem_from_domain(dom.from_sympy(c)) for c in reversed(fac.all_coeffs())
        ]
        if fac.degree() == 1:
            roots.append((-fac_cs[0], mult))
        else:
            nonsplit.append(tuple(fac_cs))
    roots.sort(key=lambda rm: rm[0].sort_key(), reverse=True)
    return roots, nonsplit


def quadratic_roots(alpha: FieldElement, beta: FieldElement):
    """Both roots of f(x) = x^2 - alpha*x - beta, with multiplicity.

    Raises :class:`FieldNotSplit` carrying the monic quadratic when the
    discriminant has no square root in the field.
    """
    field = alpha.field
    beta = field.coerce(beta)
    half = field.from_rational(Fraction(1, 2))
    delta = alpha * alpha + 4 * beta
    if delta.is_zero():
        r = alpha * half
        return (r, r)
    s = field_sqrt(delta)
    if s is None:
        raise FieldNotSplit(
            "quadratic does not split over the field",
            (-beta, -alpha, field.one()),
        )
    r1 = (alpha + s) * half
    r2 = (alpha - s) * half
    if r1.sort_key() < r2.sort_key():
        r1, r2 = r2, r1
    return (r1, r2)


def element_from_json(field: NumberField, data) -> FieldElement:
    """Decode the JSON form: bare rational string/number, or coordinate list."""
    if isinstance(data, (str, int)):
        return field.from_rational(_to_fraction(data))
    if isinstance(data, list):
        if len(data) == field.degree:
            return field.element([_to_fraction(c) for c in data])
        raise FieldMismatch(
            f"coordinate list of length {len(data)} for a degree-{field.degree} field"
        )
    raise FieldMismatch(f"cannot decode field element from {data!r}")


def field_to_json(field: NumberField):
    return {"minpoly": [str(c) for c in field.minpoly], "name": field.generator_name}


def field_from_json(data) -> NumberField:
    return field_make(list(data["minpoly"]), data.get("name", "t"))


#: The rational field, shared default for the whole package.
QQ_FIELD = NumberField((Fraction(0), Fraction(1)), "t")
