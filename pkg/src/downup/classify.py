"""Decision procedures: the highest-weight recurrence and its zeros,
enumeration of finite-dimensional simples, orbit finiteness of maximal
ideals under sigma, algebra types, the isomorphism decision, the X_{m,n}
semisimplicity obstruction, and Verma composition structure.

Every search the theory quantifies over all n is bounded here, with the
bound an explicit argument; verdicts distinguish a proof from the absence
of an obstruction below the bound.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .errors import NotTypeC, NotTypeD, ParamsMismatch
from .exactfield import FieldElement, geometric_sum, root_of_unity_order
from .skewalgebra import (
    AlgebraElement,
    BivarPoly,
    Params,
    canonical_w_pair,
    nf_mul,
)

ORBIT_BOUND_DEFAULT = 24
ZERO_INDEX_BOUND_DEFAULT = 64
XMN_BOUND_DEFAULT = 64


# ---------------------------------------------------------------------------
# the recurrence lambda_n = alpha*lambda_{n-1} + beta*lambda_{n-2} + gamma
# ---------------------------------------------------------------------------

class LambdaSeq:
    """Memoized lambda_n together with its affine decomposition.

    lambda_n = P_n * lambda + Q_n where P satisfies the homogeneous
    recurrence with P_{-1} = 0, P_0 = 1 and Q the inhomogeneous one with
    Q_{-1} = Q_0 = 0; the split is re-checked against the direct recurrence
    on every extension. For the line alpha + beta = 1 with eta != 1 the
    closed form c_1 + c_2*eta^n + gamma*n/(1-eta) is available as well.
    """

    def __init__(self, params: Params, lam):
        self.params = params
        field = params.field
        self.lam = field.coerce(lam)
        zero, one = field.zero(), field.one()
        self._lam = [zero, self.lam]   # index k stores lambda_{k-1}
        self._p = [zero, one]
        self._q = [zero, zero]
        self._closed = None
        if (params.alpha + params.beta).is_one() and not (params.eta - 1).is_zero():
            eta, gamma = params.eta, params.gamma
            em1_inv = (eta - 1).inv()
            ome_inv = (one - eta).inv()
            c1 = em1_inv * (-self.lam - gamma + gamma * ome_inv)
            c2 = em1_inv * (eta * self.lam + gamma - gamma * ome_inv)
            self._closed = (c1, c2, gamma * ome_inv)

    def _extend(self, n: int):
        alpha, beta, gamma = self.params.alpha, self.params.beta, self.params.gamma
        while len(self._lam) < n + 2:
            self._lam.append(alpha * self._lam[-1] + beta * self._lam[-2] + gamma)
            self._p.append(alpha * self._p[-1] + beta * self._p[-2])
            self._q.append(alpha * self._q[-1] + beta * self._q[-2] + gamma)
            k = len(self._lam) - 2
            if self._p[-1] * self.lam + self._q[-1] != self._lam[-1]:
                raise AssertionError("affine decomposition lost the recurrence")
            if self._closed is not None and self.closed_form(k) != self._lam[-1]:
                raise AssertionError("closed form disagrees with the recurrence")

    def value(self, n: int) -> FieldElement:
        """lambda_n for n >= -1."""
        if n < -1:
            raise ValueError("index must be >= -1")
        self._extend(n)
        return self._lam[n + 1]

    def affine(self, n: int):
        """(P_n, Q_n) with lambda_n = P_n*lambda + Q_n."""
        self._extend(n)
        return (self._p[n + 1], self._q[n + 1])

    def closed_form(self, n: int) -> Optional[FieldElement]:
        if self._closed is None:
            return None
        c1, c2, slope = self._closed
        return c1 + c2 * self.params.eta ** n + slope * self.params.field.from_rational(n)

    def prefix(self, n: int):
        """[lambda_0, ..., lambda_n]."""
        self._extend(n)
        return list(self._lam[1:n + 2])


def lambda_seq(p: Params, lam, n: int):
    """lambda_0..lambda_n as a list."""
    return LambdaSeq(p, lam).prefix(n)


def lambda_affine(p: Params, n: int):
    """(P_n, Q_n) of the affine split lambda_n = P_n*lambda + Q_n."""
    return LambdaSeq(p, p.field.zero()).affine(n)


# ---------------------------------------------------------------------------
# finite-dimensional simples per dimension
# ---------------------------------------------------------------------------

class SimplesOfDim:
    """Highest weights of the n-dimensional simples.

    ``weights`` is the finite answer; when the zero condition degenerates
    (P_{n-1} = Q_{n-1} = 0) every weight outside ``excluded`` works and
    ``all_lambda`` is set instead.
    """

    __slots__ = ("dim", "weights", "all_lambda", "excluded")

    def __init__(self, dim, weights=(), all_lambda=False, excluded=()):
        self.dim = dim
        self.weights = tuple(weights)
        self.all_lambda = all_lambda
        self.excluded = tuple(excluded)

    @property
    def is_finite(self) -> bool:
        return not self.all_lambda

    def __len__(self):
        if self.all_lambda:
            raise ValueError("infinitely many weights")
        return len(self.weights)

    def __iter__(self):
        if self.all_lambda:
            raise ValueError("infinitely many weights")
        return iter(self.weights)

    def to_json(self):
        if self.all_lambda:
            return {
                "dim": self.dim,
                "all_lambda_except": [w.to_json() for w in self.excluded],
            }
        return {"dim": self.dim, "weights": [w.to_json() for w in self.weights]}


def simples_of_dim(p: Params, n: int, certify: bool = True) -> SimplesOfDim:
    """Solve P_{n-1} lambda + Q_{n-1} = 0 and keep minimal-index solutions.

    A surviving weight is certified by building the quotient module and
    running the Burnside test (disable with ``certify=False``).
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    seq0 = LambdaSeq(p, p.field.zero())
    pn, qn = seq0.affine(n - 1)
    if pn.is_zero():
        if not qn.is_zero():
            return SimplesOfDim(n)
        # every lambda reaches zero at index n-1; minimality excludes the
        # solutions of the earlier linear conditions
        excluded = []
        for k in range(n - 1):
            pk, qk = seq0.affine(k)
            if pk.is_zero():
                if qk.is_zero():
                    return SimplesOfDim(n)  # everything dies earlier
                continue
            cand = -qk / pk
            if cand not in excluded:
                excluded.append(cand)
        excluded.sort(key=lambda w: w.sort_key())
        return SimplesOfDim(n, all_lambda=True, excluded=excluded)
    lam = -qn / pn
    seq = LambdaSeq(p, lam)
    if any(seq.value(k).is_zero() for k in range(n - 1)):
        return SimplesOfDim(n)
    if certify:
        from . import repmod

        module = repmod.simple_module(p, lam, bound=n)
        if module.dim != n:
            raise AssertionError("certification produced the wrong dimension")
    return SimplesOfDim(n, weights=(lam,))


# ---------------------------------------------------------------------------
# sigma-orbits of maximal ideals
# ---------------------------------------------------------------------------

def point_to_w(p: Params, point):
    """(w1, w2) values of the maximal ideal at an (x, y)-point."""
    a, b = (p.field.coerce(c) for c in point)
    return canonical_w_pair(p).w_values(a, b)


def w_to_point(p: Params, wvals):
    """Inverse of :func:`point_to_w` (the w-forms are an affine basis)."""
    wp = canonical_w_pair(p)
    field = p.field
    a1, a2 = (field.coerce(c) for c in wvals)
    c1, x1, y1 = wp.w1.affine_parts()
    c2, x2, y2 = wp.w2.affine_parts()
    det = x1 * y2 - x2 * y1
    r1, r2 = a1 - c1, a2 - c2
    a = (r1 * y2 - r2 * y1) / det
    b = (x1 * r2 - x2 * r1) / det
    return (a, b)


def orbit_finite_condition(p: Params, a1, a2) -> Optional[int]:
    """Least n with sigma^n(P) = P for P = (w1 - a1, w2 - a2), or None.

    Evaluates the case-split closed-form condition exactly; the n*gamma = 0
    branches read as gamma = 0 in characteristic zero.
    """
    field = p.field
    a1, a2 = field.coerce(a1), field.coerce(a2)
    if p.case_tag == "Case1":
        l1, l2 = p.require_roots()
        orders = []
        for root, coord in ((l1, a1), (l2, a2)):
            if coord.is_zero():
                continue
            order = root_of_unity_order(root)
            if order is None:
                return None
            orders.append(order)
        return _lcm_all(orders)
    if p.case_tag == "Case2":
        if not p.gamma.is_zero():
            return None
        if a2.is_zero():
            return 1
        order = root_of_unity_order(p.eta)
        return order
    if p.case_tag == "Case3":
        if not a1.is_zero():
            return None
        if a2.is_zero():
            return 1
        half_alpha = p.alpha * field.from_rational(Fraction(1, 2))
        return root_of_unity_order(half_alpha)
    # Case4
    if not p.gamma.is_zero():
        return None
    if not a1.is_zero():
        return None
    return 1


def _lcm_all(values):
    out = 1
    for v in values:
        from math import gcd

        out = out * v // gcd(out, v)
    return out


def orbit_iterate(p: Params, point, bound: int = ORBIT_BOUND_DEFAULT):
    """Brute-force sigma-orbit of the ideal at ``point``.

    Returns the orbit list when the point returns within ``bound`` steps
    (the first return is the minimal period, sigma being invertible), and
    None otherwise.
    """
    field = p.field
    start = tuple(field.coerce(c) for c in point)
    orbit = [start]
    current = start
    for _ in range(bound):
        current = p.sigma.point_forward(*current)
        if current == start:
            return orbit
        orbit.append(current)
    return None


# ---------------------------------------------------------------------------
# algebra type and the isomorphism decision
# ---------------------------------------------------------------------------

def algebra_type(p: Params) -> str:
    return p.type_tag


class IsoVerdict:
    __slots__ = ("answer", "branch", "details")

    def __init__(self, answer: bool, branch: str, details=None):
        self.answer = answer
        self.branch = branch
        self.details = details or {}

    def __repr__(self):
        return f"IsoVerdict(answer={self.answer}, branch={self.branch!r})"

    def to_json(self):
        return {"answer": self.answer, "branch": self.branch, "details": self.details}


def are_isomorphic(p: Params, q: Params) -> IsoVerdict:
    """Decide A(p) = A(q) up to isomorphism.

    True iff the types agree, gamma vanishes on both sides or neither, and
    the parameters agree directly or under the d/u swap
    (alpha, beta) -> (-alpha/beta, 1/beta).
    """
    if p.field != q.field:
        raise ParamsMismatch("parameter triples live over different fields")
    details = {"type_left": p.type_tag, "type_right": q.type_tag}
    if p.type_tag != q.type_tag:
        return IsoVerdict(False, "type_mismatch", details)
    if p.gamma.is_zero() != q.gamma.is_zero():
        return IsoVerdict(False, "condition_fail", details)
    if q.alpha == p.alpha and q.beta == p.beta:
        return IsoVerdict(True, "same_params", details)
    binv = p.beta.inv()
    if q.alpha == -p.alpha * binv and q.beta == binv:
        return IsoVerdict(True, "swapped_params", details)
    return IsoVerdict(False, "condition_fail", details)


class TypeCInvariant:
    """Conjugacy data of the rank-two quotient P/P^2 for type (c).

    ``matrix`` is diag(l1, l2) in the split case and the Jordan block
    [[alpha/2, 1], [0, alpha/2]] otherwise; ``w1``/``w2`` are the normal
    elements realised inside A with their normality equations re-verified
    through the normal form.
    """

    __slots__ = ("matrix", "w1", "w2", "eigenvalues")

    def __init__(self, matrix, w1, w2, eigenvalues):
        self.matrix = matrix
        self.w1, self.w2 = w1, w2
        self.eigenvalues = eigenvalues

    def to_json(self):
        return {
            "matrix": [[c.to_json() for c in row] for row in self.matrix],
            "w1": self.w1.to_json(),
            "w2": self.w2.to_json(),
        }


def typec_invariant(p: Params) -> TypeCInvariant:
    """The 2x2 conjugacy invariant of a type-(c) algebra."""
    if p.type_tag != "c":
        raise NotTypeC(f"algebra has type ({p.type_tag})")
    field = p.field
    wp = canonical_w_pair(p)
    w1 = AlgebraElement.from_degree_zero(p, wp.w1)
    w2 = AlgebraElement.from_degree_zero(p, wp.w2)
    d = AlgebraElement.gen_d(p)
    s1, _ = wp.eigen_data["w1"]
    s2, u2 = wp.eigen_data["w2"]
    # d * w = sigma(w) * d for w in R, so normality reads off the eigen data
    if nf_mul(d, w1) != nf_mul(w1, d).scale(s1):
        raise AssertionError("w1 normality equation failed")
    lhs = nf_mul(d, w2)
    rhs = nf_mul(w2, d).scale(s2) + nf_mul(w1, d).scale(u2)
    if lhs != rhs:
        raise AssertionError("w2 normality equation failed")
    zero, one = field.zero(), field.one()
    if (p.alpha * p.alpha + 4 * p.beta).is_zero():
        half_alpha = p.alpha * field.from_rational(Fraction(1, 2))
        matrix = ((half_alpha, one), (zero, half_alpha))
        eigenvalues = (half_alpha, half_alpha)
    else:
        l1, l2 = p.require_roots()
        matrix = ((l1, zero), (zero, l2))
        eigenvalues = (l1, l2)
    return TypeCInvariant(matrix, w1, w2, eigenvalues)


# ---------------------------------------------------------------------------
# semisimplicity for the line alpha + beta = 1 (type (d))
# ---------------------------------------------------------------------------

def xmn_member(eta: FieldElement, m: int, n: int) -> bool:
    """eta in X_{m,n}: eta^m != 1 != eta^n and n(eta^m - 1) = m(eta^n - 1)."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    one = eta.field.one()
    em, en = eta ** m, eta ** n
    if em == one or en == one:
        return False
    return (em - 1) * n == (en - 1) * m


class SemisimplicityVerdict:
    __slots__ = ("answer", "witness", "bound")

    def __init__(self, answer: str, witness=None, bound: int = 0):
        self.answer = answer
        self.witness = witness
        self.bound = bound

    def __repr__(self):
        return f"SemisimplicityVerdict({self.answer}, witness={self.witness})"

    def to_json(self):
        return {
            "answer": self.answer,
            "witness": list(self.witness) if self.witness else None,
            "bound": self.bound,
        }


def semisimplicity_verdict(p: Params, bound: int = XMN_BOUND_DEFAULT) -> SemisimplicityVerdict:
    """Whether every finite-dimensional module over a type-(d) algebra is
    semisimple.

    eta = 1 sits outside the criterion; eta a root of unity of order > 1 is
    an unconditional yes (membership in any X_{m,n} then forces m = n); for
    other eta all pairs n < m <= bound are searched for an obstruction.
    """
    if p.type_tag != "d":
        raise NotTypeD(f"algebra has type ({p.type_tag})")
    eta = p.eta
    if eta.is_one():
        return SemisimplicityVerdict("out_of_theorem_scope", bound=bound)
    order = root_of_unity_order(eta)
    if order is not None:
        return SemisimplicityVerdict("semisimple", bound=bound)
    for m in range(2, bound + 1):
        for n in range(1, m):
            if xmn_member(eta, m, n):
                return SemisimplicityVerdict("not_semisimple", witness=(m, n), bound=bound)
    return SemisimplicityVerdict("no_obstruction_up_to_bound", bound=bound)


class VermaStructure:
    """Zero indices of the highest-weight recurrence inside a window and the
    composition length they imply (the tail past the last zero counts as
    one factor)."""

    __slots__ = ("zeros", "length", "bound")

    def __init__(self, zeros, length, bound):
        self.zeros = tuple(zeros)
        self.length = length
        self.bound = bound

    def to_json(self):
        return {"zeros": list(self.zeros), "length": self.length, "bound": self.bound}


def verma_structure(p: Params, lam, bound: int = ZERO_INDEX_BOUND_DEFAULT) -> VermaStructure:
    """All k <= bound with lambda_{k-1} = 0 plus the length report.

    For type (d) more than two zeros would contradict the length-3 cap on
    Verma modules; that situation is flagged as an internal failure.
    """
    seq = LambdaSeq(p, lam)
    zeros = [k for k in range(1, bound + 1) if seq.value(k - 1).is_zero()]
    if p.type_tag == "d" and len(zeros) > 2:
        raise AssertionError(
            f"type (d) Verma module with zeros {zeros}: length cap violated"
        )
    return VermaStructure(zeros, len(zeros) + 1, bound)
