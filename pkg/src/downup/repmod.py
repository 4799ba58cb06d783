"""Finite-dimensional modules over A(alpha,beta,gamma) as matrix pairs.

A module of dimension n is a pair of n x n matrices D, U (the actions of d
and u on coordinate columns, composition in operator order) satisfying the
two defining relations; constructors cover the highest-weight quotients,
their simple images, the orbit modules attached to finite sigma-orbits of
maximal ideals, and duals.
"""

from __future__ import annotations

from typing import Optional

from . import classify, linalg
from .errors import (
    EigenvaluesNotInField,
    NoZeroWithinBound,
    NotAnOrbit,
    NotSimple,
    NotSubmoduleBoundary,
    ParamsMismatch,
    RelationFailure,
)
from .exactfield import FieldElement, element_from_json
from .skewalgebra import Params


class FDModule:
    """A finite-dimensional left module: dimension plus the two action
    matrices. Immutable; relation correctness is the caller's contract and
    is re-checked by every constructor in this module."""

    __slots__ = ("params", "dim", "D", "U", "label")

    def __init__(self, params: Params, D, U, label: str = "raw"):
        self.params = params
        self.D = tuple(tuple(row) for row in D)
        self.U = tuple(tuple(row) for row in U)
        self.dim = len(self.D)
        self.label = label

    def __repr__(self):
        return f"FDModule(dim={self.dim}, label={self.label!r})"

    def to_json(self):
        return {
            "params": self.params.to_json(),
            "dim": self.dim,
            "D": [[c.to_json() for c in row] for row in self.D],
            "U": [[c.to_json() for c in row] for row in self.U],
            "label": self.label,
        }

    @classmethod
    def from_json(cls, data) -> "FDModule":
        params = Params.from_json(data["params"])
        field = params.field
        D = [[element_from_json(field, c) for c in row] for row in data["D"]]
        U = [[element_from_json(field, c) for c in row] for row in data["U"]]
        module = cls(params, D, U, data.get("label", "raw"))
        if module.dim != int(data["dim"]):
            raise ValueError("declared dimension does not match the matrices")
        return module


class RelationReport:
    """The two relation residual matrices and whether both vanish."""

    __slots__ = ("residual1", "residual2", "ok")

    def __init__(self, residual1, residual2):
        self.residual1 = residual1
        self.residual2 = residual2
        self.ok = linalg.is_zero_matrix(residual1) and linalg.is_zero_matrix(residual2)

    def to_json(self):
        return {
            "ok": self.ok,
            "residual1": [[c.to_json() for c in row] for row in self.residual1],
            "residual2": [[c.to_json() for c in row] for row in self.residual2],
        }


def verify_relations(m: FDModule) -> RelationReport:
    """Residuals of d^2u - a dud - b ud^2 - g d and du^2 - a udu - b u^2d - g u."""
    p = m.params
    D, U = m.D, m.U
    mm = linalg.mat_mul
    DD, UU = mm(D, D), mm(U, U)
    res1 = linalg.mat_sub(
        mm(DD, U),
        linalg.mat_add(
            linalg.mat_add(linalg.mat_scale(p.alpha, mm(mm(D, U), D)),
                           linalg.mat_scale(p.beta, mm(U, DD))),
            linalg.mat_scale(p.gamma, D),
        ),
    )
    res2 = linalg.mat_sub(
        mm(D, UU),
        linalg.mat_add(
            linalg.mat_add(linalg.mat_scale(p.alpha, mm(mm(U, D), U)),
                           linalg.mat_scale(p.beta, mm(UU, D))),
            linalg.mat_scale(p.gamma, U),
        ),
    )
    return RelationReport(res1, res2)


def _checked(module: FDModule) -> FDModule:
    report = verify_relations(module)
    if not report.ok:
        raise RelationFailure(f"constructed {module.label!r} module failed the relations")
    return module


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def verma_quotient(p: Params, lam, n: int) -> FDModule:
    """The n-dimensional quotient of the highest-weight module at lambda.

    Valid exactly when lambda_{n-1} = 0, which makes the span of the basis
    tail a submodule. Basis v_0..v_{n-1} with v_0 the highest weight vector:
    u shifts up (v_{n-1} to 0), d steps down through lambda_{i-1}.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    field = p.field
    lam = field.coerce(lam)
    seq = classify.lambda_seq(p, lam, n - 1)
    if not seq[n - 1].is_zero():
        raise NotSubmoduleBoundary(
            f"lambda_{n - 1} = {seq[n - 1]} != 0: the tail span is not a submodule",
            seq[n - 1],
        )
    zero = field.zero()
    one = field.one()
    D = [[zero] * n for _ in range(n)]
    U = [[zero] * n for _ in range(n)]
    for i in range(n - 1):
        U[i + 1][i] = one
        D[i][i + 1] = seq[i]
    return _checked(FDModule(p, D, U, "verma_quotient"))


def simple_module(p: Params, lam, bound: int = classify.ZERO_INDEX_BOUND_DEFAULT) -> FDModule:
    """L(lambda): the quotient at the least n <= bound with lambda_{n-1} = 0.

    The quotient at the minimal zero has pairwise distinct weights, so the
    Burnside certificate must pass; a failure is an internal inconsistency.
    """
    seq = classify.LambdaSeq(p, lam)
    for n in range(1, bound + 1):
        if seq.value(n - 1).is_zero():
            module = verma_quotient(p, lam, n)
            module = FDModule(module.params, module.D, module.U, "simple")
            if not is_simple(module):
                raise NotSimple(
                    f"minimal quotient at n = {n} failed the Burnside test"
                )
            return module
    raise NoZeroWithinBound(
        f"lambda_k != 0 for all k < {bound}: no finite-dimensional simple within bound"
    )


def orbit_module(p: Params, point, orbit) -> FDModule:
    """M_P for the maximal ideal P at ``point`` with the given sigma-orbit.

    Basis e_i = 1 + sigma^i(P); d advances the orbit index cyclically and u
    steps back, scaling by the x-coordinate of the ideal it lands on. The
    supplied orbit must be the full minimal-period orbit starting at
    ``point``.
    """
    field = p.field
    start = tuple(field.coerce(c) for c in point)
    pts = [tuple(field.coerce(c) for c in q) for q in orbit]
    if not pts or pts[0] != start:
        raise NotAnOrbit("orbit must start at the given point")
    if len(set(pts)) != len(pts):
        raise NotAnOrbit("orbit revisits a point: the period is not minimal")
    for i, q in enumerate(pts):
        nxt = p.sigma.point_forward(*q)
        expected = pts[(i + 1) % len(pts)]
        if nxt != expected:
            raise NotAnOrbit(f"sigma does not map orbit point {i} to point {i + 1}")
    n = len(pts)
    zero, one = field.zero(), field.one()
    D = [[zero] * n for _ in range(n)]
    U = [[zero] * n for _ in range(n)]
    for i in range(n):
        D[(i + 1) % n][i] = one
        U[(i - 1) % n][i] = pts[(i - 1) % n][0]
    return _checked(FDModule(p, D, U, "orbit"))


def dual_module(m: FDModule) -> FDModule:
    """The contragradient module: the d/u swap antiautomorphism transposes
    and exchanges the two action matrices."""
    module = FDModule(
        m.params,
        linalg.transpose(m.U),
        linalg.transpose(m.D),
        "dual",
    )
    return _checked(module)


# ---------------------------------------------------------------------------
# weight analysis
# ---------------------------------------------------------------------------

class WeightEntry:
    """One joint weight: the (du, ud) eigenvalue pair, its generalized
    multiplicity, the dimension of the honest joint eigenspace, a basis of
    that eigenspace, and the standard basis vectors lying in it."""

    __slots__ = ("nu_du", "nu_ud", "multiplicity", "eigen_dim", "basis", "basis_indices")

    def __init__(self, nu_du, nu_ud, multiplicity, eigen_dim, basis, basis_indices):
        self.nu_du = nu_du
        self.nu_ud = nu_ud
        self.multiplicity = multiplicity
        self.eigen_dim = eigen_dim
        self.basis = basis
        self.basis_indices = basis_indices

    @property
    def pair(self):
        return (self.nu_du, self.nu_ud)

    def to_json(self):
        return {
            "du_value": self.nu_du.to_json(),
            "ud_value": self.nu_ud.to_json(),
            "multiplicity": self.multiplicity,
            "eigen_dim": self.eigen_dim,
            "basis_indices": list(self.basis_indices),
        }


class WeightData:
    __slots__ = ("entries", "dim", "is_weight_module")

    def __init__(self, entries, dim):
        self.entries = tuple(entries)
        self.dim = dim
        self.is_weight_module = sum(e.eigen_dim for e in entries) == dim

    def pairs(self):
        """Weight pairs repeated with generalized multiplicity."""
        out = []
        for e in self.entries:
            out.extend([e.pair] * e.multiplicity)
        return out

    def to_json(self):
        return {
            "weights": [e.to_json() for e in self.entries],
            "is_weight_module": self.is_weight_module,
        }


def _eigenvalues(field, matrix):
    from .exactfield import roots_in_field

    coeffs = linalg.charpoly(matrix)
    roots, nonsplit = roots_in_field(field, [field.coerce(c) for c in coeffs])
    if nonsplit:
        raise EigenvaluesNotInField(
            "a characteristic factor does not split over the field", nonsplit[0]
        )
    return roots


def weight_decomposition(m: FDModule) -> WeightData:
    """Joint eigendata of the commuting pair (ud, du).

    Weights are (du-value, ud-value) pairs; the multiplicity is the joint
    generalized multiplicity, and modules where some generalized eigenspace
    exceeds the honest eigenspace are flagged as non-weight modules.
    """
    field = m.params.field
    n = m.dim
    UD = linalg.mat_mul(m.U, m.D)
    DU = linalg.mat_mul(m.D, m.U)
    ident = linalg.identity(field, n)
    entries = []
    for a, mult_a in _eigenvalues(field, UD):
        shifted = linalg.mat_sub(UD, linalg.mat_scale(a, ident))
        gen_a = linalg.nullspace(linalg.mat_pow(shifted, mult_a))
        # restrict du to the generalized eigenspace (ud and du commute)
        rest = []
        for g in gen_a:
            img = linalg.mat_vec(DU, g)
            coords = _coords_in_basis(gen_a, img, field)
            rest.append(coords)
        rest_matrix = linalg.transpose(rest) if rest else ()
        ker_a = linalg.nullspace(shifted)
        for b, mult_b in _eigenvalues(field, rest_matrix):
            shifted_b = linalg.mat_sub(DU, linalg.mat_scale(b, ident))
            joint_eigen = linalg.intersect_spans(ker_a, linalg.nullspace(shifted_b))
            indices = [
                i for i in range(n)
                if _is_joint_eigvec_column(UD, DU, i, a, b, field)
            ]
            entries.append(WeightEntry(b, a, mult_b, len(joint_eigen), joint_eigen, indices))
    entries.sort(key=lambda e: (e.nu_du.sort_key(), e.nu_ud.sort_key()))
    return WeightData(entries, n)


def _coords_in_basis(basis, v, field):
    rows = []
    n = len(v)
    for coord in range(n):
        rows.append(tuple(b[coord] for b in basis) + (v[coord],))
    red, pivots = linalg.rref(rows)
    k = len(basis)
    if k in pivots:
        raise AssertionError("vector left the generalized eigenspace")
    coords = [field.zero()] * k
    for r, pc in enumerate(pivots):
        coords[pc] = red[r][k]
    return tuple(coords)


def _is_joint_eigvec_column(UD, DU, i, a, b, field):
    n = len(UD)
    for r in range(n):
        want_ud = a if r == i else field.zero()
        want_du = b if r == i else field.zero()
        if UD[r][i] != want_ud or DU[r][i] != want_du:
            return False
    return True


# ---------------------------------------------------------------------------
# simplicity (Burnside) and the down/up filtrations
# ---------------------------------------------------------------------------

def is_simple(m: FDModule) -> bool:
    """Burnside test: the unital algebra generated by D and U has dimension
    n^2 iff the module is simple with scalar endomorphisms over this field."""
    n = m.dim
    field = m.params.field
    target = n * n
    pivots = {}  # pivot index -> fully reduced, normalized vector

    def add(matrix) -> bool:
        v = [x for row in matrix for x in row]
        for piv in sorted(pivots):
            c = v[piv]
            if not c.is_zero():
                row = pivots[piv]
                v = [x - c * y for x, y in zip(v, row)]
        piv = next((i for i, x in enumerate(v) if not x.is_zero()), None)
        if piv is None:
            return False
        inv = v[piv].inv()
        v = [inv * x for x in v]
        for q in list(pivots):
            c = pivots[q][piv]
            if not c.is_zero():
                pivots[q] = [x - c * y for x, y in zip(pivots[q], v)]
        pivots[piv] = v
        return True

    queue = []
    for seed in (linalg.identity(field, n), m.D, m.U):
        if add(seed):
            queue.append(seed)
    while queue and len(pivots) < target:
        current = queue.pop()
        for gen in (m.D, m.U):
            product = linalg.mat_mul(current, gen)
            if add(product):
                queue.append(product)
    return len(pivots) == target


class FiltrationReport:
    """Kernel dimensions of the down/up filtrations and the Lemma-style
    containment checks."""

    __slots__ = (
        "r", "s", "dim_d_torsion", "dim_u_torsion", "dim_intersection",
        "m_t_dims", "containments_ok",
    )

    def __init__(self, r, s, dim_d_torsion, dim_u_torsion, dim_intersection,
                 m_t_dims, containments_ok):
        self.r, self.s = r, s
        self.dim_d_torsion = dim_d_torsion
        self.dim_u_torsion = dim_u_torsion
        self.dim_intersection = dim_intersection
        self.m_t_dims = m_t_dims
        self.containments_ok = containments_ok

    def to_json(self):
        return {
            "r": self.r,
            "s": self.s,
            "dim_d_torsion": self.dim_d_torsion,
            "dim_u_torsion": self.dim_u_torsion,
            "dim_intersection": self.dim_intersection,
            "m_t_dims": list(self.m_t_dims),
            "containments_ok": self.containments_ok,
        }


def torsion_filtration(m: FDModule, r: int, s: int) -> FiltrationReport:
    """Dimensions of M_r = ker d^(r+1), M^s = ker u^(s+1), their
    intersection, and M(t) for t <= r + s, with the action containments
    u M_r in M_{r+1}, d M^s in M^{s+1} and their intersection refinements
    verified along the way."""
    if r < 0 or s < 0:
        raise ValueError("r and s must be >= 0")
    field = m.params.field
    n = m.dim

    def kernel_down(k):
        # M_{k} = ker D^(k+1); k = -1 gives the zero space
        if k < 0:
            return []
        return linalg.nullspace(linalg.mat_pow(m.D, k + 1))

    def kernel_up(k):
        if k < 0:
            return []
        return linalg.nullspace(linalg.mat_pow(m.U, k + 1))

    t_max = r + s
    down = [kernel_down(k) for k in range(t_max + 2)]
    up = [kernel_up(k) for k in range(t_max + 2)]

    ok = True
    for k in range(t_max + 1):
        images = [linalg.mat_vec(m.U, v) for v in down[k]]
        ok = ok and linalg.span_contains(down[k + 1] or [tuple([field.zero()] * n)], images)
        images = [linalg.mat_vec(m.D, v) for v in up[k]]
        ok = ok and linalg.span_contains(up[k + 1] or [tuple([field.zero()] * n)], images)
    # refinement on the bigraded pieces, within the requested window
    for rr in range(r + 1):
        for ss in range(s + 1):
            piece = linalg.intersect_spans(down[rr], up[ss])
            d_target = linalg.intersect_spans(kernel_down(rr - 1), up[ss + 1])
            u_target = linalg.intersect_spans(down[rr + 1], kernel_up(ss - 1))
            d_images = [linalg.mat_vec(m.D, v) for v in piece]
            u_images = [linalg.mat_vec(m.U, v) for v in piece]
            zero_vec = [tuple([field.zero()] * n)]
            ok = ok and linalg.span_contains(d_target or zero_vec, d_images)
            ok = ok and linalg.span_contains(u_target or zero_vec, u_images)

    m_t_dims = []
    for t in range(t_max + 1):
        vectors = []
        for rr in range(t + 1):
            vectors.extend(linalg.intersect_spans(down[rr], up[t - rr]))
        m_t_dims.append(linalg.span_dim(vectors))

    return FiltrationReport(
        r, s,
        len(down[r]),
        len(up[s]),
        len(linalg.intersect_spans(down[r], up[s])),
        m_t_dims,
        ok,
    )
