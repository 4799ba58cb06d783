"""Exact dense linear algebra over a NumberField.

Matrices are tuples of tuples of FieldElement; vectors are tuples. All
elimination uses first-nonzero pivoting (the field carries no order), so
results are deterministic. Sizes here are small by design; nothing is
performance-tuned beyond avoiding repeated zero work.
"""

from __future__ import annotations

from .exactfield import FieldElement, NumberField


def mat(field: NumberField, rows):
    return tuple(tuple(field.coerce(c) for c in row) for row in rows)


def zeros(field: NumberField, n: int, m: int):
    z = field.zero()
    return tuple(tuple(z for _ in range(m)) for _ in range(n))


def identity(field: NumberField, n: int):
    z, o = field.zero(), field.one()
    return tuple(tuple(o if i == j else z for j in range(n)) for i in range(n))


def mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c: FieldElement, a):
    return tuple(tuple(c * x for x in row) for row in a)


def mat_mul(a, b):
    n, k = len(a), len(b)
    m = len(b[0]) if k else 0
    bt = list(zip(*b))
    out = []
    for i in range(n):
        row_a = a[i]
        out_row = []
        for j in range(m):
            col = bt[j]
            acc = None
            for t in range(k):
                x = row_a[t]
                if x.is_zero():
                    continue
                term = x * col[t]
                acc = term if acc is None else acc + term
            if acc is None:
                acc = x_zero(a)
            out_row.append(acc)
        out.append(tuple(out_row))
    return tuple(out)


def x_zero(a):
    return a[0][0].field.zero()


def mat_pow(a, k: int):
    n = len(a)
    result = identity(a[0][0].field, n)
    base = a
    while k:
        if k & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        k >>= 1
    return result


def transpose(a):
    return tuple(zip(*a))


def mat_vec(a, v):
    out = []
    for row in a:
        acc = None
        for x, y in zip(row, v):
            if x.is_zero():
                continue
            term = x * y
            acc = term if acc is None else acc + term
        out.append(acc if acc is not None else x_zero(a))
    return tuple(out)


def is_zero_matrix(a) -> bool:
    return all(x.is_zero() for row in a for x in row)


def rref(rows):
    """Reduced row echelon form; returns (rref_rows, pivot_columns)."""
    work = [list(r) for r in rows]
    if not work:
        return [], []
    ncols = len(work[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(work)):
            if not work[i][c].is_zero():
                pivot = i
                break
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = work[r][c].inv()
        work[r] = [inv * x for x in work[r]]
        for i in range(len(work)):
            if i != r and not work[i][c].is_zero():
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return [tuple(row) for row in work[:r]], pivots


def rank(rows) -> int:
    return len(rref(rows)[0])


def nullspace(a):
    """Basis of {v : a v = 0}, columns of ``a`` indexing the coordinates."""
    if not a:
        return []
    ncols = len(a[0])
    field = a[0][0].field
    red, pivots = rref(a)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero()] * ncols
        v[fc] = field.one()
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(tuple(v))
    return basis


def span_dim(vectors) -> int:
    return rank(list(vectors)) if vectors else 0


def span_contains(basis, vectors) -> bool:
    """True iff every vector lies in the span of ``basis``."""
    base = list(basis)
    r0 = span_dim(base)
    for v in vectors:
        if span_dim(base + [v]) != r0:
            return False
    return True


def intersect_spans(u_basis, v_basis):
    """Basis of span(u) intersect span(v)."""
    if not u_basis or not v_basis:
        return []
    field = u_basis[0][0].field
    n = len(u_basis[0])
    # solve sum a_i u_i - sum b_j v_j = 0
    cols = len(u_basis) + len(v_basis)
    rows = []
    for coord in range(n):
        row = [u[coord] for u in u_basis] + [-v[coord] for v in v_basis]
        rows.append(tuple(row))
    combos = nullspace(rows)
    vecs = []
    for combo in combos:
        vec = [field.zero()] * n
        for i, u in enumerate(u_basis):
            if not combo[i].is_zero():
                for coord in range(n):
                    vec[coord] = vec[coord] + combo[i] * u[coord]
        vecs.append(tuple(vec))
    red, _ = rref(vecs) if vecs else ([], [])
    return list(red)


def charpoly(a):
    """Monic characteristic polynomial, ascending coefficients.

    Faddeev-LeVerrier; the integer divisions are exact in characteristic 0.
    """
    n = len(a)
    field = a[0][0].field
    coeffs = [field.one()]  # c_n = 1, filled descending then reversed
    m_prev = zeros(field, n, n)
    c_prev = field.one()
    cs = []
    for k in range(1, n + 1):
        m_k = mat_mul(a, mat_add(m_prev, mat_scale(c_prev, identity(field, n)))) if k > 1 else a
        tr = field.zero()
        for i in range(n):
            tr = tr + m_k[i][i]
        c_k = -(tr / field.from_rational(k))
        cs.append(c_k)
        m_prev, c_prev = m_k, c_k
    desc = [field.one()] + cs  # x^n + c_1 x^(n-1) + ... + c_n
    return list(reversed(desc))
