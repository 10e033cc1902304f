"""Exact linear algebra over the integers and rationals.

Everything here works on immutable tuples: a matrix is a tuple of row
tuples, a vector is a tuple. Entries are Python ints or fractions.Fraction;
no floats anywhere. All routines are deterministic (pivot choices are fixed),
so downstream canonical forms and reports are byte-stable.

Conventions:
- matrices act on column vectors: (A x)_i = sum_j A[i][j] x[j];
- the Hermite normal form is row-style, pivots positive, entries above a
  pivot reduced into [0, pivot);
- Smith normal form returns (D, U, V) with U*A*V = D, U and V unimodular.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Sequence

Vec = tuple
Mat = tuple


# ---------------------------------------------------------------------------
# construction / casting


def freeze_mat(rows: Sequence[Sequence]) -> Mat:
    return tuple(tuple(x for x in row) for row in rows)


def freeze_vec(v: Sequence) -> Vec:
    return tuple(v)


def identity(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zero_mat(m: int, n: int) -> Mat:
    return tuple(tuple(0 for _ in range(n)) for _ in range(m))


def zero_vec(n: int) -> Vec:
    return tuple(0 for _ in range(n))


def is_integer_matrix(a: Sequence[Sequence]) -> bool:
    for row in a:
        for x in row:
            if isinstance(x, bool) or not isinstance(x, int):
                if isinstance(x, Fraction) and x.denominator == 1:
                    continue
                return False
    return True


def is_integer_vector(v: Sequence) -> bool:
    return is_integer_matrix((v,))


def to_int_mat(a: Sequence[Sequence]) -> Mat:
    return tuple(tuple(int(x) for x in row) for row in a)


def to_int_vec(v: Sequence) -> Vec:
    return tuple(int(x) for x in v)


def to_frac_mat(a: Sequence[Sequence]) -> Mat:
    return tuple(tuple(Fraction(x) for x in row) for row in a)


def to_frac_vec(v: Sequence) -> Vec:
    return tuple(Fraction(x) for x in v)


def is_symmetric(a: Mat) -> bool:
    n = len(a)
    return all(len(r) == n for r in a) and all(
        a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n)
    )


# ---------------------------------------------------------------------------
# arithmetic


def transpose(a: Mat) -> Mat:
    if not a:
        return ()
    return tuple(tuple(a[i][j] for i in range(len(a))) for j in range(len(a[0])))


def mat_mul(a: Mat, b: Mat) -> Mat:
    if a and b and len(a[0]) != len(b):
        raise ValueError("shape mismatch in mat_mul")
    bt = transpose(b)
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_vec(a: Mat, v: Vec) -> Vec:
    if a and len(a[0]) != len(v):
        raise ValueError("shape mismatch in mat_vec")
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def vec_add(u: Vec, v: Vec) -> Vec:
    return tuple(x + y for x, y in zip(u, v))


def vec_sub(u: Vec, v: Vec) -> Vec:
    return tuple(x - y for x, y in zip(u, v))


def vec_scale(c, v: Vec) -> Vec:
    return tuple(c * x for x in v)


def mat_add(a: Mat, b: Mat) -> Mat:
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def mat_sub(a: Mat, b: Mat) -> Mat:
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def mat_scale(c, a: Mat) -> Mat:
    return tuple(tuple(c * x for x in row) for row in a)


def mat_pow(a: Mat, k: int) -> Mat:
    n = len(a)
    result = identity(n)
    base = a
    while k > 0:
        if k & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        k >>= 1
    return result


def dot(gram: Mat, u: Vec, v: Vec):
    """Bilinear pairing u.v with respect to a symmetric Gram matrix."""
    return sum(u[i] * sum(gram[i][j] * v[j] for j in range(len(v))) for i in range(len(u)))


def sq(gram: Mat, v: Vec):
    return dot(gram, v, v)


# ---------------------------------------------------------------------------
# determinants, rank, inverses


def det(a: Mat):
    """Exact determinant. Bareiss for integer input, fraction elimination else."""
    n = len(a)
    if n == 0:
        return 1
    if is_integer_matrix(a):
        return _det_bareiss([list(map(int, r)) for r in a])
    return _det_fraction([list(map(Fraction, r)) for r in a])


def _det_bareiss(m: list) -> int:
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[-1][-1]


def _det_fraction(m: list) -> Fraction:
    n = len(m)
    result = Fraction(1)
    for k in range(n):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            m[k], m[swap] = m[swap], m[k]
            result = -result
        result *= m[k][k]
        inv = 1 / m[k][k]
        for i in range(k + 1, n):
            factor = m[i][k] * inv
            if factor:
                for j in range(k, n):
                    m[i][j] -= factor * m[k][j]
    return result


def rref(a: Mat) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row echelon form over the rationals; returns (R, pivot columns)."""
    m = [list(map(Fraction, row)) for row in a]
    rows = len(m)
    cols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        pivot_row = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [x - factor * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return freeze_mat(m), tuple(pivots)


def rank(a: Mat) -> int:
    if not a or not a[0]:
        return 0
    return len(rref(a)[1])


def inverse(a: Mat) -> Mat:
    """Exact inverse over the rationals; raises on singular input."""
    n = len(a)
    aug = tuple(tuple(Fraction(x) for x in row) + tuple(
        Fraction(1 if i == j else 0) for j in range(n)) for i, row in enumerate(a))
    red, pivots = rref(aug)
    if pivots[:n] != tuple(range(n)):
        raise ValueError("matrix is singular")
    return tuple(row[n:] for row in red)


def inverse_int(a: Mat) -> Mat:
    """Inverse of a unimodular integer matrix, returned with integer entries."""
    inv = inverse(a)
    if not is_integer_matrix(inv):
        raise ValueError("matrix is not invertible over the integers")
    return to_int_mat(inv)


def solve(a: Mat, b: Vec) -> Vec | None:
    """One rational solution x of A x = b, or None if inconsistent."""
    rows = len(a)
    cols = len(a[0]) if a else 0
    aug = tuple(tuple(Fraction(x) for x in row) + (Fraction(b[i]),) for i, row in enumerate(a))
    red, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for r, c in enumerate(pivots):
        x[c] = red[r][cols]
    return tuple(x)


def kernel_frac(a: Mat) -> tuple[Vec, ...]:
    """Basis of the rational right kernel {x : A x = 0}."""
    if not a:
        return ()
    cols = len(a[0])
    red, pivots = rref(a)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -red[r][f]
        basis.append(tuple(v))
    return tuple(basis)


# ---------------------------------------------------------------------------
# integer normal forms


def hnf(a: Mat) -> Mat:
    """Row-style Hermite normal form of an integer matrix.

    Returns only the nonzero rows: a canonical basis of the row lattice.
    """
    m = [list(map(int, row)) for row in a]
    if not m:
        return ()
    rows, cols = len(m), len(m[0])
    r = 0
    for c in range(cols):
        # find a pivot: nonzero entry in column c at row >= r
        piv = None
        for i in range(r, rows):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        # euclidean elimination below the pivot
        while True:
            nz = [i for i in range(r + 1, rows) if m[i][c] != 0]
            if not nz:
                break
            # smallest absolute value into the pivot slot
            best = min(nz + [r], key=lambda i: abs(m[i][c]))
            if best != r:
                m[r], m[best] = m[best], m[r]
            for i in range(r + 1, rows):
                if m[i][c] != 0:
                    q = m[i][c] // m[r][c]
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
        if m[r][c] < 0:
            m[r] = [-x for x in m[r]]
        # reduce entries above the pivot into [0, pivot)
        for i in range(r):
            q = m[i][c] // m[r][c]
            if q:
                m[i] = [x - q * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return freeze_mat(m[:r])


def hnf_reduce(v: Vec, h: Mat) -> Vec:
    """Reduce an integer vector modulo the row lattice of an HNF matrix.

    Result is zero iff v lies in the lattice spanned by the rows of h.
    """
    w = list(map(int, v))
    for row in h:
        c = next((j for j, x in enumerate(row) if x != 0), None)
        if c is None:
            continue
        q = w[c] // row[c]
        if q:
            for j in range(len(w)):
                w[j] -= q * row[j]
    return tuple(w)


def in_row_lattice(v: Vec, h: Mat) -> bool:
    return all(x == 0 for x in hnf_reduce(v, h))


def snf(a: Mat) -> tuple[Mat, Mat, Mat]:
    """Smith normal form: (D, U, V) with U*A*V = D, diagonal d1 | d2 | ...

    Pivot choice: minimum absolute value in the working submatrix, first by
    rows then columns, which keeps the transform entries small and the
    output deterministic.
    """
    m = [list(map(int, row)) for row in a]
    rows = len(m)
    cols = len(m[0]) if m else 0
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        m[dst] = [x - q * y for x, y in zip(m[dst], m[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, q):
        for row in m:
            row[dst] -= q * row[src]
        for row in v:
            row[dst] -= q * row[src]

    t = 0
    limit = min(rows, cols)
    while t < limit:
        # locate minimal nonzero entry in the remaining block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if m[i][j] != 0 and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        dirty = False
        for i in range(t + 1, rows):
            if m[i][t]:
                q = m[i][t] // m[t][t]
                add_row(t, i, q)
                if m[i][t]:
                    dirty = True
        for j in range(t + 1, cols):
            if m[t][j]:
                q = m[t][j] // m[t][t]
                add_col(t, j, q)
                if m[t][j]:
                    dirty = True
        if dirty:
            continue
        # enforce divisibility d_t | all remaining entries
        offender = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if m[i][j] % m[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(offender, t, -1)  # row_t += row_offender
            continue
        if m[t][t] < 0:
            m[t] = [-x for x in m[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return freeze_mat(m), freeze_mat(u), freeze_mat(v)


def elementary_divisors(a: Mat) -> tuple[int, ...]:
    """Nonzero diagonal entries of the Smith form, in divisibility order."""
    d, _, _ = snf(a)
    out = []
    for i in range(min(len(d), len(d[0]) if d else 0)):
        if d[i][i] != 0:
            out.append(abs(d[i][i]))
    return tuple(out)


def kernel_int(a: Mat) -> tuple[Vec, ...]:
    """Basis of the saturated integer right kernel {x in Z^n : A x = 0}.

    The basis comes from the unimodular column transform of the Smith form,
    so it is automatically a basis of a direct summand of Z^n.
    """
    if not a or not a[0]:
        return ()
    d, _, v = snf(a)
    cols = len(a[0])
    r = len(elementary_divisors(a))
    vt = transpose(v)  # rows of vt are columns of v
    return tuple(vt[j] for j in range(r, cols))


def saturate_rows(b: Mat) -> Mat:
    """Basis (HNF rows) of the saturation of the row lattice of b in Z^n.

    The saturation is span_Q(rows) intersected with Z^n, computed as the
    integer kernel of the integer kernel.
    """
    if not b:
        return ()
    n = len(b[0])
    ker = kernel_int(b)
    if not ker:
        return identity(n)
    sat = kernel_int(freeze_mat(ker))
    return hnf(freeze_mat(sat))


def primitive_vector(v: Vec) -> Vec:
    """Scale a nonzero rational vector to a primitive integer vector.

    Sign convention: first nonzero coordinate positive.
    """
    fr = [Fraction(x) for x in v]
    if all(x == 0 for x in fr):
        raise ValueError("zero vector has no primitive representative")
    denom = 1
    for x in fr:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def vec_gcd(v: Vec) -> int:
    g = 0
    for x in v:
        g = gcd(g, abs(int(x)))
    return g


def clear_denominators(v: Vec) -> Vec:
    """Scale a rational vector by the lcm of denominators to integer entries."""
    fr = [Fraction(x) for x in v]
    denom = 1
    for x in fr:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    return tuple(int(x * denom) for x in fr)


# ---------------------------------------------------------------------------
# spectral helpers


def char_poly(a: Mat) -> tuple:
    """Characteristic polynomial coefficients (c_0, ..., c_n) with
    p(x) = sum c_k x^k and c_n = 1, computed by Faddeev-LeVerrier."""
    n = len(a)
    af = to_frac_mat(a)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    ident = to_frac_mat(identity(n))
    mk = af
    c = Fraction(0)
    for k in range(1, n + 1):
        if k > 1:
            mk = mat_mul(af, mat_add(mk, mat_scale(c, ident)))
        trace = sum(mk[i][i] for i in range(n))
        c = -trace / k
        coeffs[n - k] = c
    out = []
    for x in coeffs:
        fx = Fraction(x)
        out.append(int(fx) if fx.denominator == 1 else fx)
    return tuple(out)


def poly_eval(coeffs: Sequence, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_mat(coeffs: Sequence, a: Mat) -> Mat:
    """Evaluate a polynomial (coefficients c_0, ..., c_n) at a square matrix."""
    n = len(a)
    acc = zero_mat(n, n)
    for c in reversed(coeffs):
        acc = mat_add(mat_mul(acc, a), mat_scale(c, identity(n)))
    return acc


def _poly_mul(p: Sequence, q: Sequence) -> tuple:
    out = [0] * (len(p) + len(q) - 1)
    for i, pi in enumerate(p):
        for j, qj in enumerate(q):
            out[i + j] += pi * qj
    return tuple(out)


def _poly_divexact(p: Sequence, q: Sequence) -> tuple:
    # long division, exact by construction for cyclotomic factors
    rem = list(p)
    out = [0] * (len(p) - len(q) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = rem[k + len(q) - 1]
        if c % q[-1]:
            raise ValueError("inexact polynomial division")
        c //= q[-1]
        out[k] = c
        for j, qj in enumerate(q):
            rem[k + j] -= c * qj
    if any(rem):
        raise ValueError("inexact polynomial division")
    return tuple(out)


def cyclotomic(n: int) -> tuple:
    """Coefficients (c_0, ..., c_d) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    p = tuple([-1] + [0] * (n - 1) + [1])  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            p = _poly_divexact(p, cyclotomic(d))
    return p


def diagonalize_symmetric(gram: Mat) -> tuple[Mat, tuple]:
    """Congruence diagonalization of a symmetric matrix over Q.

    Returns (basis_rows, values) with basis_rows[i] . gram . basis_rows[j]
    equal to values[i] when i == j and 0 otherwise. Jacobi pivoting; a
    zero-diagonal block with a nonzero off-diagonal entry is broken by a
    row/column addition first.
    """
    n = len(gram)
    if n == 0:
        return (), ()
    m = [[Fraction(x) for x in row] for row in gram]
    basis = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    active = list(range(n))
    order = []
    while active:
        piv = next((i for i in active if m[i][i] != 0), None)
        if piv is None:
            pair = None
            for i in active:
                for j in active:
                    if i < j and m[i][j] != 0:
                        pair = (i, j)
                        break
                if pair:
                    break
            if pair is None:
                order.extend(active)
                break
            i, j = pair
            for k in range(n):
                m[i][k] += m[j][k]
            for k in range(n):
                m[k][i] += m[k][j]
            for k in range(n):
                basis[i][k] += basis[j][k]
            piv = i
        p = m[piv][piv]
        order.append(piv)
        active.remove(piv)
        for i in active:
            if m[i][piv] != 0:
                factor = m[i][piv] / p
                for k in range(n):
                    m[i][k] -= factor * m[piv][k]
                for k in range(n):
                    m[k][i] -= factor * m[k][piv]
                for k in range(n):
                    basis[i][k] -= factor * basis[piv][k]
    rows = tuple(freeze_vec(basis[i]) for i in order)
    vals = tuple(m[i][i] for i in order)
    return rows, vals


def matrix_order(a: Mat, bound: int = 60) -> int:
    """Multiplicative order of an integer matrix, or raise if it exceeds bound."""
    n = len(a)
    ident = identity(n)
    p = a
    for k in range(1, bound + 1):
        if p == ident:
            return k
        p = mat_mul(p, a)
    raise ValueError(f"matrix order exceeds bound {bound}")


def matrix_group_closure(generators: Sequence[Mat], bound: int = 1024) -> tuple:
    """All products of the given integer matrices, assumed to generate a
    finite group; breadth-first closure. Raises ValueError past the bound."""
    gens = [freeze_mat(g) for g in generators]
    if not gens:
        raise ValueError("need at least one generator (pass the identity)")
    n = len(gens[0])
    ident = identity(n)
    seen = {ident}
    frontier = [ident]
    order = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                p = mat_mul(m, g)
                if p not in seen:
                    seen.add(p)
                    order.append(p)
                    nxt.append(p)
                    if len(seen) > bound:
                        raise ValueError(f"group closure exceeds bound {bound}")
        frontier = nxt
    return tuple(order)


def restrict_to_span(m: Mat, basis_rows: Mat) -> Mat | None:
    """Matrix of the column action of m on span(basis rows), or None.

    Returns C with m . b_i = sum_j C[j][i] b_j (column convention in the
    basis coordinates). None when the span is not invariant.
    """
    if not basis_rows:
        return ()
    bc = transpose(basis_rows)  # columns are basis vectors
    cols = []
    for b in basis_rows:
        img = mat_vec(m, b)
        x = solve(bc, img)
        if x is None:
            return None
        cols.append(x)
    c = transpose(freeze_mat(cols))
    # exactness check: the solve must reproduce the images
    for i, b in enumerate(basis_rows):
        img = mat_vec(m, b)
        rebuilt = tuple(
            sum(c[j][i] * basis_rows[j][k] for j in range(len(basis_rows)))
            for k in range(len(b))
        )
        if tuple(Fraction(x) for x in rebuilt) != tuple(Fraction(x) for x in img):
            return None
    return c


def coords_in_rows(v: Vec, basis_rows: Mat) -> Vec | None:
    """Rational coordinates of v in the row basis, or None if outside the span."""
    if not basis_rows:
        return None if any(Fraction(x) != 0 for x in v) else ()
    bc = transpose(basis_rows)
    return solve(bc, v)


# ---------------------------------------------------------------------------
# exact square roots and ranges (for vector enumeration)


def isqrt_frac_floor(x: Fraction) -> int:
    """floor(sqrt(x)) for a nonnegative Fraction."""
    if x < 0:
        raise ValueError("negative argument")
    p, q = x.numerator, x.denominator
    return isqrt(p * q) // q


def sqrt_exact(x: Fraction) -> Fraction | None:
    """Exact rational square root, or None when x is not a perfect square."""
    if x < 0:
        return None
    p, q = x.numerator, x.denominator
    rp, rq = isqrt(p), isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


def divisors_signed(n: int) -> tuple[int, ...]:
    """All integer divisors of n != 0, both signs, sorted."""
    n = abs(n)
    if n == 0:
        raise ValueError("zero has no finite divisor list")
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    divs = set(small)
    divs.update(n // d for d in small)
    out = sorted(divs)
    return tuple([-d for d in reversed(out)] + out)
