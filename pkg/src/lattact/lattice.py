"""Integral lattices with exact arithmetic.

A lattice is Z^n equipped with an integer symmetric Gram matrix. Vectors are
coordinate tuples. The negative-definite convention for the ADE root lattices
is used throughout: A_n, D_n, E6, E7, E8 all have diagonal -2, and a "root"
is a vector of square -2. U is the hyperbolic plane [[0,1],[1,0]].

All sublattice bases are canonicalized through the Hermite normal form so
equal sublattices compare equal and reports are reproducible byte for byte.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from . import linalg as la
from .errors import InputError, ScopeError, VerificationError


# ---------------------------------------------------------------------------
# types


@dataclass(frozen=True)
class Signature:
    plus: int
    minus: int
    null: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.plus, self.minus, self.null)

    def __str__(self) -> str:
        return f"({self.plus},{self.minus},{self.null})"


@dataclass(frozen=True)
class Lattice:
    gram: tuple

    def __post_init__(self):
        g = la.freeze_mat(self.gram)
        if not la.is_integer_matrix(g):
            raise InputError("Gram matrix must have integer entries")
        g = la.to_int_mat(g)
        if not la.is_symmetric(g):
            raise InputError("Gram matrix must be symmetric")
        object.__setattr__(self, "gram", g)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    @property
    def nondegenerate(self) -> bool:
        return self.rank == 0 or la.det(self.gram) != 0

    def dot(self, u, v):
        return la.dot(self.gram, u, v)

    def sq(self, v):
        return la.sq(self.gram, v)

    def det(self):
        return la.det(self.gram) if self.rank else 1


@dataclass(frozen=True)
class Sublattice:
    """Finite-rank sublattice of an ambient lattice, basis rows in HNF."""

    ambient: Lattice
    basis: tuple  # rows: integer vectors in ambient coordinates, HNF
    index: int | None = None  # set by primitive_hull: [hull : input]

    def __post_init__(self):
        b = la.freeze_mat(self.basis)
        if b and not la.is_integer_matrix(b):
            raise InputError("sublattice basis must be integral")
        b = la.hnf(la.to_int_mat(b)) if b else ()
        object.__setattr__(self, "basis", b)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def gram(self) -> tuple:
        return tuple(
            tuple(self.ambient.dot(u, v) for v in self.basis) for u in self.basis
        )

    def as_lattice(self) -> Lattice:
        return Lattice(self.gram())

    def contains(self, v) -> bool:
        if not la.is_integer_vector(v):
            return False
        return la.in_row_lattice(la.to_int_vec(v), self.basis)

    def contains_sublattice(self, other: "Sublattice") -> bool:
        return all(self.contains(row) for row in other.basis)

    def to_ambient(self, coords):
        """Map basis coordinates to an ambient vector."""
        n = self.ambient.rank
        return tuple(
            sum(coords[i] * self.basis[i][k] for i in range(self.rank))
            for k in range(n)
        )

    def coords_of(self, v):
        """Rational coordinates of an ambient vector in this basis, or None."""
        return la.coords_in_rows(tuple(Fraction(x) for x in v), self.basis)

    @property
    def primitive(self) -> bool:
        if not self.basis:
            return True
        return la.saturate_rows(self.basis) == self.basis


@dataclass(frozen=True)
class Subspace:
    """Rational subspace of the ambient lattice, basis rows in reduced form."""

    ambient: Lattice
    basis: tuple  # rows: rational vectors, canonical rref

    def __post_init__(self):
        rows = la.freeze_mat(self.basis)
        if rows:
            red, pivots = la.rref(rows)
            rows = tuple(red[i] for i in range(len(pivots)))
        object.__setattr__(self, "basis", rows)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def gram(self) -> tuple:
        return tuple(
            tuple(self.ambient.dot(u, v) for v in self.basis) for u in self.basis
        )


@dataclass(frozen=True)
class Isometry:
    """Integer matrix m with m^T G m = G, acting on column vectors."""

    lattice: Lattice
    matrix: tuple

    def __post_init__(self):
        m = la.freeze_mat(self.matrix)
        if not la.is_integer_matrix(m):
            raise InputError("isometry matrix must be integral")
        m = la.to_int_mat(m)
        if len(m) != self.lattice.rank or any(len(r) != self.lattice.rank for r in m):
            raise InputError("isometry matrix shape does not match the lattice rank")
        if not is_isometry(self.lattice, m):
            raise InputError("matrix does not preserve the Gram matrix")
        object.__setattr__(self, "matrix", m)

    def __call__(self, v):
        return la.mat_vec(self.matrix, v)

    def compose(self, other: "Isometry") -> "Isometry":
        return Isometry(self.lattice, la.mat_mul(self.matrix, other.matrix))

    def inverse(self) -> "Isometry":
        inv = la.inverse(self.matrix)
        return Isometry(self.lattice, la.to_int_mat(inv))

    @property
    def det(self) -> int:
        return la.det(self.matrix)


@dataclass(frozen=True)
class DiscriminantForm:
    """Finite discriminant group with torsion quadratic/bilinear data.

    invariant_factors: orders (d_1 | d_2 | ...) of the cyclic summands, all > 1.
    generators: rational coordinate vectors in L tensor Q representing the
    summand generators.
    q_values: self-values of the quadratic refinement, reduced into [0, 2).
    b_values: pairing matrix, values reduced into [0, 1).
    """

    invariant_factors: tuple
    generators: tuple
    q_values: tuple
    b_values: tuple

    @property
    def order(self) -> int:
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n


# ---------------------------------------------------------------------------
# constructors


def make_lattice(gram) -> Lattice:
    return Lattice(la.freeze_mat(gram))


def direct_sum(*lattices: Lattice) -> Lattice:
    total = sum(l.rank for l in lattices)
    rows = [[0] * total for _ in range(total)]
    pos = 0
    for l in lattices:
        for i in range(l.rank):
            for j in range(l.rank):
                rows[pos + i][pos + j] = l.gram[i][j]
        pos += l.rank
    return Lattice(la.freeze_mat(rows))


def _ade_gram(letter: str, n: int) -> tuple:
    """Negative-definite ADE Gram from the Dynkin diagram adjacency."""
    if letter == "A":
        if n < 1:
            raise InputError("A_n needs n >= 1")
        edges = [(i, i + 1) for i in range(n - 1)]
    elif letter == "D":
        if n < 4:
            raise InputError("D_n needs n >= 4")
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    elif letter == "E":
        if n not in (6, 7, 8):
            raise InputError("E_n needs n in {6,7,8}")
        # chain 0..n-2 with node n-1 attached to node 2 (arms 1, 2, n-4)
        edges = [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)]
    else:
        raise InputError(f"unknown series {letter!r}")
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = -2
    for i, j in edges:
        g[i][j] = 1
        g[j][i] = 1
    return la.freeze_mat(g)


_TERM_RE = re.compile(
    r"^(?P<count>\d+)?(?P<name>U|A\d+|D\d+|E[678]|diag\((?P<diag>-?\d+(?:,-?\d+)*)\))"
    r"(?:\((?P<scale>-?\d+)\))?$"
)


def standard_lattice(spec: str) -> Lattice:
    """Build a lattice from a direct-sum expression.

    Grammar: terms joined by '+'; each term is [count]Name[(scale)] with Name
    one of U, A<n>, D<n>, E6, E7, E8, or diag(a,b,...). Examples: "3U+2E8",
    "U(2)", "A2(-1)", "diag(2,-2)". Whitespace is ignored.
    """
    if not isinstance(spec, str) or not spec.strip():
        raise InputError("empty lattice expression")
    text = spec.replace(" ", "")
    # split on '+' not inside parentheses
    terms, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise InputError(f"unbalanced parentheses in {spec!r}")
        if ch == "+" and depth == 0:
            terms.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise InputError(f"unbalanced parentheses in {spec!r}")
    terms.append("".join(cur))

    blocks = []
    for term in terms:
        m = _TERM_RE.match(term)
        if not m:
            raise InputError(f"cannot parse lattice term {term!r}")
        count = int(m.group("count") or 1)
        if count < 1:
            raise InputError(f"term multiplier must be positive in {term!r}")
        name = m.group("name")
        scale = int(m.group("scale")) if m.group("scale") else 1
        if scale == 0:
            raise InputError("scale 0 is not allowed")
        if name == "U":
            gram = la.freeze_mat([[0, 1], [1, 0]])
        elif name.startswith("diag("):
            entries = [int(x) for x in m.group("diag").split(",")]
            gram = la.freeze_mat(
                [[entries[i] if i == j else 0 for j in range(len(entries))]
                 for i in range(len(entries))]
            )
        else:
            gram = _ade_gram(name[0], int(name[1:]))
        if scale != 1:
            gram = la.mat_scale(scale, gram)
        for _ in range(count):
            blocks.append(Lattice(gram))
    return direct_sum(*blocks)


def full_sublattice(l: Lattice) -> Sublattice:
    return Sublattice(l, la.identity(l.rank))


def sublattice_from_rows(l: Lattice, rows) -> Sublattice:
    return Sublattice(l, la.freeze_mat(rows))


# ---------------------------------------------------------------------------
# core operations


def signature(l: Lattice) -> Signature:
    """Exact Jacobi diagonalization over Q; counts (+, -, 0) inertia."""
    n = l.rank
    if n == 0:
        return Signature(0, 0, 0)
    m = [list(map(Fraction, row)) for row in l.gram]
    active = list(range(n))
    plus = minus = null = 0
    while active:
        # prefer a nonzero diagonal pivot (first in order)
        piv = next((i for i in active if m[i][i] != 0), None)
        if piv is None:
            # find off-diagonal nonzero pair; if none, the rest is radical
            pair = None
            for i in active:
                for j in active:
                    if i < j and m[i][j] != 0:
                        pair = (i, j)
                        break
                if pair:
                    break
            if pair is None:
                null += len(active)
                break
            i, j = pair
            # row/col i += row/col j creates diagonal 2*m[i][j] != 0
            for k in range(n):
                m[i][k] += m[j][k]
            for k in range(n):
                m[k][i] += m[k][j]
            piv = i
        p = m[piv][piv]
        if p > 0:
            plus += 1
        else:
            minus += 1
        active.remove(piv)
        for i in active:
            if m[i][piv] != 0:
                factor = m[i][piv] / p
                for k in range(n):
                    m[i][k] -= factor * m[piv][k]
                for k in range(n):
                    m[k][i] -= factor * m[k][piv]
    return Signature(plus, minus, null)


def _as_row_basis(s) -> tuple:
    if isinstance(s, Sublattice):
        return s.basis
    if isinstance(s, Subspace):
        return s.basis
    raise InputError("expected a Sublattice or Subspace")


def orthogonal_complement(l: Lattice, s) -> Sublattice:
    """Primitive sublattice of all integer vectors orthogonal to s."""
    rows = _as_row_basis(s)
    if not rows:
        return full_sublattice(l)
    # one condition row per basis vector v: the covector v^T G, cleared to
    # integer entries (rational v allowed for Subspace input)
    cond = []
    for v in rows:
        covector = la.mat_vec(la.transpose(l.gram), v)  # G symmetric: G v
        cond.append(la.clear_denominators(covector))
    ker = la.kernel_int(la.freeze_mat(cond))
    return Sublattice(l, la.freeze_mat(ker))


def primitive_hull(l: Lattice, s: Sublattice) -> Sublattice:
    """Smallest primitive sublattice containing s; carries the finite index."""
    if s.rank == 0:
        return Sublattice(l, (), index=1)
    sat = la.saturate_rows(s.basis)
    # index = product of elementary divisors of s's coordinates in the hull
    coords = []
    for v in s.basis:
        c = la.coords_in_rows(v, sat)
        coords.append([int(x) for x in c])
    idx = 1
    for d in la.elementary_divisors(la.freeze_mat(coords)):
        idx *= d
    return Sublattice(l, sat, index=idx)


def discriminant_form(l: Lattice) -> DiscriminantForm:
    """Discriminant group L*/L with torsion forms, from the Smith form."""
    if not l.nondegenerate:
        raise InputError("discriminant form needs a nondegenerate lattice")
    if l.rank == 0:
        return DiscriminantForm((), (), (), ())
    d, u, v = la.snf(l.gram)
    ginv = la.inverse(l.gram)
    uinv = la.inverse(u)
    w = la.mat_mul(ginv, uinv)  # column i generates the i-th cyclic summand
    factors = []
    gens = []
    for i in range(l.rank):
        di = abs(d[i][i])
        if di > 1:
            factors.append(di)
            gens.append(tuple(w[k][i] for k in range(l.rank)))
    qs = []
    for g in gens:
        # quadratic refinement: self-pairing reduced into [0, 2); canonical
        # for even lattices, where q is well defined modulo 2Z
        qs.append(Fraction(la.sq(l.gram, g)) % 2)
    bs = tuple(
        tuple(Fraction(la.dot(l.gram, gi, gj)) % 1 for gj in gens) for gi in gens
    )
    total = 1
    for f in factors:
        total *= f
    if total != abs(l.det()):
        raise VerificationError("discriminant order does not match |det|")
    # q refines b: q(x+y) - q(x) - q(y) = 2 b(x,y) mod 2Z on generator pairs
    for i, gi in enumerate(gens):
        for j, gj in enumerate(gens):
            lhs = (Fraction(la.sq(l.gram, la.vec_add(gi, gj))) - qs[i] - qs[j]) % 2
            if lhs != (2 * bs[i][j]) % 2:
                raise VerificationError("discriminant q does not refine b")
    return DiscriminantForm(tuple(factors), tuple(gens), tuple(qs), bs)


def _binary_split_solutions(gram, t: int) -> tuple:
    """Integer solutions of a rank-2 form that factors into linear forms.

    Needs disc = B^2 - AC a positive perfect square, t != 0; then
    A*Q = (Ax + (B-s)y)(Ax + (B+s)y) and solutions come from the signed
    divisor pairs of A*t (or of t directly when A = 0).
    """
    a_, b_, c_ = gram[0][0], gram[0][1], gram[1][1]
    s = isqrt(b_ * b_ - a_ * c_)
    sols = set()
    if a_ != 0:
        n = a_ * t
        for d1 in la.divisors_signed(n):
            d2 = n // d1
            if (d2 - d1) % (2 * s):
                continue
            y = (d2 - d1) // (2 * s)
            num = d1 - (b_ - s) * y
            if num % a_:
                continue
            sols.add((num // a_, y))
    else:
        # Q = y * (2Bx + Cy), so y runs over signed divisors of t
        for y in la.divisors_signed(t):
            rem = t // y - c_ * y
            if rem % (2 * b_):
                continue
            sols.add((rem // (2 * b_), y))
    out = tuple(sorted(v for v in sols if any(v) and la.sq(gram, v) == t))
    return out


def enumerate_vectors(l: Lattice, a: int, up_to_sign: bool = False) -> tuple:
    """All nonzero integer vectors of square a in a definite lattice.

    Exact Fincke-Pohst with rational Cholesky data. The result is sorted
    lexicographically; with up_to_sign=True only the representative with
    positive first nonzero coordinate is kept. Rank-2 indefinite forms
    whose discriminant is a perfect square (products of two linear forms,
    e.g. U(k) or diag(2,-2)) are solved by divisor enumeration instead.
    """
    n = l.rank
    if n == 0:
        return ()
    sig = signature(l)
    if sig.plus != 0 and sig.minus != 0 and sig.null == 0 and n == 2:
        disc = l.gram[0][1] ** 2 - l.gram[0][0] * l.gram[1][1]
        if la.is_perfect_square(disc):
            if a == 0:
                raise ScopeError("isotropic vectors of a split form are infinite in number")
            found = _binary_split_solutions(l.gram, a)
            if up_to_sign:
                found = tuple(
                    v for v in found if next(c for c in v if c != 0) > 0
                )
            return found
    if sig.null != 0 or (sig.plus != 0 and sig.minus != 0):
        raise ScopeError("vector enumeration needs a definite lattice")
    negative = sig.minus > 0
    target = -a if negative else a
    if target < 0:
        return ()
    if target == 0:
        return ()
    if l.even and target % 2 != 0:
        return ()
    q = [[Fraction(x) for x in row] for row in (la.mat_scale(-1, l.gram) if negative else l.gram)]
    # Cholesky-style decomposition: sum_i d_i (x_i + sum_{j>i} c_ij x_j)^2
    for i in range(n):
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for j in range(i + 1, n):
            for k in range(j, n):
                q[j][k] = q[j][k] - q[j][i] * q[i][k]
    found = []
    x = [0] * n

    def descend(level: int, remaining: Fraction):
        center = sum(q[level][j] * x[j] for j in range(level + 1, n))
        bound2 = remaining / q[level][level]
        spread = la.isqrt_frac_floor(bound2) + 2
        base = -center
        lo = int(base) - spread - 1
        hi = int(base) + spread + 1
        for k in range(lo, hi + 1):
            off = k + center
            val = q[level][level] * off * off
            if val > remaining:
                continue
            x[level] = k
            if level == 0:
                if val == remaining:
                    vec = tuple(x)
                    if any(vec):
                        found.append(vec)
            else:
                descend(level - 1, remaining - val)
        x[level] = 0

    descend(n - 1, Fraction(target))
    out = []
    for v in found:
        if up_to_sign:
            lead = next(c for c in v if c != 0)
            if lead < 0:
                continue
        out.append(v)
    return tuple(sorted(out))


def rank2_isomorphism_class(l) -> tuple:
    """Canonical reduced Gram of a definite-or-zero lattice of rank <= 2.

    Accepts a Lattice or a raw Gram matrix. Rank 0 -> (); identically zero
    form -> the zero matrix; rank 1 -> ((a,),); rank 2 -> Gauss-reduced
    binary form with a <= c, |2b| <= a, and b >= 0 when |2b| == a or a == c,
    restored to the original sign. Equal outputs iff isomorphic lattices.
    """
    if not isinstance(l, Lattice):
        l = make_lattice(l)
    if l.rank == 0:
        return ()
    if all(x == 0 for row in l.gram for x in row):
        return l.gram
    sig = signature(l)
    if sig.null != 0 or (sig.plus and sig.minus):
        raise ScopeError("isomorphism class implemented for definite lattices only")
    if l.rank == 1:
        return l.gram
    if l.rank != 2:
        raise ScopeError("rank must be <= 2")
    sign = -1 if sig.minus else 1
    a, b, c = sign * l.gram[0][0], sign * l.gram[0][1], sign * l.gram[1][1]
    # Lagrange-Gauss reduction on the positive form ax^2 + 2bxy + cy^2
    while True:
        if a > c:
            a, c = c, a
            b = -b
            continue
        if abs(2 * b) > a:
            # translate: b -> b - k a with |b'| minimal
            k = round(Fraction(b, a))
            bb = b - k * a
            cc = c - 2 * k * b + k * k * a
            b, c = bb, cc
            continue
        break
    if a > c:
        a, c = c, a
        b = -b
    # (a,b,c) and (a,-b,c) are improperly equivalent; pick b <= 0 so the
    # negative-definite canonical forms carry nonnegative off-diagonal
    b = -abs(b)
    return la.freeze_mat([[sign * a, sign * b], [sign * b, sign * c]])


def is_isometry(l: Lattice, m) -> bool:
    """m integer, invertible over Z, preserving the Gram matrix."""
    m = la.freeze_mat(m)
    if not la.is_integer_matrix(m):
        return False
    m = la.to_int_mat(m)
    if len(m) != l.rank or any(len(r) != l.rank for r in m):
        return False
    if l.rank == 0:
        return True
    if la.det(m) not in (1, -1):
        return False
    return la.mat_mul(la.mat_mul(la.transpose(m), l.gram), m) == l.gram


def sublattice_sum(l: Lattice, *subs: Sublattice) -> Sublattice:
    rows = []
    for s in subs:
        rows.extend(s.basis)
    return Sublattice(l, la.freeze_mat(rows))
