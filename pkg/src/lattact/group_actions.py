"""Finite group actions on lattices with a holomorphy sign.

An action is a finite set of named isometries, each carrying a declared
sign kappa (+1 holomorphic, -1 antiholomorphic). The operations here
recover the rotation order of the kernel subgroup, the invariant flag it
needs on a lattice of positive index three, the rotation block and its
integral dilated complex structure, the eigenlattice split under an
antiholomorphic involution, and the geometricity test on the leftover
negative part. All arithmetic is exact.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import linalg as la
from .errors import InputError, ScopeError, VerificationError
from .lattice import (
    Isometry,
    Lattice,
    Sublattice,
    Subspace,
    enumerate_vectors,
    full_sublattice,
    is_isometry,
    make_lattice,
    orthogonal_complement,
    signature,
    standard_lattice,
    sublattice_sum,
)


# ---------------------------------------------------------------------------
# types


@dataclass(frozen=True)
class LatticeAction:
    """Named generators with declared holomorphy signs on a common lattice.

    generators: tuple of (name, Isometry, kappa) with kappa in {+1, -1}.
    Raw matrices are accepted and wrapped; wrapping rejects non-isometries.
    """

    ambient: Lattice
    generators: tuple

    def __post_init__(self):
        gens = []
        for item in self.generators:
            if len(item) != 3:
                raise InputError("generator entries must be (name, isometry, sign)")
            name, iso, kappa = item
            if kappa not in (1, -1):
                raise InputError("holomorphy sign must be +1 or -1")
            if not isinstance(iso, Isometry):
                iso = Isometry(self.ambient, la.freeze_mat(iso))
            elif iso.lattice.gram != self.ambient.gram:
                raise InputError("generator acts on a different lattice")
            gens.append((str(name), iso, kappa))
        object.__setattr__(self, "generators", tuple(gens))


@dataclass(frozen=True)
class GroupElements:
    """Complete element list of a finite action, with signs.

    Ordering is breadth-first over generator words, ties within a word
    length broken by plain tuple comparison of the matrices, so the list
    is reproducible across runs.
    """

    action: LatticeAction
    elements: tuple
    kappas: tuple

    def __post_init__(self):
        index = {m: i for i, m in enumerate(self.elements)}
        object.__setattr__(self, "_index", index)

    def __len__(self) -> int:
        return len(self.elements)

    def index_of(self, matrix) -> int:
        m = la.freeze_mat(matrix)
        if m not in self._index:
            raise InputError("matrix is not an element of the group")
        return self._index[m]

    def kappa_of(self, matrix) -> int:
        return self.kappas[self.index_of(matrix)]

    def kernel_matrices(self) -> tuple:
        return tuple(m for m, k in zip(self.elements, self.kappas) if k == 1)


@dataclass(frozen=True)
class FundamentalData:
    """Rotation order of the sign-kernel plus the invariant flag.

    order_n: order of the rotation the kernel subgroup induces on its
    positive plane; the representation is real exactly when order_n <= 2.
    witness: ambient matrix whose rotation block realises that order (the
    identity when order_n is 1).
    ell: integer vector spanning the invariant positive line.
    plane: invariant subspace of positive index exactly two carrying the
    rotation (for order_n >= 2 this is the full rotation block over Q;
    for order_n = 1 it is a definite plane of eigenvectors).
    """

    order_n: int
    real: bool
    witness: tuple
    ell: tuple
    plane: Subspace


@dataclass(frozen=True)
class EigenData:
    """Eigenlattice split of the rotation block under a chosen reflector.

    m_plus / m_minus live inside the rotation block: their ambient is the
    block presented as a lattice, basis rows in block coordinates.
    exponent: annihilator of the quotient block / (m_plus + m_minus).
    """

    reflector_name: str
    reflector: Isometry
    rho: Sublattice
    m_plus: Sublattice
    m_minus: Sublattice
    exponent: int


@dataclass(frozen=True)
class DilatedComplexStructure:
    """Integer matrix J on the rotation block with J^2 = -multiplier."""

    rho: Sublattice
    matrix: tuple
    multiplier: int


# ---------------------------------------------------------------------------
# small exact helpers


def _int_rows(rows) -> tuple:
    return tuple(la.clear_denominators(r) for r in rows)


def _sig_of_rows(l: Lattice, rows):
    rows = _int_rows(rows)
    gram = tuple(tuple(l.dot(u, v) for v in rows) for u in rows)
    return signature(make_lattice(gram))


def _restrict(matrix, basis_rows) -> tuple:
    """Integer restriction of an ambient matrix to an invariant row span."""
    r = la.restrict_to_span(matrix, basis_rows)
    if r is None or not la.is_integer_matrix(r):
        raise ScopeError("unsupported action shape: a required block is not invariant")
    return la.to_int_mat(r)


def _positive_directions(sub: Sublattice) -> list:
    """Pairwise orthogonal integer vectors of positive square spanning the
    positive part of the sublattice, in diagonalization order."""
    rows, vals = la.diagonalize_symmetric(sub.gram())
    out = []
    for r, v in zip(rows, vals):
        if v > 0:
            amb = tuple(
                sum(r[i] * Fraction(sub.basis[i][k]) for i in range(sub.rank))
                for k in range(sub.ambient.rank)
            )
            out.append(la.clear_denominators(amb))
    return out


def _frac_mat(a) -> tuple:
    return tuple(tuple(Fraction(x) for x in row) for row in a)


# ---------------------------------------------------------------------------
# enumeration and fixed parts


def enumerate_group(action: LatticeAction, bound: int = 1024) -> GroupElements:
    """All elements of the generated group with their holomorphy signs.

    Breadth-first closure over right multiplication by generators; the
    declared signs are propagated multiplicatively and every generator
    edge is checked, so a sign assignment that is not a homomorphism is
    always detected.
    """
    if bound < 1:
        raise InputError("element bound must be positive")
    n = action.ambient.rank
    ident = la.identity(n)
    kappa = {ident: 1}
    gens = []
    for _, iso, k in action.generators:
        gens.append((iso.matrix, k))
        if iso.matrix == ident and k != 1:
            raise VerificationError("declared signs are not a homomorphism: identity marked -1")
    order = [ident]
    frontier = [ident]
    while frontier:
        fresh = {}
        for m in frontier:
            km = kappa[m]
            for gm, gk in gens:
                p = la.mat_mul(m, gm)
                pk = km * gk
                if p in kappa:
                    if kappa[p] != pk:
                        raise VerificationError("declared signs are not a homomorphism")
                elif p in fresh:
                    if fresh[p] != pk:
                        raise VerificationError("declared signs are not a homomorphism")
                else:
                    fresh[p] = pk
        frontier = sorted(fresh)
        kappa.update(fresh)
        order.extend(frontier)
        if len(order) > bound:
            raise ScopeError(f"group closure exceeds the bound {bound}")
    for m in order:
        inv = la.inverse_int(m)
        if inv not in kappa or kappa[inv] != kappa[m]:
            raise VerificationError("group closure is not inverse-closed with consistent signs")
    return GroupElements(action, tuple(order), tuple(kappa[m] for m in order))


def fixed_lattice(action: LatticeAction, subgroup: str = "all") -> Sublattice:
    """Primitive sublattice fixed pointwise, by the whole group or by the
    kernel of the holomorphy sign (subgroup = "all" or "kernel")."""
    l = action.ambient
    if subgroup == "all":
        mats = [iso.matrix for _, iso, _ in action.generators]
    elif subgroup == "kernel":
        mats = list(enumerate_group(action).kernel_matrices())
    else:
        raise InputError('subgroup must be "all" or "kernel"')
    ident = la.identity(l.rank)
    stacked = []
    for m in mats:
        stacked.extend(la.mat_sub(m, ident))
    if not stacked:
        return full_sublattice(l)
    return Sublattice(l, la.kernel_int(la.freeze_mat(stacked)))


# ---------------------------------------------------------------------------
# fundamental representation data


def _first_positive_vector(sub: Sublattice, failure: str) -> tuple:
    vecs = _positive_directions(sub)
    if not vecs:
        raise VerificationError(failure)
    return vecs[0]


def _real_branch(action, group, fixed0, fixed_all) -> FundamentalData:
    l = action.ambient
    ident = la.identity(l.rank)
    minus = [m for m, k in zip(group.elements, group.kappas) if k == -1]
    if not minus:
        vecs = _positive_directions(fixed0)
        if len(vecs) < 3:
            raise VerificationError("not almost geometric: fixed part lost a positive direction")
        ell, plane = vecs[0], Subspace(l, (vecs[1], vecs[2]))
        return FundamentalData(1, True, ident, ell, plane)
    cf = _restrict(minus[0], fixed0.basis)
    # on the kernel-fixed part every -1 element acts the same way and
    # every +1 element acts trivially; anything else is a sign conflict
    fid = la.identity(fixed0.rank)
    for m, k in zip(group.elements, group.kappas):
        r = _restrict(m, fixed0.basis)
        if r != (fid if k == 1 else cf):
            raise VerificationError("declared signs disagree with the action on the fixed part")
    plus_rows = tuple(
        tuple(sum(r[i] * fixed0.basis[i][k] for i in range(fixed0.rank)) for k in range(l.rank))
        for r in la.kernel_int(la.mat_sub(cf, fid))
    )
    minus_rows = tuple(
        tuple(sum(r[i] * fixed0.basis[i][k] for i in range(fixed0.rank)) for k in range(l.rank))
        for r in la.kernel_int(la.mat_add(cf, fid))
    )
    f_plus = Sublattice(l, plus_rows)
    f_minus = Sublattice(l, minus_rows)
    pos_plus = _positive_directions(f_plus)
    pos_minus = _positive_directions(f_minus)
    if len(pos_plus) < 2 or len(pos_minus) < 1:
        raise VerificationError("not almost geometric: no flag compatible with the declared signs")
    plane = Subspace(l, (pos_plus[1], pos_minus[0]))
    return FundamentalData(1, True, ident, pos_plus[0], plane)


def _rotation_branch(action, group, fixed_all) -> FundamentalData:
    l = action.ambient
    ident = la.identity(l.rank)
    order_bound = max(60, len(group.elements))
    best = None
    for m, k in zip(group.elements, group.kappas):
        if k != 1 or m == ident:
            continue
        o = la.matrix_order(m, bound=order_bound)
        for nn in (d for d in la.divisors_signed(o) if d > 1):
            if o % nn:
                continue
            ker = la.kernel_int(la.poly_mat(la.cyclotomic(nn), m))
            if ker and _sig_of_rows(l, ker).plus >= 2 and (best is None or nn > best[0]):
                best = (nn, m, ker)
    if best is None:
        raise VerificationError("not almost geometric: no element carries a positive rotation plane")
    nn, witness, ker = best
    kmat = la.freeze_mat(ker)
    c = _restrict(witness, kmat)
    if la.matrix_order(c, bound=order_bound) != nn:
        raise VerificationError("rotation block order disagrees with its cyclotomic kernel")
    powers = set()
    p = la.identity(len(c))
    for _ in range(nn):
        powers.add(p)
        p = la.mat_mul(p, c)
    c_inv = la.inverse_int(c)
    kid = la.identity(len(c))
    for m, k in zip(group.elements, group.kappas):
        r = _restrict(m, kmat)
        if k == 1:
            if r not in powers:
                raise ScopeError("unsupported action shape: kernel subgroup is not cyclic on the rotation block")
            continue
        if nn >= 3:
            if la.mat_mul(la.mat_mul(r, c), la.inverse_int(r)) != c_inv:
                raise VerificationError("declared signs disagree with the rotation orientation")
        else:
            if la.mat_mul(r, r) != kid:
                raise VerificationError("declared signs disagree with the rotation orientation")
            for sgn in (1, -1):
                part = la.kernel_int(la.mat_sub(r, la.mat_scale(sgn, kid)))
                amb = tuple(
                    tuple(sum(row[i] * kmat[i][t] for i in range(len(kmat))) for t in range(l.rank))
                    for row in part
                )
                if _sig_of_rows(l, amb).plus != 1:
                    raise VerificationError("declared signs disagree with the rotation orientation")
    if _sig_of_rows(l, kmat).plus != 2:
        raise VerificationError("rotation block has the wrong positive index")
    ell = _first_positive_vector(
        fixed_all, "not almost geometric: no invariant positive direction"
    )
    return FundamentalData(nn, nn <= 2, witness, ell, Subspace(l, kmat))


def fundamental_data(action: LatticeAction, bound: int = 1024) -> FundamentalData:
    """Rotation order and invariant flag of an action on a lattice of
    positive index three, or a refusal.

    The kernel of the sign either fixes a positive 3-space (order 1) or
    some kernel element rotates a positive plane with a primitive n-th
    root of unity; the kernel must act on that plane through powers of
    the witness, every -1 element must reverse its orientation, and a
    positive invariant direction must remain for the line of the flag.
    """
    l = action.ambient
    if signature(l).plus != 3:
        raise ScopeError("ambient lattice must have positive index three")
    group = enumerate_group(action, bound)
    stacked = []
    ident = la.identity(l.rank)
    for m in group.kernel_matrices():
        stacked.extend(la.mat_sub(m, ident))
    fixed0 = Sublattice(l, la.kernel_int(la.freeze_mat(stacked))) if stacked else full_sublattice(l)
    fixed_all = fixed_lattice(action, "all")
    if _sig_of_rows(l, fixed0.basis).plus == 3:
        data = _real_branch(action, group, fixed0, fixed_all)
    else:
        data = _rotation_branch(action, group, fixed_all)
    _verify_flag(action, data)
    return data


def _verify_flag(action: LatticeAction, data: FundamentalData) -> None:
    l = action.ambient
    if l.sq(data.ell) <= 0:
        raise VerificationError("flag line is not positive")
    for _, iso, _ in action.generators:
        if iso(data.ell) != tuple(data.ell):
            raise VerificationError("flag line is not invariant")
        if la.restrict_to_span(iso.matrix, data.plane.basis) is None:
            raise VerificationError("flag plane is not invariant")
    if signature(make_lattice(_gram_of(l, _int_rows(data.plane.basis)))).plus != 2:
        raise VerificationError("flag plane has the wrong positive index")
    for row in data.plane.basis:
        if la.dot(la.to_frac_mat(l.gram), la.to_frac_vec(data.ell), la.to_frac_vec(row)) != 0:
            raise VerificationError("flag line is not orthogonal to the plane")
    if data.order_n > 1 and la.matrix_order(data.witness, bound=1024) % data.order_n:
        raise VerificationError("witness order is not a multiple of the rotation order")


def _gram_of(l: Lattice, rows) -> tuple:
    return tuple(tuple(l.dot(u, v) for v in rows) for u in rows)


# ---------------------------------------------------------------------------
# rotation block, dilation, eigenlattices


def rho_lattice(action: LatticeAction, data: FundamentalData) -> Sublattice:
    """Integral rotation block: the saturated cyclotomic kernel of the
    witness for order >= 2, the kernel-fixed sublattice for order 1."""
    l = action.ambient
    if data.order_n == 1:
        sub = fixed_lattice(action, "kernel")
    else:
        ker = la.kernel_int(la.poly_mat(la.cyclotomic(data.order_n), data.witness))
        sub = Sublattice(l, ker)
    for _, iso, _ in action.generators:
        if la.restrict_to_span(iso.matrix, sub.basis) is None:
            raise ScopeError("unsupported action shape: rotation block is not invariant")
    return sub


_T_FOR_ORDER = {3: -1, 4: 0, 6: 1}


def dilated_complex_structure(action: LatticeAction, data: FundamentalData) -> DilatedComplexStructure:
    """J = 2 c - t on the rotation block, integral with J^2 = -(4 - t^2).

    Defined for rotation orders 3, 4 and 6 (t = -1, 0, 1), the orders
    whose primitive roots of unity have degree two. J is checked to be
    anti-selfadjoint, to commute with every +1 element and to anticommute
    with every -1 element on the block.
    """
    if data.order_n not in _T_FOR_ORDER:
        raise ScopeError("no integral dilation for this rotation order")
    rho = rho_lattice(action, data)
    c = _restrict(data.witness, rho.basis)
    t = _T_FOR_ORDER[data.order_n]
    k = rho.rank
    j = la.mat_sub(la.mat_scale(2, c), la.mat_scale(t, la.identity(k)))
    mult = 4 - t * t
    if la.mat_mul(j, j) != la.mat_scale(-mult, la.identity(k)):
        raise VerificationError("dilation square is not the expected scalar")
    g = la.freeze_mat(rho.gram())
    if la.mat_mul(la.transpose(j), g) != la.mat_scale(-1, la.mat_mul(g, j)):
        raise VerificationError("dilation is not anti-selfadjoint")
    group = enumerate_group(action)
    for m, kap in zip(group.elements, group.kappas):
        r = _restrict(m, rho.basis)
        left = la.mat_mul(r, j)
        right = la.mat_mul(j, r)
        if kap == 1 and left != right:
            raise VerificationError("dilation fails to commute with a holomorphic element")
        if kap == -1 and left != la.mat_scale(-1, right):
            raise VerificationError("dilation fails to anticommute with an antiholomorphic element")
    return DilatedComplexStructure(rho, j, mult)


def eigen_lattices(action: LatticeAction, data: FundamentalData) -> EigenData:
    """Split the rotation block under the first declared -1 generator.

    The reflector must restrict to an involution of the block; the two
    eigenlattices are primitive there, orthogonal to each other, and of
    full combined rank. The exponent is the annihilator of the finite
    quotient block / (plus + minus); it clears the averaging projections
    (v +- cv)/2 into the eigenlattices.
    """
    chosen = None
    for name, iso, kap in action.generators:
        if kap == -1:
            chosen = (name, iso)
            break
    if chosen is None:
        raise InputError("action has no antiholomorphic generator to split by")
    name, iso = chosen
    rho = rho_lattice(action, data)
    c = _restrict(iso.matrix, rho.basis)
    k = rho.rank
    kid = la.identity(k)
    if la.mat_mul(c, c) != kid:
        raise ScopeError("antiholomorphic generator is not an involution on the rotation block")
    block = rho.as_lattice()
    plus = Sublattice(block, la.kernel_int(la.mat_sub(c, kid)))
    minus = Sublattice(block, la.kernel_int(la.mat_add(c, kid)))
    if plus.rank + minus.rank != k:
        raise VerificationError("eigenparts do not span the rotation block")
    for u in plus.basis:
        for v in minus.basis:
            if block.dot(u, v) != 0:
                raise VerificationError("eigenparts are not orthogonal")
    divs = la.elementary_divisors(la.freeze_mat(plus.basis + minus.basis))
    exponent = divs[-1] if divs else 1
    for i in range(k):
        e = tuple(1 if t == i else 0 for t in range(k))
        ce = la.mat_vec(c, e)
        for sgn, part in ((1, plus), (-1, minus)):
            w = tuple(Fraction(exponent * (a + sgn * b), 2) for a, b in zip(e, ce))
            if not la.is_integer_vector(w) or not part.contains(la.to_int_vec(w)):
                raise VerificationError("exponent fails to clear the averaging denominators")
    return EigenData(name, iso, rho, plus, minus, exponent)


# ---------------------------------------------------------------------------
# geometricity and extension


def leftover_lattice(action: LatticeAction, data: FundamentalData) -> Sublattice:
    """Orthogonal complement of (fixed lattice + rotation block)."""
    l = action.ambient
    fixed_all = fixed_lattice(action, "all")
    rho = rho_lattice(action, data)
    joined = sublattice_sum(l, fixed_all, rho)
    return orthogonal_complement(l, joined)


def is_geometric(action: LatticeAction, data: FundamentalData) -> tuple:
    """Whether the leftover negative part carries no vector of square -2.

    The leftover part is the orthogonal complement of (fixed lattice +
    rotation block). It must be negative definite; the report lists its
    square -2 vectors up to sign, in ambient coordinates, so the action
    is geometric exactly when the report is empty.
    """
    leftover = leftover_lattice(action, data)
    if leftover.rank == 0:
        return True, ()
    sig = signature(leftover.as_lattice())
    if sig.plus or sig.null:
        raise VerificationError("leftover part is not negative definite")
    roots = enumerate_vectors(leftover.as_lattice(), -2, up_to_sign=True)
    witnesses = tuple(leftover.to_ambient(r) for r in roots)
    return (not witnesses), witnesses


def extend_equivariantly(action: LatticeAction, data: FundamentalData, eigen: EigenData, m_plus_map):
    """Extend an isometry of the plus eigenlattice to the rotation block
    by conjugating with the dilation on the minus side; returns the
    extension when it is integral on the block, None otherwise."""
    a = m_plus_map.matrix if isinstance(m_plus_map, Isometry) else la.freeze_mat(m_plus_map)
    if not la.is_integer_matrix(a):
        raise InputError("plus-part map must be an integer matrix")
    a = la.to_int_mat(a)
    plus, minus = eigen.m_plus, eigen.m_minus
    if len(a) != plus.rank or not is_isometry(plus.as_lattice(), a):
        raise InputError("map is not an isometry of the plus eigenlattice")
    if plus.rank != minus.rank:
        raise VerificationError("eigenparts have different ranks; no dilation exchange")
    j = dilated_complex_structure(action, data).matrix
    cols = []
    for b in minus.basis:
        x = la.coords_in_rows(la.to_frac_vec(la.mat_vec(j, b)), plus.basis)
        if x is None:
            raise VerificationError("dilation does not carry the minus part into the plus part")
        cols.append(x)
    c = la.transpose(la.freeze_mat(cols))
    a_minus = la.mat_mul(la.mat_mul(la.inverse(c), _frac_mat(a)), c)
    k = eigen.rho.rank
    p = plus.rank
    blk = [[Fraction(0)] * k for _ in range(k)]
    for i in range(p):
        for jj in range(p):
            blk[i][jj] = Fraction(a[i][jj])
    for i in range(k - p):
        for jj in range(k - p):
            blk[p + i][p + jj] = Fraction(a_minus[i][jj])
    x = _frac_mat(la.transpose(plus.basis + minus.basis))
    ext = la.mat_mul(la.mat_mul(x, la.freeze_mat(tuple(map(tuple, blk)))), la.inverse(x))
    if not la.is_integer_matrix(ext):
        return None
    return Isometry(eigen.rho.as_lattice(), la.to_int_mat(ext))


# ---------------------------------------------------------------------------
# rank-4 wedge square and the conjugation obstruction


_WEDGE_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))

# hyperbolic reordering of the e_i ^ e_j basis: pairs (b1,b2), (b3,b4),
# (b5,b6) each span a U summand of the wedge pairing
_WEDGE_TO_U = (
    (1, 0, 0, 0, 0, 0),
    (0, 0, -1, 0, 0, 0),
    (0, 0, 0, 0, 1, 0),
    (0, 0, 0, 0, 0, 1),
    (0, 0, 0, 1, 0, 0),
    (0, 1, 0, 0, 0, 0),
)


def _wedge_matrix(phi) -> tuple:
    out = []
    for k, l in _WEDGE_PAIRS:
        row = []
        for i, j in _WEDGE_PAIRS:
            row.append(phi[k][i] * phi[l][j] - phi[k][j] * phi[l][i])
        out.append(tuple(row))
    return tuple(out)


def _perm_sign(p) -> int:
    sign = 1
    p = list(p)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sign = -sign
    return sign


def _wedge_pairing() -> tuple:
    rows = []
    for a in _WEDGE_PAIRS:
        row = []
        for b in _WEDGE_PAIRS:
            row.append(_perm_sign(a + b) if len(set(a + b)) == 4 else 0)
        rows.append(tuple(row))
    return tuple(rows)


def _as_int_square(phi, size: int) -> tuple:
    m = phi.matrix if isinstance(phi, Isometry) else la.freeze_mat(phi)
    if not la.is_integer_matrix(m):
        raise InputError("matrix must be integral")
    m = la.to_int_mat(m)
    if len(m) != size or any(len(r) != size for r in m):
        raise InputError(f"matrix must be {size} x {size}")
    return m


def wedge_square(phi) -> Isometry:
    """Induced isometry of the rank-6 wedge pairing of a determinant +1
    integer 4 x 4 matrix, on a basis presenting the pairing as 3U.

    Multiplicative, and it identifies phi with -phi; the pairing basis is
    re-derived and checked against 3U on every call.
    """
    m = _as_int_square(phi, 4)
    if la.det(m) != 1:
        raise InputError("wedge square needs determinant +1")
    target = standard_lattice("3U")
    p = la.freeze_mat(_WEDGE_TO_U)
    p_inv = la.inverse_int(p)
    base_gram = la.mat_mul(la.mat_mul(la.transpose(p), _wedge_pairing()), p)
    if base_gram != target.gram:
        raise VerificationError("wedge basis fails to present the pairing as 3U")
    w = la.mat_mul(la.mat_mul(p_inv, _wedge_matrix(m)), p)
    return Isometry(target, w)


def conjugation_obstruction(phi) -> bool:
    """Whether a finite-order determinant +1 rank-4 matrix has eigenvalues
    {x, conj x, -x, -conj x} for a non-real x.

    Requires order above two and eigenvalue -1 of multiplicity at least
    two on the wedge square; under those constraints the answer reads
    off the characteristic polynomial: even, and nonzero at +-1.
    """
    m = _as_int_square(phi, 4)
    if la.det(m) != 1:
        raise InputError("conjugation obstruction needs determinant +1")
    try:
        order = la.matrix_order(m, bound=60)
    except ValueError:
        raise ScopeError("matrix order exceeds the search bound") from None
    if order <= 2:
        raise InputError("conjugation obstruction needs order above two")
    w = _wedge_matrix(m)
    nullity = len(la.kernel_frac(la.mat_add(w, la.identity(6))))
    if nullity < 2:
        raise InputError("wedge square needs eigenvalue -1 of multiplicity at least two")
    cp = la.char_poly(m)
    if cp[1] != 0 or cp[3] != 0:
        return False
    return la.poly_eval(cp, 1) != 0 and la.poly_eval(cp, -1) != 0
