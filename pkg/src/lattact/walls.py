"""Walls cut by roots on the positive arc of the plus eigenlattice.

A root v of the rotation block imposes two linear conditions on the
plus part: x.v = 0 and Jx.v = 0, equivalently x.v+ = 0 and x.Jv- = 0.
With rank-2 eigenparts the locus is a single ray or empty: the two
conditions must be dependent and the cut direction must have positive
square. Candidate roots fall into finitely many projection value pairs
(Nv+)^2 + (Nv-)^2 = -2N^2; when every needed square can be enumerated
exactly (definite or split eigenforms) the candidate list is certified
complete, otherwise the caller supplies a box bound and the report is
flagged incomplete.

segment_vectors solves the companion one-dimensional problem: which
vectors of a fixed square cut the open arc between two isotropic rays
of a hyperbolic lattice.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import linalg as la
from .errors import InputError, ScopeError, VerificationError
from .group_actions import DilatedComplexStructure, EigenData
from .lattice import Lattice, Sublattice, enumerate_vectors, orthogonal_complement, signature


@dataclass(frozen=True)
class Wall:
    """Nonempty wall data for one defining root.

    root: integer vector in rotation-block coordinates, square -2.
    v_plus / v_minus: rational eigenprojections, block coordinates.
    direction: primitive integer vector in plus-eigenlattice basis
    coordinates spanning the cut ray; positive square.
    """

    root: tuple
    v_plus: tuple
    v_minus: tuple
    direction: tuple | None = None


@dataclass(frozen=True)
class CandidateReport:
    """Roots compatible with the projection square constraint.

    groups: ((s_plus, s_minus), roots) per value pair, roots canonical
    up to sign and sorted. complete: certified-exhaustive enumeration.
    """

    groups: tuple
    complete: bool

    def all_roots(self) -> tuple:
        out = []
        for _, roots in self.groups:
            out.extend(roots)
        return tuple(out)


@dataclass(frozen=True)
class WallReport:
    candidate_count: int
    walls: tuple  # one Wall per distinct ray, candidate order
    components: int
    complete: bool


# ---------------------------------------------------------------------------


def _reflector_block(e: EigenData) -> tuple:
    c = la.restrict_to_span(e.reflector.matrix, e.rho.basis)
    if c is None or not la.is_integer_matrix(c):
        raise VerificationError("reflector does not act on the rotation block")
    return la.to_int_mat(c)


def project_to_eigenspaces(v, e: EigenData) -> tuple:
    """Eigenprojections v -> (v_plus, v_minus), rational vectors with
    v = v_plus + v_minus, in rotation-block coordinates."""
    k = e.rho.rank
    if len(v) != k:
        raise InputError("vector length does not match the rotation block")
    c = _reflector_block(e)
    cv = la.mat_vec(c, v)
    v_plus = tuple(Fraction(a) + Fraction(b) for a, b in zip(v, cv))
    v_plus = tuple(x / 2 for x in v_plus)
    v_minus = tuple(Fraction(a) - x for a, x in zip(v, v_plus))
    return v_plus, v_minus


def _vectors_of_square(sub: Sublattice, s: int, bound) -> tuple:
    """Block-coordinate vectors of the sublattice with the given square,
    both signs; (vectors, certified_complete)."""
    if s == 0:
        return ((la.zero_vec(sub.ambient.rank),), True)
    lat = sub.as_lattice()
    try:
        coords = enumerate_vectors(lat, s)
        return (tuple(sub.to_ambient(x) for x in coords), True)
    except ScopeError:
        if bound is None:
            raise ScopeError(
                "eigenform needs a search bound: its nonzero values are not certified finite"
            ) from None
    hits = []
    rng = range(-bound, bound + 1)
    gram = lat.gram
    for x in rng:
        for y in rng:
            if (x or y) and la.sq(gram, (x, y)) == s:
                hits.append(sub.to_ambient((x, y)))
    return (tuple(hits), False)


def candidate_roots(e: EigenData, bound: int | None = None) -> CandidateReport:
    """All roots of the rotation block whose eigenprojections can cut a
    wall, grouped by the value pair ((Nv+)^2, (Nv-)^2).

    The pairs run over s_plus + s_minus = -2N^2 with both entries
    nonpositive; s = 0 stands for a vanishing projection (a nonzero
    isotropic projection never cuts the positive cone).
    """
    if e.m_plus.rank != 2 or e.m_minus.rank != 2:
        raise InputError("candidate enumeration needs rank-2 eigenlattices")
    n = e.exponent
    block = e.rho.as_lattice()
    total = -2 * n * n
    groups = []
    complete = True
    for s_plus in range(0, total - 1, -2):
        s_minus = total - s_plus
        plus_vecs, ok_plus = _vectors_of_square(e.m_plus, s_plus, bound)
        minus_vecs, ok_minus = _vectors_of_square(e.m_minus, s_minus, bound)
        complete = complete and ok_plus and ok_minus
        found = set()
        for a in plus_vecs:
            for b in minus_vecs:
                w = tuple(Fraction(x + y, n) for x, y in zip(a, b))
                if not la.is_integer_vector(w):
                    continue
                v = la.to_int_vec(w)
                if block.sq(v) != -2:
                    raise VerificationError("candidate construction produced a non-root")
                found.add(la.primitive_vector(v))
        groups.append(((s_plus, s_minus), tuple(sorted(found))))
    return CandidateReport(tuple(groups), complete)


def wall_in_H_plus(v, e: EigenData, j: DilatedComplexStructure) -> Wall | None:
    """The wall a root cuts on the positive cone of the plus part, or None.

    Nonempty exactly when the conditions x.v+ = 0 and x.Jv- = 0 are
    dependent on M+ (x) Q and the resulting ray has positive square.
    """
    if e.m_plus.rank != 2:
        raise InputError("wall computation needs a rank-2 plus eigenlattice")
    if not la.is_integer_vector(v):
        raise InputError("defining vector must be integral")
    v = la.to_int_vec(v)
    block = e.rho.as_lattice()
    if len(v) != e.rho.rank or block.sq(v) != -2:
        raise InputError("defining vector must be a root of the rotation block")
    v_plus, v_minus = project_to_eigenspaces(v, e)
    gram = la.to_frac_mat(block.gram)
    jv = la.mat_vec(la.to_frac_mat(j.matrix), v_minus)
    alpha = tuple(la.dot(gram, la.to_frac_vec(row), v_plus) for row in e.m_plus.basis)
    beta = tuple(la.dot(gram, la.to_frac_vec(row), jv) for row in e.m_plus.basis)
    if not any(alpha) and not any(beta):
        # the root sees nothing of the plus part: no codimension-1 cut
        return None
    if alpha[0] * beta[1] - alpha[1] * beta[0] != 0:
        return None
    gamma = alpha if any(alpha) else beta
    ray = la.primitive_vector(la.clear_denominators((gamma[1], -gamma[0])))
    plus_gram = la.freeze_mat(e.m_plus.gram())
    if la.sq(plus_gram, ray) <= 0:
        return None
    if sum(r * a for r, a in zip(ray, alpha)) != 0 or sum(r * b for r, b in zip(ray, beta)) != 0:
        raise VerificationError("cut ray fails its defining orthogonality")
    scaled_plus = tuple(e.exponent * x for x in v_plus)
    scaled_minus = tuple(e.exponent * x for x in v_minus)
    if not la.is_integer_vector(scaled_plus) or not la.is_integer_vector(scaled_minus):
        raise VerificationError("projections are not cleared by the exponent")
    if la.sq(gram, v_plus) > 0 or la.sq(gram, v_minus) > 0:
        raise VerificationError("a cutting root must have nonpositive projection squares")
    return Wall(v, v_plus, v_minus, ray)


def component_count(
    walls, e: EigenData, complete: bool = True, candidate_count: int | None = None
) -> WallReport:
    """Components of the positive arc after removing the wall rays.

    Walls are deduplicated by ray (each line meets the arc once); the
    component number is rays + 1, meaningful when the candidate list
    was certified complete. candidate_count records how many roots were
    inspected; it defaults to the number of walls passed in.
    """
    if e.m_plus.rank != 2:
        raise InputError("component counting needs a rank-2 plus eigenlattice")
    walls = tuple(walls)
    seen = []
    kept = []
    for w in walls:
        if w.direction is None:
            raise InputError("component counting expects nonempty walls")
        if w.direction not in seen:
            seen.append(w.direction)
            kept.append(w)
    count = len(walls) if candidate_count is None else candidate_count
    return WallReport(count, tuple(kept), len(seen) + 1, complete)


def wall_report(e: EigenData, j: DilatedComplexStructure, bound: int | None = None) -> WallReport:
    """Candidate roots -> walls -> deduplicated component report."""
    cand = candidate_roots(e, bound)
    walls = []
    for _, roots in cand.groups:
        for v in roots:
            w = wall_in_H_plus(v, e, j)
            if w is not None:
                walls.append(w)
    return component_count(walls, e, cand.complete, candidate_count=len(cand.all_roots()))


# ---------------------------------------------------------------------------
# segment crossings in a hyperbolic lattice


def segment_vectors(m: Lattice, u1, u2, a: int) -> tuple:
    """All v in m with v^2 = a whose hyperplane meets the open segment of
    rays between two primitive isotropic vectors u1, u2.

    Crossing criterion: (v.u1)(v.u2) < 0. Writing D v = A u1 + B u2 + x
    with x in the orthogonal part and D the index of the orthogonal sum
    inside m, the product AB ranges over [a D^2 / (2 u1.u2), -1], and for
    each value the x-part has a fixed negative square, so the search is
    finite and complete.
    """
    if not la.is_integer_vector(u1) or not la.is_integer_vector(u2):
        raise InputError("segment endpoints must be integral")
    u1 = la.to_int_vec(u1)
    u2 = la.to_int_vec(u2)
    sig = signature(m)
    if sig.plus != 1 or sig.null != 0:
        raise InputError("ambient lattice must be hyperbolic")
    if m.sq(u1) != 0 or m.sq(u2) != 0:
        raise InputError("segment endpoints must be isotropic")
    if la.vec_gcd(u1) != 1 or la.vec_gcd(u2) != 1:
        raise InputError("segment endpoints must be primitive")
    b = m.dot(u1, u2)
    if b <= 0:
        raise InputError("endpoints must span a hyperbolic pair with positive pairing")
    plane = Sublattice(m, (u1, u2))
    perp = orthogonal_complement(m, plane)
    if perp.rank:
        psig = signature(perp.as_lattice())
        if psig.plus or psig.null:
            raise InputError("orthogonal part of the segment plane must be elliptic")
    stack = (u1, u2) + perp.basis
    if len(stack) != m.rank:
        raise InputError("segment plane plus complement does not span the lattice")
    if a >= 0:
        # x^2 = a d^2 - 2 k b > 0 would be forced, impossible in the elliptic part
        return ()
    d = abs(la.det(la.freeze_mat(stack)))
    out = set()
    k_min = -((-a * d * d) // (2 * b))  # ceil(a d^2 / (2 b))
    perp_lat = perp.as_lattice()
    for k in range(k_min, 0):
        t = a * d * d - 2 * k * b
        if t > 0:
            continue
        if t == 0:
            xs = [la.zero_vec(m.rank)]
        else:
            xs = [perp.to_ambient(c) for c in enumerate_vectors(perp_lat, t)] if perp.rank else []
        for aa in la.divisors_signed(k):
            bb = k // aa
            for x in xs:
                w = tuple(
                    Fraction(aa * p + bb * q + r, d) for p, q, r in zip(u1, u2, x)
                )
                if la.is_integer_vector(w):
                    v = la.to_int_vec(w)
                    if m.sq(v) == a and m.dot(v, u1) * m.dot(v, u2) < 0:
                        out.add(v)
    return tuple(sorted(out))
