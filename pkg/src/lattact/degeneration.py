"""Degeneration of geometric actions at invariant root systems.

Saturate an invariant elliptic system R against the leftover part,
pick a camera of the saturated system R-bar, and split every generator
g = s_g . w_g with s_g preserving the camera and w_g a Weyl word. The
assignment g -> g . w_g^(-1) = s_g is a new action on the same lattice
(the degeneration), which agrees with the old one on the orthogonal
complement of R-bar, on its discriminant group, and on its component
set, and is again geometric. All of that is checked, not assumed: the
verification report carries exactly those five checks.
"""

from dataclasses import dataclass

from . import linalg as la
from .errors import InputError, LattactError, VerificationError
from .group_actions import (
    EigenData,
    FundamentalData,
    LatticeAction,
    dilated_complex_structure,
    enumerate_group,
    fixed_lattice,
    fundamental_data,
    is_geometric,
    leftover_lattice,
)
from .lattice import (
    Sublattice,
    orthogonal_complement,
    primitive_hull,
    signature,
    sublattice_from_rows,
    sublattice_sum,
)
from .root_systems import (
    Camera,
    RootSystem,
    camera_decompose,
    fundamental_camera,
    is_admissible,
    roots_of,
)
from .walls import wall_in_H_plus


@dataclass(frozen=True)
class SaturatedSystem:
    """An input system together with its saturation and a chosen camera."""

    r_input: Sublattice
    r_bar: RootSystem
    camera: Camera


@dataclass(frozen=True)
class DegenerationResult:
    """Per-generator factorizations (name, s_g, w_g) and the new action."""

    system: SaturatedSystem
    factors: tuple
    action: LatticeAction


@dataclass(frozen=True)
class DegenerationReport:
    entries: tuple  # (label, passed, note)

    @property
    def all_passed(self) -> bool:
        return all(ok for _, ok, _ in self.entries)


# ---------------------------------------------------------------------------


def _check_invariant(generators, vectors, container, what: str):
    for name, g, _ in generators:
        for v in vectors:
            if not container(la.mat_vec(g.matrix, v)):
                raise InputError(f"{what} is not invariant under generator {name}")


def tau_saturation(a: LatticeAction, f: FundamentalData, r: Sublattice) -> SaturatedSystem:
    """Smallest root-generated overlattice of r closed under taking roots
    of the primitive hull of (system + leftover part).

    Iterates hull -> roots -> span until stable; the saturated system is
    re-checked for invariance under every generator. The input itself
    need not be spanned by roots as long as its hull is: span(2*root)
    saturates to the root's span. Inputs in rootless directions are
    rejected because no saturation can recover them.
    """
    l = a.ambient
    if r.ambient != l:
        raise InputError("system lives in a different lattice")
    if r.rank:
        rsig = signature(r.as_lattice())
        if rsig.plus or rsig.null:
            raise InputError("input system must be elliptic")
    _check_invariant(a.generators, r.basis, r.contains, "input system")
    ldot = leftover_lattice(a, f)
    current = r
    while True:
        hull = primitive_hull(l, sublattice_sum(l, current, ldot))
        if hull.rank:
            hsig = signature(hull.as_lattice())
            if hsig.plus or hsig.null:
                raise InputError("hull of system and leftover part is not negative definite")
        grown = roots_of(hull).span
        if grown == current:
            break
        current = grown
    r_bar = roots_of(current)
    if not r_bar.span.contains_sublattice(r):
        raise InputError("input system is not generated by roots of its hull")
    root_set = set(r_bar.roots)
    _check_invariant(a.generators, r_bar.roots, lambda v: tuple(v) in root_set,
                     "saturated system")
    return SaturatedSystem(r, r_bar, fundamental_camera(r_bar))


def _decompose(s: SaturatedSystem, m):
    try:
        return camera_decompose(s.r_bar, s.camera, m)
    except InputError as err:
        raise InputError(f"cannot factor through the saturated system: {err}") from None


def degenerate(a: LatticeAction, s: SaturatedSystem) -> DegenerationResult:
    """Replace each generator g by the camera-preserving factor of its
    decomposition g = s_g . w_g on the saturated system.

    The Weyl factors are products of ambient reflections, so they act
    identically on the orthogonal complement; signs are inherited. The
    result is verified to be a homomorphism on the whole closed group.
    """
    geo, _ = is_geometric(a, fundamental_data(a))
    if not geo:
        raise InputError("only geometric actions degenerate")
    factors = []
    gens = []
    for name, g, kappa in a.generators:
        s_g, w_g = _decompose(s, g.matrix)
        if la.mat_mul(s_g.matrix, w_g.isometry.matrix) != g.matrix:
            raise VerificationError("factorization does not recompose the generator")
        factors.append((name, s_g, w_g))
        gens.append((name, s_g.matrix, kappa))
    result = DegenerationResult(s, tuple(factors), LatticeAction(a.ambient, tuple(gens)))
    _verify_homomorphism(a, s)
    return result


def _verify_homomorphism(a: LatticeAction, s: SaturatedSystem, bound: int = 1024):
    """The camera factor of g.h must be the product of the camera factors."""
    group = enumerate_group(a, bound)
    mats = group.elements
    images = [_decompose(s, m)[0].matrix for m in mats]
    for i, g in enumerate(mats):
        for j, h in enumerate(mats):
            k = group.index_of(la.mat_mul(g, h))
            if images[k] != la.mat_mul(images[i], images[j]):
                raise VerificationError("degeneration is not a homomorphism")


# ---------------------------------------------------------------------------
# verification report


def _root_components(r: RootSystem) -> tuple:
    gram = r.ambient.gram
    roots = r.roots
    parent = list(range(len(roots)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            if la.dot(gram, roots[i], roots[j]) != 0:
                parent[find(i)] = find(j)
    groups = {}
    for i, v in enumerate(roots):
        groups.setdefault(find(i), set()).add(v)
    return tuple(sorted((frozenset(g) for g in groups.values()), key=sorted))


def _induced_permutation(components, m) -> tuple:
    out = []
    for comp in components:
        image = {tuple(la.mat_vec(m, v)) for v in comp}
        hits = [k for k, other in enumerate(components) if other == image]
        if len(hits) != 1:
            raise VerificationError("image of a component is not a component")
        out.append(hits[0])
    return tuple(out)


def verify_degeneration(a: LatticeAction, s: SaturatedSystem, d: DegenerationResult) -> DegenerationReport:
    """The five defining checks of a degeneration; failures are entries,
    never exceptions."""
    names = [name for name, _, _ in a.generators]
    taus = {name: g.matrix for name, g, _ in a.generators}
    sigmas = {name: g.matrix for name, g, _ in d.action.generators}
    r_bar = s.r_bar
    l = a.ambient
    entries = []

    def run(label, fn):
        try:
            ok, note = fn()
        except LattactError as err:
            ok, note = False, str(err)
        entries.append((label, bool(ok), note))

    def admissible():
        ok, witness = is_admissible(r_bar, [sigmas[n] for n in names])
        return ok, ("camera preserved" if ok else
                    f"root {witness} orthogonal to the fixed part")

    def complement():
        comp = orthogonal_complement(l, r_bar.span)
        for n in names:
            for row in comp.basis:
                if la.mat_vec(taus[n], row) != la.mat_vec(sigmas[n], row):
                    return False, f"generator {n} differs on the complement"
        return True, f"agree on all {comp.rank} basis vectors"

    def components():
        comps = _root_components(r_bar)
        for n in names:
            if _induced_permutation(comps, taus[n]) != _induced_permutation(comps, sigmas[n]):
                return False, f"generator {n} permutes components differently"
        return True, f"same permutations of {len(comps)} components"

    def discriminant():
        if r_bar.span.rank == 0:
            return True, "trivial discriminant group"
        ginv = la.inverse(la.to_frac_mat(r_bar.span.gram()))
        for n in names:
            c_tau = la.restrict_to_span(taus[n], r_bar.span.basis)
            c_sig = la.restrict_to_span(sigmas[n], r_bar.span.basis)
            if c_tau is None or c_sig is None:
                return False, f"generator {n} does not preserve the root span"
            diff = la.mat_mul(la.mat_sub(la.to_frac_mat(c_tau), la.to_frac_mat(c_sig)), ginv)
            if not la.is_integer_matrix(diff):
                return False, f"generator {n} acts differently on the discriminant group"
        return True, "same maps on the discriminant group"

    def geometric():
        ok, witnesses = is_geometric(d.action, fundamental_data(d.action))
        return ok, ("degenerate action is geometric" if ok else
                    f"{len(witnesses)} roots in the leftover part")

    run("admissible", admissible)
    run("complement", complement)
    run("components", components)
    run("discriminant", discriminant)
    run("geometric", geometric)
    return DegenerationReport(tuple(entries))


# ---------------------------------------------------------------------------
# camera selection and wall degeneration


def camera_adjacent(s: SaturatedSystem, r_prime: Sublattice) -> Camera:
    """A camera of the saturated system whose closure meets the common
    mirror of r_prime's roots.

    Decomposing an isometry through this camera keeps the Weyl factor in
    the face stabilizer generated by r_prime's reflections.
    """
    r_bar = s.r_bar
    l = r_bar.ambient
    n = l.rank
    if not r_bar.span.contains_sublattice(r_prime):
        raise InputError("face system must sit inside the saturated system")
    if r_prime.rank:
        rp = roots_of(r_prime)
        if rp.span != r_prime:
            raise InputError("face system must be generated by its roots")
        face_roots = rp.roots
    else:
        face_roots = ()
    if face_roots:
        conditions = la.freeze_mat([la.mat_vec(l.gram, v) for v in face_roots])
        space = tuple(la.clear_denominators(row) for row in la.kernel_frac(conditions))
    else:
        space = la.identity(n)
    face_point = None
    for base in (10, 11, 13, 17, 23):
        y0 = tuple(sum(base ** i * row[k] for i, row in enumerate(space)) for k in range(n))
        generic = True
        for root in r_bar.roots:
            if la.dot(l.gram, y0, root) == 0 and any(
                la.dot(l.gram, row, root) != 0 for row in space
            ):
                generic = False
                break
        if generic:
            face_point = y0
            break
    if face_point is None:
        raise VerificationError("no generic point of the face was found")
    if not r_bar.roots:
        return Camera(r_bar, (), face_point)
    z = la.clear_denominators(fundamental_camera(r_bar).witness)
    scale = 1
    for root in r_bar.roots:
        p = la.dot(l.gram, face_point, root)
        if p != 0:
            q = abs(la.dot(l.gram, z, root))
            scale = max(scale, q // abs(p) + 1)
    witness = tuple(scale * a + b for a, b in zip(face_point, z))
    pos = [v for v in r_bar.roots if la.dot(l.gram, witness, v) > 0]
    pos_set = set(pos)
    walls = tuple(sorted(
        p for p in pos
        if not any(tuple(x - y for x, y in zip(p, q)) in pos_set for q in pos if q != p)
    ))
    cam = Camera(r_bar, walls, witness)
    for wall in cam.walls:
        if la.dot(l.gram, face_point, wall) < 0:
            raise VerificationError("face point fell outside the camera closure")
    return cam


def degenerate_at_wall(a: LatticeAction, f: FundamentalData, e: EigenData, v) -> DegenerationResult:
    """Degenerate at the system of roots orthogonal to the wall a root cuts.

    The wall ray and its dilation image span the invariant plane the wall
    parametrizes; the generating roots are the roots of the orthogonal
    complement of the fixed part that kill that plane.
    """
    if all(kappa == 1 for _, _, kappa in a.generators):
        raise InputError("wall degeneration needs a sign-nontrivial action")
    j = dilated_complex_structure(a, f)
    wall = wall_in_H_plus(v, e, j)
    if wall is None:
        raise InputError("the defining root cuts no wall")
    ray_block = e.m_plus.to_ambient(wall.direction)
    jray_block = la.to_int_vec(la.mat_vec(j.matrix, ray_block))
    ray = e.rho.to_ambient(ray_block)
    jray = e.rho.to_ambient(jray_block)
    l = a.ambient
    perp = orthogonal_complement(l, fixed_lattice(a, "all"))
    conditions = la.freeze_mat(
        [[l.dot(b, ray) for b in perp.basis], [l.dot(b, jray) for b in perp.basis]]
    )
    coords = la.kernel_int(conditions)
    face = sublattice_from_rows(l, tuple(perp.to_ambient(c) for c in coords))
    r = roots_of(face).span
    return degenerate(a, tau_saturation(a, f, r))
