"""Root systems, Weyl machinery, cameras, and equivariant folding.

Roots are square-(-2) vectors of a negative definite (sub)lattice, kept in
ambient coordinates. Positivity comes from a fixed generic functional: the
root's coordinates in the span basis weighted by powers of ten. Cameras are
chambers of the mirror arrangement; the fundamental one pairs strictly
positively with every simple root.

Composition convention for words: word (i1, ..., ik) denotes the product
s_{r[i1]} . s_{r[i2]} ... s_{r[ik]} as matrices, so the rightmost reflection
acts first on vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg as la
from .errors import InputError, VerificationError
from .lattice import (
    Isometry,
    Lattice,
    Sublattice,
    full_sublattice,
    enumerate_vectors,
    orthogonal_complement,
    signature,
    sublattice_from_rows,
)


# ---------------------------------------------------------------------------
# types


@dataclass(frozen=True)
class RootSystem:
    ambient: Lattice
    span: Sublattice  # Z-span of the root set inside ambient
    roots: tuple  # all square -2 vectors, ambient coordinates, sorted
    positive_roots: tuple
    simple_roots: tuple
    components: tuple  # ((letter, rank), ...), canonically sorted

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    def root_index(self, v) -> int:
        try:
            return self.roots.index(tuple(v))
        except ValueError:
            raise InputError(f"{v!r} is not a root of this system") from None


@dataclass(frozen=True)
class Camera:
    """Connected chamber of the mirror complement, with an interior point."""

    root_system: RootSystem
    walls: tuple  # the camera's simple roots, ambient coordinates
    witness: tuple  # rational interior vector

    def __post_init__(self):
        g = self.root_system.ambient.gram
        for w in self.walls:
            if la.dot(g, self.witness, w) <= 0:
                raise InputError("camera witness must pair strictly positively with walls")
        for r in self.root_system.roots:
            if la.dot(g, self.witness, r) == 0:
                raise InputError("camera witness lies on a mirror")


@dataclass(frozen=True)
class WeylWord:
    root_system: RootSystem
    word: tuple  # indices into root_system.roots, rightmost acts first
    isometry: Isometry

    def __post_init__(self):
        m = la.identity(self.root_system.ambient.rank)
        for i in self.word:
            m = la.mat_mul(m, reflection(self.root_system.ambient,
                                         self.root_system.roots[i]).matrix)
        if m != self.isometry.matrix:
            raise VerificationError("Weyl word does not evaluate to its isometry")

    def __len__(self) -> int:
        return len(self.word)


# ---------------------------------------------------------------------------
# construction


def _positivity_functional(coords) -> int:
    # base-10 digits: desk-scale simple-root coordinates stay below 10
    return sum(c * 10 ** i for i, c in enumerate(coords))


def roots_of(s) -> RootSystem:
    """Complete root system of a negative definite sublattice (or lattice)."""
    if isinstance(s, Lattice):
        s = full_sublattice(s)
    if not isinstance(s, Sublattice):
        raise InputError("expected a Sublattice or Lattice")
    ambient = s.ambient
    if s.rank == 0:
        return RootSystem(ambient, s, (), (), (), ())
    sl = s.as_lattice()
    sig = signature(sl)
    if sig.plus != 0 or sig.null != 0:
        raise InputError("root systems need a negative definite form")
    local = enumerate_vectors(sl, -2)
    roots = tuple(sorted(s.to_ambient(c) for c in local))
    if not roots:
        return RootSystem(ambient, sublattice_from_rows(ambient, ()), (), (), (), ())
    # positivity evaluated on span coordinates of each root
    values = {}
    span = sublattice_from_rows(ambient, roots)
    for r in roots:
        coords = span.coords_of(r)
        f = _positivity_functional(coords)
        if f == 0:
            raise VerificationError("generic functional vanished on a root")
        values[r] = f
    positive = tuple(r for r in roots if values[r] > 0)
    pos_set = set(positive)
    simple = []
    for p in positive:
        decomposable = any(
            tuple(x - y for x, y in zip(p, q)) in pos_set for q in positive if q != p
        )
        if not decomposable:
            simple.append(p)
    simple = tuple(sorted(simple))
    components = _classify_components(ambient, simple)
    rs = RootSystem(ambient, span, roots, positive, simple, components)
    _verify_root_system(rs)
    return rs


def _simple_adjacency(ambient: Lattice, simple) -> list:
    n = len(simple)
    adj = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            p = ambient.dot(simple[i], simple[j])
            if p not in (0, 1):
                raise VerificationError("simple roots with pairing outside {0,1}")
            if p == 1:
                adj[i][j] = adj[j][i] = True
    return adj


def _component_indices(ambient: Lattice, simple) -> list:
    adj = _simple_adjacency(ambient, simple)
    n = len(simple)
    seen = [False] * n
    groups = []
    for start in range(n):
        if seen[start]:
            continue
        stack, group = [start], []
        seen[start] = True
        while stack:
            i = stack.pop()
            group.append(i)
            for j in range(n):
                if adj[i][j] and not seen[j]:
                    seen[j] = True
                    stack.append(j)
        groups.append(sorted(group))
    return groups


def _classify_one(adj, group) -> tuple:
    n = len(group)
    if n == 1:
        return ("A", 1)
    deg = {i: sum(1 for j in group if adj[i][j]) for i in group}
    edge_count = sum(deg.values()) // 2
    if edge_count != n - 1:
        raise VerificationError("component graph is not a tree")
    branch = [i for i in group if deg[i] >= 3]
    if not branch:
        return ("A", n)
    if len(branch) > 1 or deg[branch[0]] != 3:
        raise VerificationError("component graph is not an ADE diagram")
    center = branch[0]
    arms = []
    for start in (j for j in group if adj[center][j]):
        length, prev, cur = 1, center, start
        while True:
            nxt = [j for j in group if adj[cur][j] and j != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return ("D", arms[2] + 3)
    if arms == [1, 2, 2]:
        return ("E", 6)
    if arms == [1, 2, 3]:
        return ("E", 7)
    if arms == [1, 2, 4]:
        return ("E", 8)
    raise VerificationError("component graph is not an ADE diagram")


def _classify_components(ambient: Lattice, simple) -> tuple:
    if not simple:
        return ()
    adj = _simple_adjacency(ambient, simple)
    comps = [_classify_one(adj, g) for g in _component_indices(ambient, simple)]
    return tuple(sorted(comps))


def _verify_root_system(rs: RootSystem):
    root_set = set(rs.roots)
    for r in rs.roots:
        if tuple(-x for x in r) not in root_set:
            raise VerificationError("root set not closed under negation")
    if not rs.simple_roots:
        return
    # every root is an all-nonnegative or all-nonpositive integer combination
    # of the simple roots
    basis = la.freeze_mat(rs.simple_roots)
    for r in rs.roots:
        c = la.coords_in_rows(r, basis)
        if c is None or not la.is_integer_vector(c):
            raise VerificationError("root outside the simple-root lattice")
        if not (all(x >= 0 for x in c) or all(x <= 0 for x in c)):
            raise VerificationError("root with mixed-sign simple coordinates")


def ade_decompose(r: RootSystem) -> tuple:
    """Multiset of irreducible ADE types, re-derived from the simple roots."""
    return _classify_components(r.ambient, r.simple_roots)


# ---------------------------------------------------------------------------
# reflections and chambers


def reflection(l: Lattice, v) -> Isometry:
    """Reflection x -> x - (2(x.v)/v^2) v; must be integral on l."""
    v = tuple(v)
    vv = l.sq(v)
    if vv == 0:
        raise InputError("cannot reflect in an isotropic vector")
    n = l.rank
    cols = []
    for j in range(n):
        e = tuple(1 if k == j else 0 for k in range(n))
        coef = Fraction(2 * l.dot(e, v), vv)
        cols.append(tuple(Fraction(e[k]) - coef * v[k] for k in range(n)))
    m = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
    if not la.is_integer_matrix(m):
        raise InputError("reflection is not integral on this lattice")
    return Isometry(l, la.to_int_mat(m))


def fundamental_camera(r: RootSystem) -> Camera:
    """The camera cut out by the chosen simple roots."""
    if not r.simple_roots:
        return Camera(r, (), la.zero_vec(r.ambient.rank))
    a = la.freeze_mat(
        [[Fraction(r.ambient.dot(x, y)) for y in r.simple_roots] for x in r.simple_roots]
    )
    ones = tuple(Fraction(1) for _ in r.simple_roots)
    c = la.mat_vec(la.inverse(a), ones)
    n = r.ambient.rank
    witness = tuple(
        sum((c[i] * r.simple_roots[i][k] for i in range(len(c))), Fraction(0))
        for k in range(n)
    )
    return Camera(r, r.simple_roots, witness)


def _check_on_mirror(r: RootSystem, y):
    for root in r.roots:
        if la.dot(r.ambient.gram, y, root) == 0:
            raise InputError("target vector lies on a mirror")


def to_fundamental_chamber(r: RootSystem, c: Camera, target) -> WeylWord:
    """Weyl word w with w(chamber of target) = c, via simple-wall reflections.

    target is a Camera or a rational interior vector; the walk reflects in
    the lowest-index violated wall of c first, and terminates within the
    positive-root count.
    """
    if isinstance(target, Camera):
        y = target.witness
    else:
        y = tuple(Fraction(x) for x in target)
    _check_on_mirror(r, y)
    gram = r.ambient.gram
    applied = []
    budget = len(r.positive_roots)
    while True:
        bad = None
        for i, wall in enumerate(c.walls):
            if la.dot(gram, y, wall) < 0:
                bad = i
                break
        if bad is None:
            break
        if len(applied) >= budget:
            raise VerificationError("chamber walk exceeded the positive-root bound")
        refl = reflection(r.ambient, c.walls[bad])
        y = la.mat_vec(refl.matrix, y)
        applied.append(r.root_index(c.walls[bad]))
    for wall in c.walls:
        if la.dot(gram, y, wall) <= 0:
            raise VerificationError("chamber walk did not land inside the camera")
    word = tuple(reversed(applied))
    m = la.identity(r.ambient.rank)
    for i in word:
        m = la.mat_mul(m, reflection(r.ambient, r.roots[i]).matrix)
    return WeylWord(r, word, Isometry(r.ambient, m))


def _preserves_roots(r: RootSystem, m) -> bool:
    root_set = set(r.roots)
    return all(tuple(la.mat_vec(m, v)) in root_set for v in r.roots)


def camera_decompose(r: RootSystem, c: Camera, g) -> tuple:
    """Split g = s . w with s(c) = c and w in the Weyl group; unique.

    Returns (s: Isometry, w: WeylWord). The input must map the root set
    onto itself.
    """
    gm = g.matrix if isinstance(g, Isometry) else la.to_int_mat(la.freeze_mat(g))
    if not _preserves_roots(r, gm):
        raise InputError("isometry does not preserve the root system")
    gy = la.mat_vec(gm, c.witness)
    u = to_fundamental_chamber(r, c, gy)
    s_mat = la.mat_mul(u.isometry.matrix, gm)
    # s fixes the camera, hence permutes its walls
    wall_set = set(c.walls)
    image = {tuple(la.mat_vec(s_mat, w)) for w in c.walls}
    if image != wall_set:
        raise VerificationError("camera factor does not permute the walls")
    s_inv = la.inverse_int(s_mat)
    w_word = tuple(
        r.root_index(la.mat_vec(s_inv, r.roots[i])) for i in reversed(u.word)
    )
    w_mat = la.mat_mul(s_inv, la.mat_mul(la.inverse_int(u.isometry.matrix), s_mat))
    if la.mat_mul(s_mat, w_mat) != gm:
        raise VerificationError("camera decomposition failed to recompose")
    w = WeylWord(r, w_word, Isometry(r.ambient, w_mat))
    return Isometry(r.ambient, s_mat), w


# ---------------------------------------------------------------------------
# admissibility


def _action_matrices(action) -> tuple:
    mats = []
    gens = getattr(action, "generators", action)
    for g in gens:
        if isinstance(g, Isometry):
            mats.append(g.matrix)
        else:
            mats.append(la.to_int_mat(la.freeze_mat(g)))
    return tuple(mats)


def _fixed_subspace_rows(mats, n) -> tuple:
    """Integer row basis of the common fixed subspace (saturated)."""
    if not mats:
        return la.identity(n)
    stacked = []
    for m in mats:
        for i in range(n):
            stacked.append(tuple(m[i][j] - (1 if i == j else 0) for j in range(n)))
    return la.kernel_int(la.freeze_mat(stacked))


def _canonical_sign(v) -> tuple:
    lead = next((x for x in v if x != 0), 0)
    return tuple(-x for x in v) if lead < 0 else tuple(v)


def is_admissible(r: RootSystem, action) -> tuple:
    """(True, preserved-camera interior witness) or (False, orthogonal root).

    Admissibility: no root is orthogonal to the fixed subspace of the root
    span; equivalently the action preserves a camera, whose interior witness
    is returned.
    """
    mats = _action_matrices(action)
    for m in mats:
        if not _preserves_roots(r, m):
            raise InputError("action element does not preserve the root system")
    if not r.roots:
        return True, la.zero_vec(r.ambient.rank)
    n = r.ambient.rank
    span_mats = []
    for m in mats:
        c = la.restrict_to_span(m, r.span.basis)
        if c is None:
            raise VerificationError("root span is not invariant")
        span_mats.append(c)
    fixed_rows = _fixed_subspace_rows(tuple(span_mats), r.span.rank)
    fixed_amb = tuple(r.span.to_ambient(row) for row in fixed_rows)
    if not fixed_amb:
        return False, _canonical_sign(r.roots[0])
    gram = r.ambient.gram
    pair_bound = 0
    for root in r.roots:
        pairs = [la.dot(gram, f, root) for f in fixed_amb]
        if all(p == 0 for p in pairs):
            return False, _canonical_sign(root)
        pair_bound = max(pair_bound, max(abs(p) for p in pairs))
    base = pair_bound + 1
    witness = tuple(
        sum(base ** i * f[k] for i, f in enumerate(fixed_amb))
        for k in range(n)
    )
    for m in mats:
        if la.mat_vec(m, witness) != witness:
            raise VerificationError("camera witness is not action-invariant")
    for root in r.roots:
        if la.dot(gram, witness, root) == 0:
            raise VerificationError("camera witness landed on a mirror")
    return True, witness


# ---------------------------------------------------------------------------
# classification sweep


def _graph_automorphisms(adj) -> tuple:
    """All permutations of the simple nodes preserving adjacency."""
    import itertools

    n = len(adj)
    out = []
    for perm in itertools.permutations(range(n)):
        if all(adj[i][j] == adj[perm[i]][perm[j]] for i in range(n) for j in range(n)):
            out.append(perm)
    return tuple(out)


def _subgroups(perms) -> tuple:
    """All subgroups of a small permutation group, as sorted tuples."""
    def compose(p, q):
        return tuple(p[q[i]] for i in range(len(q)))

    found = set()
    elems = list(perms)
    n_sub = len(elems)
    for bits in range(1 << n_sub):
        gens = [elems[i] for i in range(n_sub) if bits >> i & 1]
        ident = tuple(range(len(elems[0])))
        group = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = compose(a, g)
                    if b not in group:
                        group.add(b)
                        nxt.append(b)
            frontier = nxt
        found.add(tuple(sorted(group)))
    return tuple(sorted(found))


_SUBGROUP_NAMES = {1: "trivial", 2: "Z2-swap", 3: "Z3-rotation", 6: "S3"}


def classify_admissible_b_transitive(max_rank: int) -> tuple:
    """Faithful admissible actions with a root orbit spanning the lattice.

    Sweeps every irreducible ADE type of rank <= max_rank and every subgroup
    of its diagram symmetry group acting by simple-root permutation.
    """
    from .lattice import standard_lattice

    if not isinstance(max_rank, int) or max_rank < 1 or max_rank > 6:
        raise InputError("max_rank must be an integer in 1..6")
    names = [f"A{n}" for n in range(1, max_rank + 1)]
    names += [f"D{n}" for n in range(4, max_rank + 1)]
    if max_rank >= 6:
        names.append("E6")
    results = []
    for name in names:
        lat = standard_lattice(name)
        rs = roots_of(lat)
        simple = rs.simple_roots
        adj = _simple_adjacency(lat, simple)
        autos = _graph_automorphisms(adj)
        cols = la.transpose(la.freeze_mat(simple))  # columns are simple roots
        cols_inv = la.inverse(cols)
        for sub in _subgroups(autos):
            mats = []
            faithful = True
            for perm in sub:
                pm = tuple(
                    tuple(1 if i == perm[j] else 0 for j in range(len(simple)))
                    for i in range(len(simple))
                )
                raw = la.mat_mul(cols, la.mat_mul(pm, cols_inv))
                if not la.is_integer_matrix(raw):
                    raise VerificationError("diagram symmetry is not integral")
                m = la.to_int_mat(raw)
                if perm != tuple(range(len(simple))) and m == la.identity(lat.rank):
                    faithful = False
                mats.append(m)
            if not faithful:
                continue
            nontrivial = tuple(m for m in mats if m != la.identity(lat.rank))
            ok, _ = is_admissible(rs, nontrivial)
            if not ok:
                continue
            closure = la.matrix_group_closure(mats)
            spanning = False
            for root in rs.roots:
                orbit = {tuple(la.mat_vec(m, root)) for m in closure}
                if la.hnf(la.freeze_mat(sorted(orbit))) == la.identity(lat.rank):
                    spanning = True
                    break
            if not spanning:
                continue
            results.append((name, _SUBGROUP_NAMES[len(sub)]))
    return tuple(sorted(set(results)))


# ---------------------------------------------------------------------------
# equivariant folding


@dataclass(frozen=True)
class FoldResult:
    """Outcome of folding a reflection through a finite action.

    Exactly one of the fields is set: witness_root is a root orthogonal to
    the fixed lattice, weyl is the equivariant Weyl element restricting to
    the fixed part as the reflection against the summed orbit.
    """

    witness_root: tuple | None
    weyl: Isometry | None

    @property
    def folded(self) -> bool:
        return self.weyl is not None


def fold_reflection(n: Lattice, action, v) -> FoldResult:
    """Fold the reflection in root v through the action's group.

    Either returns a root of n orthogonal to the fixed lattice n^G (witness
    branch), or the product of reflections in the A1/A2 pieces of the orbit
    sum, an element of the Weyl group commuting with the action and acting
    on n^G as the reflection against the orbit sum.
    """
    mats = _action_matrices(action)
    for m in mats:
        Isometry(n, m)  # validates shape and Gram preservation
    v = tuple(v)
    if len(v) != n.rank or not la.is_integer_vector(v) or n.sq(v) != -2:
        raise InputError("v must be a root of the lattice")
    try:
        closure = la.matrix_group_closure(mats or (la.identity(n.rank),))
    except ValueError as e:
        raise InputError(str(e)) from None
    fixed_rows = _fixed_subspace_rows(mats, n.rank)
    fixed_sub = sublattice_from_rows(n, fixed_rows)
    comp = orthogonal_complement(n, fixed_sub)
    comp_sig = signature(comp.as_lattice())
    if comp.rank and (comp_sig.plus != 0 or comp_sig.null != 0):
        raise InputError("orthogonal complement of the fixed lattice must be negative definite")
    vbar = la.zero_vec(n.rank)
    orbit = set()
    for m in closure:
        img = tuple(la.mat_vec(m, v))
        orbit.add(img)
        vbar = la.vec_add(vbar, img)
    if all(x == 0 for x in vbar) or n.sq(vbar) >= 0:
        raise InputError("orbit sum must be nonzero of negative square")
    # branch 1: a root orthogonal to the fixed lattice
    comp_roots = roots_of(comp)
    if comp_roots.roots:
        return FoldResult(witness_root=_canonical_sign(comp_roots.roots[0]), weyl=None)
    # branch 2: fold over the orbit span's components
    rsub = sublattice_from_rows(n, tuple(sorted(orbit)))
    rs = roots_of(rsub)
    groups = _component_indices(n, rs.simple_roots)
    simple_mat = la.freeze_mat(rs.simple_roots)
    coords = la.coords_in_rows(vbar, simple_mat)
    if coords is None:
        raise VerificationError("orbit sum fell outside the orbit root span")
    pieces = []
    for group in groups:
        part = la.zero_vec(n.rank)
        for i in group:
            part = la.vec_add(part, la.vec_scale(coords[i], rs.simple_roots[i]))
        if all(x == 0 for x in part):
            continue
        a = la.primitive_vector(part)
        if n.sq(a) != -2:
            raise VerificationError("component part of the orbit sum is not a root line")
        pieces.append(a)
    if not pieces:
        raise VerificationError("orbit sum has no component parts")
    w = la.identity(n.rank)
    for a in sorted(pieces):
        w = la.mat_mul(w, reflection(n, a).matrix)
    # the folded element must commute with the action
    for m in mats:
        if la.mat_mul(w, m) != la.mat_mul(m, w):
            raise VerificationError("folded element does not commute with the action")
    # and restrict to the fixed lattice as the reflection against vbar
    denom = Fraction(n.sq(vbar))
    for x in fixed_rows:
        expected = tuple(
            Fraction(x[k]) - Fraction(2 * n.dot(x, vbar)) / denom * vbar[k]
            for k in range(n.rank)
        )
        got = tuple(Fraction(t) for t in la.mat_vec(w, x))
        if got != expected:
            raise VerificationError("folded element is not the fixed-part reflection")
    return FoldResult(witness_root=None, weyl=Isometry(n, w))
