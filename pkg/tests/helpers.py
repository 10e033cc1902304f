"""Shared test utilities: oracles and random generators.

The box-search oracles here are deliberately independent of the library's
enumeration code paths: they brute-force coordinate boxes (numpy int64,
exact in the tested ranges) so that clever algorithms are checked against
dumb exhaustion.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import numpy as np

from lattact import linalg as la


def box_vectors_with_square(gram, target, bound):
    """All nonzero integer vectors with |x_i| <= bound and x^T G x = target."""
    n = len(gram)
    g = np.array([[int(x) for x in row] for row in gram], dtype=np.int64)
    ranges = [np.arange(-bound, bound + 1, dtype=np.int64)] * n
    grids = np.meshgrid(*ranges, indexing="ij")
    pts = np.stack([grid.reshape(-1) for grid in grids], axis=1)
    vals = np.einsum("ij,jk,ik->i", pts, g, pts)
    hits = pts[vals == int(target)]
    out = set()
    for row in hits:
        v = tuple(int(x) for x in row)
        if any(v):
            out.add(v)
    return sorted(out)


def definite_enumeration_box_bound(gram, target):
    """Per-coordinate bound |x_i|^2 <= |target| * (G^-1)_ii for definite G."""
    n = len(gram)
    sign = 1
    if any(gram[i][i] < 0 for i in range(n)):
        sign = -1
    q = la.mat_scale(sign, la.freeze_mat(gram))
    qinv = la.inverse(q)
    t = Fraction(abs(int(target)))
    bound = 0
    for i in range(n):
        bound = max(bound, la.isqrt_frac_floor(t * qinv[i][i]))
    return int(bound) + 1


def random_unimodular(rng: random.Random, n: int, steps: int = 12):
    """Random element of GL_n(Z) as a product of elementary operations."""
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(steps):
        kind = rng.randrange(3)
        i = rng.randrange(n)
        j = rng.randrange(n)
        if kind == 0 and i != j:
            c = rng.choice([-2, -1, 1, 2])
            for k in range(n):
                m[i][k] += c * m[j][k]
        elif kind == 1:
            m[i], m[j] = m[j], m[i]
        elif kind == 2:
            m[i] = [-x for x in m[i]]
    return la.freeze_mat(m)


def random_symmetric(rng: random.Random, n: int, span: int = 4):
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = rng.randint(-span, span)
            a[i][j] = v
            a[j][i] = v
    return la.freeze_mat(a)


def random_even_symmetric(rng: random.Random, n: int, span: int = 4):
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = rng.randint(-span, span)
            if i == j:
                v *= 2
            a[i][j] = v
            a[j][i] = v
    return la.freeze_mat(a)


def conjugate_gram(gram, basis_change):
    """Gram of the same form in a new basis: B^T G B."""
    return la.mat_mul(la.mat_mul(la.transpose(basis_change), gram), basis_change)


def block_diag(*mats):
    """Block-diagonal integer matrix from square blocks."""
    total = sum(len(m) for m in mats)
    rows = []
    offset = 0
    for m in mats:
        for r in m:
            rows.append((0,) * offset + tuple(r) + (0,) * (total - offset - len(m)))
        offset += len(m)
    return tuple(rows)


def all_sign_vectors(n):
    return list(itertools.product((-1, 1), repeat=n))


# ---------------------------------------------------------------------------
# shared rank-6 fixtures: an order-3 rotation with two choices of reflector
# acting on 3U, trivial on the last hyperbolic block

ROT3 = ((0, 0, -1, 0), (0, -1, 0, -1), (1, 0, -1, 0), (0, 1, 0, 0))
INV_A = ((0, 0, 1, 0), (1, 0, 0, 1), (1, 0, 0, 0), (0, 1, -1, 0))
INV_B = ((1, 0, -1, 0), (0, 1, 0, 0), (0, 0, -1, 0), (0, -1, 0, -1))
I2 = ((1, 0), (0, 1))


def klein_action(inv=INV_A):
    from lattact import LatticeAction, standard_lattice

    return LatticeAction(
        standard_lattice("3U"),
        (("t", block_diag(ROT3, I2), 1), ("s", block_diag(inv, I2), -1)),
    )


def klein_pipeline(inv=INV_A):
    """action, flag data, complex structure, eigen split for the fixture."""
    from lattact import (
        dilated_complex_structure,
        eigen_lattices,
        fundamental_data,
    )

    act = klein_action(inv)
    f = fundamental_data(act)
    j = dilated_complex_structure(act, f)
    e = eigen_lattices(act, f)
    return act, f, j, e
