"""Catalog checks: fixtures, the bounded order-3 search on U+U, the
symplectic survey, and the staged pipeline over the order-6 actions."""

from functools import lru_cache

import pytest

import lattact.linalg as la
from lattact import (
    InputError,
    LatticeAction,
    classify_order3_on_2U,
    d3_full_pipeline,
    enumerate_group,
    fixture,
    fundamental_data,
    is_geometric,
    is_isometry,
    leftover_lattice,
    signature,
    standard_lattice,
    torus_symplectic_survey,
)
from lattact.lattice import sublattice_from_rows
from lattact.catalog import (
    FIXTURE_NAMES,
    Fixture,
    REFLECTION_MAIN,
    REFLECTION_SPLIT,
    ROTATION_2U,
)

PIPELINE_LABELS = ("group", "fundamental", "fixed", "rotation", "eigen", "geometric", "walls")

# isometries of U+U used to probe conjugation closure of the order-3 search
SUMMAND_SWAP = ((0, 0, 1, 0), (0, 0, 0, 1), (1, 0, 0, 0), (0, 1, 0, 0))


@lru_cache(maxsize=None)
def bound_two_report():
    return classify_order3_on_2U(2)


def embed22(block):
    rows = [[0] * 22 for _ in range(22)]
    for i in range(4):
        rows[i][:4] = block[i]
    for i in range(4, 22):
        rows[i][i] = 1
    return tuple(map(tuple, rows))


class TestFixtures:
    def test_every_name_builds_and_validates(self):
        for name in FIXTURE_NAMES:
            fx = fixture(name)
            assert fx.name == name
            for _, iso, kappa in fx.action.generators:
                assert is_isometry(fx.action.ambient, iso.matrix)
                assert kappa in (1, -1)
            if "group_order" in fx.expected:
                assert len(enumerate_group(fx.action)) == fx.expected["group_order"]

    def test_unknown_name_rejected(self):
        with pytest.raises(InputError):
            fixture("unit_cube")

    def test_origin_tags_cover_expected_keys(self):
        for name in FIXTURE_NAMES:
            fx = fixture(name)
            assert set(fx.expected) == set(fx.origins)
            assert set(fx.origins.values()) <= {"claimed", "recorded"}

    def test_origin_tag_validation(self):
        act = fixture("torus_lattice").action
        with pytest.raises(InputError):
            Fixture("x", act, {"a": 1}, {"a": "guessed"})
        with pytest.raises(InputError):
            Fixture("x", act, {"a": 1}, {})

    def test_unimodular_records(self):
        for name in ("k3_lattice", "torus_lattice"):
            fx = fixture(name)
            g = fx.action.ambient.gram
            sig = signature(fx.action.ambient)
            assert (sig.plus, sig.minus) == fx.expected["signature"]
            assert all(g[i][i] % 2 == 0 for i in range(len(g)))
            assert la.det(g) == fx.expected["determinant"]

    def test_d3_generator_blocks(self):
        s_fx = fixture("d3_S")
        t, s = (gen[1].matrix for gen in s_fx.action.generators)
        assert t == embed22(ROTATION_2U)
        assert s == embed22(REFLECTION_MAIN)
        assert tuple(gen[2] for gen in s_fx.action.generators) == (1, -1)
        p_fx = fixture("d3_Sprime")
        assert p_fx.action.generators[1][1].matrix == embed22(REFLECTION_SPLIT)

    def test_dihedral_relations(self):
        for name in ("d3_S", "d3_Sprime"):
            t, s = (gen[1].matrix for gen in fixture(name).action.generators)
            ident = la.identity(22)
            assert la.mat_pow(t, 3) == ident and t != ident
            assert la.mat_pow(s, 2) == ident and s != ident
            assert la.mat_mul(la.mat_mul(s, t), s) == la.mat_pow(t, 2)

    def test_swap_fixture_record(self):
        fx = fixture("e8_swap")
        fd = fundamental_data(fx.action)
        assert (fd.order_n, fd.real) == (
            fx.expected["rotation_order"],
            fx.expected["real"],
        )
        geo, witnesses = is_geometric(fx.action, fd)
        assert geo is fx.expected["geometric"] and witnesses == ()
        ld = leftover_lattice(fx.action, fd)
        assert ld.rank == fx.expected["ldot_rank"]
        assert ld.gram() == fx.expected["ldot_gram"]


class TestClassifyOrder3:
    def test_bound_two_hits(self):
        rep = bound_two_report()
        assert rep.classes == ("0", "A2", "A2(-1)")
        assert len(rep.hits) == 24
        l = standard_lattice("2U")
        ident = la.identity(4)
        mats = {h.matrix for h in rep.hits}
        assert ROTATION_2U in mats
        for h in rep.hits:
            assert is_isometry(l, h.matrix)
            assert h.matrix != ident
            assert la.mat_pow(h.matrix, 3) == ident
            for row in h.fixed_basis:
                assert la.mat_vec(h.matrix, row) == row

    def test_fixed_classes_match_their_lattices(self):
        l = standard_lattice("2U")
        for h in bound_two_report().hits:
            sub = sublattice_from_rows(l, h.fixed_basis)
            if h.fixed_class == "0":
                assert sub.rank == 0
                continue
            g = sub.gram()
            assert la.det(g) == 3
            if h.fixed_class == "A2":
                assert g[0][0] < 0
            else:
                assert h.fixed_class == "A2(-1)" and g[0][0] > 0

    def test_closed_under_squaring(self):
        rep = bound_two_report()
        mats = {h.matrix for h in rep.hits}
        for m in mats:
            assert la.mat_pow(m, 2) in mats

    def test_closed_under_bounded_conjugation(self):
        rep = bound_two_report()
        mats = {h.matrix for h in rep.hits}
        probed = 0
        for p in (SUMMAND_SWAP, REFLECTION_MAIN, la.mat_scale(-1, la.identity(4))):
            assert is_isometry(standard_lattice("2U"), p)
            pinv = la.inverse_int(p)
            for m in mats:
                c = la.mat_mul(la.mat_mul(p, m), pinv)
                if max(abs(x) for row in c for x in row) <= 2:
                    assert c in mats
                    probed += 1
        assert probed > 0

    def test_small_bounds(self):
        assert classify_order3_on_2U(0).hits == ()
        assert len(classify_order3_on_2U(1).hits) == 24

    def test_bad_bounds_rejected(self):
        with pytest.raises(InputError):
            classify_order3_on_2U(-1)
        with pytest.raises(InputError):
            classify_order3_on_2U(1.5)

    def test_note_states_the_bound(self):
        assert "[-2, 2]" in bound_two_report().note


class TestSurvey:
    def test_orders_counted_two_ways(self):
        rep = torus_symplectic_survey()
        assert rep.all_consistent
        by_name = {e.system: e for e in rep.entries}
        assert set(by_name) == {"A3", "A2+A1", "3A1"}
        for name, (w, so) in {"A3": (24, 12), "A2+A1": (12, 6), "3A1": (8, 4)}.items():
            e = by_name[name]
            assert (e.weyl_order, e.rotation_order) == (w, so)
            assert (e.weyl_order_formula, e.rotation_order_formula) == (w, so)

    def test_embeddings_are_exact(self):
        e8 = standard_lattice("E8")
        for entry in torus_symplectic_survey().entries:
            for r in entry.embedding:
                assert e8.dot(r, r) == -2
            gram = tuple(
                tuple(e8.dot(u, v) for v in entry.embedding) for u in entry.embedding
            )
            assert gram == entry.gram

    def test_deterministic(self):
        assert torus_symplectic_survey() == torus_symplectic_survey()


class TestPipeline:
    def test_variant_s_passes_every_stage(self):
        rep = d3_full_pipeline("S")
        assert tuple(label for label, _, _ in rep.entries) == PIPELINE_LABELS
        assert all(ok for _, ok, _ in rep.entries)
        assert rep.all_passed

    def test_variant_sprime_passes_every_stage(self):
        rep = d3_full_pipeline("Sprime")
        assert tuple(label for label, _, _ in rep.entries) == PIPELINE_LABELS
        assert rep.all_passed

    def test_unknown_variant_rejected(self):
        with pytest.raises(InputError):
            d3_full_pipeline("T")

    def test_corrupted_sign_fails_in_the_group_stage(self):
        l = standard_lattice("3U+2E8")
        bad = LatticeAction(
            l,
            (
                ("t", embed22(ROTATION_2U), -1),
                ("s", embed22(REFLECTION_MAIN), -1),
            ),
        )
        rep = d3_full_pipeline("S", action=bad)
        assert not rep.all_passed
        label, ok, note = rep.entries[0]
        assert label == "group" and not ok
        assert "homomorphism" in note
        assert len(rep.entries) == 1

    def test_wrong_action_fails_at_the_eigen_stage(self):
        rep = d3_full_pipeline("S", action=fixture("d3_Sprime").action)
        assert not rep.all_passed
        assert [label for label, ok, _ in rep.entries if not ok] == ["eigen"]
        assert rep.entries[-1][0] == "eigen"
