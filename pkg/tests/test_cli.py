"""Command-line behavior: file format round trips, report content per
command, the exit-code contract, and byte determinism."""

import json
import re

import pytest

import lattact.linalg as la
from lattact import InputError, LatticeAction, make_lattice, standard_lattice
from lattact.catalog import FIXTURE_NAMES, fixture
from lattact.cli import action_to_text, main, parse_action_text

ROT3 = ((0, 0, -1, 0), (0, -1, 0, -1), (1, 0, -1, 0), (0, 1, 0, 0))
INV_A = ((0, 0, 1, 0), (1, 0, 0, 1), (1, 0, 0, 0), (0, 1, -1, 0))

ZERO18 = "0," * 17 + "0"
U1_MINUS_V1 = "1,-1," + ZERO18 + ",0,0"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def lines_dict(text):
    out = {}
    for line in text.strip().splitlines():
        key, _, value = line.partition("=")
        out[key] = value
    return out


def block_diag(*mats):
    n = sum(len(m) for m in mats)
    rows = [[0] * n for _ in range(n)]
    off = 0
    for m in mats:
        for i, r in enumerate(m):
            for j, x in enumerate(r):
                rows[off + i][off + j] = x
        off += len(m)
    return tuple(map(tuple, rows))


def write_action(tmp_path, name, action, comment=None):
    path = tmp_path / name
    path.write_text(action_to_text(action, comment))
    return str(path)


def catalog_file(capsys, tmp_path, name):
    code, out, _ = run(capsys, "catalog", name)
    assert code == 0
    path = tmp_path / f"{name}.json"
    path.write_text(out)
    return str(path)


def reflection_rank7_action():
    gram = block_diag(standard_lattice("3U").gram, ((-2,),))
    t = block_diag(ROT3, la.identity(2), ((1,),))
    s = block_diag(INV_A, la.identity(2), ((-1,),))
    return LatticeAction(make_lattice(gram), (("t", t, 1), ("s", s, -1)))


class TestActionFiles:
    def test_export_parse_export_is_identity(self, capsys):
        for name in FIXTURE_NAMES:
            _, out, _ = run(capsys, "catalog", name)
            action, comment = parse_action_text(out)
            assert action_to_text(action, comment) == out

    def test_integers_are_plain_decimal_strings(self, capsys):
        _, out, _ = run(capsys, "catalog", "d3_S")
        obj = json.loads(out)
        pattern = re.compile(r"^-?(0|[1-9][0-9]*)$")
        for row in obj["gram"]:
            assert all(pattern.match(x) for x in row)
        for gen in obj["generators"]:
            assert gen["kappa"] in ("+1", "-1")
            for row in gen["matrix"]:
                assert all(pattern.match(x) for x in row)

    def test_key_order_and_trailing_newline(self, capsys):
        _, out, _ = run(capsys, "catalog", "d3_S")
        assert out.endswith("\n") and not out.endswith("\n\n")
        obj = json.loads(out)
        assert list(obj) == ["comment", "gram", "generators"]
        assert list(obj["generators"][0]) == ["name", "matrix", "kappa"]

    def test_comment_round_trips(self):
        act = fixture("torus_lattice").action
        text = action_to_text(act, "a note")
        _, comment = parse_action_text(text)
        assert comment == "a note"
        assert "comment" not in json.loads(action_to_text(act))

    def test_parse_rejections(self):
        good = json.loads(action_to_text(fixture("torus_lattice").action))
        cases = []
        bad = dict(good)
        bad["extra"] = 1
        cases.append(json.dumps(bad))
        bad = dict(good)
        del bad["gram"]
        cases.append(json.dumps(bad))
        bad = json.loads(json.dumps(good))
        bad["generators"][0]["kappa"] = "1"
        cases.append(json.dumps(bad))
        bad = json.loads(json.dumps(good))
        bad["gram"][0][0] = "1.5"
        cases.append(json.dumps(bad))
        bad = json.loads(json.dumps(good))
        bad["generators"][0]["matrix"][0][0] = "7"
        cases.append(json.dumps(bad))
        cases.append("not structured")
        cases.append(json.dumps([1, 2]))
        for text in cases:
            with pytest.raises(InputError):
                parse_action_text(text)


class TestCheck:
    def test_d3_s_report(self, capsys, tmp_path):
        path = catalog_file(capsys, tmp_path, "d3_S")
        code, out, _ = run(capsys, "check", path, "--format=lines")
        assert code == 0
        rep = lines_dict(out)
        assert rep["geometric"] == "true"
        assert rep["rho.order"] == "3"
        assert rep["rho.real"] == "false"
        assert rep["group.order"] == "6"
        assert rep["lattice.signature"] == "3,19,0"
        assert rep["ldot.rank"] == "0"
        expected_gram = ";".join(
            ",".join(str(x) for x in row) for row in standard_lattice("U+2E8").gram
        )
        assert rep["fixed.gram"] == expected_gram
        assert "geometric.witness" not in rep

    def test_reflection_action_fails_geometric(self, capsys, tmp_path):
        path = write_action(tmp_path, "refl.json", reflection_rank7_action())
        code, out, _ = run(capsys, "check", path, "--format=lines")
        assert code == 1
        rep = lines_dict(out)
        assert rep["geometric"] == "false"
        assert rep["geometric.witness"] == "0,0,0,0,0,0,1"

    def test_malformed_file_exit_2(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"gram": [["0", "1"], ["1"]]')
        code, _, err = run(capsys, "check", str(path))
        assert code == 2
        assert err.startswith("error:")

    def test_missing_file_exit_2(self, capsys, tmp_path):
        code, _, err = run(capsys, "check", str(tmp_path / "absent.json"))
        assert code == 2
        assert "cannot read" in err

    def test_human_format_has_header(self, capsys, tmp_path):
        path = catalog_file(capsys, tmp_path, "torus_lattice")
        code, out, _ = run(capsys, "check", path)
        assert code == 0
        assert out.splitlines()[0].startswith("check ")
        assert "  geometric = true" in out


class TestWalls:
    def test_d3_s(self, capsys, tmp_path):
        path = catalog_file(capsys, tmp_path, "d3_S")
        code, out, _ = run(capsys, "walls", path, "--format=lines")
        assert code == 0
        rep = lines_dict(out)
        assert rep["walls.count"] == "2"
        assert rep["components"] == "3"
        assert rep["walls.complete"] == "true"
        assert rep["walls.candidates"] == "10"
        assert rep["walls.rays"] == "3,2;1,1"

    def test_d3_sprime(self, capsys, tmp_path):
        path = catalog_file(capsys, tmp_path, "d3_Sprime")
        code, out, _ = run(capsys, "walls", path, "--format=lines")
        assert code == 0
        rep = lines_dict(out)
        assert rep["walls.count"] == "0"
        assert rep["components"] == "1"
        assert rep["walls.rays"] == ""

    def test_sign_trivial_action_is_out_of_scope(self, capsys, tmp_path):
        path = catalog_file(capsys, tmp_path, "e8_swap")
        code, _, err = run(capsys, "walls", path)
        assert code == 3
        assert "anti-holomorphic" in err

    def test_rank_four_eigenlattice_is_out_of_scope(self, capsys, tmp_path):
        act = LatticeAction(
            standard_lattice("4U"),
            (
                ("t", block_diag(ROT3, ROT3), 1),
                ("s", block_diag(INV_A, INV_A), -1),
            ),
        )
        path = write_action(tmp_path, "rank4.json", act)
        code, _, err = run(capsys, "walls", path)
        assert code == 3


class TestDegenerate:
    def test_swap_fixture_keeps_the_action(self, capsys, tmp_path):
        path = catalog_file(capsys, tmp_path, "e8_swap")
        out_path = tmp_path / "deg.json"
        code, out, _ = run(
            capsys,
            "degenerate",
            path,
            "--roots",
            U1_MINUS_V1,
            "--out",
            str(out_path),
            "--format=lines",
        )
        assert code == 0
        rep = lines_dict(out)
        assert rep["degeneration.all"] == "true"
        assert rep["system.components"] == "A1"
        assert rep["system.roots"] == "2"
        new_action, _ = parse_action_text(out_path.read_text())
        original = fixture("e8_swap").action
        assert new_action.generators[0][1].matrix == original.generators[0][1].matrix

    def test_sign_flip_swaps_the_first_block(self, capsys, tmp_path):
        l22 = standard_lattice("3U+2E8")
        flip = tuple(
            tuple((-1 if i < 2 else 1) if i == j else 0 for j in range(22))
            for i in range(22)
        )
        path = write_action(
            tmp_path, "flip.json", LatticeAction(l22, (("c", flip, -1),))
        )
        out_path = tmp_path / "flip_deg.json"
        code, out, _ = run(
            capsys,
            "degenerate",
            path,
            "--roots",
            U1_MINUS_V1,
            "--out",
            str(out_path),
            "--format=lines",
        )
        assert code == 0
        assert lines_dict(out)["degeneration.all"] == "true"
        new_action, _ = parse_action_text(out_path.read_text())
        name, iso, kappa = new_action.generators[0]
        assert (name, kappa) == ("c", -1)
        m = iso.matrix
        assert [row[:2] for row in m[:2]] == [(0, -1), (-1, 0)]
        assert all(m[i][i] == 1 for i in range(2, 22))

    def test_non_invariant_roots_exit_1(self, capsys, tmp_path):
        path = catalog_file(capsys, tmp_path, "d3_S")
        code, out, _ = run(
            capsys, "degenerate", path, "--roots", U1_MINUS_V1, "--format=lines"
        )
        assert code == 1
        rep = lines_dict(out)
        assert rep["degeneration.ok"] == "false"
        assert "invariant" in rep["degeneration.error"]

    def test_action_file_on_stdout_without_out_flag(self, capsys, tmp_path):
        path = catalog_file(capsys, tmp_path, "e8_swap")
        code, out, _ = run(
            capsys, "degenerate", path, "--roots", U1_MINUS_V1, "--format=lines"
        )
        assert code == 0
        json_start = out.index("{")
        parse_action_text(out[json_start:])
        assert lines_dict(out[:json_start])["degeneration.all"] == "true"

    def test_wrong_root_length_exit_2(self, capsys, tmp_path):
        path = catalog_file(capsys, tmp_path, "e8_swap")
        code, _, err = run(capsys, "degenerate", path, "--roots", "1,-1")
        assert code == 2
        assert "entries" in err

    def test_non_integer_root_exit_2(self, capsys, tmp_path):
        path = catalog_file(capsys, tmp_path, "e8_swap")
        bad = "x," + ZERO18 + ",0,0,0"
        code, _, err = run(capsys, "degenerate", path, "--roots", bad)
        assert code == 2


class TestCatalogCommand:
    def test_byte_stable(self, capsys):
        for name in FIXTURE_NAMES:
            _, first, _ = run(capsys, "catalog", name)
            _, second, _ = run(capsys, "catalog", name)
            assert first == second

    def test_unknown_name_exit_2(self, capsys):
        code, _, err = run(capsys, "catalog", "unit_cube")
        assert code == 2
        assert "unknown fixture" in err


class TestClassifyCommand:
    def test_bound_two_report(self, capsys):
        code, out, _ = run(
            capsys, "classify", "order3-2u", "--bound", "2", "--format=lines"
        )
        assert code == 0
        rep = lines_dict(out)
        assert rep["classify.hits"] == "24"
        assert rep["classify.classes"] == "0;A2;A2(-1)"
        assert "[-2, 2]" in rep["classify.note"]

    def test_bound_zero_empty(self, capsys):
        code, out, _ = run(
            capsys, "classify", "order3-2u", "--bound", "0", "--format=lines"
        )
        assert code == 0
        assert lines_dict(out)["classify.hits"] == "0"

    def test_bad_target_and_bound(self, capsys):
        code, _, _ = run(capsys, "classify", "order5-2u")
        assert code == 2
        code, _, _ = run(capsys, "classify", "order3-2u", "--bound", "-1")
        assert code == 2


class TestSurveyCommand:
    def test_orders_and_consistency(self, capsys):
        code, out, _ = run(capsys, "survey", "torus", "--format=lines")
        assert code == 0
        rep = lines_dict(out)
        assert rep["survey.consistent"] == "true"
        assert (rep["survey.A3.weyl"], rep["survey.A3.rotation"]) == ("24", "12")
        assert (rep["survey.A2+A1.weyl"], rep["survey.A2+A1.rotation"]) == ("12", "6")
        assert (rep["survey.3A1.weyl"], rep["survey.3A1.rotation"]) == ("8", "4")
        for name in ("A3", "A2+A1", "3A1"):
            assert rep[f"survey.{name}.embedding"].count(";") == 2

    def test_bad_target_exit_2(self, capsys):
        assert run(capsys, "survey", "k3")[0] == 2


class TestDiscrCommand:
    def test_a2_invariant_factors(self, capsys, tmp_path):
        act = LatticeAction(standard_lattice("A2"), (("id", la.identity(2), 1),))
        path = write_action(tmp_path, "a2.json", act)
        code, out, _ = run(capsys, "discr", path, "--format=lines")
        assert code == 0
        rep = lines_dict(out)
        assert rep["discr.factors"] == "3"
        assert rep["discr.order"] == "3"

    def test_unimodular_lattice_trivial_group(self, capsys, tmp_path):
        path = catalog_file(capsys, tmp_path, "torus_lattice")
        code, out, _ = run(capsys, "discr", path, "--format=lines")
        assert code == 0
        rep = lines_dict(out)
        assert rep["discr.factors"] == ""
        assert rep["discr.order"] == "1"


class TestDeterminism:
    def test_reports_are_byte_identical_across_runs(self, capsys, tmp_path):
        d3 = catalog_file(capsys, tmp_path, "d3_S")
        torus = catalog_file(capsys, tmp_path, "torus_lattice")
        invocations = (
            ("check", d3, "--format=lines"),
            ("check", d3),
            ("walls", d3, "--format=lines"),
            ("classify", "order3-2u", "--bound", "1", "--format=lines"),
            ("survey", "torus", "--format=lines"),
            ("discr", torus, "--format=lines"),
            ("catalog", "d3_Sprime"),
        )
        for argv in invocations:
            first = run(capsys, *argv)
            second = run(capsys, *argv)
            assert first == second
