import io
import json
import subprocess
import sys

import pytest

from antimagic import (
    DistanceSet,
    Labeling,
    StarShape,
    build_homogeneous_forest,
    build_star,
    verify_labeling,
)
from antimagic.cli import main
from antimagic.io import GraphDocument

D01 = DistanceSet.of([0, 1])
D02 = DistanceSet.of([0, 2])
D012 = DistanceSet.of([0, 1, 2])


def run_cli(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_star_doc(tmp_path, n, t, labeling=None, name="graph.json"):
    g = build_star(StarShape(n=n, t=t))
    doc = GraphDocument.from_graph(g, labeling)
    path = tmp_path / name
    path.write_text(doc.to_json(), encoding="utf-8")
    return path, g


# -- construct --------------------------------------------------------

def test_construct_star_json(capsys):
    code, out, _ = run_cli(
        ["construct", "--family", "star", "--n", "5", "--t", "2", "--d", "0,1"],
        capsys,
    )
    assert code == 0
    doc = GraphDocument.from_json(out)
    assert doc.metadata["family"] == "star"
    assert doc.metadata["n"] == 5 and doc.metadata["t"] == 2
    assert doc.metadata["distance_sets"] == ["{0,1}"]
    assert doc.metadata["method"] == "construction"
    assert verify_labeling(doc.graph(), doc.labeling, D01).antimagic


def test_construct_star_dot_frozen(capsys):
    code, out, _ = run_cli(
        [
            "construct", "--family", "star", "--n", "2", "--t", "1",
            "--d", "0,1", "--format", "dot",
        ],
        capsys,
    )
    assert code == 0
    assert out == (
        'digraph "g" {\n'
        "  // weight brackets per distance set: {0,1}=red\n"
        '  "c" [label="3 [5]"];\n'
        '  "l1" [label="1 [4]"];\n'
        '  "l2" [label="2 [2]"];\n'
        '  "c" -> "l2";\n'
        '  "l1" -> "c";\n'
        "}\n"
    )


def test_construct_star_refusal_names_the_obstruction(capsys):
    code, out, _ = run_cli(
        ["construct", "--family", "star", "--n", "3", "--t", "1", "--d", "1"],
        capsys,
    )
    assert code == 2
    payload = json.loads(out)
    assert payload == {
        "status": "not-antimagic",
        "distance_set": "{1}",
        "reason": "N_EXCEEDS_BOUND",
    }


def test_construct_star_missing_parameters(capsys):
    code, _, err = run_cli(
        ["construct", "--family", "star", "--d", "1"], capsys
    )
    assert code == 64
    assert "--n" in err and "--t" in err


def test_construct_star_bad_shape(capsys):
    code, _, err = run_cli(
        ["construct", "--family", "star", "--n", "2", "--t", "5", "--d", "1"],
        capsys,
    )
    assert code == 64


def test_construct_unsupported_distance_set(capsys):
    code, _, err = run_cli(
        ["construct", "--family", "star", "--n", "3", "--t", "1", "--d", "0,3"],
        capsys,
    )
    assert code == 65
    assert "never exceed 2" in err


def test_construct_malformed_distance_set(capsys):
    code, _, _ = run_cli(
        ["construct", "--family", "star", "--n", "3", "--t", "1", "--d", "x"],
        capsys,
    )
    assert code == 64


def test_construct_pi_forest(capsys):
    code, out, _ = run_cli(
        ["construct", "--family", "forest-pi", "--spec", "3x3,2x4,1x5", "--d", "0,1"],
        capsys,
    )
    assert code == 0
    doc = GraphDocument.from_json(out)
    assert len(doc.vertices) == 28
    assert doc.metadata["pi"] is True
    assert verify_labeling(doc.graph(), doc.labeling, D01).antimagic


def test_construct_pi_forest_rejects_zero_only_set(capsys):
    code, _, err = run_cli(
        ["construct", "--family", "forest-pi", "--spec", "2x2", "--d", "0"],
        capsys,
    )
    assert code == 65


def test_construct_mstar_multi_set(capsys):
    code, out, _ = run_cli(
        [
            "construct", "--family", "mstar", "--m", "2", "--n", "3", "--t", "1",
            "--d", "0,2", "--d", "0,1,2",
        ],
        capsys,
    )
    assert code == 0
    doc = GraphDocument.from_json(out)
    assert doc.metadata["distance_sets"] == ["{0,2}", "{0,1,2}"]
    assert doc.metadata["method"] == "construction"
    g = doc.graph()
    for D in (D02, D012):
        assert verify_labeling(g, doc.labeling, D).antimagic


def test_construct_forest_needs_orientation(capsys):
    code, _, err = run_cli(
        ["construct", "--family", "forest", "--spec", "2x3", "--d", "0,1"],
        capsys,
    )
    assert code == 64
    assert "@t" in err


def test_construct_oriented_forest(capsys):
    code, out, _ = run_cli(
        ["construct", "--family", "forest", "--spec", "2x3@1", "--d", "0,2"],
        capsys,
    )
    assert code == 0
    doc = GraphDocument.from_json(out)
    assert doc.metadata["orientation"] == [[1, 1]]
    assert doc.metadata["method"] == "construction"
    assert verify_labeling(doc.graph(), doc.labeling, D02).antimagic


def test_construct_deduplicates_repeated_sets(capsys):
    code, out, _ = run_cli(
        [
            "construct", "--family", "star", "--n", "4", "--t", "2",
            "--d", "0,1", "--d", "0,1",
        ],
        capsys,
    )
    assert code == 0
    assert GraphDocument.from_json(out).metadata["distance_sets"] == ["{0,1}"]


# -- verify -----------------------------------------------------------

def test_verify_embedded_labeling(tmp_path, capsys):
    path, g = write_star_doc(
        tmp_path, 2, 1, labeling=Labeling({"c": 3, "l1": 1, "l2": 2})
    )
    code, out, _ = run_cli(["verify", str(path), "--d", "0,1"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["antimagic"] is True
    report = payload["reports"][0]
    assert report["distance_set"] == "{0,1}"
    assert report["weights"] == {"c": 5, "l1": 4, "l2": 2}
    assert report["collisions"] == []


def test_verify_collision_exits_one(tmp_path, capsys):
    path, g = write_star_doc(
        tmp_path, 2, 0, labeling=Labeling({"c": 1, "l1": 2, "l2": 3})
    )
    code, out, _ = run_cli(["verify", str(path), "--d", "1"], capsys)
    assert code == 1
    payload = json.loads(out)
    assert payload["antimagic"] is False
    assert payload["reports"][0]["collisions"] == [["l1", "l2"]]


def test_verify_mixed_sets_worst_case_wins(tmp_path, capsys):
    path, _ = write_star_doc(
        tmp_path, 2, 0, labeling=Labeling({"c": 1, "l1": 2, "l2": 3})
    )
    code, out, _ = run_cli(["verify", str(path), "--d", "0", "--d", "1"], capsys)
    assert code == 1
    payload = json.loads(out)
    assert payload["antimagic"] is False
    verdicts = {r["distance_set"]: r["antimagic"] for r in payload["reports"]}
    assert verdicts == {"{0}": True, "{1}": False}


def test_verify_inline_labeling_overrides_document(tmp_path, capsys):
    path, _ = write_star_doc(
        tmp_path, 2, 1, labeling=Labeling({"c": 1, "l1": 2, "l2": 3})
    )
    code, out, _ = run_cli(
        [
            "verify", str(path), "--d", "0,1",
            "--labeling", '{"c": 3, "l1": 1, "l2": 2}',
        ],
        capsys,
    )
    assert code == 0
    assert json.loads(out)["reports"][0]["weights"]["c"] == 5


def test_verify_labeling_from_file(tmp_path, capsys):
    path, _ = write_star_doc(tmp_path, 2, 1)
    labels = tmp_path / "labels.json"
    labels.write_text('{"c": 3, "l1": 1, "l2": 2}', encoding="utf-8")
    code, out, _ = run_cli(
        ["verify", str(path), "--d", "0,1", "--labeling", str(labels)], capsys
    )
    assert code == 0


def test_verify_reads_stdin(tmp_path, capsys, monkeypatch):
    g = build_star(StarShape(n=2, t=1))
    doc = GraphDocument.from_graph(g, Labeling({"c": 3, "l1": 1, "l2": 2}))
    monkeypatch.setattr(sys, "stdin", io.StringIO(doc.to_json()))
    code, out, _ = run_cli(["verify", "-", "--d", "0,1"], capsys)
    assert code == 0


def test_verify_duplicate_labels_are_data_errors(tmp_path, capsys):
    path, _ = write_star_doc(tmp_path, 2, 1)
    code, _, err = run_cli(
        ["verify", str(path), "--d", "0,1", "--labeling", '{"c": 1, "l1": 1, "l2": 2}'],
        capsys,
    )
    assert code == 65
    assert "duplicate" in err


def test_verify_without_any_labeling(tmp_path, capsys):
    path, _ = write_star_doc(tmp_path, 2, 1)
    code, _, err = run_cli(["verify", str(path), "--d", "0,1"], capsys)
    assert code == 65
    assert "labeling" in err


def test_verify_missing_file(tmp_path, capsys):
    code, _, err = run_cli(
        ["verify", str(tmp_path / "nope.json"), "--d", "0,1"], capsys
    )
    assert code == 65


def test_verify_malformed_document(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{nope", encoding="utf-8")
    code, _, err = run_cli(["verify", str(path), "--d", "0,1"], capsys)
    assert code == 65


# -- search -----------------------------------------------------------

def test_search_count_frozen(tmp_path, capsys):
    path, _ = write_star_doc(tmp_path, 2, 1)
    code, out, _ = run_cli(
        ["search", str(path), "--d", "1,2", "--mode", "count"], capsys
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "found"
    assert payload["count"] == 6
    assert payload["distance_sets"] == ["{1,2}"]
    assert payload["shortcut"] is None


def test_search_first_returns_verified_witness(tmp_path, capsys):
    path, g = write_star_doc(tmp_path, 2, 1)
    code, out, _ = run_cli(["search", str(path), "--d", "0,1"], capsys)
    assert code == 0
    payload = json.loads(out)
    witness = payload["witness"]
    assert list(witness) == list(g.vertices)
    assert verify_labeling(g, witness, D01).antimagic


def test_search_exhausted_exits_two(tmp_path, capsys):
    path, _ = write_star_doc(tmp_path, 2, 1)
    code, out, _ = run_cli(["search", str(path), "--d", "2"], capsys)
    assert code == 2
    payload = json.loads(out)
    assert payload["status"] == "exhausted-none"
    assert payload["witness"] is None


def test_search_unfit_distance_set_shortcut(tmp_path, capsys):
    g = build_homogeneous_forest(2, StarShape(n=2, t=0))
    path = tmp_path / "forest.json"
    path.write_text(GraphDocument.from_graph(g).to_json(), encoding="utf-8")
    code, out, _ = run_cli(["search", str(path), "--d", "0,2"], capsys)
    assert code == 2
    payload = json.loads(out)
    assert payload["shortcut"] == "distance-set-exceeds-diameter"
    assert payload["nodes_explored"] == 0


def test_search_budget_abort_exits_three(tmp_path, capsys):
    path, _ = write_star_doc(tmp_path, 2, 1)
    code, out, _ = run_cli(
        ["search", str(path), "--d", "0,1", "--budget", "1"], capsys
    )
    assert code == 3
    assert json.loads(out)["status"] == "aborted-budget"


def test_search_joint_sets_count(tmp_path, capsys):
    # {1,2} admits all 6 bijections, {0,1} admits 4; jointly 4 remain
    path, g = write_star_doc(tmp_path, 2, 1)
    code, out, _ = run_cli(
        ["search", str(path), "--d", "0,1", "--d", "1,2", "--mode", "count"],
        capsys,
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["distance_sets"] == ["{0,1}", "{1,2}"]
    assert payload["count"] == 4


def test_search_mode_all_lists_every_labeling(tmp_path, capsys):
    path, g = write_star_doc(tmp_path, 2, 1)
    code, out, _ = run_cli(
        ["search", str(path), "--d", "0,1", "--mode", "all"], capsys
    )
    assert code == 0
    payload = json.loads(out)
    labelings = payload["labelings"]
    assert len(labelings) == payload["count"] == 4
    for labeling in labelings:
        assert verify_labeling(g, labeling, D01).antimagic


def test_search_symmetry_scaling(tmp_path, capsys):
    path, _ = write_star_doc(tmp_path, 4, 2)
    code, out, _ = run_cli(
        ["search", str(path), "--d", "0,1", "--mode", "count"], capsys
    )
    assert code == 0
    reduced = json.loads(out)
    code, out, _ = run_cli(
        [
            "search", str(path), "--d", "0,1", "--mode", "count",
            "--no-symmetry", "--no-prune",
        ],
        capsys,
    )
    assert code == 0
    raw = json.loads(out)
    assert raw["symmetry_order"] == 1
    assert reduced["symmetry_order"] == 4
    assert reduced["count"] * reduced["symmetry_order"] == raw["count"]


def test_search_exhaustive_mode_respects_vertex_cap(tmp_path, capsys):
    g = build_homogeneous_forest(2, StarShape(n=5, t=1))
    path = tmp_path / "big.json"
    path.write_text(GraphDocument.from_graph(g).to_json(), encoding="utf-8")
    code, _, err = run_cli(["search", str(path), "--d", "0,1", "--mode", "count"], capsys)
    assert code == 64
    assert "ANTIMAGIC_NODE_CAP" in err


def test_search_rejects_zero_workers(tmp_path, capsys):
    path, _ = write_star_doc(tmp_path, 2, 1)
    code, _, err = run_cli(
        ["search", str(path), "--d", "0,1", "--workers", "0"], capsys
    )
    assert code == 64


# -- scan -------------------------------------------------------------

def test_scan_prints_the_table(capsys):
    code, out, _ = run_cli(["scan", "--spec", "2x2", "--d", "0,1", "--d", "1"], capsys)
    assert code == 0
    assert out.splitlines()[0] == "orientation  {0,1}  {1}"
    assert len(out.splitlines()) == 7
    assert "2,2          yes    no" in out


def test_scan_all_negative_column(capsys):
    code, out, _ = run_cli(["scan", "--spec", "2x2", "--d", "1"], capsys)
    assert code == 0
    assert "yes" not in out


def test_scan_writes_report_files(tmp_path, capsys):
    out_dir = tmp_path / "report"
    code, out, _ = run_cli(
        ["scan", "--spec", "2x2", "--d", "0,1", "--d", "1", "--out", str(out_dir)],
        capsys,
    )
    assert code == 0
    assert (out_dir / "scan.txt").read_text(encoding="utf-8") == out
    payload = json.loads((out_dir / "scan.json").read_text(encoding="utf-8"))
    assert payload["spec"] == "2x2"
    assert payload["distance_sets"] == ["{0,1}", "{1}"]
    assert len(payload["rows"]) == 6
    for row in payload["rows"]:
        good = row["cells"]["{0,1}"]
        assert good["antimagic"] is True
        assert good["witness"] is not None
        witness_doc = GraphDocument.from_json(
            (out_dir / good["witness"]).read_text(encoding="utf-8")
        )
        assert verify_labeling(witness_doc.graph(), witness_doc.labeling, D01).antimagic
        bad = row["cells"]["{1}"]
        assert bad["antimagic"] is False
        assert bad["method"] == "necessary-condition"
        assert bad["witness"] is None


def test_scan_rejects_oriented_specs(capsys):
    code, _, err = run_cli(["scan", "--spec", "2x2@1", "--d", "0,1"], capsys)
    assert code == 64
    assert "@t" in err


def test_scan_rejects_single_star(capsys):
    code, _, err = run_cli(["scan", "--spec", "1x3", "--d", "0,1"], capsys)
    assert code == 64


def test_scan_budget_abort_exits_three(capsys):
    code, out, _ = run_cli(
        ["scan", "--spec", "2x2", "--d", "0,1", "--budget", "1"], capsys
    )
    assert code == 3
    assert "abort" in out


# -- plumbing ---------------------------------------------------------

def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    capsys.readouterr()


def test_unknown_command_is_usage_error(capsys):
    code, _, _ = run_cli(["frobnicate"], capsys)
    assert code == 64


def test_missing_distance_flag_is_usage_error(capsys):
    code, _, _ = run_cli(
        ["construct", "--family", "star", "--n", "2", "--t", "1"], capsys
    )
    assert code == 64


def test_module_entry_point():
    proc = subprocess.run(
        [
            sys.executable, "-m", "antimagic",
            "construct", "--family", "star", "--n", "2", "--t", "1", "--d", "0,1",
        ],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    doc = GraphDocument.from_json(proc.stdout)
    assert doc.metadata["method"] == "construction"
