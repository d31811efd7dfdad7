import json
import subprocess
import sys
from xml.etree import ElementTree

import pytest

from linkcert.augment import augment
from linkcert.cli import main
from linkcert.generate import figure_one, pretzel, table_diagram, two_bridge
from linkcert.polyhedra import cusp_tori, decompose
from linkcert.svg import cusp_svg


def write(tmp_path, diagrams, extra=""):
    path = tmp_path / "in.pd"
    path.write_text("".join(f"{d.label}: {d.to_pd()}\n" for d in diagrams) + extra)
    return str(path)


def run(capsys, argv):
    code = main(argv)
    return code, capsys.readouterr().out


def test_analyze_figure_one(tmp_path, capsys):
    code, out = run(capsys, ["analyze", write(tmp_path, [figure_one()])])
    assert code == 0
    rec = json.loads(out)["results"][0]
    assert [r["count"] for r in rec["twist_regions"]] == [4, 1, 3]
    assert rec["prime"]["value"] and rec["twist_reduced"]["value"]


def test_analyze_keeps_going_after_bad_line(tmp_path, capsys):
    path = write(tmp_path, [figure_one()], extra="X(1,2,3)\n" + f"{two_bridge(6, 6).to_pd()}\n")
    code, out = run(capsys, ["analyze", path])
    assert code == 2
    results = json.loads(out)["results"]
    assert [r["line"] for r in results] == [1, 2, 3]
    assert "not 4-valent" in results[1]["error"]
    assert "twist_regions" in results[2]


def test_batch_order_and_jobs(tmp_path, capsys):
    ds = [pretzel(6, 6, 6 + i) for i in range(6)]
    path = write(tmp_path, ds)
    _, serial = run(capsys, ["analyze", path])
    _, parallel = run(capsys, ["analyze", "--jobs", "2", path])
    assert serial == parallel
    assert [r["label"] for r in json.loads(serial)["results"]] == [d.label for d in ds]


def test_certify_hyp_link(tmp_path, capsys):
    code, out = run(capsys, ["certify", "--theorem", "hyp-link", write(tmp_path, [two_bridge(6, 7)])])
    assert code == 0
    cert = json.loads(out)["results"][0]["certificates"][0]
    assert cert["verdict"] == "CERTIFIED"


def test_certify_genus_field(tmp_path, capsys):
    _, out = run(capsys, ["certify", "--theorem", "genus-bound", write(tmp_path, [pretzel(7, 7, 7, 6)])])
    cert = json.loads(out)["results"][0]["certificates"][0]
    assert cert["genus_lower_bound"] == 2


def test_certify_main_three_regions(tmp_path, capsys):
    code, out = run(capsys, ["certify", "--theorem", "main", write(tmp_path, [pretzel(7, 7, 7)])])
    assert code == 1
    cert = json.loads(out)["results"][0]["certificates"][0]
    assert cert["verdict"] == "INCONCLUSIVE"
    assert any("Wu" in n for n in cert["notes"])


def test_certify_fill(tmp_path, capsys):
    path = write(tmp_path, [pretzel(*(7,) * 8)])
    code, out = run(capsys, ["certify", "--theorem", "partial-surg-application", "--fill", "0", path])
    assert code == 0
    assert json.loads(out)["results"][0]["certificates"][0]["verdict"] == "CERTIFIED"


def test_unknown_theorem_and_bad_fill(tmp_path, capsys):
    path = write(tmp_path, [two_bridge(6, 6)])
    with pytest.raises(SystemExit) as exc:
        main(["certify", "--theorem", "nope", path])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["certify", "--fill", "a,b", path])
    assert exc.value.code == 2
    capsys.readouterr()


def test_missing_file(tmp_path, capsys):
    code, out = run(capsys, ["analyze", str(tmp_path / "missing.pd")])
    assert code == 2
    assert "cannot read" in json.loads(out)["results"][0]["error"]


def test_json_list_input(tmp_path, capsys):
    path = tmp_path / "in.json"
    path.write_text(json.dumps([figure_one().to_json(), {"crossings": []}]))
    code, out = run(capsys, ["analyze", str(path)])
    results = json.loads(out)["results"]
    assert code == 2 and "error" in results[1]


def test_text_format(tmp_path, capsys):
    code, out = run(capsys, ["certify", "--format", "text", write(tmp_path, [pretzel(7, 7, 7, 6)])])
    assert code == 0
    assert "main-knot-cor: CERTIFIED" in out
    assert "sqrt(37)" in out


def test_cusps_writes_svg(tmp_path, capsys):
    out_dir = tmp_path / "svg"
    code, out = run(capsys, ["cusps", "--out", str(out_dir), write(tmp_path, [two_bridge(6, 7)])])
    assert code == 0
    files = sorted(p.name for p in out_dir.iterdir())
    assert len(files) == 3
    for p in out_dir.iterdir():
        ElementTree.fromstring(p.read_text())


def test_cusps_single_region(tmp_path, capsys):
    code, out = run(capsys, ["cusps", write(tmp_path, [table_diagram("3_1")])])
    assert code == 2
    assert "closed 2-braid" in json.loads(out)["results"][0]["error"]


def test_oracle(tmp_path, capsys):
    code, out = run(capsys, ["oracle", "--format", "text", write(tmp_path, [two_bridge(6, 6)])])
    assert code == 0
    assert "pos-area P1: pass (416 curves" in out
    assert "faulty-gluing-rejected: pass" in out


def test_oracle_limit_flags_partial(tmp_path, capsys):
    code, out = run(capsys, ["oracle", "--limit", "3", write(tmp_path, [two_bridge(6, 6)])])
    assert code == 1
    rec = json.loads(out)["results"][0]
    pos = [c for c in rec["checks"] if c["check"].startswith("pos-area")]
    assert pos and not any(c["detail"]["complete"] for c in pos)
    assert any("length limit" in p for p in rec["partial"])


def test_oracle_large_diagram_skips_predicate_oracles(tmp_path, capsys):
    code, out = run(capsys, ["oracle", write(tmp_path, [pretzel(7, 7, 7, 6)])])
    rec = json.loads(out)["results"][0]
    assert code == 1
    assert "crossings" in rec["partial"][0]
    assert all(c["pass"] for c in rec["checks"])


def test_module_entry_point(tmp_path):
    path = write(tmp_path, [two_bridge(6, 6)])
    proc = subprocess.run([sys.executable, "-m", "linkcert", "analyze", path],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["command"] == "analyze"


def test_log_env(tmp_path):
    path = write(tmp_path, [], extra="X(1,2,3)\n")
    env = {"LINKCERT_LOG": "ERROR", "PATH": ""}
    proc = subprocess.run([sys.executable, "-m", "linkcert", "analyze", path],
                          capture_output=True, text=True, check=False, env=env)
    assert proc.returncode == 2 and proc.stderr == ""


def test_svg_contents():
    cusps = cusp_tori(decompose(augment(two_bridge(6, 7))))
    strand = next(c for c in cusps if c.kind == "knot-strand")
    svg = cusp_svg(strand, "strand")
    root = ElementTree.fromstring(svg)
    assert root.tag.endswith("svg")
    assert "k unknown" in svg
    assert svg.count("<rect") == 9 * strand.num_tiles
    twisted = next(c for c in cusps if c.half_twist)
    assert "half twist" in cusp_svg(twisted)
    assert cusp_svg(twisted) == cusp_svg(twisted)
