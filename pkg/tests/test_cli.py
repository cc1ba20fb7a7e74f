import io
import json
import sys

import pytest

import ocexec
from ocexec.cli import main


@pytest.fixture
def fig2_path(tmp_path):
    path = tmp_path / "fig2.json"
    path.write_bytes(ocexec.fixture_bytes())
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_stats(capsys, fig2_path):
    code, out, _ = run(capsys, "stats", fig2_path, "--quiet")
    assert code == 0
    d = json.loads(out)
    assert (d["events"], d["types"], d["objects"]) == (12, 2, 6)
    comp = d["strategies"]["components"]
    assert comp["executions"] == 2
    assert comp["events_per_exec"] == {"max": 6, "min": 6, "avg": 6.0}
    assert comp["objects_per_exec"]["avg"] == 3.0
    assert comp["variants"] == 2


def test_stats_leading(capsys, fig2_path):
    code, out, _ = run(capsys, "stats", fig2_path, "--strategy", "leading", "--leading-type", "Type2")
    assert code == 0
    s = json.loads(out)["strategies"]["leading:Type2"]
    assert s["executions"] == 4 and s["objects_per_exec"] == {"max": 2, "min": 2, "avg": 2.0}


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "stats", str(tmp_path / "nope.json"))
    assert code == 2
    assert json.loads(err)["error"] == "input_error"


def test_malformed(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, _, err = run(capsys, "extract", str(bad))
    assert code == 2 and json.loads(err)["error"] == "malformed_json"


def test_unknown_ref_error_json(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"ocel:events": {"eX": {"ocel:activity": "a", "ocel:timestamp": "2020-01-01T00:00:00Z",
                                                      "ocel:omap": ["ghost"]}}, "ocel:objects": {}}))
    code, _, err = run(capsys, "extract", str(bad))
    assert code == 2
    assert json.loads(err) == {"error": "unknown_object_ref", "message": json.loads(err)["message"],
                               "event": "eX", "object": "ghost"}


def test_extract_components(capsys, fig2_path):
    code, out, _ = run(capsys, "extract", fig2_path)
    records = json.loads(out)
    assert code == 0 and len(records) == 2
    assert records[1]["events"] == ["e10", "e11", "e12", "e7", "e8", "e9"]


def test_extract_leading(capsys, fig2_path):
    code, out, _ = run(capsys, "extract", fig2_path, "--strategy", "leading", "--leading-type", "Type2")
    records = json.loads(out)
    assert code == 0 and len(records) == 4
    assert [r["lead_object"] for r in records] == ["m1", "m2", "m3", "m4"]


@pytest.mark.parametrize("argv", [
    ["extract", "--strategy", "leading"],
    ["extract", "--strategy", "leading", "--leading-type", "Nope"],
    ["variants", "--mode", "fuzzy"],
    ["variants", "--wl-iterations", "0"],
    ["variants", "--attribute", "nope"],
    ["render", "--cell-width", "0"],
])
def test_config_errors(capsys, fig2_path, argv):
    code, _, err = run(capsys, argv[0], fig2_path, *argv[1:])
    assert code == 3
    assert "error" in json.loads(err.strip().splitlines()[-1])


def test_variants(capsys, fig2_path, tmp_path):
    out_file = tmp_path / "v.json"
    code, _, _ = run(capsys, "variants", fig2_path, "--out", str(out_file))
    d = json.loads(out_file.read_text())
    assert code == 0 and len(d["classes"]) == 2
    assert [c["frequency"] for c in d["classes"]] == [{"num": 1, "den": 2}] * 2


def test_variants_duplicates(capsys, tmp_path):
    events, objects = {}, {}
    for k in range(4):
        objects[f"x{k}"] = {"ocel:type": "T"}
        for j, act in enumerate("ab"):
            events[f"e{k}{j}"] = {"ocel:activity": act, "ocel:timestamp": f"2020-01-0{k + 1}T00:00:0{j}Z",
                                  "ocel:omap": [f"x{k}"]}
    path = tmp_path / "dup.json"
    path.write_text(json.dumps({"ocel:events": events, "ocel:objects": objects}))
    code, out, _ = run(capsys, "variants", str(path))
    d = json.loads(out)
    assert len(d["classes"]) == 1 and d["classes"][0]["frequency"] == {"num": 1, "den": 1}


def test_stdin(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.TextIOWrapper(io.BytesIO(ocexec.fixture_bytes())))
    code, out, _ = run(capsys, "extract", "-")
    assert code == 0 and len(json.loads(out)) == 2


def test_deterministic_and_threads(capsys, fig2_path):
    outs = [run(capsys, "variants", fig2_path, "--threads", t)[1] for t in ("1", "1", "4")]
    assert outs[0] == outs[1] == outs[2]


def test_render_rank(capsys, fig2_path, tmp_path):
    code, _, _ = run(capsys, "render", fig2_path, "--rank", "1", "--out", str(tmp_path / "svg"), "--quiet")
    files = list((tmp_path / "svg").iterdir())
    assert code == 0 and len(files) == 1
    assert files[0].name.startswith("variant-1-") and files[0].suffix == ".svg"
    assert files[0].read_bytes().startswith(b"<?xml")


def test_render_rank_too_large(capsys, fig2_path, tmp_path):
    code, _, _ = run(capsys, "render", fig2_path, "--rank", "3", "--out", str(tmp_path))
    assert code == 3


def test_render_top_clamped(capsys, fig2_path, tmp_path):
    code, _, err = run(capsys, "render", fig2_path, "--top", "3", "--out", str(tmp_path / "svg"))
    assert code == 0
    assert len(list((tmp_path / "svg").iterdir())) == 2
    assert "only 2 variants" in err


def test_render_geometry(capsys, fig2_path, tmp_path):
    run(capsys, "render", fig2_path, "--out", str(tmp_path), "--cell-width", "50", "--quiet")
    svg = next(tmp_path.glob("variant-1-*.svg")).read_text()
    assert 'width="216"' in svg


def test_render_shade_cap_warning(capsys, tmp_path):
    objects = {f"x{i:02d}": {"ocel:type": "T"} for i in range(14)}
    doc = {"ocel:events": {"e": {"ocel:activity": "a", "ocel:timestamp": "2020-01-01T00:00:00Z",
                                 "ocel:omap": sorted(objects)}}, "ocel:objects": objects}
    path = tmp_path / "wide.json"
    path.write_text(json.dumps(doc))
    code, _, err = run(capsys, "render", str(path), "--out", str(tmp_path / "svg"))
    assert code == 0 and "warning:" in err and "shade" in err
