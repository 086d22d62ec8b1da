import json
import shutil

from click.testing import CliRunner

from regbounds.cli import cli
from regbounds.suite import load_corpus, run_suite


def test_bundled_corpus_passes():
    report = run_suite()
    assert report.passed and report.exit_status == 0
    names = [c.name for c in report.checks]
    assert len(names) == len(set(names))
    for needle in ("volume_mc[N=5]", "j_identity[N=8]", "q_s235:regulator", "ext_synthetic_rank3:costa_friedman",
                   "skew3:minima_product", "schinzel_eq:schinzel"):
        assert needle in names


def test_deterministic_output():
    runner = CliRunner()
    a = runner.invoke(cli, ["suite", "--seed", "3"]).output
    b = runner.invoke(cli, ["suite", "--seed", "3"]).output
    assert a == b and a.endswith("failed=0\n")


def test_perturbed_golden_value_fails(corpus, tmp_path):
    dest = tmp_path / "corpus"
    shutil.copytree(corpus, dest)
    manifest = json.loads((dest / "manifest.json").read_text())
    for e in manifest["entries"]:
        if e["path"] == "q_s235.json":
            e["expected"]["regulator"]["value"] = "1.2255869870869936204"
    (dest / "manifest.json").write_text(json.dumps(manifest))
    result = CliRunner().invoke(cli, ["suite", str(dest)])
    assert result.exit_code == 1
    failed = [l for l in result.output.splitlines() if l.endswith("FAIL")]
    assert len(failed) == 1 and failed[0].startswith("CHECK q_s235:regulator ")


def test_empty_corpus_warns(tmp_path):
    result = CliRunner().invoke(cli, ["suite", str(tmp_path)])
    assert result.exit_code == 0
    assert result.output.splitlines()[0].startswith("WARN")
    assert "SUMMARY checks=0 failed=0" in result.output


def test_broken_entry_becomes_fail_line(corpus, tmp_path):
    dest = tmp_path / "corpus"
    dest.mkdir()
    shutil.copy(corpus / "q_s2.json", dest)
    (dest / "broken.json").write_text('{"degree": 1}')
    entries, _ = load_corpus(dest)
    assert [e.kind for e in entries] == ["field", "field"]
    report = run_suite(dest)
    assert report.exit_status == 1
    failing = [c for c in report.checks if not c.passed]
    assert len(failing) == 1 and failing[0].name == "broken:parse"
    assert any(c.name.startswith("q_s2") and c.passed for c in report.checks)


def test_missing_corpus_is_input_error(tmp_path):
    result = CliRunner().invoke(cli, ["suite", str(tmp_path / "absent")])
    assert result.exit_code == 2
