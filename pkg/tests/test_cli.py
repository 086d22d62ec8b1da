import re

import pytest
from click.testing import CliRunner

from regbounds.cli import cli


@pytest.fixture
def run():
    runner = CliRunner()

    def _run(*args):
        return runner.invoke(cli, [str(a) for a in args], catch_exceptions=False)
    return _run


def test_delta_commands(run):
    r = run("delta", "vol", 3)
    assert r.exit_code == 0 and r.output.strip() == "VOL N=3 exact=10/3"
    r = run("delta", "vol", 2, "--mc", 20000, "--seed", 4)
    assert r.exit_code == 0 and "mc=" in r.output and "stderr=" in r.output and r.output.rstrip().endswith("PASS")
    r = run("delta", "norm", 1, -2, "0.5")
    assert r.output.strip() == "DELTA 2.0"
    r = run("delta", "jcheck", 5)
    assert r.exit_code == 0 and "lhs=3/512 rhs=3/512" in r.output


def test_schinzel_and_minima(run, corpus):
    r = run("schinzel", "check", corpus / "schinzel_eq.mat")
    assert r.exit_code == 0 and r.output.strip() == "SCHINZEL det=2 bound=2 PASS"
    r = run("minima", corpus / "diag23.lat")
    assert r.exit_code == 0
    lines = r.output.splitlines()
    assert lines[0].startswith("LAMBDA j=1 delta=2.0") and lines[-1] == "PASS"
    assert any(l.startswith("BOUND 8.0 const=4/3") for l in lines)


def test_field_commands(run, corpus):
    r = run("regulator", corpus / "q_sqrt2.json")
    assert r.exit_code == 0 and r.output.startswith("REGULATOR 0.881373587019543025232609324979")
    r = run("height", corpus / "q_s23.json", "2/3")
    assert r.output.startswith("HEIGHT 1.0986122886681096913952452369")
    r = run("height", corpus / "q_s23.json", "1,-1")
    assert r.output.startswith("HEIGHT 1.0986122886681096913952452369")
    r = run("verify", "reduce", corpus / "q_s23.json", "--generators", "6,2/3")
    assert r.exit_code == 0 and "const=4/3" in r.output
    r = run("verify", "basis", corpus / "q_s23.json", "--subgroup", corpus / "subgroups" / "s23_6_23.mat")
    assert r.exit_code == 0 and "UNIMODULAR" in r.output and "basis_unimodular" in r.output
    r = run("verify", "upper", corpus / "q_sqrt5.json")
    assert r.exit_code == 0 and "const=0.2052" in r.output


def test_relative_command(run, corpus):
    r = run("relative", corpus / "ext_sqrt2_over_q.json")
    assert r.exit_code == 0 and "RELATIVE_REGULATOR 0.88137358701954302523" in r.output
    r = run("relative", corpus / "ext_synthetic_rank3.json", "--subgroup",
            corpus / "subgroups" / "rel_rank3_mixed.mat")
    assert r.exit_code == 0 and "IMAGE_INDEX 3" in r.output


def test_precision_options(run, corpus):
    low = run("--precision", 64, "regulator", corpus / "q_sqrt2.json").output.splitlines()[0]
    high = run("regulator", corpus / "q_sqrt2.json", "--precision", 256).output.splitlines()[0]
    assert len(high) > len(low)
    # leaf options override group options
    leaf = run("--precision", 64, "regulator", corpus / "q_sqrt2.json", "--precision", 256).output.splitlines()[0]
    assert leaf == high


def test_exit_codes(run, corpus, tmp_path):
    assert run("regulator", tmp_path / "nope.json").exit_code == 2
    assert run("regulator", corpus / "q_sqrt2.json", "--precision", 16).exit_code == 2
    assert run("regulator", corpus / "q_sqrt2.json", "--tolerance", "abc").exit_code == 2
    bad = tmp_path / "bad.mat"
    bad.write_text("2 2\n1 1\n1 1\n")
    assert run("verify", "upper", corpus / "q_s23.json", "--subgroup", bad).exit_code == 2
    assert run("verify", "upper", corpus / "q_s23.json", "--generators", "19").exit_code == 2
    assert run("verify", "upper", corpus / "q_s23.json", "--tolerance", "-1").exit_code == 2


def test_report_line_format(run, corpus):
    out = run("verify", "upper", corpus / "q_s23.json").output
    pattern = re.compile(r"^CHECK \S+ lhs=\S+ rhs=\S+ const=\S+ margin=\S+ (PASS|FAIL)$")
    checks = [l for l in out.splitlines() if l.startswith("CHECK")]
    assert checks and all(pattern.match(l) for l in checks)
    assert out.splitlines()[-1] == f"SUMMARY checks={len(checks)} failed=0"
