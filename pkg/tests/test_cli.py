from __future__ import annotations

import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from suztool.cli import main
from suztool.errors import ParameterError, SpecParseError, UsageError
from suztool.specs import parse_group
from suztool.suites import COR42_LISTS, SUITES, VerificationReport, emit_catalog, run_suite

SCHEMA = json.loads(resources.files("suztool").joinpath("report.schema.json").read_text())


def _run(tmp_path, *argv, name="r.json"):
    path = tmp_path / name
    code = main([*argv, "--json", str(path)])
    return code, (json.loads(path.read_text()) if path.exists() else None), path


# -- report object ------------------------------------------------------------------

def test_report_verdict_and_exit_codes():
    rep = VerificationReport("x", "g", "gf(m=3,poly=0xb)")
    rep.add("a", "claim a", True)
    assert rep.verdict == "pass" and rep.exit_code() == 0
    rep.add("b", "claim b", None)
    assert rep.verdict == "inconclusive" and rep.exit_code() == 0 and rep.exit_code(strict=True) == 1
    rep.add("c", "claim c", False)
    assert rep.verdict == "fail" and rep.exit_code() == 1
    with pytest.raises(AssertionError):
        rep.add("a", "again", True)
    d = rep.to_dict()
    assert "duration_s" not in d
    jsonschema.validate(d, SCHEMA)


def test_every_claim_has_one_anchor(a31):
    rep = run_suite("higman", "A(m=3,l=1)")
    ids = [c.id for c in rep.claims]
    assert len(ids) == len(set(ids))
    assert all(c.anchor for c in rep.claims)
    assert {c.verdict for c in rep.claims} <= {"pass", "fail", "inconclusive"}


# -- spec parsing -------------------------------------------------------------------

def test_parse_group_kinds():
    assert parse_group("A(m=3,l=1)").kind == "suzuki"
    h = parse_group("sdp(A(m=3,l=1); singer(xi=0x2), frob(j=1))")
    assert h.kind == "sdp" and h.group.order == 64 * 21 and h.sylow.order == 64
    assert parse_group("syl(sz(8))").group.order == 64
    assert parse_group("A(m=3,l=1)", poly=0xd).field_spec == "gf(m=3,poly=0xd)"


@pytest.mark.parametrize("bad,err", [
    ("gf(m=3,poly=0x9)", ParameterError),
    ("gf(m=3,poly=0xb)", UsageError),
    ("A(m=3", SpecParseError),
    ("sdp(A(m=3,l=1))", SpecParseError),
    ("sdp(A(m=3,l=1); spin(k=1))", SpecParseError),
    ("sdp(A(m=3,l=1); torus(lambda=0x2))", UsageError),
    ("psl(2,8)", SpecParseError),
])
def test_parse_group_errors(bad, err):
    with pytest.raises(err):
        parse_group(bad)


# -- exit codes ---------------------------------------------------------------------

def test_higman_passes(tmp_path, capsys):
    code, rep, _ = _run(tmp_path, "verify", "higman", "--group", "A(m=3,l=1)")
    assert code == 0 and rep["verdict"] == "pass"
    assert "higman A(m=3,l=1): pass" in capsys.readouterr().out
    jsonschema.validate(rep, SCHEMA)


def test_reducible_poly_is_a_usage_error(capsys):
    assert main(["verify", "higman", "--group", "gf(m=3,poly=0x9)"]) == 2
    assert "ParameterError" in capsys.readouterr().err
    assert main(["verify", "higman", "--group", "A(m=3,l=1)", "--poly", "0x9"]) == 2


def test_resource_guard_exit_code(capsys):
    assert main(["verify", "ti", "--group", "sz(32)"]) == 2
    assert "ResourceError" in capsys.readouterr().err


def test_argument_errors():
    assert main([]) == 2
    assert main(["verify", "nonsense", "--group", "A(m=3,l=1)"]) == 2
    assert main(["verify", "higman"]) == 2
    assert main(["verify", "higman", "--group", "A(m=3,l=1)", "--threads", "0"]) == 2
    assert main(["verify", "higman", "--group", "A(m=3,l=1)", "--poly", "zz"]) == 2


def test_suite_not_applicable_is_usage_error():
    assert main(["verify", "ti", "--group", "A(m=3,l=1)"]) == 2


def test_failing_claim_exits_one(tmp_path):
    code, rep, _ = _run(tmp_path, "verify", "lemma22", "--group", "B(m=2,l=0,eps=auto)")
    assert code == 1 and rep["verdict"] == "fail"
    failed = {c["id"] for c in rep["claims"] if c["verdict"] == "fail"}
    assert failed == {"clause-b"}


def test_inconclusive_fails_only_under_strict(tmp_path):
    with pytest.warns(Warning):
        code, rep, _ = _run(tmp_path, "verify", "suzuki-property", "--group", "A(m=4,l=1)")
    assert code == 0 and rep["verdict"] == "inconclusive"
    with pytest.warns(Warning):
        assert main(["verify", "suzuki-property", "--group", "A(m=4,l=1)", "--strict"]) == 1


def test_suzuki_property_fails_for_b21():
    assert main(["verify", "suzuki-property", "--group", "B(m=2,l=1,eps=auto)"]) == 1


# -- commands -----------------------------------------------------------------------

@pytest.mark.parametrize("cmd,spec", [
    ("construct", "A(m=3,l=1)"),
    ("construct", "syl(su3(4))"),
    ("chartable", "B(m=2,l=0,eps=auto)"),
    ("heights", "A(m=3,l=1)"),
    ("normal-subgroups", "A(m=3,l=1)"),
    ("ti", "sz(8)"),
    ("identify", "su3(4)"),
])
def test_commands_pass_and_validate(tmp_path, cmd, spec):
    code, rep, _ = _run(tmp_path, cmd, "--group", spec)
    assert code == 0, rep
    jsonschema.validate(rep, SCHEMA)


def test_command_data(tmp_path):
    _, rep, _ = _run(tmp_path, "chartable", "--group", "A(m=3,l=1)", name="c.json")
    assert rep["data"]["degrees"] == [[1, 8], [2, 14]] and rep["data"]["classes"] == 22
    _, rep, _ = _run(tmp_path, "normal-subgroups", "--group", "A(m=3,l=1)", name="n.json")
    assert rep["data"]["count"] == 31
    _, rep, _ = _run(tmp_path, "ti", "--group", "sz(8)", name="t.json")
    assert rep["verdict"] == "pass" and "65" in json.dumps(rep["claims"])


def test_timing_flag_adds_duration(tmp_path):
    code, rep, _ = _run(tmp_path, "verify", "higman", "--group", "A(m=3,l=1)", "--timing")
    assert code == 0 and rep["duration_s"] >= 0
    jsonschema.validate(rep, SCHEMA)


# -- determinism --------------------------------------------------------------------

@pytest.mark.parametrize("argv", [
    ["verify", "heights", "--group", "C(m=3,eps=auto)"],
    ["verify", "lemma22", "--group", "A(m=3,l=1)"],
    ["construct", "--group", "B(m=3,l=1,eps=auto)"],
])
def test_reports_byte_identical_across_runs_and_threads(tmp_path, argv):
    outs = []
    for i, threads in enumerate(["1", "1", "2"]):
        _, _, path = _run(tmp_path, *argv, "--threads", threads, name=f"{i}.json")
        outs.append(path.read_bytes())
    assert outs[0] == outs[1] == outs[2]


# -- catalog ------------------------------------------------------------------------

def test_catalog(tmp_path, capsys):
    cat = emit_catalog()
    specs = [g["spec"] for g in cat["groups"]]
    assert "A(m=3,l=1)" in specs and "sz(8)" in specs
    assert specs == sorted(specs)
    assert emit_catalog() == cat
    helps = {g["spec"]: g["help"] for g in cat["groups"]}
    assert "m >= 3 odd" in helps["C(m=3,eps=auto)"] and "5 | m" in helps["D(m=5,l=2,eps=0x6)"]
    assert {s["name"] for s in cat["suites"]} == set(SUITES)
    assert all(s["budget"] for s in cat["suites"])
    path = tmp_path / "cat.json"
    assert main(["catalog", "--json", str(path)]) == 0
    first = path.read_bytes()
    main(["catalog", "--json", str(path)])
    assert path.read_bytes() == first
    assert "sz(8)" in capsys.readouterr().out


def test_catalog_groups_parse():
    for g in emit_catalog()["groups"]:
        if g["spec"] not in ("sz(8)", "su3(4)", "C(m=5,eps=auto)", "D(m=5,l=2,eps=0x6)"):
            assert parse_group(g["spec"]).group.order > 1


def test_order_64_group_lists():
    assert len(COR42_LISTS["A"]) == 6 and len(COR42_LISTS["B"]) == 3
    with pytest.raises(UsageError):
        run_suite("cor42", "C")


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "suztool.cli", "verify", "higman", "--group", "A(m=3,l=2)"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and ": pass" in out.stdout
