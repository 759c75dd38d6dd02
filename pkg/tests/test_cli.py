"""Tests for the command-line front end."""

import json
from pathlib import Path

import pytest

from flagforge.cli import main
from flagforge.graphs import SmallGraph
from flagforge.models import PatternGraph
from flagforge.verification import parse_certificate, verify

FIXTURE = Path(__file__).parent / "fixtures" / "goodman33.json"
C5 = PatternGraph.uniform(SmallGraph.cycle(5)).to_spec()
TWO_CLIQUES = "expansion:2::uniform"
GOODMAN_SOLUTION = """\
0 0 0.25
2 1 1 1 0.25
2 2 1 1 0.125
2 2 1 2 -0.125
2 2 2 2 0.125
"""
ENUMERATE = ("enumerate", "--alpha-lt", "3", "--order")


def _run(capsys: pytest.CaptureFixture[str], *argv: str) -> tuple[int, str]:
    code = main(list(argv))
    return code, capsys.readouterr().out


def _corrupted(tmp_path: Path, **changes: object) -> str:
    data = json.loads(FIXTURE.read_text())
    data.update(changes)
    path = tmp_path / "corrupted.json"
    path.write_text(json.dumps(data))
    return str(path)


class TestEnumerate:
    def test_thirty_eight_graphs(self, capsys: pytest.CaptureFixture[str]) -> None:
        code, out = _run(capsys, "enumerate", "--order", "6", "--alpha-lt", "3")
        lines = out.splitlines()
        assert code == 0
        assert len(lines) == 39
        assert lines[-1] == "38 graphs"

    def test_json(self, capsys: pytest.CaptureFixture[str]) -> None:
        code, out = _run(capsys, "--json", *ENUMERATE, "5")
        data = json.loads(out)
        assert code == 0
        assert data["count"] == 14
        assert len(data["graphs"]) == 14

    def test_global_flags_after_command(
        self, capsys: pytest.CaptureFixture[str]
    ) -> None:
        _, before = _run(capsys, "--json", *ENUMERATE, "4")
        _, after = _run(capsys, *ENUMERATE, "4", "--json")
        assert before == after

    def test_threads_do_not_change_output(
        self, capsys: pytest.CaptureFixture[str]
    ) -> None:
        _, serial = _run(capsys, "enumerate", "--order", "6", "--alpha-lt", "3")
        _, parallel = _run(
            capsys, "--threads", "2", "enumerate", "--order", "6", "--alpha-lt", "3"
        )
        assert serial == parallel

    def test_complement(self, capsys: pytest.CaptureFixture[str]) -> None:
        code, out = _run(
            capsys, "enumerate", "--order", "3", "--alpha-lt", "3", "--complement"
        )
        assert code == 0
        assert out.splitlines()[-1] == "3 graphs"


class TestVerify:
    def test_fixture_passes(self, capsys: pytest.CaptureFixture[str]) -> None:
        code, out = _run(capsys, "--json", "verify", "--cert", str(FIXTURE))
        report = json.loads(out)
        assert code == 0
        assert report["verdict"] is True
        assert report["derived_bound"] == "1/4"
        assert len(report["sharp"]) == 3

    def test_text_report(self, capsys: pytest.CaptureFixture[str]) -> None:
        code, out = _run(capsys, "verify", "--cert", str(FIXTURE))
        assert code == 0
        assert "verdict: PASS" in out

    def test_overclaimed_bound(
        self, capsys: pytest.CaptureFixture[str], tmp_path: Path
    ) -> None:
        path = _corrupted(tmp_path, claimed_bound="1/3")
        code, out = _run(capsys, "--json", "verify", "--cert", path)
        report = json.loads(out)
        assert code == 1
        assert report["stages"][-1]["name"] == "bound"
        assert report["stages"][-1]["offending"] == ["3:12"]

    def test_incomplete_listing_is_a_stage_failure(
        self, capsys: pytest.CaptureFixture[str], tmp_path: Path
    ) -> None:
        path = _corrupted(tmp_path, admissible_graphs=["3:12", "3:121323"])
        code, out = _run(capsys, "verify", "--cert", path)
        assert code == 1
        assert "admissible  FAIL" in out

    def test_malformed_file(
        self, capsys: pytest.CaptureFixture[str], tmp_path: Path
    ) -> None:
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        assert main(["verify", "--cert", str(path)]) == 2

    def test_missing_file(self, tmp_path: Path) -> None:
        assert main(["verify", "--cert", str(tmp_path / "absent.json")]) == 2

    def test_report_round_trips(self, capsys: pytest.CaptureFixture[str]) -> None:
        _, out = _run(capsys, "--json", "verify", "--cert", str(FIXTURE))
        cert = parse_certificate(FIXTURE.read_bytes())
        assert json.loads(out) == json.loads(verify(cert).model_dump_json())


class TestBound:
    def test_fixture(self, capsys: pytest.CaptureFixture[str]) -> None:
        code, out = _run(capsys, "bound", "--cert", str(FIXTURE))
        assert code == 0
        assert "derived bound 1/4" in out

    def test_overclaimed(
        self, capsys: pytest.CaptureFixture[str], tmp_path: Path
    ) -> None:
        path = _corrupted(tmp_path, claimed_bound="1/3")
        code, out = _run(capsys, "--json", "bound", "--cert", path)
        assert code == 1
        assert json.loads(out)["violating_graph"] == "3:12"

    def test_forced_kernel(self, capsys: pytest.CaptureFixture[str]) -> None:
        code, out = _run(
            capsys, "--json", "bound", "--cert", str(FIXTURE),
            "--pattern", TWO_CLIQUES,
        )
        data = json.loads(out)
        assert code == 0
        assert data["derived_bound"] == "1/4"
        assert data["forced_kernel"]["passed"] is True

    def test_forced_kernel_failure(
        self, capsys: pytest.CaptureFixture[str]
    ) -> None:
        single_clique = "expansion:1::uniform"
        code, out = _run(
            capsys, "bound", "--cert", str(FIXTURE), "--pattern", single_clique
        )
        assert code == 1
        assert "forced kernel: FAIL" in out


class TestConstructions:
    def test_construct_limit(self, capsys: pytest.CaptureFixture[str]) -> None:
        code, out = _run(capsys, "--json", "construct", "--pattern", C5, "--k", "4")
        assert code == 0
        assert json.loads(out)["density_limit"] == "3/25"

    def test_construct_sizes(self, capsys: pytest.CaptureFixture[str]) -> None:
        code, out = _run(
            capsys, "--json", "construct", "--pattern", C5, "--k", "2",
            "--sizes", "1,1,1,1,1",
        )
        data = json.loads(out)
        assert code == 0
        assert data["clique_count"] == data["direct_count"] == 5

    def test_strict(self, capsys: pytest.CaptureFixture[str]) -> None:
        args = ["strict", "--pattern", C5, "--l", "3", "--k", "4"]
        code, _ = _run(capsys, *args, "--bound", "3/25")
        assert code == 0
        code, out = _run(capsys, *args, "--bound", "1/5")
        assert code == 1
        assert "strict: FAIL" in out

    def test_bad_bound(self) -> None:
        args = ["strict", "--pattern", C5, "--l", "3", "--k", "4", "--bound", "0.12"]
        assert main(args) == 2

    def test_clebsch_audit(self, capsys: pytest.CaptureFixture[str]) -> None:
        code, out = _run(capsys, "--json", "clebsch-audit")
        data = json.loads(out)
        assert code == 0
        assert len(data["rows"]) == 12
        assert data["census"] == {"4": 10, "5": 5}

    def test_optimize(self, capsys: pytest.CaptureFixture[str]) -> None:
        code, out = _run(
            capsys, "--json", "optimize", "--pattern", TWO_CLIQUES, "--k", "2"
        )
        data = json.loads(out)
        assert code == 0
        assert data["exact"] is False
        assert data["density"] == pytest.approx(0.5)


class TestSharp:
    def test_pattern(self, capsys: pytest.CaptureFixture[str]) -> None:
        code, out = _run(
            capsys, "sharp", "--pattern", C5, "--order", "6", "--l", "3"
        )
        assert code == 0
        assert out.splitlines()[-1] == "17 sharp graphs"

    def test_phantom(self, capsys: pytest.CaptureFixture[str]) -> None:
        code, out = _run(
            capsys, "--json", "sharp", "--phantom", "--order", "5", "--l", "4"
        )
        assert code == 0
        assert json.loads(out)["count"] == 10

    def test_against_certificate(self, capsys: pytest.CaptureFixture[str]) -> None:
        code, out = _run(
            capsys, "--json", "sharp", "--cert", str(FIXTURE),
            "--pattern", TWO_CLIQUES, "--order", "3", "--l", "3",
        )
        data = json.loads(out)
        assert code == 0
        assert data["contained"] is True
        assert data["forced_kernel"]["passed"] is True

    def test_needs_a_pattern(self) -> None:
        assert main(["sharp", "--order", "5", "--l", "3"]) == 2


class TestAudits:
    def test_identity_audit(self, capsys: pytest.CaptureFixture[str]) -> None:
        code, out = _run(
            capsys, "--json", "identity-audit", "--order", "3", "--l", "3",
            "--trials", "50",
        )
        data = json.loads(out)
        assert code == 0
        assert data["max_discrepancy"] == 0

    def test_identity_audit_is_seeded(self, capsys: pytest.CaptureFixture[str]) -> None:
        args = ["identity-audit", "--order", "5", "--l", "3", "--trials", "20"]
        _, first = _run(capsys, "--seed", "4", *args)
        _, second = _run(capsys, "--seed", "4", *args)
        assert first == second


class TestOracle:
    def test_f(self, capsys: pytest.CaptureFixture[str]) -> None:
        code, out = _run(
            capsys, "--json", "oracle", "f", "--n", "6", "--k", "3", "--l", "3"
        )
        assert code == 0
        assert json.loads(out)["value"] == 2

    def test_budget_exhausted(self, capsys: pytest.CaptureFixture[str]) -> None:
        code, out = _run(
            capsys, "oracle", "f", "--n", "7", "--k", "3", "--l", "3",
            "--max-nodes", "2",
        )
        assert code == 1
        assert "[incomplete]" in out

    def test_ramsey(self, capsys: pytest.CaptureFixture[str]) -> None:
        code, out = _run(
            capsys, "oracle", "ramsey", "--s", "3", "--t", "3", "--n", "6"
        )
        assert code == 0
        assert ": no [complete]" in out


class TestSdp:
    def test_gen(self, capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
        out_path = tmp_path / "goodman.dat-s"
        code, out = _run(
            capsys, "--json", "sdp", "gen", "--k", "3", "--l", "3", "--order", "3",
            "--out", str(out_path),
        )
        data = json.loads(out)
        assert code == 0
        assert data["block_sizes"] == [1, 2, -3]
        assert out_path.read_text().splitlines()[1] == "3"

    def test_round(self, capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
        solution = tmp_path / "goodman.sol"
        solution.write_text(GOODMAN_SOLUTION)
        cert_path = tmp_path / "cert.json"
        code, out = _run(
            capsys, "sdp", "round", "--k", "3", "--l", "3", "--order", "3",
            "--solution", str(solution), "--pattern", TWO_CLIQUES,
            "--out", str(cert_path),
        )
        assert code == 0
        assert "verdict: PASS" in out
        cert = parse_certificate(cert_path.read_text())
        assert str(cert.claimed_bound) == "1/4"


class TestUsage:
    def test_version(self, capsys: pytest.CaptureFixture[str]) -> None:
        with pytest.raises(SystemExit) as info:
            main(["--version"])
        assert info.value.code == 0
        assert "count-v1" in capsys.readouterr().out

    def test_no_command(self) -> None:
        with pytest.raises(SystemExit) as info:
            main([])
        assert info.value.code == 2

    def test_zero_threads(self) -> None:
        assert main(["--threads", "0", *ENUMERATE, "3"]) == 2
