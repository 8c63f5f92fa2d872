import numpy as np
import pytest

from mscompile import FittingError, deserialize, serialize, Circuit
from mscompile.cli import main, parse_angle

PI = np.pi


class TestParseAngle:
    @pytest.mark.parametrize(
        "text,want",
        [
            ("0.3", 0.3),
            ("pi", PI),
            ("-pi", -PI),
            ("2pi", 2 * PI),
            ("pi/2", PI / 2),
            ("-3pi/4", -3 * PI / 4),
            ("2*pi/3", 2 * PI / 3),
        ],
    )
    def test_forms(self, text, want):
        assert parse_angle(text) == pytest.approx(want)

    def test_rejects_garbage(self):
        import argparse

        with pytest.raises(argparse.ArgumentTypeError):
            parse_angle("two pies")


class TestCrotAngles:
    def test_basic_output(self, capsys):
        assert main(["crot-angles", "--n", "7", "--alpha", "pi"]) == 0
        out = capsys.readouterr().out
        assert "L = 14" in out
        assert sum(1 for line in out.splitlines() if line.startswith("phi_")) == 15

    def test_merged_count(self, capsys):
        assert main(["crot-angles", "--n", "3", "--alpha", "-pi", "--merged"]) == 0
        out = capsys.readouterr().out
        merged = [line for line in out.splitlines() if line.startswith("merged_phi_")]
        assert len(merged) == 7

    def test_identity_alpha_gives_identity_plan(self, tmp_path, capsys):
        assert main(["crot-angles", "--n", "2", "--alpha", "0"]) == 0
        out = capsys.readouterr().out
        values = [float(line.split("=")[1]) for line in out.splitlines() if line.startswith("phi_")]
        # identity-equivalent plan: every step pair cancels on the target
        assert len(values) == 5
        path = tmp_path / "id.json"
        assert main(["compile", "--kind", "crot", "--n", "2", "--alpha", "0", "--out", str(path)]) == 0
        assert main(["verify", "--circuit", str(path), "--target", "crot", "--n", "2", "--alpha", "0"]) == 0


class TestCompileVerify:
    def test_crot_compile_and_verify(self, tmp_path, capsys):
        path = tmp_path / "c.json"
        assert main(["compile", "--kind", "crot", "--n", "4", "--alpha", "pi/2", "--out", str(path)]) == 0
        out = capsys.readouterr().out
        assert "8 MS gates" in out
        circ = deserialize(path.read_bytes())
        assert circ.ms_count() == 8
        assert main(["verify", "--circuit", str(path), "--target", "crot", "--n", "4", "--alpha", "pi/2"]) == 0
        assert "PASS" in capsys.readouterr().out

    def test_toffoli_compile(self, tmp_path, capsys):
        path = tmp_path / "t.json"
        assert main(["compile", "--kind", "toffoli", "--n", "3", "--out", str(path)]) == 0
        circ = deserialize(path.read_bytes())
        assert circ.ms_count() == 8 and circ.num_qubits == 4
        assert main(["verify", "--circuit", str(path), "--target", "toffoli", "--n", "3"]) == 0

    def test_weighted_identity(self, tmp_path, capsys):
        path = tmp_path / "w.json"
        assert main(["compile", "--kind", "weighted", "--n", "3", "--alphas", "0,0,0", "--out", str(path)]) == 0
        assert main(["verify", "--circuit", str(path), "--target", "weighted", "--n", "3", "--alphas", "0,0,0"]) == 0

    def test_text_format(self, tmp_path):
        path = tmp_path / "c.txt"
        assert main(["compile", "--kind", "crot", "--n", "2", "--alpha", "pi", "--out", str(path), "--format", "text"]) == 0
        first = path.read_text().splitlines()[0].split()
        assert first[0] in ("h", "rz", "rx", "ms")

    def test_verification_failure_exit_code(self, tmp_path, capsys):
        path = tmp_path / "id.json"
        path.write_bytes(serialize(Circuit(3, ())))
        code = main(["verify", "--circuit", str(path), "--target", "crot", "--n", "3", "--alpha", "pi"])
        assert code == 1
        assert "FAIL" in capsys.readouterr().out

    def test_tolerance_override(self, tmp_path, capsys):
        row = [-1.855, -2.118, -0.525, -2.118, -1.855, -PI, 0.0]
        from mscompile import build_from_merged

        path = tmp_path / "m.json"
        path.write_bytes(serialize(build_from_merged(3, PI / 3, -PI / 3, row)))
        args = ["verify", "--circuit", str(path), "--target", "crot", "--n", "3", "--alpha", "-pi"]
        assert main(args) == 1  # 3-decimal table angles miss 1e-6
        assert main(args + ["--tolerance", "1e-2"]) == 0

    def test_synthesis_failure_exit_code(self, tmp_path, monkeypatch, capsys):
        def boom(n, alpha):
            raise FittingError("forced failure")

        monkeypatch.setattr("mscompile.cli.crot_angles", boom)
        code = main(["compile", "--kind", "crot", "--n", "3", "--alpha", "pi", "--out", str(tmp_path / "x.json")])
        assert code == 2
        assert "synthesis failed" in capsys.readouterr().err


class TestSeries:
    def test_fig2_shape(self, tmp_path):
        path = tmp_path / "s.tsv"
        assert main(["series", "--n", "7", "--alpha", "pi", "--out", str(path)]) == 0
        lines = path.read_text().splitlines()
        assert lines[0] == "theta\tA\tB\tC\tD"
        rows = [list(map(float, line.split("\t"))) for line in lines[1:] if line and not line.startswith("#")]
        # periodic endpoints
        np.testing.assert_allclose(rows[0][1:], rows[-1][1:], atol=1e-9)
        pinned = []
        for line in lines:
            if line.startswith("# ") and "\t" in line:
                try:
                    pinned.append(list(map(float, line[2:].split("\t"))))
                except ValueError:
                    continue  # table header
        assert len(pinned) == 7
        ones = [row for row in pinned if abs(row[1] - 1) < 1e-9]
        assert len(ones) == 6  # A = 1 at the six idle angles
        special = [row for row in pinned if abs(abs(row[0]) - PI) < 1e-9]
        assert abs(special[0][1]) < 1e-9  # A(pi) = cos(pi/2) = 0

    def test_constant_series(self, tmp_path):
        path = tmp_path / "s2.tsv"
        assert main(["series", "--n", "2", "--alpha", "0", "--out", str(path), "--grid-points", "65"]) == 0
        rows = [line.split("\t") for line in path.read_text().splitlines()[1:] if line and not line.startswith("#")]
        assert len(rows) == 65
        assert all(abs(float(r[1]) - 1.0) < 1e-10 for r in rows)


class TestTable:
    def test_rows_and_distances(self, capsys):
        assert main(["table"]) == 0
        out = capsys.readouterr().out
        for n in range(3, 7):
            row = next(line for line in out.splitlines() if line.startswith(f"N={n}"))
            angles = row[row.index("[") + 1 : row.index("]")].split()
            assert len(angles) == 2 * n + 1
            # trailing pair equivalent to (-pi, 0)
            assert abs(abs(float(angles[-2])) - round(abs(float(angles[-2])) / PI) * PI) < 2e-3
            assert float(angles[-1]) == pytest.approx(0.0, abs=1e-3)
            distance = float(row.split("distance=")[1])
            assert distance < 1e-6


class TestUsageErrors:
    def test_unknown_command(self):
        assert main(["frobnicate"]) == 64

    def test_missing_required(self):
        assert main(["crot-angles", "--n", "3"]) == 64

    def test_bad_angle(self):
        assert main(["crot-angles", "--n", "3", "--alpha", "nonsense"]) == 64

    def test_small_n(self):
        assert main(["crot-angles", "--n", "1", "--alpha", "pi"]) == 64

    def test_missing_circuit_file(self, tmp_path):
        assert main(["verify", "--circuit", str(tmp_path / "nope.json"), "--target", "crot", "--n", "3", "--alpha", "pi"]) == 64

    def test_weighted_needs_alphas(self, tmp_path):
        assert main(["compile", "--kind", "weighted", "--n", "3", "--out", str(tmp_path / "w.json")]) == 64
