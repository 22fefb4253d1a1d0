#!/usr/bin/env python3
"""
Testes para o CLI (fracsinc.fracsinc_cli)

Chama main() com argv explícito e confere códigos de saída e arquivos gerados.
"""

import csv

import pytest

from fracsinc.cli import EXIT_INTERRUPTED, EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE
from fracsinc.fracsinc_cli import build_parser, main


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.reader(fh))


class TestParser:
    """Testa o parser e erros de uso"""

    def test_no_command(self, capsys):
        assert main([]) == EXIT_USAGE
        assert "usage" in capsys.readouterr().out.lower()

    def test_unknown_flag(self):
        assert main(["kernel", "--d", "1", "--n", "8", "--s", "0.5", "--out", "k.fsk", "--bogus"]) == EXIT_USAGE

    def test_missing_required(self):
        assert main(["kernel", "--d", "1"]) == EXIT_USAGE

    def test_help(self):
        assert main(["--help"]) == EXIT_OK

    def test_subcommands(self):
        parser = build_parser()
        args = parser.parse_args(["converge", "--config", "x.json"])
        assert args.command == "converge"
        assert args.out is None


class TestKernelCommands:
    """Testa kernel e validate-kernel"""

    def test_kernel_then_validate(self, tmp_path, isolated_dirs, capsys):
        out = tmp_path / "k.fsk"
        assert main(["kernel", "--d", "1", "--n", "8", "--s", "0.5", "--out", str(out)]) == EXIT_OK
        assert out.exists()
        assert main(["validate-kernel", "--file", str(out), "--samples", "5", "--oracle-cache"]) == EXIT_OK
        assert "Kernel valido" in capsys.readouterr().out

    def test_validation_failure(self, tmp_path, mocker):
        out = tmp_path / "k.fsk"
        assert main(["kernel", "--d", "1", "--n", "8", "--s", "0.5", "--out", str(out)]) == EXIT_OK
        mocker.patch("fracsinc.cli.kernel.kernel_entry_oracle", return_value=123.0)
        assert main(["validate-kernel", "--file", str(out), "--samples", "3"]) == EXIT_NUMERICAL

    def test_corrupted_file(self, tmp_path, capsys):
        out = tmp_path / "k.fsk"
        assert main(["kernel", "--d", "1", "--n", "8", "--s", "0.5", "--out", str(out)]) == EXIT_OK
        raw = bytearray(out.read_bytes())
        raw[-1] ^= 0xFF
        out.write_bytes(bytes(raw))
        assert main(["validate-kernel", "--file", str(out)]) == EXIT_NUMERICAL
        assert "checksum" in capsys.readouterr().err

    def test_default_output_in_cache_dir(self, tmp_path, monkeypatch):
        monkeypatch.setattr("fracsinc.cli.kernel.KERNEL_CACHE_DIR", tmp_path / "kernels")
        assert main(["kernel", "--d", "1", "--n", "8", "--s", "0.5", "--oversample", "8"]) == EXIT_OK
        assert (tmp_path / "kernels" / "kernel_d1_n8_s0.5_o8.fsk").exists()

    def test_default_oversample_3d_in_file_name(self, tmp_path, monkeypatch):
        monkeypatch.setattr("fracsinc.cli.kernel.KERNEL_CACHE_DIR", tmp_path / "kernels")
        assert main(["kernel", "--d", "3", "--n", "4", "--s", "0.5"]) == EXIT_OK
        assert (tmp_path / "kernels" / "kernel_d3_n4_s0.5_o8.fsk").exists()

    def test_missing_file(self, tmp_path):
        assert main(["validate-kernel", "--file", str(tmp_path / "nada.fsk")]) == EXIT_USAGE

    def test_invalid_order(self, tmp_path):
        assert main(["kernel", "--d", "1", "--n", "8", "--s", "1.5", "--out", str(tmp_path / "k.fsk")]) == EXIT_NUMERICAL


class TestProblemCommands:
    """Testa solve e converge"""

    def test_solve_writes_csv(self, config_writer, tmp_path):
        out = tmp_path / "u.csv"
        assert main(["solve", "--config", str(config_writer()), "--n", "16", "--out", str(out)]) == EXIT_OK
        rows = read_csv(out)
        assert rows[0] == ["k1", "x1", "u"]
        assert len(rows) == 1 + 15
        assert all(float(row[2]) > 0 for row in rows[1:])

    def test_solve_missing_config(self, tmp_path):
        assert main(["solve", "--config", str(tmp_path / "nada.json"), "--out", str(tmp_path / "u.csv")]) == EXIT_USAGE

    def test_converge(self, config_writer, tmp_path, capsys):
        assert main(["converge", "--config", str(config_writer())]) == EXIT_OK
        rows = read_csv(tmp_path / "out" / "errors.csv")
        assert rows[0] == ["N", "h", "l2", "linf", "energy", "decay_ratio"]
        assert len(rows) == 4
        assert "energy: taxa=" in capsys.readouterr().out

    def test_converge_out_override(self, config_writer, tmp_path):
        target = tmp_path / "override.csv"
        assert main(["converge", "--config", str(config_writer(N_list=[16, 32])), "--out", str(target)]) == EXIT_OK
        assert target.exists()
        assert not (tmp_path / "out" / "errors.csv").exists()

    def test_converge_bad_divisibility(self, config_writer):
        path = config_writer(N_list=[16, 24, 32], reference="self")
        assert main(["converge", "--config", str(path)]) == EXIT_USAGE

    def test_converge_stage_failure(self, config_writer, capsys):
        path = config_writer(rhs={"f": "one", "mode": "mollified"})
        assert main(["converge", "--config", str(path)]) == EXIT_NUMERICAL
        assert "stage 'rhs'" in capsys.readouterr().err

    def test_interrupted(self, config_writer, mocker):
        mocker.patch("fracsinc.cli.converge.run_convergence", side_effect=KeyboardInterrupt)
        assert main(["converge", "--config", str(config_writer())]) == EXIT_INTERRUPTED


class TestMollifierDump:
    """Testa mollifier-dump"""

    @pytest.mark.parametrize("d", [1, 2])
    def test_weights_sum_to_one(self, tmp_path, d):
        out = tmp_path / "eta.csv"
        assert main(["mollifier-dump", "--d", str(d), "--epsilon", "0.03125", "--out", str(out)]) == EXIT_OK
        rows = read_csv(out)
        assert rows[0] == [f"y{i + 1}" for i in range(d)] + ["weight"]
        assert sum(float(row[-1]) for row in rows[1:]) == pytest.approx(1.0, abs=1e-8)
