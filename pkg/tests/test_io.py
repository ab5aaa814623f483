"""CSV ingestion, serialization, the CLI, and determinism of outputs."""

from __future__ import annotations

import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from emstclust import (
    CriterionConfig,
    Dendrogram,
    InputError,
    MergeRecord,
    Point,
    RunConfig,
    emstrd,
    emstucc,
    newick_string,
    read_points_csv,
    run_pipeline,
    write_outputs,
)
from emstclust.cli import main
from oracles import count_internal, leaf_depths, parse_newick


def write_csv(tmp_path: Path, text: str, name: str = "points.csv") -> Path:
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


CHAIN_CSV = "0\n1\n3\n6\n10\n"


class TestReadPointsCsv:
    def test_plain_numeric(self, tmp_path):
        ds = read_points_csv(write_csv(tmp_path, "0,0\n3,4\n"))
        assert len(ds) == 2
        assert ds.points[1].coords == (3.0, 4.0)

    def test_header_skipped(self, tmp_path):
        ds = read_points_csv(write_csv(tmp_path, "x,y\n1,2\n3,4\n"))
        assert len(ds) == 2
        assert ds.points[0].coords == (1.0, 2.0)

    def test_numeric_first_row_is_data(self, tmp_path):
        ds = read_points_csv(write_csv(tmp_path, "1,2\n3,4\n"))
        assert len(ds) == 2

    def test_ragged_row_names_line(self, tmp_path):
        path = write_csv(tmp_path, "1,2\n3,4\n5,6,7\n")
        with pytest.raises(InputError, match="line 3"):
            read_points_csv(path)

    def test_nan_names_line(self, tmp_path):
        path = write_csv(tmp_path, "1,2\nNaN,4\n")
        with pytest.raises(InputError, match="line 2"):
            read_points_csv(path)

    def test_infinity_rejected(self, tmp_path):
        path = write_csv(tmp_path, "1\ninf\n")
        with pytest.raises(InputError, match="line 2"):
            read_points_csv(path)

    def test_non_numeric_data_row_names_line(self, tmp_path):
        path = write_csv(tmp_path, "1,2\nfoo,4\n")
        with pytest.raises(InputError, match="line 2"):
            read_points_csv(path)

    def test_empty_file_rejected(self, tmp_path):
        with pytest.raises(InputError):
            read_points_csv(write_csv(tmp_path, ""))

    def test_header_only_rejected(self, tmp_path):
        with pytest.raises(InputError):
            read_points_csv(write_csv(tmp_path, "x,y\n"))

    def test_missing_file_rejected(self, tmp_path):
        with pytest.raises(InputError):
            read_points_csv(tmp_path / "absent.csv")

    def test_blank_lines_and_crlf(self, tmp_path):
        path = tmp_path / "crlf.csv"
        path.write_bytes(b"x,y\r\n1,2\r\n\r\n3,4\r\n")
        ds = read_points_csv(path)
        assert len(ds) == 2

    def test_utf8_bom(self, tmp_path):
        path = tmp_path / "bom.csv"
        path.write_bytes(b"\xef\xbb\xbf1,2\n3,4\n")
        ds = read_points_csv(path)
        assert ds.points[0].coords == (1.0, 2.0)

    def test_scientific_notation(self, tmp_path):
        ds = read_points_csv(write_csv(tmp_path, "1e2, -2.5E-1\n0, 4\n"))
        assert ds.points[0].coords == (100.0, -0.25)


class TestNewick:
    def test_single_leaf(self):
        assert newick_string(Dendrogram(leaf_count=1)) == "C0;"

    def test_three_leaf_worked_example(self):
        d = Dendrogram(
            leaf_count=3,
            merges=(
                MergeRecord(1, 1.0, 0, 1, 3),
                MergeRecord(2, 4.0, 3, 2, 4),
            ),
        )
        assert newick_string(d) == "((C0:1,C1:1):3,C2:4);"

    def test_reparse_round_trip(self):
        centers = [Point((float(v),)) for v in (0, 1, 5, 30, 31, 60)]
        result = emstucc(centers)
        text = newick_string(result.dendrogram)
        root = parse_newick(text)
        depths = leaf_depths(root)
        assert set(depths) == {f"C{i}" for i in range(6)}
        final = result.dendrogram.final_level
        for depth in depths.values():
            assert depth == pytest.approx(final, abs=1e-9)
        assert count_internal(root) == 5


def chain_config(tmp_path, k=2, criterion=None, out="out", svg=False):
    return RunConfig(
        input_path=write_csv(tmp_path, CHAIN_CSV),
        k=k,
        criterion=criterion or CriterionConfig(),
        output_dir=tmp_path / out,
        emit_svg=svg,
    )


class TestWriteOutputs:
    def test_chain_file_set_and_content(self, tmp_path):
        config = chain_config(tmp_path)
        paths = run_pipeline(config)
        names = {p.name for p in paths}
        assert names == {
            "assignments.csv",
            "clusters.json",
            "dendrogram.json",
            "dendrogram.newick",
            "meta.json",
        }
        out = config.output_dir

        assignments = (out / "assignments.csv").read_text().splitlines()
        assert assignments[0] == "point_index,cluster_id"
        assert assignments[1:] == ["0,0", "1,0", "2,0", "3,0", "4,1"]

        clusters = json.loads((out / "clusters.json").read_text())
        assert clusters["cluster_count"] == 2
        first = clusters["clusters"][0]
        assert first["members"] == [0, 1, 2, 3]
        assert first["center_index"] == 2
        assert first["radius"] == 3.0
        assert first["diameter"] == 6.0
        assert first["variance"] == math.sqrt(5.25)
        assert clusters["removed_edges"] == [
            {"u": 3, "v": 4, "weight": 4.0, "criterion": "threshold"}
        ]

        dendro = json.loads((out / "dendrogram.json").read_text())
        assert dendro["leaf_count"] == 2
        assert dendro["merges"] == [{"m": 1, "level": 7.0, "left": 0, "right": 1}]

        assert (out / "dendrogram.newick").read_text() == "(C0:7,C1:7);\n"

        meta = json.loads((out / "meta.json").read_text())
        assert meta["central_cluster"] == 0
        assert meta["meta_radius"] == 7.0

    def test_float_round_trip_is_exact(self, tmp_path):
        path = write_csv(
            tmp_path, "0.1,0.2\n0.7,1.3\n2.9,0.05\n7.77,8.88\n"
        )
        config = RunConfig(
            input_path=path,
            k=2,
            criterion=CriterionConfig(),
            output_dir=tmp_path / "out",
        )
        run_pipeline(config)
        dataset = read_points_csv(path)
        result = emstrd(dataset, 2)
        clusters = json.loads((config.output_dir / "clusters.json").read_text())
        for entry, report in zip(clusters["clusters"], result.reports):
            assert entry["radius"] == report.radius
            assert entry["diameter"] == report.diameter
            assert entry["variance"] == report.variance

    def test_reruns_are_byte_identical(self, tmp_path):
        config_a = chain_config(tmp_path, out="a", svg=True)
        config_b = chain_config(tmp_path, out="b", svg=True)
        paths_a = run_pipeline(config_a)
        paths_b = run_pipeline(config_b)
        assert [p.name for p in paths_a] == [p.name for p in paths_b]
        for pa, pb in zip(paths_a, paths_b):
            assert pa.read_bytes() == pb.read_bytes()

    def test_no_temporary_files_left(self, tmp_path):
        config = chain_config(tmp_path)
        run_pipeline(config)
        assert not list(config.output_dir.glob("*.tmp"))

    def test_svg_for_2d_data(self, tmp_path):
        path = write_csv(tmp_path, "0,0\n1,0\n0,1\n20,20\n21,20\n")
        config = RunConfig(
            input_path=path,
            k=2,
            criterion=CriterionConfig(),
            output_dir=tmp_path / "out",
            emit_svg=True,
        )
        paths = run_pipeline(config)
        names = {p.name for p in paths}
        assert "scatter.svg" in names
        assert "dendrogram.svg" in names
        scatter = (config.output_dir / "scatter.svg").read_text()
        assert scatter.startswith("<svg")
        assert "circle" in scatter

    def test_no_scatter_for_1d_data(self, tmp_path):
        config = chain_config(tmp_path, svg=True)
        names = {p.name for p in run_pipeline(config)}
        assert "dendrogram.svg" in names
        assert "scatter.svg" not in names

    def test_k1_outputs(self, tmp_path):
        config = chain_config(tmp_path, k=1)
        run_pipeline(config)
        out = config.output_dir
        assert (out / "dendrogram.newick").read_text() == "C0;\n"
        meta = json.loads((out / "meta.json").read_text())
        assert meta == {"central_cluster": 0, "meta_radius": 0.0}


class TestCli:
    def test_success_exit_zero(self, tmp_path, capsys):
        path = write_csv(tmp_path, CHAIN_CSV)
        code = main(
            ["--input", str(path), "--k", "2", "--out", str(tmp_path / "out")]
        )
        assert code == 0
        assert (tmp_path / "out" / "clusters.json").exists()
        assert "clusters.json" in capsys.readouterr().out

    def test_missing_input_exit_two(self, tmp_path):
        code = main(
            [
                "--input",
                str(tmp_path / "nope.csv"),
                "--k",
                "2",
                "--out",
                str(tmp_path / "out"),
            ]
        )
        assert code == 2

    def test_malformed_input_exit_two(self, tmp_path):
        path = write_csv(tmp_path, "1,2\n3\n")
        code = main(
            ["--input", str(path), "--k", "1", "--out", str(tmp_path / "out")]
        )
        assert code == 2

    def test_k_exceeding_dataset_exit_two(self, tmp_path):
        path = write_csv(tmp_path, CHAIN_CSV)
        code = main(
            ["--input", str(path), "--k", "6", "--out", str(tmp_path / "out")]
        )
        assert code == 2

    def test_k_zero_exit_three(self, tmp_path):
        path = write_csv(tmp_path, CHAIN_CSV)
        code = main(
            ["--input", str(path), "--k", "0", "--out", str(tmp_path / "out")]
        )
        assert code == 3

    def test_unknown_criterion_exit_three(self, tmp_path, capsys):
        path = write_csv(tmp_path, CHAIN_CSV)
        code = main(
            [
                "--input",
                str(path),
                "--k",
                "2",
                "--criterion",
                "median",
                "--out",
                str(tmp_path / "out"),
            ]
        )
        assert code == 3
        capsys.readouterr()

    def test_bad_zahn_parameter_exit_three(self, tmp_path):
        path = write_csv(tmp_path, CHAIN_CSV)
        code = main(
            [
                "--input",
                str(path),
                "--k",
                "2",
                "--criterion",
                "zahn",
                "--zahn-c",
                "0",
                "--out",
                str(tmp_path / "out"),
            ]
        )
        assert code == 3

    def test_unwritable_output_exit_four(self, tmp_path):
        input_path = write_csv(tmp_path, CHAIN_CSV)
        blocker = tmp_path / "blocker"
        blocker.write_text("not a directory")
        code = main(
            [
                "--input",
                str(input_path),
                "--k",
                "2",
                "--out",
                str(blocker / "out"),
            ]
        )
        assert code == 4

    def test_zahn_criterion_end_to_end(self, tmp_path):
        path = write_csv(tmp_path, "0\n1\n2\n12\n13\n14\n")
        out = tmp_path / "out"
        code = main(
            [
                "--input",
                str(path),
                "--k",
                "2",
                "--criterion",
                "zahn",
                "--out",
                str(out),
            ]
        )
        assert code == 0
        clusters = json.loads((out / "clusters.json").read_text())
        assert clusters["removed_edges"][0]["criterion"] == "zahn"
        assert clusters["removed_edges"][0]["weight"] == 10.0

    def test_module_invocation_subprocess(self, tmp_path):
        path = write_csv(tmp_path, CHAIN_CSV)
        out_a = tmp_path / "a"
        out_b = tmp_path / "b"
        for out in (out_a, out_b):
            proc = subprocess.run(
                [
                    sys.executable,
                    "-m",
                    "emstclust",
                    "--input",
                    str(path),
                    "--k",
                    "2",
                    "--svg",
                    "--out",
                    str(out),
                ],
                capture_output=True,
                text=True,
            )
            assert proc.returncode == 0, proc.stderr
        files_a = sorted(q.name for q in out_a.iterdir())
        files_b = sorted(q.name for q in out_b.iterdir())
        assert files_a == files_b
        for name in files_a:
            assert (out_a / name).read_bytes() == (out_b / name).read_bytes()
