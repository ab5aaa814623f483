"""Batch input and output: CSV ingestion, result serialization, pipeline.

All output files are written atomically (write to a temporary sibling, then
rename) and every real number is serialized with 17 significant digits so a
reader parsing the file recovers bit-identical values. Identical input and
configuration therefore produce byte-identical files across runs.
"""

from __future__ import annotations

import csv
import json
import math
import os
from dataclasses import dataclass
from pathlib import Path

from .divisive import ClusteringResult, emstrd
from .errors import ConfigError, InputError
from .meta import MetaResult, emstucc
from .metrics import cluster_compactness
from .model import CriterionConfig, Dataset, Dendrogram, Point
from .svg import dendrogram_svg, scatter_svg


@dataclass(frozen=True)
class RunConfig:
    """One batch run: where to read, how to cluster, where to write."""

    input_path: Path
    k: int
    criterion: CriterionConfig
    output_dir: Path
    emit_svg: bool = False

    def __post_init__(self) -> None:
        if int(self.k) < 1:
            raise ConfigError(f"k must be >= 1, got {self.k}")
        object.__setattr__(self, "k", int(self.k))
        object.__setattr__(self, "input_path", Path(self.input_path))
        object.__setattr__(self, "output_dir", Path(self.output_dir))


def _parse_row(row: list[str], lineno: int) -> tuple[float, ...]:
    values = []
    for cell in row:
        text = cell.strip()
        try:
            value = float(text)
        except ValueError:
            raise InputError(f"line {lineno}: non-numeric value {cell!r}") from None
        if not math.isfinite(value):
            raise InputError(f"line {lineno}: non-finite value {cell!r}")
        values.append(value)
    return tuple(values)


def _looks_numeric(row: list[str]) -> bool:
    for cell in row:
        try:
            float(cell.strip())
        except ValueError:
            return False
    return True


def read_points_csv(path: Path | str) -> Dataset:
    """Read a UTF-8 CSV of coordinates, one point per row.

    A non-numeric first row is treated as a header and skipped. Blank rows
    are ignored. Ragged rows and non-finite or non-numeric cells raise an
    input error naming the 1-based line number.
    """
    path = Path(path)
    try:
        handle = open(path, newline="", encoding="utf-8-sig")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc

    rows: list[tuple[float, ...]] = []
    width: int | None = None
    with handle:
        for lineno, row in enumerate(csv.reader(handle), start=1):
            if not row or all(not cell.strip() for cell in row):
                continue
            if lineno == 1 and not _looks_numeric(row):
                continue
            values = _parse_row(row, lineno)
            if width is None:
                width = len(values)
            elif len(values) != width:
                raise InputError(
                    f"line {lineno}: expected {width} columns, got {len(values)}"
                )
            rows.append(values)
    if not rows:
        raise InputError(f"no data rows in {path}")
    return Dataset(points=tuple(Point(coords) for coords in rows))


def _format_float(value: float) -> str:
    return format(value, ".17g")


def _to_json(value, indent: int) -> str:
    pad = " " * indent
    inner = " " * (indent + 2)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return _format_float(value)
    if isinstance(value, str):
        return json.dumps(value)
    if value is None:
        return "null"
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [
            f"{inner}{json.dumps(str(key))}: {_to_json(item, indent + 2)}"
            for key, item in value.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = [f"{inner}{_to_json(item, indent + 2)}" for item in value]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _json_text(value) -> str:
    return _to_json(value, 0) + "\n"


def newick_string(dendrogram: Dendrogram) -> str:
    """Serialize a dendrogram to Newick with explicit branch lengths.

    Leaves are named C0 .. C(k-1) and sit at height 0; each child's branch
    length is the parent's merge level minus the child's own level, so the
    tree is ultrametric with every leaf at depth equal to the final level.
    """
    k = dendrogram.leaf_count
    if k == 1:
        return "C0;"
    children = {rec.new_node: (rec.left, rec.right) for rec in dendrogram.merges}
    levels = {rec.new_node: rec.level for rec in dendrogram.merges}
    root = k - 1 + len(dendrogram.merges)

    rendered: dict[int, str] = {}
    stack = [root]
    while stack:
        node = stack.pop()
        if node < k:
            rendered[node] = f"C{node}"
            continue
        left, right = children[node]
        if left in rendered and right in rendered:
            level = levels[node]
            left_len = _format_float(level - levels.get(left, 0.0))
            right_len = _format_float(level - levels.get(right, 0.0))
            rendered[node] = (
                f"({rendered[left]}:{left_len},{rendered[right]}:{right_len})"
            )
        else:
            stack.append(node)
            if right not in rendered:
                stack.append(right)
            if left not in rendered:
                stack.append(left)
    return rendered[root] + ";"


def _atomic_write(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)
    os.replace(tmp, path)


def _assignments_csv(result: ClusteringResult) -> str:
    lines = ["point_index,cluster_id"]
    for point, cid in result.assignments().items():
        lines.append(f"{point},{cid}")
    return "\n".join(lines) + "\n"


def _clusters_document(result: ClusteringResult, dataset: Dataset) -> dict:
    compactness = cluster_compactness(result.clusters, dataset)
    clusters = []
    for cid, (cluster, report) in enumerate(zip(result.clusters, result.reports)):
        clusters.append(
            {
                "id": cid,
                "size": report.size,
                "members": sorted(cluster.members),
                "center_index": report.center_index,
                "radius": report.radius,
                "diameter": report.diameter,
                "variance": report.variance,
            }
        )
    removed = [
        {"u": edge.u, "v": edge.v, "weight": edge.weight, "criterion": fired}
        for edge, fired in result.removed_edges
    ]
    return {
        "cluster_count": result.cluster_count,
        "compactness": compactness.value,
        "compactness_degenerate": compactness.degenerate,
        "clusters": clusters,
        "removed_edges": removed,
    }


def _dendrogram_document(dendrogram: Dendrogram) -> dict:
    return {
        "leaf_count": dendrogram.leaf_count,
        "merges": [
            {"m": rec.m, "level": rec.level, "left": rec.left, "right": rec.right}
            for rec in dendrogram.merges
        ],
    }


def write_outputs(
    result: ClusteringResult,
    meta: MetaResult,
    config: RunConfig,
    dataset: Dataset | None = None,
) -> list[Path]:
    """Write every output file for a finished run, returning their paths.

    Always writes assignments.csv, clusters.json, dendrogram.json,
    dendrogram.newick, and meta.json. With emit_svg set, dendrogram.svg is
    added, plus scatter.svg when the data is 2-D. The dataset argument is
    only needed for the scatter; when omitted it is re-read from
    config.input_path.
    """
    if dataset is None:
        dataset = read_points_csv(config.input_path)
    out = config.output_dir
    out.mkdir(parents=True, exist_ok=True)

    written: list[Path] = []

    def emit(name: str, text: str) -> None:
        path = out / name
        _atomic_write(path, text)
        written.append(path)

    emit("assignments.csv", _assignments_csv(result))
    emit("clusters.json", _json_text(_clusters_document(result, dataset)))
    emit("dendrogram.json", _json_text(_dendrogram_document(meta.dendrogram)))
    emit("dendrogram.newick", newick_string(meta.dendrogram) + "\n")
    emit(
        "meta.json",
        _json_text(
            {
                "central_cluster": meta.central_cluster,
                "meta_radius": meta.meta_radius,
            }
        ),
    )
    if config.emit_svg:
        emit("dendrogram.svg", dendrogram_svg(meta.dendrogram))
        if dataset.dimension == 2:
            emit("scatter.svg", scatter_svg(dataset, result))
    return written


def run_pipeline(config: RunConfig) -> list[Path]:
    """Read, cluster both stages, and write all outputs for one run."""
    dataset = read_points_csv(config.input_path)
    if config.k > len(dataset.points):
        raise InputError(
            f"k={config.k} exceeds the dataset size {len(dataset.points)}"
        )
    result = emstrd(dataset, config.k, config.criterion)
    meta = emstucc(result.centers)
    return write_outputs(result, meta, config, dataset=dataset)
