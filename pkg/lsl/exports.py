# lsl/exports.py
"""
Report and table files. Every file is written to a temporary sibling and renamed into
place, so a failed command never leaves a partial file behind.
"""
import csv
import io
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence, Tuple

import networkx as nx

from lsl.combinatorics import SubsetIndex, weight

logger = logging.getLogger(__name__)


def ensure_dir(path: Path) -> Path:
    path.mkdir(exist_ok=True, parents=True)
    return path


def atomic_write_text(path: Path, text: str) -> Path:
    path = Path(path)
    ensure_dir(path.parent)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        os.replace(tmp, path)
    except Exception:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise
    logger.debug(f"Wrote {path}")
    return path


def to_json(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_json(path: Path, payload: Any) -> Path:
    return atomic_write_text(path, to_json(payload))


def to_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue()


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    return atomic_write_text(path, to_csv(header, rows))


def subset_label(I: SubsetIndex) -> str:
    return str(I)


def hasse_dot(graph: nx.DiGraph) -> str:
    """DOT text of a Hasse diagram, one rank per weight, nodes labelled by sorted subset."""
    nodes: List[SubsetIndex] = sorted(graph.nodes, key=lambda s: (weight(s), s.members))
    ids: Dict[SubsetIndex, str] = {s: f"s{s.mask}" for s in nodes}
    lines = ["digraph hasse {", "  rankdir=BT;"]
    by_weight: Dict[int, List[SubsetIndex]] = {}
    for s in nodes:
        by_weight.setdefault(weight(s), []).append(s)
    for w in sorted(by_weight, reverse=True):
        members = " ".join(f"{ids[s]};" for s in by_weight[w])
        lines.append(f"  {{ rank=same; {members} }}")
    for s in nodes:
        lines.append(f'  {ids[s]} [label="{subset_label(s)}"];')
    edges: List[Tuple[SubsetIndex, SubsetIndex]] = sorted(
        graph.edges, key=lambda e: (-weight(e[0]), e[0].members, e[1].members)
    )
    for K, M in edges:
        lines.append(f"  {ids[K]} -> {ids[M]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
