"""Edge-list files: whitespace-separated node-id pairs, '#' comments.

An optional ``# nodes: N`` directive (written by ``save_edge_list``) fixes
the node count and keeps integer ids verbatim, so isolated nodes survive a
round trip. Without it ids are remapped to 0..N-1 in first-appearance order.
"""

from __future__ import annotations

import logging
import re
from pathlib import Path

import numpy as np

from netgen.models import Graph
from tools.errors import EdgeListError

logger = logging.getLogger(__name__)

NODES_DIRECTIVE = re.compile(r"^#\s*nodes:\s*(\d+)\s*$")


def load_edge_list(path: str | Path) -> Graph:
    """Read an edge list; duplicates and self-loops are dropped and counted."""
    path = Path(path)
    declared: int | None = None
    ids: dict[str, int] = {}
    raw: list[tuple[str, str, int]] = []
    with path.open("rb") as fh:
        for line_number, raw_line in enumerate(fh, start=1):
            try:
                stripped = raw_line.decode("utf-8").strip()
            except UnicodeDecodeError:
                raise EdgeListError(
                    f"{path}:{line_number}: not valid UTF-8", str(path), line_number
                ) from None
            if not stripped:
                continue
            if stripped.startswith("#"):
                m = NODES_DIRECTIVE.match(stripped)
                if m and declared is None and not raw:
                    declared = int(m.group(1))
                continue
            tokens = stripped.split()
            if len(tokens) != 2:
                raise EdgeListError(
                    f"{path}:{line_number}: expected two node ids, got {len(tokens)} tokens",
                    str(path),
                    line_number,
                )
            raw.append((tokens[0], tokens[1], line_number))

    if declared is not None:
        pairs = []
        for a, b, line_number in raw:
            try:
                u, v = int(a), int(b)
            except ValueError:
                raise EdgeListError(
                    f"{path}:{line_number}: non-integer id with a nodes directive", str(path), line_number
                ) from None
            if not (0 <= u < declared and 0 <= v < declared):
                raise EdgeListError(
                    f"{path}:{line_number}: id outside 0..{declared - 1}", str(path), line_number
                )
            pairs.append((u, v))
        num_nodes = declared
    else:
        pairs = []
        for a, b, _ in raw:
            u = ids.setdefault(a, len(ids))
            v = ids.setdefault(b, len(ids))
            pairs.append((u, v))
        num_nodes = len(ids)

    self_loops = 0
    duplicates = 0
    seen: set[tuple[int, int]] = set()
    kept: list[tuple[int, int]] = []
    for u, v in pairs:
        if u == v:
            self_loops += 1
            continue
        e = (u, v) if u < v else (v, u)
        if e in seen:
            duplicates += 1
            continue
        seen.add(e)
        kept.append(e)

    if num_nodes == 0:
        raise EdgeListError(f"{path}: no edges found", str(path))
    if duplicates or self_loops:
        logger.info("load_edge_list path=%s dropped duplicates=%d self_loops=%d", path, duplicates, self_loops)
    return Graph(
        num_nodes,
        np.array(kept, dtype=np.int64).reshape(-1, 2),
        info={"model": "edgelist", "path": str(path), "duplicates": duplicates, "self_loops": self_loops},
    )


def format_edge_list(g: Graph) -> str:
    """Edge-list text with a nodes directive; one sorted ``u v`` line per edge."""
    lines = [f"# nodes: {g.num_nodes}", f"# edges: {g.num_edges}"]
    lines.extend(f"{u} {v}" for u, v in g.edges.tolist())
    return "\n".join(lines) + "\n"


def save_edge_list(g: Graph, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_edge_list(g), encoding="utf-8")
    logger.info("save_edge_list path=%s nodes=%d edges=%d", path, g.num_nodes, g.num_edges)
    return path
