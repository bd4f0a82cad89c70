"""Graph input detection and feature-file writers/readers."""
from __future__ import annotations

import csv
import io
import json
import os

import numpy as np

from .fixtures import FIXTURE_NAMES, fixture_graph
from .graph import Graph, GraphParseError, parse_edge_list, parse_graph6


def looks_like_edge_list(text: str) -> bool:
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            return len(line.split()) > 1
    return False


def load_graphs(source: str) -> list[Graph]:
    """Graphs from a graph6 file (one per line), an edge-list file, or a
    fixture name. Raises ``FileNotFoundError`` if none of these apply."""
    if not os.path.exists(source):
        if source in FIXTURE_NAMES:
            return [fixture_graph(source)]
        raise FileNotFoundError(f"no such file or fixture: {source}")
    with open(source, "rb") as fh:
        raw = fh.read()
    try:
        text = raw.decode("ascii")
    except UnicodeDecodeError as exc:
        raise GraphParseError(f"{source}: non-ASCII input", offset=exc.start) from None
    if looks_like_edge_list(text):
        try:
            return [parse_edge_list(text)]
        except GraphParseError as exc:
            raise GraphParseError(f"{source}: {exc}") from None
    graphs = []
    for lineno, line in enumerate(raw.splitlines(), 1):
        line = line.strip()
        if line:
            try:
                graphs.append(parse_graph6(line, line=lineno))
            except GraphParseError as exc:
                raise GraphParseError(f"{source}: {exc}") from None
    if not graphs:
        raise GraphParseError(f"{source}: no graphs found")
    return graphs


def _fmt(x: float) -> str:
    return repr(float(x))


def features_csv(blocks: list[np.ndarray]) -> str:
    """CSV with header ``node,f1..fm``; a leading ``graph`` column is added
    when there is more than one graph."""
    m = blocks[0].shape[1]
    multi = len(blocks) > 1
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow((["graph"] if multi else []) + ["node"] + [f"f{k + 1}" for k in range(m)])
    for gi, vals in enumerate(blocks):
        for v, row in enumerate(vals):
            w.writerow(([gi] if multi else []) + [v] + [_fmt(x) for x in row])
    return buf.getvalue()


def read_features_csv(text: str) -> list[np.ndarray]:
    rows = list(csv.reader(io.StringIO(text)))
    header, body = rows[0], rows[1:]
    multi = header[0] == "graph"
    skip = 2 if multi else 1
    out: dict[int, list] = {}
    for r in body:
        gi = int(r[0]) if multi else 0
        out.setdefault(gi, []).append([float(x) for x in r[skip:]])
    return [np.array(out[k]) for k in sorted(out)]


def features_json(records: list[dict]) -> str:
    return json.dumps(records, indent=1) + "\n"


def read_features_json(text: str) -> list[np.ndarray]:
    return [np.array(rec["features"], dtype=float) for rec in json.loads(text)]
