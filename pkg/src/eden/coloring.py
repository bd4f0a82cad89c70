"""RGB node colouring from 3-D EDEN and Graphviz DOT export."""
from __future__ import annotations

import numpy as np

from .encoders import EncoderConfig, canonicalize_signs, eden_encode, normalize_unit
from .graph import Graph
from .spectral import Encoding


def rgb_hex(values: np.ndarray) -> list[str]:
    """``[0, 1]``-valued rows of length 3 to ``#rrggbb`` strings."""
    values = np.asarray(values, dtype=float)
    if values.ndim != 2 or values.shape[1] != 3:
        raise ValueError(f"need an n x 3 matrix for RGB, got shape {values.shape}")
    # snap solver noise first so a value at a rounding boundary (0.5 -> 127.5)
    # lands on the same channel for every relabelling
    snapped = np.round(values, 9)
    channels = np.clip(np.floor(snapped * 255 + 0.5), 0, 255).astype(int)
    return ["#%02x%02x%02x" % tuple(row) for row in channels]


def node_colors(g: Graph, cfg: EncoderConfig = EncoderConfig(), per_row: bool = False) -> tuple[list[str], Encoding]:
    if cfg.m != 3:
        raise ValueError(f"colouring needs m = 3, got m = {cfg.m}")
    enc = canonicalize_signs(eden_encode(g, cfg))
    return rgb_hex(normalize_unit(enc, per_row=per_row).values), enc


def to_dot(g: Graph, colors: list[str], name: str = "G") -> str:
    lines = [f"graph {name} {{", "  node [style=filled];"]
    for v, c in enumerate(colors):
        lines.append(f'  {v} [fillcolor="{c}"];')
    for u, v in sorted(g.edges):
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
