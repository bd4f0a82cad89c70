"""Named fixture graphs: the 1-WL, 2-WL and 3-WL equivalent pairs.

Adjacency rows are stored as bit strings, one per node.
"""
from __future__ import annotations

import numpy as np

from .graph import Graph

_MATRICES = {
    # 1-WL equivalent pair
    "decalin": (
        "0110001000"
        "1000010001"
        "1001000000"
        "0010100000"
        "0001010000"
        "0100100000"
        "1000000100"
        "0000001010"
        "0000000101"
        "0100000010"
    ),
    "bicyclopentyl": (
        "0110010000"
        "1000001001"
        "1001000000"
        "0010100000"
        "0001010000"
        "1000100000"
        "0100000100"
        "0000001010"
        "0000000101"
        "0100000010"
    ),
    # 2-WL equivalent pair (both 4-regular)
    "cospectral10": (
        "0101010100"
        "1011100000"
        "0100101001"
        "1100010100"
        "0110001001"
        "1001000011"
        "0010100110"
        "1001001010"
        "0000011101"
        "0010110010"
    ),
    "regular4_10": (
        "0101001100"
        "1011100000"
        "0100110001"
        "1100010100"
        "0110001001"
        "0011000110"
        "1000100011"
        "1001010010"
        "0000011101"
        "0010101010"
    ),
    # 3-WL equivalent pair, srg(16, 6, 2, 2)
    "rook4x4": (
        "0111100010001000"
        "1011010001000100"
        "1101001000100010"
        "1110000100010001"
        "1000011110001000"
        "0100101101000100"
        "0010110100100010"
        "0001111000010001"
        "1000100001111000"
        "0100010010110100"
        "0010001011010010"
        "0001000111100001"
        "1000100010000111"
        "0100010001001011"
        "0010001000101101"
        "0001000100011110"
    ),
    "shrikhande": (
        "0101110000001001"
        "1010011000001100"
        "0101001100000110"
        "1010100100000011"
        "1001010111000000"
        "1100101001100000"
        "0110010100110000"
        "0011101010010000"
        "0000100101011100"
        "0000110010100110"
        "0000011001010011"
        "0000001110101001"
        "1100000010010101"
        "0110000011001010"
        "0011000001100101"
        "1001000000111010"
    ),
}

FIXTURE_NAMES = tuple(_MATRICES)

# Pairs of non-isomorphic graphs, hardest last.
FIXTURE_PAIRS = (
    ("decalin", "bicyclopentyl"),
    ("cospectral10", "regular4_10"),
    ("rook4x4", "shrikhande"),
)


def fixture_matrix(name: str) -> np.ndarray:
    try:
        bits = _MATRICES[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}") from None
    n = int(round(len(bits) ** 0.5))
    return np.array([int(c) for c in bits], dtype=np.int64).reshape(n, n)


def fixture_graph(name: str) -> Graph:
    return Graph.from_adjacency(fixture_matrix(name))
