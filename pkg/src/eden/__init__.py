"""Equivariant distance encodings (EDEN) for graphs and an isomorphism
screening harness built on them."""

from .distances import UNREACHABLE, DistanceMatrix, apsp, diameter_vector
from .encoders import (
    BaselineMode,
    EncoderConfig,
    LaplacianSelection,
    eden_encode,
    encode_baseline,
    laplacian_pe,
    normalize_unit,
    phase_propagation,
)
from .fixtures import FIXTURE_NAMES, fixture_graph
from .graph import (
    Graph,
    GraphParseError,
    Permutation,
    apply_permutation,
    erdos_renyi,
    parse_edge_list,
    parse_graph6,
    random_permutation,
    serialize_graph6,
)
from .isotest import (
    Signature,
    Thresholds,
    Verdict,
    VerdictKind,
    calibrate_thresholds,
    compare_pair,
    dataset_scan,
    exact_isomorphic,
    graph_signature,
    wl1_refine,
)
from .spectral import Centering, Encoding, SpectralDecomposition, fix_signs, pca_project, sym_eigendecomp

__version__ = "0.1.0"
