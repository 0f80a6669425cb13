"""rescode: resolution coding for finite target distributions.

Build fixed-to-variable resolution codes that turn fair random bits into
symbol streams approximating a target memoryless source, quantify how
well they do it, and compare against the optimal block-to-block baseline.
"""

from .probdist import (
    Pmf,
    TypedPmf,
    UnboundedRatioError,
    entropy,
    kl_divergence,
    kl_tv_bound,
    min_type_order,
    variational_distance,
)
from .codetree import (
    Codebook,
    CodebookError,
    DuplicateLeafError,
    IncompleteCodebookError,
    LeafDistribution,
    PrefixViolationError,
    leaf_distribution,
    product_codebook,
    validate_complete,
)
from .tunstall import BalanceReport, build_tunstall, check_balance, is_valid_size, round_size_down
from .mtype import brute_force_quantize, quantize
from .f2v import (
    ArrayBitSource,
    BitSourceExhausted,
    FileBitSource,
    RandomBitSource,
    ResolutionCode,
    StreamResult,
    build_code,
    encode_word,
    generate_stream,
    induced_distribution,
)
from .block import build_block_code
from .metrics import (
    BoundCheck,
    RateReport,
    bound_suite,
    convergence_probe,
    rate_report,
    sqrt_gap_policy,
)

__version__ = "0.1.0"

__all__ = [
    "Pmf",
    "TypedPmf",
    "UnboundedRatioError",
    "entropy",
    "kl_divergence",
    "variational_distance",
    "kl_tv_bound",
    "min_type_order",
    "Codebook",
    "LeafDistribution",
    "CodebookError",
    "PrefixViolationError",
    "IncompleteCodebookError",
    "DuplicateLeafError",
    "validate_complete",
    "leaf_distribution",
    "product_codebook",
    "BalanceReport",
    "build_tunstall",
    "check_balance",
    "is_valid_size",
    "round_size_down",
    "quantize",
    "brute_force_quantize",
    "ResolutionCode",
    "StreamResult",
    "BitSourceExhausted",
    "RandomBitSource",
    "ArrayBitSource",
    "FileBitSource",
    "build_code",
    "encode_word",
    "induced_distribution",
    "generate_stream",
    "build_block_code",
    "RateReport",
    "BoundCheck",
    "rate_report",
    "bound_suite",
    "convergence_probe",
    "sqrt_gap_policy",
]
