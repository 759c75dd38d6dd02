"""SDP generation for external solvers and exact rounding of their output."""

from flagforge.sdp.generate import SdpProblem, generate_sdp
from flagforge.sdp.rounding import (
    DEFAULT_DENOMINATOR_CAP,
    RoundingSpec,
    certificate_from_solution,
    collect_forced_vectors,
    round_block,
    round_solution,
)
from flagforge.sdp.sdpa import (
    SdpSolution,
    parse_sdpa_solution,
    read_sdpa_solution,
    sdpa_text,
    write_sdpa,
)

__all__ = [
    "DEFAULT_DENOMINATOR_CAP",
    "RoundingSpec",
    "SdpProblem",
    "SdpSolution",
    "certificate_from_solution",
    "collect_forced_vectors",
    "generate_sdp",
    "parse_sdpa_solution",
    "read_sdpa_solution",
    "round_block",
    "round_solution",
    "sdpa_text",
    "write_sdpa",
]
