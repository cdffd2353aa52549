"""Exact Kirillov-Reshetikhin characters, Q-systems, recurrences and dimension quasipolynomials."""

import json as _json

from ._core import (  # noqa: F401
    EXIT_FAIL,
    EXIT_INCOMPLETE,
    EXIT_PASS,
    EXIT_UNCOVERED,
    EXIT_USAGE,
    Error,
    EvaluationError,
    InvalidArgument,
    RunConfig,
    UncoveredNode,
    cartan_matrix,
    character,
    degree,
    dims,
    eval_sequence,
    h_vector,
    lattice_point_character,
    operator_order,
    quasipolynomial,
    rank,
    verification_bound,
)
from ._core import run as _run


def run(command, **options):
    """Run a CLI command in-process and return (exit_code, report dict).

    Keyword options mirror RunConfig fields, e.g. ``run("orders", lie_type="E6")``.
    """
    cfg = RunConfig()
    for key, value in options.items():
        if not hasattr(cfg, key):
            raise TypeError(f"unknown option {key!r}")
        setattr(cfg, key, value)
    cfg.format = "json"
    code, text = _run(command, cfg)
    return code, _json.loads(text)
