"""
Valuation Engine MCP Tool

Subdivision checks against the invariant catalog exposed as MCP tools.
"""

import random
from typing import Any

from engines.config import get_settings
from engines.schemas.objects import load_subdivision
from engines.services.valuation_lab import (
    get_builtin,
    list_builtins,
    list_invariants,
    run_checks,
)

# Use the same MCP instance as matroid_engine
from engines.tools.matroid_engine import mcp


async def check_subdivision(
    builtin: str | None = None,
    subdivision: dict[str, Any] | None = None,
    invariants: list[str] | None = None,
    samples: int | None = None,
) -> dict:
    """
    Check that invariants vanish on an indicator relation.

    Runs the strong check (canonical form of the relation), a weak check per
    invariant (alternating sum of its values) and a pointwise check at
    seeded random points.

    Args:
        builtin: Name of a built-in relation (see list_builtin_relations)
        subdivision: {"parent": {...}, "cells": [{..., "coefficient": "-1"}], "name": "..."}
        invariants: Invariant names; all applicable ones when omitted
        samples: Number of pointwise samples; defaults to the configured count

    Returns:
        Dictionary with per-invariant reports and an overall "passed"
    """
    settings = get_settings()
    if builtin:
        relation = get_builtin(builtin)
    elif subdivision is not None:
        relation = load_subdivision(subdivision, settings.max_ground_size)
    else:
        raise ValueError("Provide either builtin or subdivision")
    count = settings.pointwise_samples if samples is None else samples
    report = run_checks(relation, invariants, count, random.Random(settings.random_seed))
    return report.summary()


async def list_builtin_relations() -> dict:
    """Names, sizes and descriptions of the built-in relations."""
    return {"relations": list_builtins()}


async def list_valuation_invariants() -> dict:
    """Registered invariants with the object kind each consumes."""
    return {"invariants": list_invariants()}


for _tool in (check_subdivision, list_builtin_relations, list_valuation_invariants):
    mcp.tool()(_tool)
