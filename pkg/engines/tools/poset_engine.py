"""
Poset Engine MCP Tool

Order polynomials, the poset Tutte polynomial and Poincare polynomials
exposed as MCP tools.
"""

from typing import Any

from engines.config import get_settings
from engines.schemas.common import encode_value
from engines.schemas.objects import PosetPayload, enforce_ground_limit
from engines.services.poset_invariants import (
    antichain_generating_function,
    antichain_polynomial,
    lower_ideal_polynomial,
    minimal_element_count,
    order_polynomial,
    ordered_poincare,
    phi_ell,
    poincare,
    poset_tutte,
    upper_ideal_polynomial,
)
from engines.services.preposet import Poset, Preposet

# Use the same MCP instance as matroid_engine
from engines.tools.matroid_engine import mcp


def _preposet(poset: dict[str, Any]) -> Preposet:
    element = PosetPayload.model_validate(poset).to_preposet()
    enforce_ground_limit(element, get_settings().max_ground_size)
    return element


def _poset(poset: dict[str, Any]) -> Poset:
    preposet = _preposet(poset)
    if not preposet.is_antisymmetric:
        raise ValueError(f"{preposet} is not a poset")
    return Poset(preposet.ground, preposet.relation)


async def compute_order_polynomial(poset: dict[str, Any], strict: bool = True) -> dict:
    """
    Order polynomial of a (pre)poset.

    Args:
        poset: {"ground": [...], "relations": [[a, b], ...]} with a <= b
        strict: Count strictly order-preserving maps to a chain (else weakly)
    """
    value = order_polynomial(_preposet(poset), strict=strict)
    return {"order_polynomial": encode_value(value), "strict": strict}


async def compute_poset_tutte(poset: dict[str, Any]) -> dict:
    """Tutte polynomial of a poset with its ideal and antichain specializations."""
    p = _poset(poset)
    return {
        "tutte": encode_value(poset_tutte(p)),
        "lower_ideals": encode_value(lower_ideal_polynomial(p)),
        "upper_ideals": encode_value(upper_ideal_polynomial(p)),
        "antichains": encode_value(antichain_polynomial(p)),
        "minimal_elements": minimal_element_count(p),
        "generating_function": encode_value(antichain_generating_function(p)),
    }


async def compute_poincare(poset: dict[str, Any], order: list[str] | None = None) -> dict:
    """
    Poincare polynomials of a poset cone.

    Args:
        poset: {"ground": [...], "relations": [[a, b], ...]}
        order: A linear order of the ground set; adds the count of
            transversal partitions proper for it
    """
    p = _poset(poset)
    result = {
        "poincare": encode_value(poincare(p)),
        "ordered": encode_value(ordered_poincare(p)),
    }
    if order:
        result["phi_ell"] = encode_value(phi_ell(p, order))
    return result


for _tool in (compute_order_polynomial, compute_poset_tutte, compute_poincare):
    mcp.tool()(_tool)
