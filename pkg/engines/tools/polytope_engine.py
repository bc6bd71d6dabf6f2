"""
Polytope Engine MCP Tool

Canonical forms, indicator equality, the antipode and nestohedron
f-polynomials exposed as MCP tools.
"""

from typing import Any, Literal

from engines.config import get_settings
from engines.schemas.common import encode_value
from engines.schemas.objects import load_object
from engines.services.building_sets import BuildingSet, f_polynomial
from engines.services.hopf import antipode_face_sum
from engines.services.matroid import FlagMatroid, Matroid
from engines.services.permutahedra import SubmodularGP, canonical_form, indicator_equal
from engines.services.valuation_lab import convex_combination

# Use the same MCP instance as matroid_engine
from engines.tools.matroid_engine import mcp


def _load(data: dict[str, Any]) -> Any:
    return load_object(data, get_settings().max_ground_size)


async def compute_canonical_form(combination: dict[str, Any]) -> dict:
    """
    Canonical form of a polytope, cone or formal combination of them.

    Args:
        combination: One object (e.g. {"gp": {...}}) or {"terms": [{..., "coefficient": "2"}]}

    Returns:
        Dictionary mapping weighted ordered set partitions to coefficients;
        two inputs have equal indicator functions iff their forms agree
    """
    form = canonical_form(convex_combination(_load(combination)))
    return {"canonical_form": encode_value(form), "terms": len(form)}


async def check_indicator_equal(left: dict[str, Any], right: dict[str, Any]) -> dict:
    """Whether two combinations have the same indicator function."""
    equal = indicator_equal(convex_combination(_load(left)), convex_combination(_load(right)))
    return {"equal": equal}


async def compute_antipode(polytope: dict[str, Any]) -> dict:
    """Antipode of a generalized permutahedron as a signed sum of its faces."""
    element = _load(polytope)
    if not isinstance(element, SubmodularGP | Matroid | FlagMatroid):
        raise ValueError(f"Expected a polytope or matroid, got {type(element).__name__}")
    gp = element if isinstance(element, SubmodularGP) else element.to_gp()
    return {"antipode": encode_value(antipode_face_sum(gp))}


async def compute_f_polynomial(
    building_set: dict[str, Any],
    method: Literal["recurrence", "direct"] = "recurrence",
) -> dict:
    """
    f-polynomial of a nestohedron.

    Args:
        building_set: {"building_set": {...}} or {"graph": {"vertices": [...], "edges": [...]}}
        method: "recurrence" over the building set or "direct" face enumeration
    """
    element = _load(building_set)
    if not isinstance(element, BuildingSet):
        raise ValueError(f"Expected a building set or graph, got {type(element).__name__}")
    return {"f_polynomial": encode_value(f_polynomial(element, method=method)), "method": method}


for _tool in (compute_canonical_form, check_indicator_equal, compute_antipode, compute_f_polynomial):
    mcp.tool()(_tool)
