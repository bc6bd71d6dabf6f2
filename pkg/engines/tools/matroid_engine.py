"""
Matroid Engine MCP Tool

Matroid and generalized permutahedron invariants exposed as MCP tools.
"""

from typing import Any, Literal

from fastmcp import FastMCP

from engines.config import get_settings
from engines.schemas.common import encode_value
from engines.schemas.objects import MatroidPayload, enforce_ground_limit, load_object
from engines.services.hopf import (
    get_character,
    qsym_invariant,
    tutte_specialization,
    universal_norm,
    universal_tutte,
)
from engines.services.matroid import FlagMatroid, Matroid
from engines.services.matroid_invariants import (
    VP_ASSUMPTIONS,
    BetaConvention,
    beta,
    bjr_character,
    char_poly,
    csm_weight,
    g_invariant,
    reduced_char,
    tutte,
    volume_polynomial,
)
from engines.services.osp import OrderedSetPartition, all_osps
from engines.services.permutahedra import SubmodularGP

# Initialize MCP server (will be started from server.py)
mcp = FastMCP("GP Valuation Engines")


def _matroid(matroid: dict[str, Any]) -> Matroid:
    element = MatroidPayload.model_validate(matroid).to_domain()
    enforce_ground_limit(element, get_settings().max_ground_size)
    return element


def _convention(convention: BetaConvention | None) -> BetaConvention:
    return convention or get_settings().beta_convention


async def compute_tutte_polynomial(matroid: dict[str, Any]) -> dict:
    """
    Tutte polynomial T_M(x, y) of a matroid.

    Args:
        matroid: {"ground": [...], "bases": [[...], ...]}

    Returns:
        Dictionary mapping monomials such as "x^2*y" to rational coefficients
    """
    m = _matroid(matroid)
    return {"tutte": encode_value(tutte(m)), "rank": m.rank()}


async def compute_characteristic_polynomial(matroid: dict[str, Any]) -> dict:
    """
    Characteristic polynomial and, when defined, the reduced one.

    The reduced polynomial is chi_M(t) / (t - 1); it is omitted for the
    rank-0 loopless matroid.
    """
    m = _matroid(matroid)
    result: dict[str, Any] = {"char_poly": encode_value(char_poly(m))}
    if m.rank() > 0 or m.loops():
        result["reduced"] = encode_value(reduced_char(m))
    return result


async def compute_beta(
    matroid: dict[str, Any], convention: Literal["crapo", "paper"] | None = None
) -> dict:
    """
    Beta invariant of a matroid.

    Args:
        matroid: {"ground": [...], "bases": [[...], ...]}
        convention: "crapo" (Tutte x-coefficient) or "paper" (|constant term of the
            reduced characteristic polynomial|); defaults to the configured one
    """
    chosen = _convention(convention)
    return {"beta": encode_value(beta(_matroid(matroid), chosen)), "convention": chosen}


async def compute_csm_weights(
    matroid: dict[str, Any],
    partition: str | None = None,
    convention: Literal["crapo", "paper"] | None = None,
) -> dict:
    """
    Chern-Schwartz-MacPherson weights of the cones of the matroid polytope.

    Args:
        matroid: {"ground": [...], "bases": [[...], ...]}
        partition: One ordered set partition such as "1|23|4"; all of them when omitted
        convention: Beta convention used in the weight
    """
    m = _matroid(matroid)
    chosen = _convention(convention)
    partitions = [OrderedSetPartition.parse(partition)] if partition else list(all_osps(m.ground))
    weights = {str(p): csm_weight(m, p, chosen) for p in partitions}
    return {"weights": encode_value(weights), "convention": chosen}


async def compute_g_invariant(matroid: dict[str, Any]) -> dict:
    """Derksen's G-invariant, keyed by rank-jump compositions."""
    return {"g_invariant": encode_value(g_invariant(_matroid(matroid)))}


async def compute_bjr_character(matroid: dict[str, Any]) -> dict:
    """Billera-Jia-Reiner character value and its quasisymmetric invariant."""
    m = _matroid(matroid)
    return {
        "character": encode_value(bjr_character(m)),
        "qsym": encode_value(qsym_invariant(get_character("bjr"), m)),
    }


async def compute_volume_polynomial(matroid: dict[str, Any]) -> dict:
    """Volume polynomial of the matroid's Chow ring, with the conventions it assumes."""
    return {
        "volume_polynomial": encode_value(volume_polynomial(_matroid(matroid))),
        "assumptions": dict(VP_ASSUMPTIONS),
    }


async def compute_universal_tutte(polytope: dict[str, Any]) -> dict:
    """
    Universal Tutte character of a generalized permutahedron.

    Args:
        polytope: One object keyed by "gp", "matroid" or "flag_matroid"

    Returns:
        The character and the universal norm; for matroids also the Tutte
        polynomial recovered by specialization
    """
    element = load_object(polytope, get_settings().max_ground_size)
    if not isinstance(element, SubmodularGP | Matroid | FlagMatroid):
        raise ValueError(f"Expected a polytope or matroid, got {type(element).__name__}")
    gp = element if isinstance(element, SubmodularGP) else element.to_gp()
    character = universal_tutte(gp)
    result: dict[str, Any] = {
        "universal_tutte": encode_value(character),
        "norm": encode_value(universal_norm(gp)),
    }
    if isinstance(element, Matroid):
        result["tutte"] = encode_value(tutte_specialization(character))
    return result


for _tool in (
    compute_tutte_polynomial,
    compute_characteristic_polynomial,
    compute_beta,
    compute_csm_weights,
    compute_g_invariant,
    compute_bjr_character,
    compute_volume_polynomial,
    compute_universal_tutte,
):
    mcp.tool()(_tool)
