"""
GP Valuation Engines - MCP Server

FastMCP server exposing the valuation engines:
- Matroid Engine: Tutte, characteristic and volume polynomials, beta, CSM, G
- Poset Engine: order polynomials, poset Tutte, Poincare polynomials
- Polytope Engine: canonical forms, indicator equality, antipode, f-polynomials
- Valuation Engine: subdivision checks against the invariant catalog
"""

import logging
from collections.abc import AsyncIterator
from contextlib import asynccontextmanager

from fastmcp import FastMCP

from engines.config import get_settings

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

# Import the MCP instance and tools from tool modules
# This registers all the tools with the MCP server
from engines.tools.matroid_engine import mcp  # noqa: E402
from engines.tools.polytope_engine import *  # noqa: E402, F401, F403
from engines.tools.poset_engine import *  # noqa: E402, F401, F403
from engines.tools.valuation_engine import *  # noqa: E402, F401, F403


@asynccontextmanager
async def lifespan(server: FastMCP) -> AsyncIterator[None]:
    """MCP server lifespan manager."""
    settings = get_settings()
    logger.info(f"{server.name} {settings.app_version} starting...")
    yield
    logger.info(f"{server.name} shutting down...")


# Configure the MCP server
mcp.name = "GP Valuation Engines"
mcp.description = """
Exact valuations on generalized permutahedra, matroids and poset cones.

1. **Matroid Engine** (compute_tutte_polynomial, compute_beta, compute_csm_weights, ...)
   - Tutte, characteristic and volume polynomials
   - Beta invariant under either convention, CSM weights, G-invariant
   - Universal Tutte character of any generalized permutahedron

2. **Poset Engine** (compute_order_polynomial, compute_poset_tutte, compute_poincare)
   - Strict and weak order polynomials of preposets
   - Poset Tutte polynomial and its ideal and antichain specializations

3. **Polytope Engine** (compute_canonical_form, check_indicator_equal, compute_antipode, compute_f_polynomial)
   - Canonical form: indicator functions compared exactly
   - Antipode face sums and nestohedron f-polynomials

4. **Valuation Engine** (check_subdivision, list_builtin_relations, list_valuation_invariants)
   - Strong, weak and pointwise checks of indicator relations

All arithmetic is exact over the rationals.
"""


def main() -> None:
    """Run the MCP server."""
    logger.info("Starting GP Valuation Engines MCP Server")
    mcp.run()


if __name__ == "__main__":
    main()
