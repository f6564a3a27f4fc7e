"""MCP resource implementations for quadrangle-lie."""

import json
import logging
from pathlib import Path

from mcp.server import Server
from mcp.types import Resource

from quadrangle_lie.geometry.quadrangle import lines_csv, points_csv
from quadrangle_lie.geometry.rootbases import phi_csv
from quadrangle_lie.verification.regression import load_regression

logger = logging.getLogger("quadrangle-lie")


async def get_resource_list() -> list[Resource]:
    """
    Get list of all available resources.

    Returns:
        list[Resource]: List of resource descriptors
    """
    return [
        Resource(
            uri="quadrangle://points",  # type: ignore[arg-type]
            name="Points",
            description="The 27 points as id,code,a,b,c rows",
            mimeType="text/csv",
        ),
        Resource(
            uri="quadrangle://lines",  # type: ignore[arg-type]
            name="Lines",
            description="The 45 lines as id,p0,p1,p2 rows",
            mimeType="text/csv",
        ),
        Resource(
            uri="quadrangle://phi",  # type: ignore[arg-type]
            name="Root bases",
            description="The 72 root bases as id,p0..p5,s_code,dual_id rows",
            mimeType="text/csv",
        ),
        Resource(
            uri="quadrangle://regression",  # type: ignore[arg-type]
            name="Regression values",
            description="Frozen derived values checked by the regression suite",
            mimeType="application/json",
        ),
    ]


async def read_resource_content(uri: str, regression_path: Path) -> str:
    """
    Read a resource by URI.

    Args:
        uri: Resource URI
        regression_path: Path to the regression file

    Returns:
        str: Resource content

    Raises:
        ValueError: If URI is invalid or the resource cannot be read
    """
    uri_str = str(uri)
    logger.info(f"Resource requested: {uri_str}")

    if uri_str == "quadrangle://points":
        return points_csv()
    if uri_str == "quadrangle://lines":
        return lines_csv()
    if uri_str == "quadrangle://phi":
        return phi_csv()
    if uri_str == "quadrangle://regression":
        return json.dumps(load_regression(regression_path), indent=2)

    raise ValueError(f"Unknown resource URI: {uri_str}")


def register_resources(server: Server, regression_path: Path) -> None:
    """
    Register all MCP resources with the server.

    Args:
        server: MCP server instance
        regression_path: Path to the regression file
    """

    @server.list_resources()
    async def list_resources() -> list[Resource]:
        """List all available resources."""
        return await get_resource_list()

    @server.read_resource()
    async def read_resource(uri: str) -> str:  # type: ignore[arg-type]
        """Read a resource by URI."""
        return await read_resource_content(uri, regression_path)
