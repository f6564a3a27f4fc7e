"""MCP server entry point for quadrangle-lie."""

import logging
import sys

from mcp.server import Server
from mcp.server.stdio import stdio_server

from quadrangle_lie.config import get_log_level, get_regression_path
from quadrangle_lie.geometry.quadrangle import build_catalog
from quadrangle_lie.geometry.rootbases import enumerate_phi
from quadrangle_lie.mcp.resources import register_resources
from quadrangle_lie.mcp.tools import register_tools

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    stream=sys.stderr,  # MCP servers log to stderr
)
logger = logging.getLogger("quadrangle-lie")


def warm_catalogs() -> dict[str, int]:
    """
    Build the quadrangle and root-base catalogs before serving.

    Returns:
        dict[str, int]: Catalog counts
    """
    logger.setLevel(get_log_level())
    summary = build_catalog().summary()
    summary["rootbases"] = len(enumerate_phi())
    logger.info(f"Catalogs ready: {summary}")
    return summary


async def main() -> None:
    """
    Main entry point for the quadrangle-lie MCP server.

    Builds the catalogs, registers tools and resources, and serves over stdio.
    """
    logger.info("Starting quadrangle-lie MCP server...")

    try:
        warm_catalogs()
    except Exception as e:
        logger.error(f"Catalog construction failed: {e}")
        sys.exit(1)

    server = Server("quadrangle-lie")

    register_tools(server)
    logger.info("Tools registered")

    regression_path = get_regression_path()
    register_resources(server, regression_path)
    logger.info(f"Resources registered (regression file {regression_path})")

    logger.info("quadrangle-lie MCP server is ready")
    async with stdio_server() as (read_stream, write_stream):
        await server.run(
            read_stream,
            write_stream,
            server.create_initialization_options(),
        )


def run() -> None:
    """Console entry point: serve until interrupted."""
    import asyncio

    try:
        asyncio.run(main())
    except KeyboardInterrupt:
        logger.info("Server shutdown requested")
    except Exception as e:
        logger.error(f"Server error: {e}", exc_info=True)
        sys.exit(1)


if __name__ == "__main__":
    run()
