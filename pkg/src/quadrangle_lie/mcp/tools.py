"""MCP tool implementations for quadrangle-lie."""

import logging
from typing import Any

from mcp.server import Server
from mcp.types import Tool

from quadrangle_lie.geometry.quadrangle import LINE_COUNT, build_catalog
from quadrangle_lie.geometry.rootbases import enumerate_phi
from quadrangle_lie.geometry.weyl import line_normalizer, order3_in_normalizer, weyl_group
from quadrangle_lie.liealg.operators import default_operator_table
from quadrangle_lie.liealg.subalgebra import (
    ClosureError,
    InvariantViolation,
    NotStableError,
    build_dl,
    build_e6,
    build_g2,
    fold_pattern,
    select_d,
)
from quadrangle_lie.liealg.tables import structure_table
from quadrangle_lie.verification.context import SuiteContext
from quadrangle_lie.verification.suites import SUITES, run_suite

logger = logging.getLogger("quadrangle-lie")

_LINE_SCHEMA = {"type": "integer", "description": f"Line id (0..{LINE_COUNT - 1}), default 0"}
_D_SCHEMA = {
    "type": ["string", "integer"],
    "description": "'auto' (default) or the index of d among the order-3 elements of N_W(L)",
}


def register_tools(server: Server) -> None:
    """
    Register all MCP tools with the server.

    Args:
        server: MCP server instance
    """

    @server.call_tool()
    async def call_tool(name: str, arguments: dict[str, Any]) -> list[Any]:
        """Handle tool calls."""
        logger.info(f"Tool called: {name} with arguments: {arguments}")

        try:
            if name == "catalog_summary":
                return await handle_catalog_summary(arguments)
            elif name == "weyl_normalizer":
                return await handle_weyl_normalizer(arguments)
            elif name == "run_suite":
                return await handle_run_suite(arguments)
            elif name == "build_algebra":
                return await handle_build_algebra(arguments)
            else:
                raise ValueError(f"Unknown tool: {name}")
        except Exception as e:
            logger.error(f"Error executing tool {name}: {e}", exc_info=True)
            raise

    @server.list_tools()
    async def list_tools() -> list[Tool]:
        """List all available tools."""
        return [
            Tool(
                name="catalog_summary",
                description="Counts of points, lines, exterior points, root bases and |W|",
                inputSchema={"type": "object", "properties": {}},
            ),
            Tool(
                name="weyl_normalizer",
                description="Order of N_W(L), its order-3 elements and their fold patterns",
                inputSchema={"type": "object", "properties": {"line": _LINE_SCHEMA}},
            ),
            Tool(
                name="run_suite",
                description="Run one verification suite and report pass/fail with counterexamples",
                inputSchema={
                    "type": "object",
                    "properties": {
                        "suite": {"type": "string", "enum": list(SUITES), "description": "Suite name"},
                        "line": _LINE_SCHEMA,
                        "d": _D_SCHEMA,
                    },
                    "required": ["suite"],
                },
            ),
            Tool(
                name="build_algebra",
                description="Build E6, D4 or G2, certify closure and summarize its structure table",
                inputSchema={
                    "type": "object",
                    "properties": {
                        "target": {"type": "string", "enum": ["e6", "d4", "g2"]},
                        "line": _LINE_SCHEMA,
                        "d": _D_SCHEMA,
                        "include_table": {
                            "type": "boolean",
                            "description": "Append the JSON structure table",
                        },
                    },
                    "required": ["target"],
                },
            ),
        ]


def _text(text: str) -> list[Any]:
    return [{"type": "text", "text": text}]


async def handle_catalog_summary(_arguments: dict[str, Any]) -> list[Any]:
    """Handle catalog_summary tool call."""
    summary = build_catalog().summary()
    return _text(
        f"points={summary['points']} lines={summary['lines']} exterior={summary['exterior']} "
        f"rootbases={len(enumerate_phi())} weyl={weyl_group().order}"
    )


async def handle_weyl_normalizer(arguments: dict[str, Any]) -> list[Any]:
    """Handle weyl_normalizer tool call."""
    try:
        line = build_catalog().line(arguments.get("line", 0))
    except ValueError as e:
        return _text(f"Error: {e}")

    group = weyl_group()
    pattern = fold_pattern(group, line)
    lines = [
        f"Line {line.id} (points {', '.join(str(p) for p in line.points)})",
        f"  normalizer order: {len(line_normalizer(group, line))}",
        f"  order-3 elements: {len(order3_in_normalizer(group, line))}",
    ]
    lines.extend(f"  fold pattern ({a} fixed, {b} orbits): {n}" for (a, b), n in pattern.items())
    return _text("\n".join(lines))


async def handle_run_suite(arguments: dict[str, Any]) -> list[Any]:
    """Handle run_suite tool call."""
    ctx = SuiteContext(line_id=arguments.get("line", 0), d_policy=arguments.get("d", "auto"))
    try:
        result = run_suite(arguments["suite"], ctx)
    except ValueError as e:
        return _text(f"Error: {e}")

    status = "PASS" if result.passed else "FAIL"
    lines = [f"{status} {result.name}: {result.checked} checks, {result.failures} failures"]
    lines.extend(f"  {violation}" for violation in result.violations[:10])
    return _text("\n".join(lines))


async def handle_build_algebra(arguments: dict[str, Any]) -> list[Any]:
    """Handle build_algebra tool call."""
    target = arguments["target"]
    table = default_operator_table()
    try:
        if target == "e6":
            sub = build_e6(table)
        else:
            line = build_catalog().line(arguments.get("line", 0))
            if target == "d4":
                sub = build_dl(line, table)
            elif target == "g2":
                sub = build_g2(line, select_d(weyl_group(), line, arguments.get("d", "auto")), table)
            else:
                return _text(f"Error: Unknown target: {target}")
        structure = structure_table(sub)
    except (ValueError, ClosureError, InvariantViolation, NotStableError) as e:
        return _text(f"Error: {e}")

    lines = [
        f"{sub.name}: dim={sub.dim}",
        f"nonzero brackets: {len(structure.triples)}",
        f"sha256: {structure.digest()}",
    ]
    if arguments.get("include_table"):
        lines.append("")
        lines.append(structure.to_json())
    return _text("\n".join(lines))
