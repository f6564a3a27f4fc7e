"""MCP (Model Context Protocol) tools and resources for quadrangle-lie."""
