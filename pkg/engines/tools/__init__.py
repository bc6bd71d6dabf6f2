"""MCP Tool implementations for the valuation engines."""
