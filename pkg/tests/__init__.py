"""GP Valuations Test Suite."""
