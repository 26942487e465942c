"""Frame builders and brute-force reference implementations used by tests."""
