"""End-to-end tests over whole sequences and the CLI."""
