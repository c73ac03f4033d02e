"""File formats, enumeration, brute-force oracles, campaigns and the CLI."""
