"""Command-line interface for perronpath."""
