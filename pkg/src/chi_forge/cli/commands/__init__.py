"""Subcommands of the chi-forge CLI."""
