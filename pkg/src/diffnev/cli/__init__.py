"""Command-line surface: expression parser, configuration and subcommands."""

from .main import main

__all__ = ["main"]
