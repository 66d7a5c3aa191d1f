#!/usr/bin/env python3
"""
Main entry point for the convopoly CLI.
Imports main from cli/commands.py
"""

from cli.commands import main, run

# Re-export the CLI entry points
__all__ = ["main", "run"]

if __name__ == "__main__":
    run()
