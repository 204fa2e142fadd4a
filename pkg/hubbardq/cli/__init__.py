"""
CLI Module
"""

from hubbardq.cli.main import main

__all__ = ["main"]
