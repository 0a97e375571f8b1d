"""Command-line interface and batch runner."""

from .cli import main as cli_main
from .cli import run
from .runner import main as runner_main

__all__ = ["cli_main", "run", "runner_main"]
