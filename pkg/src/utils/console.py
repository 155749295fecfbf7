"""Console status output (standard error only, never the CSV stream)."""

import click
from colorama import Fore, Style, init as colorama_init

from .config import Config

colorama_init()


def _emit(marker: str, color: str, message: str, force: bool = False):
    if force or Config.VERBOSE:
        click.echo(f"{color}{marker}{Style.RESET_ALL} {message}", err=True)


def step(message: str):
    """Announce a pipeline step (verbose only)."""
    _emit("▶", Fore.CYAN, message)


def success(message: str):
    """Report a completed step (verbose only)."""
    _emit("   ✓", Fore.GREEN, message)


def warn(message: str):
    """Warnings are always shown."""
    _emit("⚠️ ", Fore.YELLOW, message, force=True)


def error(message: str):
    """One-line diagnostic for a failed run."""
    _emit("❌", Fore.RED, message, force=True)
