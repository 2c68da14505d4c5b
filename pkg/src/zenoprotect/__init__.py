"""
This is the main module for zenoprotect.
"""
import logging

from .version import __version__
from .cli import cli as main

logging.getLogger(__name__).addHandler(logging.NullHandler())

__all__ = ["polarization", "zeno", "plant", "spgd", "analysis", "setup",
           "utils", "__version__", "main"]
