# This file turns this directory into the `zenoprotect.utils` package.
# It allows imports such as `from zenoprotect.utils.logging import setup_logging`.
import hashlib
import logging as _logging

from .logging import setup_logging


def initialize_logger(output_path, verbosity=1):
    """
    Initialize the zenoprotect logger using the package logging setup.

    Parameters
    ----------
    output_path : str or None
        Log file to write in addition to the console.
    verbosity : {0, 1, 2}, optional
        Default is 1.

            * 0 - Only warnings will be logged.
            * 1 - Information and warnings will be logged.
            * 2 - Debug messages, information, and warnings will all be\
                  logged.

    """
    level = _logging.DEBUG if verbosity >= 2 else (
        _logging.INFO if verbosity == 1 else _logging.WARNING)
    setup_logging(level=level, log_file=output_path)


def file_checksum(path, chunk_size=1 << 16):
    """SHA-256 hex digest of a file's bytes."""
    digest = hashlib.sha256()
    with open(path, 'rb') as handle:
        for chunk in iter(lambda: handle.read(chunk_size), b''):
            digest.update(chunk)
    return digest.hexdigest()


__all__ = ['setup_logging', 'initialize_logger', 'file_checksum']
