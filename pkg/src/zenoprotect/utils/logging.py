import logging
import sys
import os


def setup_logging(level=logging.INFO, log_file=None):
    """Set up logging configuration.

    Args:
        level: Logging level (default: INFO)
        log_file: Optional log file path

    Handlers installed by an earlier call are replaced, so repeated
    scenario runs in one process do not duplicate output.
    """
    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    root_logger = logging.getLogger()
    root_logger.setLevel(level)
    for handler in list(root_logger.handlers):
        if getattr(handler, "_zenoprotect", False):
            root_logger.removeHandler(handler)
            handler.close()

    console_handler = logging.StreamHandler(sys.stdout)
    console_handler.setFormatter(formatter)
    console_handler._zenoprotect = True
    root_logger.addHandler(console_handler)

    if log_file:
        log_dir = os.path.dirname(log_file)
        if log_dir:
            os.makedirs(log_dir, exist_ok=True)
        file_handler = logging.FileHandler(log_file)
        file_handler.setFormatter(formatter)
        file_handler._zenoprotect = True
        root_logger.addHandler(file_handler)

    return root_logger
