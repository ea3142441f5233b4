import logging
import os
from datetime import datetime

import colorlog

from config import Config

FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

def get_logger(name):
    """Set up a logger with the given name."""
    logger = logging.getLogger(name)

    # Skip if already configured
    if logger.handlers:
        return logger

    logger.setLevel(getattr(logging, Config.LOGGING["LEVEL"].upper(), logging.INFO))

    # Console handler (stderr, so JSON on stdout stays clean)
    console_handler = colorlog.StreamHandler()
    console_handler.setFormatter(colorlog.ColoredFormatter('%(log_color)s' + FORMAT))
    logger.addHandler(console_handler)

    # File handler with daily rotation
    if Config.LOGGING["TO_FILE"]:
        log_dir = Config.LOGGING["DIR"]
        os.makedirs(log_dir, exist_ok=True)
        log_file = os.path.join(log_dir, f'{name}-{datetime.now().strftime("%Y-%m-%d")}.log')
        file_handler = logging.FileHandler(log_file)
        file_handler.setFormatter(logging.Formatter(FORMAT))
        logger.addHandler(file_handler)

    return logger
