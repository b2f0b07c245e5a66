import logging
import logging.config
from pathlib import Path

from app.core.config import settings


def setup_logging(log_level: str = None, log_to_file: bool = None, log_dir: str = None) -> logging.Logger:
    """Setup logging configuration"""
    log_level = (log_level or settings.log_level).upper()
    log_to_file = settings.log_to_file if log_to_file is None else log_to_file
    log_dir = Path(log_dir or settings.log_dir)
    log_format = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    handlers = {
        # stdout is reserved for the stats line printed by the CLI
        "console": {
            "class": "logging.StreamHandler",
            "level": log_level,
            "formatter": "default",
            "stream": "ext://sys.stderr",
        }
    }
    app_handlers = ["console"]

    if log_to_file:
        log_dir.mkdir(exist_ok=True)
        handlers["file"] = {
            "class": "logging.FileHandler",
            "level": "DEBUG",
            "formatter": "detailed",
            "filename": str(log_dir / "csf.log"),
            "mode": "a",
        }
        handlers["error_file"] = {
            "class": "logging.FileHandler",
            "level": "ERROR",
            "formatter": "detailed",
            "filename": str(log_dir / "csf-errors.log"),
            "mode": "a",
        }
        app_handlers += ["file", "error_file"]

    logging_config = {
        "version": 1,
        "disable_existing_loggers": False,
        "formatters": {
            "default": {
                "format": log_format,
                "datefmt": "%Y-%m-%d %H:%M:%S",
            },
            "detailed": {
                "format": "%(asctime)s - %(name)s - %(levelname)s - %(module)s - %(funcName)s - %(lineno)d - %(message)s",
                "datefmt": "%Y-%m-%d %H:%M:%S",
            }
        },
        "handlers": handlers,
        "loggers": {
            "app": {
                "level": log_level,
                "handlers": app_handlers,
                "propagate": False,
            }
        },
        "root": {
            "level": "WARNING",
            "handlers": ["console"],
        }
    }

    logging.config.dictConfig(logging_config)
    return logging.getLogger("app")


# Create default logger instance
logger = setup_logging()
