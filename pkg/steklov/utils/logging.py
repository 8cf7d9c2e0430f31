import logging
import sys
from logging.handlers import TimedRotatingFileHandler
from typing import Dict, Optional

# ANSI color codes for terminal output
COLORS = {
    'DEBUG': '\033[36m',     # Cyan
    'INFO': '\033[32m',      # Green
    'WARNING': '\033[33m',   # Yellow
    'ERROR': '\033[31m',     # Red
    'CRITICAL': '\033[41m',  # Red background
    'RESET': '\033[0m'
}

_configured = False


class ColoredFormatter(logging.Formatter):
    """
    Formatter that colors the level name of each record.

    Only the console handler uses it; file output always stays plain so rotated
    logs can be grepped.
    """

    def format(self, record):
        format_orig = self._style._fmt

        if record.levelname in COLORS:
            self._style._fmt = format_orig.replace(
                "%(levelname)s",
                f"{COLORS[record.levelname]}%(levelname)s{COLORS['RESET']}",
            )

        result = logging.Formatter.format(self, record)
        self._style._fmt = format_orig
        return result


def setup_logging(level: Optional[str] = None, force: bool = False) -> None:
    """
    One-time logging configuration for the whole package.

    Console output goes to standard error: standard output is reserved for the
    JSON/CSV results the CLI emits. A rotating file handler is added only when
    ``config.log.file`` is set.

    Args:
        level: Optional override for the console level (e.g. from ``--log-level``)
        force: Reconfigure even if logging was already set up
    """
    global _configured
    if _configured and not force:
        return

    # Import config here to avoid circular imports
    from steklov.config import config

    root_logger = logging.getLogger()
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    level_name = (level or config.log.level).upper()
    log_level = getattr(logging, level_name, logging.WARNING)
    root_logger.setLevel(logging.DEBUG)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(log_level)

    if config.log.colored and sys.stderr.isatty():
        console_formatter = ColoredFormatter(fmt=config.log.format, datefmt="%Y-%m-%d %H:%M:%S")
    else:
        console_formatter = logging.Formatter(fmt=config.log.format, datefmt="%Y-%m-%d %H:%M:%S")
    console_handler.setFormatter(console_formatter)
    root_logger.addHandler(console_handler)

    file_handler = None
    if config.log.file is not None:
        rotation_map: Dict[str, str] = {
            "daily": "D",
            "weekly": "W0",  # Monday
            "monthly": "D"
        }
        rotation = config.log.rotation.lower()
        when = rotation_map.get(rotation, "D")
        interval = 30 if rotation == "monthly" else 1
        try:
            config.log.file.parent.mkdir(parents=True, exist_ok=True)
            file_handler = TimedRotatingFileHandler(
                filename=str(config.log.file),
                when=when,
                interval=interval,
                backupCount=config.log.backup_count,
                encoding="utf-8"
            )
            file_handler.suffix = "%Y-%m-%d"
            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(
                logging.Formatter(fmt=config.log.format, datefmt="%Y-%m-%d %H:%M:%S")
            )
            root_logger.addHandler(file_handler)
        except (IOError, PermissionError) as e:
            print(f"Warning: Could not create log file at {config.log.file}: {e}", file=sys.stderr)

    _configured = True
    root_logger.debug(f"Logging initialized: level={level_name}, file={config.log.file}")


def get_logger(name: Optional[str] = None) -> logging.Logger:
    """
    Get a logger instance for the specified module.

    Args:
        name: Module name, typically __name__

    Returns:
        Logger instance configured according to application settings
    """
    return logging.getLogger(name)
