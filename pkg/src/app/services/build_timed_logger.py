import logging
from logging.handlers import TimedRotatingFileHandler
from pathlib import Path

from settings import settings


def build_timed_logger(logger_name: str, filename: str) -> logging.Logger:
    """
    Returns a logger writing JSON lines to `settings.log_path/filename`,
    rotated daily and kept for `settings.log_backup_days` days
    """
    logger = logging.getLogger(logger_name)
    logger.setLevel(logging.INFO)
    logger.propagate = False

    # Modules import each logger once, but tests may rebuild them
    if logger.handlers:
        return logger

    log_dir = Path(settings.log_path)
    log_dir.mkdir(parents=True, exist_ok=True)
    handler = TimedRotatingFileHandler(
        log_dir / filename,
        when="d",
        interval=1,
        backupCount=settings.log_backup_days,
        encoding="utf-8",
        utc=True,
    )
    logger.addHandler(handler)

    return logger


construction_logger = build_timed_logger("construction_logger", "construction.log")
analysis_logger = build_timed_logger("analysis_logger", "analysis.log")
verification_logger = build_timed_logger("verification_logger", "verification.log")
error_logger = build_timed_logger("error_logger", "error.log")
