import json
import logging
import traceback
from datetime import datetime

from app.utils.error_codes import ErrorCodes


def get_timestamp() -> str:
    return datetime.now().strftime("%Y-%m-%d %H:%M:%S")


def log_event(logger: logging.Logger, operation: str, params: dict, **fields):
    logger.info(
        json.dumps(
            {
                "operation": operation,
                "params": params,
                **fields,
                "timestamp": get_timestamp(),
            },
            ensure_ascii=False,
            default=str,
        )
    )


def log_error(
    logger: logging.Logger,
    operation: str,
    params: dict,
    error: Exception,
):
    error_code = getattr(error, "error_code", ErrorCodes.GENERIC)
    logger.error(
        json.dumps(
            {
                "operation": operation,
                "params": params,
                "error": str(error),
                "error_code": int(error_code),
                "traceback": traceback.format_exc(),
                "timestamp": get_timestamp(),
            },
            ensure_ascii=False,
            default=str,
        )
    )


def log_report(logger: logging.Logger, report) -> None:
    """Writes a finished verification report (without its timing field)"""
    record = report.record(include_timing=False)
    record["timestamp"] = get_timestamp()
    logger.info(json.dumps(record, ensure_ascii=False, default=str))
