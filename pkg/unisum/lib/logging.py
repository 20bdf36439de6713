import logging
import traceback

from pythonjsonlogger import jsonlogger

from unisum.constants import LOG_LEVEL

# Configure the root logger to use JSON formatting
root_logger = logging.getLogger()
root_logger.setLevel(LOG_LEVEL)

# Remove any default handlers
root_logger.handlers = []

stream_handler = logging.StreamHandler()
stream_handler.setLevel(LOG_LEVEL)
formatter = jsonlogger.JsonFormatter("%(asctime)s %(levelname)s %(name)s %(message)s")
stream_handler.setFormatter(formatter)
root_logger.addHandler(stream_handler)

logger = logging.getLogger("unisum")


def traceback_log_err(e: Exception, message: str = "Command failed"):
    formatted_traceback = traceback.format_exc().replace("\n", " | ")
    logger.error(
        message,
        extra={
            "error": str(e),
            "error_type": type(e).__name__,
            "traceback": formatted_traceback,
        },
    )
