"""Console and rotating-file logging for laboratory runs."""
from datetime import datetime
from io import StringIO
import logging
from logging.handlers import RotatingFileHandler
import os
from pprint import pp
import sys

from timpy.tools.spectral.constants import ENCODING

LOG_FORMAT = "%(asctime)s %(levelname)-8s %(message)s"
LOG_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"
LOGFILE_MAX_BYTES = 52000000
LOGFILE_BACKUP_COUNT = 5
DEFAULT_LOG_PATH = "/tmp/log"


# .....................................................................................
def _file_handler(filename):
    return RotatingFileHandler(
        filename, mode="w", maxBytes=LOGFILE_MAX_BYTES,
        backupCount=LOGFILE_BACKUP_COUNT, encoding=ENCODING)


# .....................................................................................
class Logger:
    """Named logger writing lab runs to a log file and/or the console.

    Attributes:
        log_name (str): name of the underlying `logging.Logger`.
        filename (str): log file, None when logging to the console only.
        logger (logging.Logger): the configured logger.
    """

    # .......................
    def __init__(
            self, log_name, log_path=None, log_console=True,
            log_level=logging.INFO):
        """Constructor.

        Args:
            log_name (str): A name for the logger.
            log_path (str): A directory for the log file, None for no file.
            log_console (bool): Should logs be written to the console.
            log_level (int): What level of logs should be retained.
        """
        self.log_name = log_name
        self.log_level = log_level
        self.filename = None
        if log_path is not None:
            os.makedirs(log_path, exist_ok=True)
            self.filename = os.path.join(log_path, f"{log_name}.log")

        self.logger = logging.getLogger(log_name)
        self.logger.setLevel(logging.DEBUG)
        self.logger.propagate = False
        # One set of handlers per name, however often a command is run
        self.close()
        formatter = logging.Formatter(LOG_FORMAT, LOG_DATE_FORMAT)
        for handler in self._handlers(log_console):
            handler.setLevel(log_level)
            handler.setFormatter(formatter)
            self.logger.addHandler(handler)

    # ........................
    def _handlers(self, log_console):
        handlers = []
        if self.filename is not None:
            handlers.append(_file_handler(self.filename))
        if log_console:
            handlers.append(logging.StreamHandler(stream=sys.stdout))
        return handlers

    # ........................
    @classmethod
    def init_for_command(
            cls, command, log_path=DEFAULT_LOG_PATH, log_console=True,
            log_level=logging.INFO):
        """Create a logger named for a lab command and today's date.

        Args:
            command (str): name of the CLI subcommand, e.g. `decay`.
            log_path (str): directory for the log file, None for console only.
            log_console (bool): Should logs be written to the console.
            log_level (int): What level of logs should be retained.

        Returns:
            logger (timpy.tools.util.logtools.Logger): logger for the command.
        """
        datestr = datetime.now().strftime("%Y-%m-%d")
        return cls(
            f"timpy_{command}_{datestr}", log_path=log_path,
            log_console=log_console, log_level=log_level)

    # ........................
    def log(self, msg, refname="", log_level=logging.INFO):
        """Log a message prefixed with the name of its source.

        Args:
            msg (str): A message to write to the logger.
            refname (str): Class or function name to use in logging message.
            log_level (int): A level to use when logging the message.
        """
        prefix = f"{refname}: " if refname else ""
        self.logger.log(log_level, f"{prefix}{msg}")

    # ........................
    def close(self):
        """Detach and close all handlers of the underlying logger."""
        for handler in list(self.logger.handlers):
            self.logger.removeHandler(handler)
            handler.close()


# ......................................................
def prettify_object(print_obj):
    """Format an object for output.

    Args:
        print_obj (obj): Object to pretty print in output

    Returns:
        formatted string representation of object
    """
    strm = StringIO()
    pp(print_obj, stream=strm)
    return strm.getvalue()


# ......................................................
def logit(logger, msg, refname="", print_obj=None, log_level=logging.INFO):
    """Log a message, or print it when there is no logger.

    Args:
        logger (timpy.tools.util.logtools.Logger): Logger object or None
        msg (str): Message to log
        refname (str): referring object, module, or function
        print_obj (obj): Object to pretty print after the message
        log_level (int): level of severity, INFO when None
    """
    if print_obj is not None:
        msg = f"{msg}\n{prettify_object(print_obj)}"
    log_level = logging.INFO if log_level is None else log_level
    if logger is None:
        print(f"{refname} [{logging.getLevelName(log_level)}]: {msg}")
    else:
        logger.log(msg, refname=refname, log_level=log_level)
