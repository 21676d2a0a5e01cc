"""Parent class for the lab commands."""
import logging

from lab_app.common.lab_type import LabCommand, LabOutput
from timpy.tools.spectral.errors import ParameterError
from timpy.tools.util.logtools import DEFAULT_LOG_PATH, Logger, logit
from timpy.tools.util.utils import add_errinfo

FALSE_VALUES = (False, 0, "0", "n", "no", "f", "false")
TRUE_VALUES = (True, 1, "1", "y", "yes", "t", "true")


# .............................................................................
class _LabService:
    """Base lab command, handles parameter names and acceptable values."""
    # overridden by subclasses
    COMMAND = LabCommand.Base
    # Values that keep their case
    PATH_PARAMS = ("input", "out", "csv", "config", "energies")

    # ...............................................
    @classmethod
    def name(cls):
        """Return the subcommand name of this class.

        Returns:
            str
        """
        return cls.COMMAND["name"]

    # ...............................................
    @classmethod
    def describe(cls):
        """Return the description and parameters of this command.

        Returns:
            lab_app.common.lab_type.LabOutput
        """
        param_lst = []
        for p, pdict in cls.COMMAND["params"].items():
            pinfo = pdict.copy()
            pinfo["type"] = str(type(pinfo["type"]))
            param_lst.append({p: pinfo})
        info = {"parameters": param_lst, "required": list(cls.COMMAND["required"])}
        return LabOutput(
            cls.name(), description=cls.COMMAND["description"], output=info)

    # ...............................................
    @classmethod
    def init_logger(cls, log_path=DEFAULT_LOG_PATH, log_console=True,
                    log_level=logging.INFO):
        """Create a logger named for this command and today's date.

        Args:
            log_path (str): directory for the log file, None for console only.
            log_console (bool): Should logs be written to the console.
            log_level (int): What level of logs should be retained.

        Returns:
            timpy.tools.util.logtools.Logger
        """
        return Logger.init_for_command(
            cls.name(), log_path=log_path, log_console=log_console,
            log_level=log_level)

    # ...............................................
    @classmethod
    def _fix_type(cls, key, provided_val):
        """Cast a user value to the type declared for its parameter.

        Args:
            key (str): parameter name in COMMAND["params"].
            provided_val: user-provided value, usually a command-line string.

        Returns:
            usr_val: the cast value, or the default when the value is not a
                valid option
            valid_options: the accepted options when provided_val is not one of
                them, otherwise None

        Raises:
            ParameterError: on a value that cannot be cast or is out of range.

        Note:
            Strings other than file paths are compared in lower case.
        """
        if provided_val is None:
            return None, None
        if key not in cls.PATH_PARAMS and isinstance(provided_val, str):
            provided_val = provided_val.lower()

        param_meta = cls.COMMAND["params"][key]
        options = param_meta.get("options")
        if options is not None:
            if provided_val in options:
                return provided_val, None
            return param_meta["default"], options

        type_val = param_meta["type"]
        # bool before int, a bool is also an int
        if isinstance(type_val, bool):
            if provided_val in FALSE_VALUES:
                return False, None
            if provided_val in TRUE_VALUES:
                return True, None
            return param_meta["default"], (True, False)
        if isinstance(type_val, str):
            return str(provided_val), None
        return cls._test_numbers(key, provided_val, param_meta), None

    # ...............................................
    @classmethod
    def _test_numbers(cls, key, provided_val, param_meta):
        type_val = param_meta["type"]
        min_val = param_meta.get("min")
        max_val = param_meta.get("max")
        cast = float if isinstance(type_val, float) else int
        try:
            usr_val = cast(provided_val)
        except (TypeError, ValueError):
            raise ParameterError(
                f"Value {provided_val} for parameter {key} is not {cast.__name__}")
        if min_val is not None and usr_val < min_val:
            raise ParameterError(
                f"Value {usr_val} for parameter {key} is below the minimum {min_val}")
        if max_val is not None and usr_val > max_val:
            raise ParameterError(
                f"Value {usr_val} for parameter {key} is above the maximum {max_val}")
        return usr_val

    # ...............................................
    @classmethod
    def _process_params(cls, user_kwargs=None):
        """Modify all user provided values to correct types.

        Args:
            user_kwargs: dictionary of keywords and values sent by the user for
                the current command.

        Returns:
            good_params: dictionary of valid parameters and values
            errinfo: dictionary of errors for different error levels.
        """
        user_kwargs = user_kwargs or {}
        good_params = {}
        errinfo = {}

        for key in user_kwargs:
            if key not in cls.COMMAND["params"]:
                errinfo = add_errinfo(
                    errinfo, "warning", f"Parameter {key} is ignored by {cls.name()}")

        for key, param_meta in cls.COMMAND["params"].items():
            val = user_kwargs.get(key)
            if val is None:
                good_params[key] = param_meta["default"]
                continue
            try:
                usr_val, valid_options = cls._fix_type(key, val)
            except ParameterError as e:
                errinfo = add_errinfo(errinfo, "error", str(e))
                good_params[key] = None
                continue
            if valid_options is not None:
                errinfo = add_errinfo(
                    errinfo, "error",
                    f"Value {val} for parameter {key} is not in valid options "
                    f"{valid_options}")
                good_params[key] = None
            else:
                good_params[key] = usr_val

        for key in cls.COMMAND["required"]:
            if good_params.get(key) is None and user_kwargs.get(key) is None:
                errinfo = add_errinfo(
                    errinfo, "error", f"Parameter {key} is required")

        return good_params, errinfo

    # ...............................................
    @classmethod
    def _standardize_params(cls, **kwargs):
        """Standardize command parameters.

        Args:
            **kwargs: user-provided parameters of the command.

        Returns:
            a dictionary of properly typed values and the error information

        Raises:
            ParameterError: on any invalid or missing parameter.
        """
        usr_params, errinfo = cls._process_params(kwargs)
        # errinfo["error"] indicates bad parameters
        if errinfo.get("error"):
            raise ParameterError("; ".join(errinfo["error"]))
        return usr_params, errinfo

    # ...............................................
    @classmethod
    def _logme(cls, logger, msg, log_level=logging.INFO):
        logit(logger, msg, refname=cls.__name__, log_level=log_level)
