"""Tests for error dictionaries and logging helpers."""
import logging
import os

from timpy.tools.util.logtools import Logger, logit, prettify_object
from timpy.tools.util.utils import (
    add_errinfo, combine_errinfo, errinfo_from_exception, get_traceback)


# ............................
def test_add_errinfo():
    """Messages accumulate by key; unknown keys are ignored."""
    errinfo = add_errinfo(None, "error", "first")
    errinfo = add_errinfo(errinfo, "error", ["second", "third"])
    errinfo = add_errinfo(errinfo, "fatal", "ignored")
    assert(errinfo == {"error": ["first", "second", "third"]})


# ............................
def test_combine_errinfo():
    """Combining keeps both inputs intact and drops empty keys."""
    one = {"error": ["a"], "info": ["b"]}
    two = {"error": ["c"], "warning": []}
    both = combine_errinfo(one, two)
    assert(both == {"error": ["a", "c"], "info": ["b"]})
    assert(one == {"error": ["a"], "info": ["b"]})
    assert(combine_errinfo(None, None) == {})


# ............................
def test_errinfo_from_exception():
    """Exceptions become `error` entries, optionally with a traceback."""
    try:
        raise ValueError("bad value")
    except ValueError as e:
        errinfo = errinfo_from_exception(e, with_traceback=True)
        trace = get_traceback()
    assert(errinfo["error"] == ["ValueError: bad value"])
    assert("ValueError" in errinfo["info"][0])
    assert("bad value" in trace)


# ............................
def test_logger_writes_file(tmp_path):
    """Command loggers write to a dated file without duplicating handlers."""
    log_path = str(tmp_path / "log")
    logger = Logger.init_for_command("symbol", log_path=log_path, log_console=False)
    logger = Logger.init_for_command("symbol", log_path=log_path, log_console=False)
    assert(len(logger.logger.handlers) == 1)
    logit(logger, "hello", refname="test", print_obj={"c_best": 0.1})
    logger.log("quiet", refname="test", log_level=logging.DEBUG)
    for handler in logger.logger.handlers:
        handler.flush()
    assert(os.path.basename(logger.filename).startswith("timpy_symbol_"))
    with open(logger.filename) as f:
        text = f.read()
    assert("test: hello" in text and "'c_best': 0.1" in text)
    assert("quiet" not in text)


# ............................
def test_logit_without_logger(capsys):
    """Without a logger, messages are printed."""
    logit(None, "to stdout", refname="here")
    assert("here" in capsys.readouterr().out)
    assert(prettify_object([1, 2]).strip() == "[1, 2]")
