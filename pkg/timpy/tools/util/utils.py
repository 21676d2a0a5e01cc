"""Error reporting helpers shared by the library and the command layer."""
import traceback

from timpy.tools.spectral.constants import ERRINFO_KEYS


# ..........................
def get_traceback():
    """Format the exception currently being handled.

    Returns:
        str: traceback lines joined by newlines, without a trailing newline.
    """
    return traceback.format_exc().rstrip("\n")


# ...............................................
def combine_errinfo(errinfo1, errinfo2):
    """Merge two error dictionaries keyed by `error`, `warning` and `info`.

    Args:
        errinfo1 (dict): dictionary of errors, or None
        errinfo2 (dict): dictionary of errors, or None

    Returns:
        dict: messages of both inputs per key; empty keys are dropped.

    Note:
        Neither input is modified.
    """
    merged = {}
    for errinfo in (errinfo1, errinfo2):
        for key, messages in (errinfo or {}).items():
            merged = add_errinfo(merged, key, messages)
    return {key: msgs for key, msgs in merged.items() if msgs}


# ...............................................
def add_errinfo(errinfo, key, val_lst):
    """Append messages under one key of an error dictionary.

    Args:
        errinfo (dict): dictionary of errors, or None for a new one
        key (str): `error`, `warning` or `info`; other keys are ignored
        val_lst (str or list of str): message or messages

    Returns:
        dict: the updated dictionary of errors
    """
    errinfo = {} if errinfo is None else errinfo
    if key in ERRINFO_KEYS:
        messages = [val_lst] if isinstance(val_lst, str) else list(val_lst)
        errinfo.setdefault(key, []).extend(messages)
    return errinfo


# ...............................................
def errinfo_from_exception(exc, errinfo=None, with_traceback=False):
    """Record an exception as an `error` entry.

    Args:
        exc (Exception): the exception caught by the caller.
        errinfo (dict): existing error dictionary to extend, or None.
        with_traceback (bool): append the formatted traceback as `info`.

    Returns:
        updated dictionary of errors
    """
    errinfo = add_errinfo(errinfo, "error", f"{type(exc).__name__}: {exc}")
    if with_traceback:
        errinfo = add_errinfo(errinfo, "info", get_traceback())
    return errinfo
