# -*- coding:utf-8 -*-

"""
Logger.

Date:   2026/10/17
Update: 2026/10/17  1. Console output goes to stderr so JSON reports on stdout stay clean;
                    2. Log headers carry the run session id.
"""

import os
import sys
import shutil
import logging
import traceback
from logging.handlers import TimedRotatingFileHandler

initialized = False
session_id = "-"


def initLogger(log_level="INFO", log_path=None, logfile_name=None, clear=False, backup_count=0):
    """ Initialize the root logger.

    Args:
        log_level: Log level, DEBUG/INFO/WARNING/ERROR.
        log_path: Directory of the log file, only used together with `logfile_name`.
        logfile_name: Log file name. If None, print to stderr.
        clear: If True, remove the old log directory while initializing.
        backup_count: How many rotated (per day) files to keep, 0 keeps all of them.
    """
    global initialized
    if initialized:
        return
    logger = logging.getLogger()
    logger.setLevel(log_level)
    if logfile_name:
        if clear and os.path.isdir(log_path):
            shutil.rmtree(log_path)
        if not os.path.isdir(log_path):
            os.makedirs(log_path)
        logfile = os.path.join(log_path, logfile_name)
        handler = TimedRotatingFileHandler(logfile, "midnight", backupCount=backup_count)
    else:
        handler = logging.StreamHandler(sys.stderr)
    fmt_str = "%(levelname)1.1s [%(asctime)s] %(message)s"
    fmt = logging.Formatter(fmt=fmt_str, datefmt=None)
    handler.setFormatter(fmt)
    logger.addHandler(handler)
    initialized = True


def set_session(sid):
    """ Set the session id printed in every log header.
    """
    global session_id
    session_id = sid or "-"


def info(*args, **kwargs):
    msg_header, kwargs = _log_msg_header(*args, **kwargs)
    logging.info(_log(msg_header, *args, **kwargs))


def warn(*args, **kwargs):
    msg_header, kwargs = _log_msg_header(*args, **kwargs)
    logging.warning(_log(msg_header, *args, **kwargs))


def debug(*args, **kwargs):
    msg_header, kwargs = _log_msg_header(*args, **kwargs)
    logging.debug(_log(msg_header, *args, **kwargs))


def error(*args, **kwargs):
    logging.error("*" * 60)
    msg_header, kwargs = _log_msg_header(*args, **kwargs)
    logging.error(_log(msg_header, *args, **kwargs))
    logging.error("*" * 60)


def exception(*args, **kwargs):
    logging.error("*" * 60)
    msg_header, kwargs = _log_msg_header(*args, **kwargs)
    logging.error(_log(msg_header, *args, **kwargs))
    logging.error(traceback.format_exc())
    logging.error("*" * 60)


def _log(msg_header, *args, **kwargs):
    _log_msg = msg_header
    for l in args:
        if isinstance(l, str):
            _log_msg += l + " "
        elif isinstance(l, tuple):
            _log_msg += str(l) + " "
        else:
            try:
                _log_msg += "%r " % (l, )
            except Exception:
                _log_msg += str(l) + " "
    if kwargs:
        _log_msg += str(kwargs)
    return _log_msg


def _log_msg_header(*args, **kwargs):
    """ Build the message header `[session] [Class.func] `.

    NOTE: logger.xxx(... caller=self) for instance method
          logger.xxx(... caller=cls) for @classmethod
    """
    cls_name = ""
    func_name = sys._getframe().f_back.f_back.f_code.co_name
    _caller = kwargs.pop("caller", None)
    if _caller is not None:
        if not hasattr(_caller, "__name__"):
            _caller = _caller.__class__
        cls_name = _caller.__name__
    if cls_name:
        func_name = "{}.{}".format(cls_name, func_name)
    msg_header = "[{session_id}] [{func_name}] ".format(func_name=func_name, session_id=session_id)
    return msg_header, kwargs
