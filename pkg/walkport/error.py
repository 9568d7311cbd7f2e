# -*- coding:utf-8 -*-

"""
Findings that are reported instead of raised.

Date:   2026/10/17
"""


class Error:
    """ A verification finding.

    Args:
        msg: Human readable message.
        check: Name of the check that produced the finding.
        value: Measured value, e.g. the fidelity or the worst deviation.
    """

    def __init__(self, msg, check=None, value=None):
        self._msg = msg
        self._check = check
        self._value = value

    @property
    def msg(self):
        return self._msg

    @property
    def check(self):
        return self._check

    @property
    def value(self):
        return self._value

    @property
    def data(self):
        return {"check": self._check, "msg": self._msg, "value": self._value}

    def __str__(self):
        if self._check:
            return "{}: {}".format(self._check, self._msg)
        return str(self._msg)

    def __repr__(self):
        return str(self)
