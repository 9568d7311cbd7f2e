# -*- coding:utf-8 -*-

"""
Error/Exception definition.

Date:   2026/10/17
"""


class CustomException(Exception):
    default_msg = "A simulator error occurred."
    default_data = None
    default_code = 500

    def __init__(self, msg=None, code=None, data=None):
        self.msg = msg if msg is not None else self.default_msg
        self.code = code if code is not None else self.default_code
        self.data = data
        super(CustomException, self).__init__(self.msg)

    def __str__(self):
        str_msg = "[{code}] {msg}".format(code=self.code, msg=self.msg)
        return str_msg


class ValidationError(CustomException):
    default_msg = "Bad Request"
    default_code = 400


class ShapeMismatchError(ValidationError):
    default_msg = "Operands are defined over different system shapes or slots"


class OverlappingSlotError(ValidationError):
    default_msg = "Tensor product factors claim the same subsystem slot"


class SubsystemError(ValidationError):
    default_msg = "Invalid subsystem selection"


class PositionBoundError(CustomException):
    default_msg = "Walker position left the system shape range"
    default_code = 500


class CoinTableError(CustomException):
    default_msg = "Position-dependent coin has no entry for a reachable position"
    default_code = 500


class IncompleteBasisError(CustomException):
    default_msg = "Measurement basis does not span the populated subspace"
    default_code = 500


class BoundaryError(CustomException):
    default_msg = "Probe covers every remaining participant"
    default_code = 422


class VerificationError(CustomException):
    default_msg = "Verification failed"
    default_code = 500
