"""Error taxonomy shared by every module.

InputError    malformed arguments or documents (CLI exit code 2)
ModeError     operation applied under the wrong evaluation mode
ResourceError a configurable size cap was exceeded
PreconditionError a mathematical precondition of an operation is unmet
"""


class EngineError(Exception):
    pass


class InputError(EngineError, ValueError):
    pass


class ModeError(InputError):
    pass


class ResourceError(EngineError):
    pass


class PreconditionError(EngineError):
    pass
