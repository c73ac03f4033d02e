"""Exception hierarchy; the CLI maps each class to an exit code."""


class ChromRamseyError(Exception):
    exit_code = 2


class InputError(ChromRamseyError, ValueError):
    """Bad input or a violated precondition."""

    exit_code = 1


class InvariantError(ChromRamseyError, RuntimeError):
    """Something the theory guarantees did not happen. Always a bug."""

    exit_code = 2


class ResourceError(ChromRamseyError, RuntimeError):
    """A size cap or time limit was exceeded."""

    exit_code = 3
