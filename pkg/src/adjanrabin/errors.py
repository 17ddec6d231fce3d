"""Exception hierarchy shared by all modules."""


class AdjanRabinError(Exception):
    """Base class for every error raised by this package."""


class ParseError(AdjanRabinError):
    def __init__(self, message: str, position: int | None = None, line: int | None = None):
        self.position = position
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if position is not None:
            where.append(f"column {position}")
        suffix = f" ({', '.join(where)})" if where else ""
        super().__init__(message + suffix)


class UnknownGenerator(AdjanRabinError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown generator {name!r}")


class DuplicateGenerator(AdjanRabinError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"duplicate generator {name!r}")


class MissingImage(AdjanRabinError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"no image given for generator {name!r}")


class NotSolvable(AdjanRabinError):
    pass


class BadIndex(AdjanRabinError):
    pass


class BadExponent(AdjanRabinError):
    pass


class InvalidCertificate(AdjanRabinError):
    pass


class Condition21NotSatisfied(AdjanRabinError):
    pass


class GcdNotOne(AdjanRabinError):
    pass


class EmptyTuple(AdjanRabinError):
    pass


class IllegalMove(AdjanRabinError):
    def __init__(self, message: str, step: int):
        self.step = step
        super().__init__(f"{message} (move {step})")


class InconsistentVerdict(AdjanRabinError):
    pass
