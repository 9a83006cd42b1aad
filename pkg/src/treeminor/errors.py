"""Exception types raised across the package."""


class TreeError(ValueError):
    """Base class for every error raised by treeminor."""


class InvalidTree(TreeError):
    pass


class FormatError(TreeError):
    pass


class MissingTarget(TreeError):
    pass


class WouldDisconnect(TreeError):
    pass


class NotDegree2(TreeError):
    pass


class NotAChild(TreeError):
    pass


class HostPatternMismatch(TreeError):
    pass


class BadParams(TreeError):
    pass


class SizeLimitExceeded(TreeError):
    pass
