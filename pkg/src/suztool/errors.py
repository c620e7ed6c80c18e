"""Exception hierarchy shared by every toolkit module."""


class ToolkitError(Exception):
    """Base class for all toolkit errors."""


class DomainError(ToolkitError, ValueError):
    """An operation was applied outside its mathematical domain (e.g. inverting 0)."""


class ParameterError(ToolkitError, ValueError):
    """Construction parameters violate a family constraint."""


class UsageError(ToolkitError, ValueError):
    """A precondition of the call was not met (e.g. a subgroup that is not normal)."""


class ResourceError(ToolkitError):
    """A size guard was exceeded; the computation was refused rather than truncated."""


class ConstructionError(ToolkitError):
    """A constructed object failed its own validation (wrong order, broken closure)."""


class InternalError(ToolkitError):
    """An internal consistency check failed; indicates a bug, not bad input."""


class SpecParseError(ToolkitError, ValueError):
    """A group, field or automorphism spec string could not be parsed."""
