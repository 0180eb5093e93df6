"""Exception hierarchy shared by all modules."""


class CremonaError(Exception):
    """Base class; ``module`` names the subsystem that raised."""

    module = "core"


class KindMismatch(CremonaError, TypeError):
    module = "exactfield"


class NotAPower(CremonaError, ValueError):
    module = "exactfield"


class NotInvariant(CremonaError, ValueError):
    module = "exactfield"


class UnsupportedInput(CremonaError, ValueError):
    module = "exactfield"


class FieldExtensionRequired(CremonaError):
    """A construction needs a root that does not exist in the configured field."""

    module = "moebius"


class MissingRootOfUnity(FieldExtensionRequired):
    pass


class GroupShapeError(CremonaError, ValueError):
    module = "moebius"


class CocycleError(CremonaError, ValueError):
    module = "moebius"


class ClosureError(CremonaError):
    module = "birmap"


class NonCommuting(ClosureError):
    def __init__(self, pair):
        self.pair = pair
        super().__init__("generators do not commute")


class WrongOrder(ClosureError):
    def __init__(self, element, p):
        self.element = element
        super().__init__(f"element does not have order {p}")


class ClosureExceeded(ClosureError):
    pass


class NotAnInvolution(CremonaError, ValueError):
    module = "birmap"


class NotNormalCoordinates(CremonaError, ValueError):
    module = "conjclass"


class ParseError(CremonaError, ValueError):
    module = "parser"

    def __init__(self, msg, pos=None):
        self.pos = pos
        if pos is not None:
            msg = f"{msg} (at position {pos})"
        super().__init__(msg)


class ShapeError(CremonaError, ValueError):
    module = "parser"
