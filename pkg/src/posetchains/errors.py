"""Exception hierarchy shared by every module."""


class PosetError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class DuplicateElement(PosetError):
    def __init__(self, name):
        super().__init__(f"duplicate element {name!r}")
        self.name = name


class UnknownElement(PosetError):
    def __init__(self, name):
        super().__init__(f"unknown element {name!r}")
        self.name = name


class CycleDetected(PosetError):
    def __init__(self, cycle):
        super().__init__("relations contain a cycle: " + " < ".join(cycle))
        self.cycle = list(cycle)


class Disconnected(PosetError):
    def __init__(self, components):
        super().__init__(
            f"Hasse diagram has {len(components)} components: "
            + "; ".join(" ".join(c) for c in components)
        )
        self.components = [list(c) for c in components]


class NoGreatestElement(PosetError):
    pass


class NoLeastElement(PosetError):
    pass


class NotGraded(PosetError):
    def __init__(self, witness=None):
        msg = "poset is not graded"
        if witness:
            msg += f" (short maximal chain: {' < '.join(witness)})"
        super().__init__(msg)
        self.witness = witness


class InvalidParams(PosetError):
    pass


class TooLarge(PosetError):
    pass


class MixedPosets(PosetError):
    pass


class NotIndependent(PosetError):
    pass


class FamilyTooSmall(PosetError):
    pass


class ConstructionFailed(PosetError):
    def __init__(self, message, plan=None):
        super().__init__(message)
        self.plan = plan


class LevelTooSmall(PosetError):
    pass


class NotGradedAfter(PosetError):
    pass


class UnknownEntry(PosetError):
    pass


class BadParams(PosetError):
    pass


class ParseError(PosetError):
    def __init__(self, line, reason):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason
