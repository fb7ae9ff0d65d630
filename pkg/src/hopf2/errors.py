"""Exception hierarchy shared by every module."""


class Hopf2Error(Exception):
    """Base class. ``witness`` carries whatever made the check fail."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class DomainMismatch(Hopf2Error):
    pass


class PreconditionFailed(Hopf2Error):
    pass


class SizeLimit(Hopf2Error):
    pass


class InvalidCochain(Hopf2Error):
    pass


class InvalidInput(Hopf2Error):
    pass


class NotAnIdeal(Hopf2Error):
    pass


class NotACoideal(Hopf2Error):
    pass


class IllDefined(Hopf2Error):
    pass
