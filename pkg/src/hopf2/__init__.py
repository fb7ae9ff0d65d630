"""Exact verification of quasigroups, Hopf coquasigroups, central Hopf
algebroids and coherent Hopf 2-algebras built from Cayley-Dickson bases."""

from .errors import (DomainMismatch, Hopf2Error, IllDefined, InvalidCochain, InvalidInput,
                     NotACoideal, NotAnIdeal, PreconditionFailed, SizeLimit)

__version__ = "0.1.0"

__all__ = [
    "DomainMismatch", "Hopf2Error", "IllDefined", "InvalidCochain", "InvalidInput",
    "NotACoideal", "NotAnIdeal", "PreconditionFailed", "SizeLimit", "__version__",
]
