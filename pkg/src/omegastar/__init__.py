"""Trivial maps on omega*, chain dynamics of finite systems, pseudo-orbit
sequences and equivariant map search."""

from . import chaindyn, facts, permalg, quotients, seqbuild
from .chaindyn import FiniteSystem
from .permalg import OMEGA, AxiomTag, PermPresentation, Status, Verdict

__version__ = "0.1.0"

__all__ = ["chaindyn", "facts", "permalg", "quotients", "seqbuild", "FiniteSystem",
           "OMEGA", "AxiomTag", "PermPresentation", "Status", "Verdict"]
