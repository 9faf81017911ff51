"""
Core package
"""

from .models import (
    Partition, BlockFlavor, BlockSpec, AutomorphismMode, HurwitzProblem,
    CurveFlavor, CrossCheck, VerificationReport, CommandResult, JUCYS_FLAVORS
)
from .exceptions import (
    HurwitzKitException, DomainException, ResourceException, PoleException, CommandException
)

__all__ = [
    'Partition', 'BlockFlavor', 'BlockSpec', 'AutomorphismMode', 'HurwitzProblem',
    'CurveFlavor', 'CrossCheck', 'VerificationReport', 'CommandResult', 'JUCYS_FLAVORS',
    'HurwitzKitException', 'DomainException', 'ResourceException', 'PoleException',
    'CommandException'
]
