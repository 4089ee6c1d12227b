"""
Dihedrant
Inner-automorphic Cayley graphs on dihedral groups.

Provides:
- Exact D_2n arithmetic, conjugacy classes and group automorphisms
- Connection-set construction, named families and the connection-set DSL
- Graph invariants, permutation groups and automorphism search
- Classification of inner-automorphic dihedrants and the case (v) structure checks
- Named verification suites and resumable case (v) scans
"""

__version__ = "0.3.0"

import logging

from .cayley import CayleyGraph, ConnectionSet, build_family, parse_connection_set
from .commands import COMMAND_CLASS_MAPPINGS, COMMAND_DISPLAY_NAME_MAPPINGS
from .config import DEFAULT_LIMITS, Limits, configure_logging
from .dihedral_core import DihedralElement, DihedralGroup, GroupAutomorphism
from .errors import DihedrantError, VerificationReport
from .aut_search import automorphism_group
from .permgroup import FactoredInteger, Permutation, PermutationGroup
from .structure import ClassificationOutcome, OutcomeKind, classify

__all__ = [
    'COMMAND_CLASS_MAPPINGS', 'COMMAND_DISPLAY_NAME_MAPPINGS',
    'CayleyGraph', 'ConnectionSet', 'build_family', 'parse_connection_set',
    'DEFAULT_LIMITS', 'Limits', 'configure_logging',
    'DihedralElement', 'DihedralGroup', 'GroupAutomorphism',
    'DihedrantError', 'VerificationReport',
    'automorphism_group', 'FactoredInteger', 'Permutation', 'PermutationGroup',
    'ClassificationOutcome', 'OutcomeKind', 'classify',
]

logger = logging.getLogger(__name__)
logger.debug("Dihedrant v%s loaded", __version__)
logger.debug("Registered %d commands: %s", len(COMMAND_CLASS_MAPPINGS), ", ".join(COMMAND_CLASS_MAPPINGS))
