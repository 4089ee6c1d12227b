"""
Dihedrant Commands Package
"""

from .analyze import COMMAND_CLASS_MAPPINGS as ANALYZE_MAPPINGS
from .analyze import COMMAND_DISPLAY_NAME_MAPPINGS as ANALYZE_DISPLAY_MAPPINGS
from .quotient import COMMAND_CLASS_MAPPINGS as QUOTIENT_MAPPINGS
from .quotient import COMMAND_DISPLAY_NAME_MAPPINGS as QUOTIENT_DISPLAY_MAPPINGS
from .verify import COMMAND_CLASS_MAPPINGS as VERIFY_MAPPINGS
from .verify import COMMAND_DISPLAY_NAME_MAPPINGS as VERIFY_DISPLAY_MAPPINGS
from .scan import COMMAND_CLASS_MAPPINGS as SCAN_MAPPINGS
from .scan import COMMAND_DISPLAY_NAME_MAPPINGS as SCAN_DISPLAY_MAPPINGS

# Combine all command mappings
COMMAND_CLASS_MAPPINGS = {
    **ANALYZE_MAPPINGS,
    **QUOTIENT_MAPPINGS,
    **VERIFY_MAPPINGS,
    **SCAN_MAPPINGS,
}

COMMAND_DISPLAY_NAME_MAPPINGS = {
    **ANALYZE_DISPLAY_MAPPINGS,
    **QUOTIENT_DISPLAY_MAPPINGS,
    **VERIFY_DISPLAY_MAPPINGS,
    **SCAN_DISPLAY_MAPPINGS,
}

__all__ = ['COMMAND_CLASS_MAPPINGS', 'COMMAND_DISPLAY_NAME_MAPPINGS']
