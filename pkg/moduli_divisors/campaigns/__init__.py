"""Grid campaigns and the published tables they reproduce."""

from .hyperelliptic import hyperelliptic_threshold, threshold_table
from .nodal import nodal_campaign
from .quotients import difvar_campaign, fm_bound
from .reference import pointed_reference_table
from .report import CellResult, TableReport

__all__ = [
    "hyperelliptic_threshold",
    "threshold_table",
    "nodal_campaign",
    "difvar_campaign",
    "fm_bound",
    "pointed_reference_table",
    "CellResult",
    "TableReport",
]
