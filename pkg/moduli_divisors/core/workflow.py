from __future__ import annotations

import logging
import multiprocessing
from typing import TYPE_CHECKING, Any, Callable, Dict, Iterable, List, Optional, Sequence, TypeVar

from .config import DEFAULT_CONFIG, AppConfig
from .state import TableName

if TYPE_CHECKING:
    from ..campaigns.report import TableReport

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def map_cells(func: Callable[[T], R], cells: Sequence[T], jobs: int = 1) -> List[R]:
    """Apply ``func`` to every cell, in order; a pool is used when jobs > 1.

    ``func`` must be a module-level function so worker processes can import it.
    """
    if jobs <= 1 or len(cells) <= 1:
        return [func(cell) for cell in cells]
    workers = min(jobs, len(cells))
    logger.info("running %d cells on %d workers", len(cells), workers)
    with multiprocessing.Pool(processes=workers) as pool:
        return pool.map(func, cells)


def build_workflow(
    config: AppConfig = DEFAULT_CONFIG, genera: Optional[Sequence[int]] = None
) -> Callable[[TableName], "TableReport"]:
    """Map every table to its campaign; ``genera`` narrows the scanned genera."""
    from ..campaigns.hyperelliptic import threshold_table
    from ..campaigns.nodal import nodal_campaign
    from ..campaigns.quotients import difvar_campaign
    from ..campaigns.reference import reference_report

    scope: Dict[str, Any] = {"config": config}
    if genera is not None:
        scope["g_range"] = list(genera)

    runners: Dict[TableName, Callable[[], "TableReport"]] = {
        TableName.nodal: lambda: nodal_campaign(**scope),
        TableName.prop1: lambda: nodal_campaign(families=("W",), overlay=False, **scope),
        TableName.prop2: lambda: nodal_campaign(overlay=False, **scope),
        TableName.difvar: lambda: difvar_campaign(**scope),
        TableName.hyperelliptic: lambda: threshold_table(**scope),
        TableName.reference: reference_report,
    }

    def run(table: TableName) -> "TableReport":
        logger.info("running table %s", table.value)
        report = runners[table]()
        logger.info(
            "table %s finished: %s", table.value, "ok" if report.ok else "mismatches found"
        )
        return report

    return run


def run_workflow(
    tables: Optional[Iterable[TableName]] = None,
    config: AppConfig = DEFAULT_CONFIG,
    genera: Optional[Sequence[int]] = None,
) -> Dict[TableName, "TableReport"]:
    app = build_workflow(config, genera)
    return {table: app(table) for table in (tables or list(TableName))}
