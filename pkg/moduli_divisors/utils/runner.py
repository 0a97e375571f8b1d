from __future__ import annotations

import json
import logging
import sys

from ..core.config import AppConfig
from ..core.workflow import run_workflow


def main() -> None:
    config = AppConfig.from_env()
    logging.basicConfig(level=config.log_level, stream=sys.stderr)
    reports = run_workflow(config=config)
    out_dir = config.output_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    for report in reports.values():
        report.write(out_dir)
    (out_dir / "summary.json").write_text(
        json.dumps(
            {
                table.value: {
                    "ok": report.ok,
                    "mismatches": [m.to_dict() for m in report.mismatches],
                    "notes": report.notes,
                }
                for table, report in reports.items()
            },
            indent=2,
        )
    )
    print(f"All tables finished. See {out_dir / 'summary.json'}")
    sys.exit(0 if all(report.ok for report in reports.values()) else 1)


if __name__ == "__main__":
    main()
