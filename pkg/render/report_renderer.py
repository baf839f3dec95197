from jinja2 import Template
import csv
import io
import json
import logging
import os
import tempfile
from datetime import datetime
from pathlib import Path
from typing import Optional, Union

import pytz

from field import DomainError

logger = logging.getLogger(__name__)

FORMATS = ("json", "csv", "html")
CSV_HEADER = ["N", "metric", "value", "err", "bound", "pass"]


def atomic_write(path: Union[str, Path], text: str) -> Path:
    """Write to a temporary file next to `path`, then rename it into place."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, 'w', newline='') as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise
    return path


class ReportRenderer:
    """Serialize experiment reports as JSON, CSV or HTML."""

    def __init__(self, config: dict):
        self.config = config
        report_config = config.get('report', {})
        self.timezone = pytz.timezone(report_config.get('timezone', 'UTC'))
        self.template = self._load_template()

    def _load_template(self) -> Template:
        """Load the HTML report template."""
        template_path = os.path.join(
            os.path.dirname(__file__),
            'report_template.html'
        )

        with open(template_path, 'r') as f:
            template_str = f.read()

        return Template(template_str)

    def timestamp(self) -> str:
        return datetime.now(self.timezone).isoformat(timespec='seconds')

    def stamp(self, report, with_timestamp: bool = True):
        report.timestamp = self.timestamp() if with_timestamp else None
        return report

    def render_json(self, report) -> str:
        return json.dumps(report.to_dict(include_timing=report.timestamp is not None), indent=2) + "\n"

    def render_csv(self, report) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in report.rows:
            d = row.to_dict()
            # repr keeps the shortest round-trip form, same digits as JSON
            writer.writerow([d["N"], d["metric"], repr(d["value"]), repr(d["err"]),
                             repr(d["bound"]), "true" if d["pass"] else "false"])
        return buf.getvalue()

    def render_html(self, report) -> str:
        context = {
            'report': report,
            'rows': [row.to_dict() for row in report.rows],
            'passed': report.passed,
            'failures': len(report.failures),
            'timestamp': report.timestamp,
        }
        return self.template.render(**context)

    def render(self, report, fmt: str = 'json') -> str:
        if fmt == 'json':
            return self.render_json(report)
        if fmt == 'csv':
            return self.render_csv(report)
        if fmt == 'html':
            return self.render_html(report)
        raise DomainError(f"unknown report format {fmt!r}; choose from {FORMATS}")

    def write(self, report, fmt: str = 'json', out: Optional[Union[str, Path]] = None) -> str:
        """Render, then write atomically to `out` when given; returns the rendered text."""
        text = self.render(report, fmt)
        if out:
            path = atomic_write(out, text)
            logger.info(f"Report saved to: {path}")
        return text
