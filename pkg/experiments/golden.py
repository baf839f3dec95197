import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Dict, Optional

from field import FormatError
from render import atomic_write

logger = logging.getLogger(__name__)

REPO_ROOT = Path(__file__).resolve().parent.parent


def golden_file(path) -> Path:
    """Relative golden paths are taken from the repository root."""
    path = Path(path)
    return path if path.is_absolute() else REPO_ROOT / path


def load_golden(path) -> Optional[Dict[int, Fraction]]:
    """Exact raw powers keyed by N, or None when no golden file exists yet."""
    path = golden_file(path)
    if not path.exists():
        return None
    try:
        with open(path, 'r') as f:
            data = json.load(f)
        return {int(N): Fraction(text) for N, text in data["raw_power"].items()}
    except (KeyError, ValueError, TypeError) as e:
        raise FormatError(f"golden file {path} is malformed: {e}")


def freeze_golden(path, experiment: str, values: Dict[int, Fraction]) -> Path:
    data = {
        "experiment": experiment,
        "raw_power": {str(N): f"{v.numerator}/{v.denominator}" for N, v in sorted(values.items())},
    }
    path = atomic_write(golden_file(path), json.dumps(data, indent=2, sort_keys=True) + "\n")
    logger.info(f"📌 Froze {len(values)} golden values to {path}")
    return path
