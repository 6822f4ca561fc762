import json
from pathlib import Path

import numpy as np

from src.resonator.types import IntegerSet, Resonator, ResonatorMeta
from src.utils.errors import InvalidArgumentError

RESONATOR_HEADER = "# resonator "


def dump_resonator(R: Resonator, path: Path) -> None:
    """Write a header line with the metadata as JSON, then "n weight" lines."""
    lines = [RESONATOR_HEADER + json.dumps(R.meta.to_dict(), sort_keys=True)]
    lines += [f"{n} {w!r}" for n, w in R.support]
    Path(path).write_text("\n".join(lines) + "\n")


def load_resonator(path: Path) -> Resonator:
    text = Path(path).read_text().splitlines()
    if not text or not text[0].startswith(RESONATOR_HEADER):
        raise InvalidArgumentError(f"{path}: missing resonator header line")
    meta = ResonatorMeta.from_dict(json.loads(text[0][len(RESONATOR_HEADER):]))
    ns, weights = [], []
    for raw in text[1:]:
        if not raw.strip():
            continue
        n, w = raw.split()
        ns.append(int(n))
        weights.append(float(w))
    return Resonator(ns=np.array(ns, dtype=np.int64), weights=np.array(weights), meta=meta)


def dump_integer_set(M: IntegerSet, path: Path) -> None:
    """One integer per line, ascending."""
    Path(path).write_text("\n".join(str(m) for m in M.elements) + "\n")


def load_integer_set(path: Path) -> IntegerSet:
    values = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            values.append(int(line))
        except ValueError:
            raise InvalidArgumentError(f"{path}:{lineno}: not an integer: {raw!r}")
    return IntegerSet.of(values)
