"""On-disk cache of bar-involution rows, one JSON file per block.

Files are named after :attr:`BlockSpec.key` and carry a format version; a file
with another version or truncation is ignored and overwritten.
"""
from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from .combinatorics import BlockSpec, MultiPartition, as_multipartition
from .laurent import LaurentPoly

FORMAT_VERSION = 1
ENV_VAR = "QFOCK_CACHE_DIR"

Rows = dict[MultiPartition, dict[MultiPartition, LaurentPoly]]


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "qfock"


class BlockCache:
    def __init__(self, directory: str | os.PathLike | None = None):
        self.directory = Path(directory) if directory is not None else default_cache_dir()

    def path(self, block: BlockSpec) -> Path:
        return self.directory / f"{block.key}.json"

    def load(self, block: BlockSpec, r: int) -> Rows | None:
        p = self.path(block)
        try:
            data = json.loads(p.read_text())
        except (OSError, ValueError):
            return None
        if data.get("format_version") != FORMAT_VERSION or data.get("r") != r \
                or BlockSpec.from_json(data["block"]) != block:
            return None
        rows: Rows = {}
        for row in data["rows"]:
            lam = as_multipartition(row["multipartition"])
            rows[lam] = {as_multipartition(t["multipartition"]): LaurentPoly.from_json(t["coeff"])
                         for t in row["terms"]}
        return rows

    def store(self, block: BlockSpec, r: int, rows: Rows) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        data = {
            "format_version": FORMAT_VERSION,
            "block": block.to_json(),
            "r": r,
            "rows": [{"multipartition": [list(p) for p in lam],
                      "terms": [{"multipartition": [list(p) for p in mu], "coeff": c.to_json()}
                                for mu, c in sorted(row.items())]}
                     for lam, row in sorted(rows.items())],
        }
        # write-then-rename so concurrent writers of identical data never expose a torn file
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump(data, fh, separators=(",", ":"))
        os.replace(tmp, self.path(block))
