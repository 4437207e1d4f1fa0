"""Content-addressed on-disk cache of per-sector homology results."""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from .graphs import CONVENTION_VERSION

ENV_VAR = "GRAPHHOM_CACHE"
DEFAULT_DIR = ".graphhom-cache"


def cache_dir(explicit=None) -> Path:
    return Path(explicit or os.environ.get(ENV_VAR) or DEFAULT_DIR)


def cache_key(flavor, g, h, d_lo, d_hi, caps, convention=CONVENTION_VERSION) -> str:
    material = {
        "flavor": flavor.as_dict(),
        "g": g,
        "h": h,
        "d_lo": d_lo,
        "d_hi": d_hi,
        "caps": caps.as_dict(),
        "convention_version": convention,
    }
    blob = json.dumps(material, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


class SectorCache:
    def __init__(self, directory=None):
        self.directory = cache_dir(directory)

    def _path(self, key):
        return self.directory / f"{key}.json"

    def load(self, key):
        """Stored ``{d: dim}`` or None on a miss or an unreadable entry."""
        try:
            data = json.loads(self._path(key).read_text())
        except (OSError, ValueError):
            return None
        if data.get("key") != key:
            return None
        return {int(d): int(x) for d, x in data["dims"]}

    def store(self, key, dims: dict):
        self.directory.mkdir(parents=True, exist_ok=True)
        payload = json.dumps({"key": key, "dims": sorted(dims.items())})
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(payload)
            os.replace(tmp, self._path(key))
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
