"""On-disk store for Jones-Wenzl projectors.

One JSON file per ``n``, named by ``n`` and the format version.  Writes go to
a temporary file that is then renamed into place, so readers never see a
partial file.  A file that fails to parse or carries the wrong header is
treated as absent and overwritten on the next ``put``; I/O errors propagate.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from .skein import SkeinElement

__all__ = ["FORMAT", "VERSION", "ENV_VAR", "ProjectorCache", "default_cache_dir"]

FORMAT = "coloredtl-jones-wenzl"
VERSION = 1
ENV_VAR = "COLOREDTL_CACHE_DIR"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "coloredtl"


class ProjectorCache:
    def __init__(self, directory: str | os.PathLike):
        self.directory = Path(directory)
        self.hits = 0
        self.misses = 0

    def path(self, n: int) -> Path:
        return self.directory / f"jw-{n}-v{VERSION}.json"

    def get(self, n: int) -> SkeinElement | None:
        p = self.path(n)
        try:
            raw = p.read_bytes()
        except FileNotFoundError:
            self.misses += 1
            return None
        try:
            data = json.loads(raw)
            if data.get("format") != FORMAT or data.get("version") != VERSION or data.get("n") != n:
                raise ValueError("header mismatch")
            element = SkeinElement.from_json(data["element"])
            if element.bottom != n or element.top != n:
                raise ValueError("shape mismatch")
        except (ValueError, KeyError, TypeError):
            self.misses += 1
            return None
        self.hits += 1
        return element

    def put(self, n: int, element: SkeinElement) -> Path:
        self.directory.mkdir(parents=True, exist_ok=True)
        payload = {"format": FORMAT, "version": VERSION, "n": n, "element": element.to_json()}
        text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        fd, tmp = tempfile.mkstemp(prefix=f".jw-{n}-", suffix=".tmp", dir=self.directory)
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(text)
            os.replace(tmp, self.path(n))
        except BaseException:
            try:
                os.unlink(tmp)
            except FileNotFoundError:
                pass
            raise
        return self.path(n)
