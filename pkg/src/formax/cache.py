"""Content-addressed on-disk cache for lattice and profile payloads.

Keys hash (degree, sorted generator image tuples, algorithm version); a
secondary alias file maps a generator-independent key (degree plus element
fingerprint) to the primary entry so that differently-generated copies of
the same group share work.  Entries are gzip JSON; corrupt entries are
dropped and recomputed.  The cache is advisory: results must be identical
with it disabled.
"""

from __future__ import annotations

import gzip
import hashlib
import json
import logging
import os
from pathlib import Path

from .lattice import ALGORITHM_VERSION

log = logging.getLogger(__name__)

ENV_CACHE_DIR = "FORMAX_CACHE_DIR"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_CACHE_DIR)
    if env:
        return Path(env)
    xdg = os.environ.get("XDG_CACHE_HOME")
    base = Path(xdg) if xdg else Path.home() / ".cache"
    return base / "formax"


def group_cache_key(key: tuple, kind: str) -> str:
    degree, gens = key
    h = hashlib.sha256()
    h.update(f"v{ALGORITHM_VERSION}:{kind}:{degree}:".encode())
    for g in gens:
        h.update(bytes(g))
        h.update(b"|")
    return h.hexdigest()


class LatticeCache:
    """Directory-backed store; ``enabled=False`` turns every call into a no-op."""

    def __init__(self, directory: Path | str | None = None, enabled: bool = True):
        self.directory = Path(directory) if directory else default_cache_dir()
        self.enabled = enabled

    def _path(self, digest: str) -> Path:
        return self.directory / f"{digest}.json.gz"

    def _alias_path(self, kind: str, alias: str) -> Path:
        digest = hashlib.sha256(f"alias:v{ALGORITHM_VERSION}:{kind}:{alias}".encode()).hexdigest()
        return self.directory / f"{digest}.alias"

    def load(self, kind: str, key: tuple, alias: str | None = None) -> dict | None:
        if not self.enabled:
            return None
        digest = group_cache_key(key, kind)
        payload = self._read(self._path(digest))
        if payload is not None:
            return payload
        if alias is not None:
            apath = self._alias_path(kind, alias)
            try:
                target = apath.read_text().strip()
            except OSError:
                return None
            payload = self._read(self._path(target))
            if payload is not None:
                # adopt under the primary key so the alias hop happens once
                self._write(self._path(digest), payload)
            return payload
        return None

    def store(self, kind: str, key: tuple, payload: dict, alias: str | None = None) -> None:
        if not self.enabled:
            return
        digest = group_cache_key(key, kind)
        self._write(self._path(digest), payload)
        if alias is not None:
            apath = self._alias_path(kind, alias)
            try:
                apath.parent.mkdir(parents=True, exist_ok=True)
                apath.write_text(digest + "\n")
            except OSError as exc:
                log.warning("cache alias write failed: %s", exc)

    def _read(self, path: Path) -> dict | None:
        try:
            with gzip.open(path, "rt", encoding="utf-8") as fh:
                payload = json.load(fh)
        except FileNotFoundError:
            return None
        except (OSError, ValueError, EOFError) as exc:
            log.warning("dropping corrupt cache entry %s (%s)", path.name, exc)
            try:
                path.unlink()
            except OSError:
                pass
            return None
        if not isinstance(payload, dict) or payload.get("_version") != ALGORITHM_VERSION:
            return None
        return payload.get("data")

    def _write(self, path: Path, payload: dict) -> None:
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(".tmp")
            with gzip.open(tmp, "wt", encoding="utf-8") as fh:
                json.dump({"_version": ALGORITHM_VERSION, "data": payload}, fh,
                          separators=(",", ":"), sort_keys=True)
            os.replace(tmp, path)
        except OSError as exc:
            log.warning("cache write failed: %s", exc)

    # -- maintenance --------------------------------------------------------

    def clear(self) -> int:
        if not self.directory.exists():
            return 0
        n = 0
        for path in self.directory.iterdir():
            if path.suffix in (".gz", ".alias", ".tmp") or path.name.endswith(".json.gz"):
                try:
                    path.unlink()
                    n += 1
                except OSError:
                    pass
        return n

    def stats(self) -> dict:
        entries = 0
        aliases = 0
        total = 0
        if self.directory.exists():
            for path in self.directory.iterdir():
                if path.name.endswith(".json.gz"):
                    entries += 1
                    total += path.stat().st_size
                elif path.suffix == ".alias":
                    aliases += 1
        return {"directory": str(self.directory), "entries": entries,
                "aliases": aliases, "bytes": total, "enabled": self.enabled}
