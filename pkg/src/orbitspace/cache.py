"""Persistent enumeration cache, keyed by group fingerprint and depth."""

from __future__ import annotations

import os
from pathlib import Path

import numpy as np

from .hyperbolic import ElementTable

CACHE_ENV = "ORBITSPACE_CACHE_DIR"


class DiskTableStore:
    """Stores enumerated element tables as ``<fingerprint>-d<depth>.npz``."""

    def __init__(self, directory):
        self.directory = Path(directory)
        self._memory = {}

    def path(self, fingerprint, depth) -> Path:
        return self.directory / f"{fingerprint}-d{depth}.npz"

    def load(self, fingerprint, depth):
        key = (fingerprint, depth)
        if key in self._memory:
            return self._memory[key]
        p = self.path(fingerprint, depth)
        if not p.exists():
            return None
        with np.load(p) as data:
            lengths = data["lengths"]
            letters = data["letters"]
            words = tuple(tuple(int(x) for x in row[:n]) for row, n in zip(letters, lengths))
            table = ElementTable(data["matrices"], words, depth, fingerprint)
        self._memory[key] = table
        return table

    def save(self, table: ElementTable):
        self._memory[(table.fingerprint, table.depth)] = table
        self.directory.mkdir(parents=True, exist_ok=True)
        width = max((len(w) for w in table.words), default=0)
        letters = np.zeros((len(table.words), max(width, 1)), dtype=np.int8)
        for i, w in enumerate(table.words):
            letters[i, : len(w)] = w
        lengths = np.array([len(w) for w in table.words], dtype=np.int16)
        target = self.path(table.fingerprint, table.depth)
        tmp = target.with_suffix(".tmp.npz")
        np.savez(tmp, matrices=table.matrices, letters=letters, lengths=lengths)
        os.replace(tmp, target)


def cache_dir_from_env(explicit=None):
    return explicit or os.environ.get(CACHE_ENV) or None
