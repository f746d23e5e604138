"""Frequency of use and information content from WordNet tag counts."""
from __future__ import annotations

import math
import threading

import numpy as np

from . import _kernels
from .taxonomy import GLOBAL_ROOT, ROOT_POS, Taxonomy, TaxonomyError

DEFAULT_EPSILON = 0.1


class InfoContent:
    """Lazily builds one frequency table per part of speech.

    ``frequency(c)`` sums the synset tag numbers of ``c`` and every distinct
    concept below it; zero frequencies are replaced by ``epsilon`` when the
    IC is taken so every concept has a finite value.
    """

    def __init__(self, taxonomy: Taxonomy, epsilon: float = DEFAULT_EPSILON):
        if not 0.0 < epsilon < 1.0:
            raise ValueError("epsilon must lie in (0, 1)")
        self.taxonomy = taxonomy
        self.epsilon = float(epsilon)
        self._tables: dict[str, dict[int, float]] = {}
        self._lock = threading.Lock()

    def synset_tag_num(self, concept: int) -> int:
        if concept in ROOT_POS:
            return 0
        return sum(m.tag_count for m in self.taxonomy.store.synset(concept).members)

    def table(self, pos: str) -> dict[int, float]:
        with self._lock:
            if pos not in self._tables:
                self._tables[pos] = self._build(pos)
            return self._tables[pos]

    def _build(self, pos: str) -> dict[int, float]:
        if pos not in GLOBAL_ROOT:
            raise TaxonomyError(f"no frequency table for part of speech {pos!r}")
        ids = [GLOBAL_ROOT[pos]] + self.taxonomy.store.synset_ids(pos)
        index = {sid: i for i, sid in enumerate(ids)}
        indptr = np.zeros(len(ids) + 1, dtype=np.int64)
        parents = []
        for i, sid in enumerate(ids):
            ps = [index[p] for p in self.taxonomy.hypernyms(sid)]
            parents.extend(ps)
            indptr[i + 1] = indptr[i] + len(ps)
        weights = np.array([self.synset_tag_num(s) for s in ids], dtype=np.float64)
        totals = _kernels.ancestor_sums(indptr, np.asarray(parents, dtype=np.int64), weights)
        return {sid: float(totals[i]) for i, sid in enumerate(ids)}

    def frequency(self, concept: int) -> float:
        pos = self.taxonomy.pos_of(concept)
        try:
            return self.table(pos)[concept]
        except KeyError:
            raise TaxonomyError(f"synset {concept} is not in the {pos!r} hierarchy") from None

    def root_frequency(self, pos: str) -> float:
        return self.table(pos)[GLOBAL_ROOT[pos]]

    def ic(self, concept: int) -> float:
        pos = self.taxonomy.pos_of(concept)
        root = self.root_frequency(pos)
        if root <= 0:
            raise TaxonomyError(f"root frequency of {pos!r} is zero; corrupt tag counts")
        value = -math.log(max(self.frequency(concept), self.epsilon) / root)
        return value if value > 0.0 else 0.0

    def ic_max(self, pos: str) -> float:
        return -math.log(self.epsilon / self.root_frequency(pos))
