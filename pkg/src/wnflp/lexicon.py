"""One object bundling the store, hierarchy, IC tables and measures."""
from __future__ import annotations

import os
from functools import lru_cache

from .infocontent import DEFAULT_EPSILON, InfoContent
from .sim_measures import Similarity
from .taxonomy import Taxonomy, TaxonomyError
from .wn_store import HIERARCHY_POS, LookupFailed, WordNetStore, WordTerm, load_db


class WordNet:
    def __init__(self, store: WordNetStore, ic_epsilon: float = DEFAULT_EPSILON):
        self.store = store
        self.taxonomy = Taxonomy(store)
        self.ic = InfoContent(self.taxonomy, ic_epsilon)
        self.sim = Similarity(self.taxonomy, self.ic)

    @classmethod
    def open(cls, db_dir=None, ic_epsilon: float = DEFAULT_EPSILON) -> "WordNet":
        return cls(_cached_store(str(db_dir or os.environ.get("WNDB") or "")), ic_epsilon)

    def concept_candidates(self, item: str) -> list[int]:
        """Synsets a CLI argument may denote: one for ``w:p:s``, every noun/verb sense for a bare word."""
        if ":" in item:
            return [self.store.resolve(WordTerm.parse(item))]
        senses = [s for p in HIERARCHY_POS for s in self.store.senses(item, p)]
        if not senses:
            raise LookupFailed(f"{item!r} has no noun or verb senses")
        return senses

    def lcs_of_words(self, items: list[str]) -> int:
        """Most specific common subsumer of a list of words or word terms.

        Bare words range over all their senses of the first part of speech
        they share; at every folding step the deepest candidate is kept.
        """
        if not items:
            raise TaxonomyError("lcs of an empty set")
        pools = [self.concept_candidates(i) for i in items]
        for pos in HIERARCHY_POS:
            typed = [[c for c in pool if self.taxonomy.pos_of(c) == pos] for pool in pools]
            if all(typed):
                break
        else:
            raise TaxonomyError("the words share no part of speech")
        acc = typed[0]
        for pool in typed[1:]:
            best = None
            for a in acc:
                for b in pool:
                    r = self.taxonomy.deepest_lcs(a, b)
                    if best is None or r.depth_lcs > best.depth_lcs:
                        best = r
            acc = [best.lcs_id]
        if len(acc) > 1:
            # single item: prefer its first sense
            acc = acc[:1]
        return acc[0]


@lru_cache(maxsize=4)
def _cached_store(db_dir: str) -> WordNetStore:
    return load_db(db_dir or None)
