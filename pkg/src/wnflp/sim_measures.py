"""PATH, WUP, LCH, RES, JCN and LIN similarity over word terms."""
from __future__ import annotations

import enum
import math
from typing import NamedTuple

from .infocontent import InfoContent
from .taxonomy import Taxonomy, TaxonomyError, common_prefix
from .wn_store import HIERARCHY_POS, WordTerm


class Measure(str, enum.Enum):
    PATH = "path"
    WUP = "wup"
    LCH = "lch"
    RES = "res"
    JCN = "jcn"
    LIN = "lin"

    @property
    def ic_based(self) -> bool:
        return self in (Measure.RES, Measure.JCN, Measure.LIN)

    @classmethod
    def parse(cls, name) -> "Measure":
        if isinstance(name, Measure):
            return name
        try:
            return cls(str(name).lower())
        except ValueError:
            raise ValueError(f"unknown similarity measure {name!r}; "
                             f"expected one of {', '.join(m.value for m in cls)}") from None


class SimilarityResult(NamedTuple):
    raw: float
    normalized: float


class Similarity:
    """Evaluate measures on concepts or word terms.

    Every (chain of a, chain of b) pair is scored and the maximum raw degree
    wins. Depths are chain-relative node counts (virtual root = 1).
    """

    def __init__(self, taxonomy: Taxonomy, ic: InfoContent | None = None):
        self.taxonomy = taxonomy
        self.store = taxonomy.store
        self.ic = ic if ic is not None else InfoContent(taxonomy)

    def _concept(self, term) -> int:
        if isinstance(term, int):
            return term
        if isinstance(term, str):
            term = WordTerm.parse(term, default_pos="n")
        if term.pos not in HIERARCHY_POS:
            raise TaxonomyError(f"similarity is only defined for nouns and verbs, got {term}")
        return self.store.resolve(term)

    def raw_pairs(self, measure, c1: int, c2: int) -> list[float]:
        """Raw degree for each chain pair, in chain-pair order."""
        m = Measure.parse(measure)
        p1, p2 = self.taxonomy.pos_of(c1), self.taxonomy.pos_of(c2)
        if p1 != p2 or p1 not in HIERARCHY_POS:
            raise TaxonomyError(f"cannot compare {p1!r} with {p2!r} synsets")
        chains1 = self.taxonomy.hypernym_chains(c1)
        chains2 = self.taxonomy.hypernym_chains(c2)
        out = []
        if m.ic_based:
            ic1, ic2 = self.ic.ic(c1), self.ic.ic(c2)
        else:
            two_max = 2.0 * self.taxonomy.max_depth(p1)
        for a in chains1:
            for b in chains2:
                k = common_prefix(a, b)
                da, db = len(a), len(b)
                if m is Measure.PATH:
                    out.append(1.0 / (da + db - 2 * k + 1))
                elif m is Measure.WUP:
                    out.append(2.0 * k / (da + db))
                elif m is Measure.LCH:
                    out.append(-math.log((da + db - 2 * k + 1) / two_max))
                else:
                    ic_lcs = self.ic.ic(a[k - 1])
                    if m is Measure.RES:
                        out.append(ic_lcs)
                    elif m is Measure.JCN:
                        dist = ic1 + ic2 - 2.0 * ic_lcs
                        out.append(math.inf if dist <= 0.0 else 1.0 / dist)
                    else:
                        denom = ic1 + ic2
                        # both concepts carry no information: they coincide with their subsumer
                        out.append(1.0 if denom == 0.0 else 2.0 * ic_lcs / denom)
        return out

    def raw(self, measure, c1: int, c2: int) -> float:
        return max(self.raw_pairs(measure, c1, c2))

    def normalize(self, measure, raw: float, pos: str = "n") -> float:
        m = Measure.parse(measure)
        if raw < 0 or math.isnan(raw):
            raise ValueError(f"raw degree must be non-negative, got {raw}")
        if m in (Measure.PATH, Measure.WUP, Measure.LIN):
            value = raw
        elif m is Measure.LCH:
            value = raw / math.log(2.0 * self.taxonomy.max_depth(pos))
        elif m is Measure.RES:
            value = raw / self.ic.ic_max(pos)
        else:
            value = 1.0 if math.isinf(raw) else raw / (1.0 + raw)
        return min(value, 1.0)

    def similarity(self, measure, a, b) -> SimilarityResult:
        c1, c2 = self._concept(a), self._concept(b)
        raw = self.raw(measure, c1, c2)
        return SimilarityResult(raw, self.normalize(measure, raw, self.taxonomy.pos_of(c1)))

    def degree(self, measure, a, b) -> float:
        return self.similarity(measure, a, b).normalized
