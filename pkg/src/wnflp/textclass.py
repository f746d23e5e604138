"""Training-free text classification against WordNet-derived category ontologies.

Each category gets an ontology of proximity equations ``word ~ category``
(from its hyponyms or its gloss). A document is scored per category from the
occurrences of ontology words, and every category within 90% of the best
score is assigned.
"""
from __future__ import annotations

import re
from collections import Counter
from typing import Callable, Iterable, Mapping, NamedTuple, Sequence

from .proximity import ProximityEquation
from .sim_measures import Measure
from .wn_store import HIERARCHY_POS, LookupFailed, WordTerm

STOPWORDS = frozenset("""
a about above after again against all also am an and any are as at be because been
before being below between both but by can could did do does doing down during each
either etc few for from further had has have having he her here hers herself him
himself his how however i if in into is it its itself just may me might more most
must my myself neither no nor not now of off on once only or other ought our ours
ourselves out over own per same she should so some such than that the their theirs
them themselves then there these they this those through thus to too under until
up upon us usually very via was we were what when where which while who whom whose
why will with within without would yet you your yours yourself yourselves
""".split())

_LETTERS = re.compile(r"[a-z]+")

ASSIGN_RATIO = 0.9


class OntologyError(ValueError):
    pass


class CategoryOntology(NamedTuple):
    category: str
    synset_id: int
    equations: tuple          # ProximityEquation(word, category, degree, None)
    source: str               # "hyponyms:<level>" or "gloss"

    def degrees(self) -> dict[str, float]:
        """Word -> approximation degree, including the category word at 1.0."""
        out = {self.category: 1.0}
        for eq in self.equations:
            out.setdefault(eq.sym_a, eq.degree)
        return out


class OccurrenceDegree(NamedTuple):
    word: str
    category: str
    count: int
    approx_degree: float
    value: float


class CompatibilityScore(NamedTuple):
    doc_id: str
    category: str
    score: float


def word_runs(text: str) -> list[str]:
    return _LETTERS.findall(text.lower())


def tokenize(text: str) -> list[str]:
    """Lowercase letter runs minus stopwords."""
    return [t for t in word_runs(text) if t not in STOPWORDS]


def _category(wn, category) -> tuple[str, int]:
    term = category if isinstance(category, WordTerm) else WordTerm.parse(str(category), "n")
    sid = wn.store.try_resolve(term)
    if sid is None or wn.taxonomy.pos_of(sid) not in HIERARCHY_POS:
        raise OntologyError(f"category {term} is not a WordNet noun or verb")
    return term.word.lower(), sid


def _ontology(wn, cat_word, cat_sid, scored: Iterable[tuple[str, int]], measure, lam, source):
    best: dict[str, float] = {}
    for word, sid in scored:
        if word == cat_word:
            continue
        d = wn.sim.degree(measure, sid, cat_sid)
        if d > 0.0 and d >= lam and d > best.get(word, 0.0):
            best[word] = d
    eqs = tuple(ProximityEquation(w, cat_word, d, None) for w, d in best.items())
    return CategoryOntology(cat_word, cat_sid, eqs, source)


def build_ontology_hyponyms(wn, category, level: int = 1, measure="wup", lam: float = 0.0) -> CategoryOntology:
    """Relate every member word of the hyponyms down to *level* with the category."""
    measure = Measure.parse(measure)
    cat_word, cat_sid = _category(wn, category)
    hypos = sorted(wn.taxonomy.hyponyms_upto_level(cat_sid, level))
    scored = ((m.word.lower(), sid) for sid in hypos for m in wn.store.synset(sid).members)
    return _ontology(wn, cat_word, cat_sid, scored, measure, lam, f"hyponyms:{level}")


def gloss_tokens(wn, gloss: str) -> list[str]:
    """Distinct gloss tokens that are WordNet nouns, in first-occurrence order."""
    return [t for t in dict.fromkeys(tokenize(gloss)) if wn.store.senses(t, "n")]


def build_ontology_gloss(wn, category, measure="wup", lam: float = 0.0) -> CategoryOntology:
    """Relate the nouns of the category's gloss (first noun sense) with the category."""
    measure = Measure.parse(measure)
    cat_word, cat_sid = _category(wn, category)
    pos = wn.taxonomy.pos_of(cat_sid)
    scored = []
    for tok in gloss_tokens(wn, wn.store.gloss(cat_sid)):
        sid = wn.store.try_resolve(WordTerm(tok, pos, 1))
        if sid is not None:
            scored.append((tok, sid))
    return _ontology(wn, cat_word, cat_sid, scored, measure, lam, "gloss")


def build_ontology(wn, category, source: str = "hyponyms:2", measure="wup", lam: float = 0.0) -> CategoryOntology:
    """``source`` is ``hyponyms:LEVEL`` or ``gloss``."""
    if source == "gloss":
        return build_ontology_gloss(wn, category, measure, lam)
    kind, _, level = source.partition(":")
    if kind != "hyponyms" or not level.isdigit() or int(level) < 1:
        raise OntologyError(f"ontology must be hyponyms:LEVEL or gloss, got {source!r}")
    return build_ontology_hyponyms(wn, category, int(level), measure, lam)


def _count_phrase(tokens: Sequence[str], phrase: tuple[str, ...], counts: Counter) -> int:
    if len(phrase) == 1:
        return counts.get(phrase[0], 0)
    n = len(phrase)
    return sum(1 for i in range(len(tokens) - n + 1) if tuple(tokens[i:i + n]) == phrase)


def occurrence_degrees(doc: Sequence[str], ontology: CategoryOntology) -> list[OccurrenceDegree]:
    """count x degree for each ontology word found in the tokenized *doc*."""
    counts = Counter(doc)
    out = []
    for word, d in ontology.degrees().items():
        phrase = tuple(word_runs(word))
        if not phrase:
            continue
        c = _count_phrase(doc, phrase, counts)
        if c:
            out.append(OccurrenceDegree(word, ontology.category, c, d, c * d))
    return out


def _wsum(occ: list[OccurrenceDegree], doc_len: int) -> float:
    if doc_len == 0:
        return 0.0
    return min(1.0, sum(o.value for o in occ) / doc_len)


def _max(occ: list[OccurrenceDegree], doc_len: int) -> float:
    return max((o.approx_degree for o in occ), default=0.0)


COMPATIBILITY: dict[str, Callable[[list, int], float]] = {"wsum": _wsum, "max": _max}


def compatibility(doc: Sequence[str], ontologies: Sequence[CategoryOntology], measure: str = "wsum",
                  doc_id: str = "") -> list[CompatibilityScore]:
    try:
        fn = COMPATIBILITY[measure]
    except KeyError:
        raise ValueError(f"unknown compatibility measure {measure!r}; "
                         f"choose from {sorted(COMPATIBILITY)}") from None
    if not ontologies:
        raise ValueError("no category ontologies given")
    return [CompatibilityScore(doc_id, o.category, fn(occurrence_degrees(doc, o), len(doc)))
            for o in ontologies]


def classify(scores: Mapping[str, float]) -> list[str]:
    """Categories scoring within ``ASSIGN_RATIO`` of the best; none when the best is 0."""
    top = max(scores.values(), default=0.0)
    if top <= 0.0:
        return []
    low = ASSIGN_RATIO * top
    return [c for c, s in scores.items() if s >= low]


def precision_recall_f(assigned: Mapping[str, Iterable[str]], gold: Mapping[str, Iterable[str]]):
    """Micro-averaged precision, recall and F1 over documents."""
    tp = fp = fn = 0
    for doc in set(assigned) | set(gold):
        a, g = set(assigned.get(doc, ())), set(gold.get(doc, ()))
        tp += len(a & g)
        fp += len(a - g)
        fn += len(g - a)
    p = tp / (tp + fp) if tp + fp else 0.0
    r = tp / (tp + fn) if tp + fn else 0.0
    f = 2 * p * r / (p + r) if p + r else 0.0
    return p, r, f


class TextClassifier:
    """Ontologies built once per category, then any number of documents scored."""

    def __init__(self, wn, categories: Sequence, ontology: str = "hyponyms:2", measure="wup",
                 compat: str = "wsum", lam: float = 0.0):
        if not categories:
            raise ValueError("at least one category is required")
        if compat not in COMPATIBILITY:
            raise ValueError(f"unknown compatibility measure {compat!r}")
        self.compat = compat
        self.ontologies = [build_ontology(wn, c, ontology, measure, lam) for c in categories]

    def scores(self, text: str, doc_id: str = "") -> list[CompatibilityScore]:
        return compatibility(tokenize(text), self.ontologies, self.compat, doc_id)

    def classify_documents(self, docs: Mapping[str, str]) -> list[tuple[CompatibilityScore, bool]]:
        """Rows of (score, assigned) per document and category, documents in given order."""
        rows = []
        for doc_id, text in docs.items():
            sc = self.scores(text, doc_id)
            chosen = set(classify({s.category: s.score for s in sc}))
            rows.extend((s, s.category in chosen) for s in sc)
        return rows
