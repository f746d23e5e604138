"""IS-A traversal: hypernym chains, least common subsumers, hyponym sets."""
from __future__ import annotations

import threading
from collections import deque
from typing import Iterable, NamedTuple

from .wn_store import HIERARCHY_POS, LookupFailed, WordNetError, WordNetStore

# Virtual roots sitting above every top concept of their hierarchy.
GLOBAL_ROOT = {"n": 100_000_000_000, "v": 200_000_000_000}
ROOT_POS = {sid: pos for pos, sid in GLOBAL_ROOT.items()}


class TaxonomyError(WordNetError, ValueError):
    pass


class LcsResult(NamedTuple):
    lcs_id: int
    depth_lcs: int
    depth_c1: int
    depth_c2: int


def common_prefix(a: tuple, b: tuple) -> int:
    n = min(len(a), len(b))
    k = 0
    while k < n and a[k] == b[k]:
        k += 1
    return k


class Taxonomy:
    """Hierarchy queries over a loaded store.

    Depths count nodes: the virtual root has depth 1 and every chain starts
    with it, so ``depth(c) == len(chain)``.
    """

    def __init__(self, store: WordNetStore):
        self.store = store
        self._chains: dict[int, tuple[tuple[int, ...], ...]] = {}
        self._max_depth: dict[str, int] = {}
        self._tops: dict[str, tuple[int, ...]] = {}
        self._lock = threading.Lock()

    # -- basic lookups -------------------------------------------------

    def pos_of(self, concept: int) -> str:
        if concept in ROOT_POS:
            return ROOT_POS[concept]
        return self.store.pos_of(concept)

    def _check_hierarchy(self, concept: int) -> str:
        pos = self.pos_of(concept)
        if pos not in HIERARCHY_POS:
            raise TaxonomyError(f"synset {concept} has part of speech {pos!r}; only nouns and verbs have hypernyms")
        return pos

    def tops(self, pos: str) -> tuple[int, ...]:
        """Concepts without a hypernym: the virtual root's direct hyponyms."""
        with self._lock:
            if pos not in self._tops:
                ids = self.store.synset_ids(pos)
                self._tops[pos] = tuple(s for s in ids if s not in self.store.hypernyms_of)
            return self._tops[pos]

    def hypernyms(self, concept: int) -> tuple[int, ...]:
        if concept in ROOT_POS:
            return ()
        parents = self.store.hypernyms_of.get(concept)
        if parents:
            return parents
        pos = self.store.pos_of(concept)
        return (GLOBAL_ROOT[pos],) if pos in HIERARCHY_POS else ()

    def hyponyms(self, concept: int) -> tuple[int, ...]:
        if concept in ROOT_POS:
            return self.tops(ROOT_POS[concept])
        return self.store.hyponyms_of.get(concept, ())

    # -- chains ----------------------------------------------------------

    def hypernym_chains(self, concept: int) -> tuple[tuple[int, ...], ...]:
        """All root-to-concept chains, root first, sorted lexicographically."""
        self._check_hierarchy(concept)
        cached = self._chains.get(concept)
        if cached is not None:
            return cached
        chains = tuple(sorted(self._walk_up(concept, frozenset())))
        with self._lock:
            self._chains[concept] = chains
        return chains

    def _walk_up(self, concept, on_path):
        if concept in ROOT_POS:
            return [(concept,)]
        cached = self._chains.get(concept)
        if cached is not None and not any(on_path.intersection(ch) for ch in cached):
            return list(cached)
        on_path = on_path | {concept}
        out = []
        for parent in self.hypernyms(concept):
            if parent in on_path:  # cycle guard
                continue
            for chain in self._walk_up(parent, on_path):
                out.append(chain + (concept,))
        if not out:
            out.append((GLOBAL_ROOT[self.pos_of(concept)], concept))
        return out

    def depth(self, concept: int) -> int:
        """Node count of the shortest root-to-concept chain."""
        return min(len(c) for c in self.hypernym_chains(concept))

    def max_depth(self, pos: str) -> int:
        """Longest chain (in nodes) over every concept of *pos*."""
        if pos not in HIERARCHY_POS:
            raise TaxonomyError(f"no hierarchy for part of speech {pos!r}")
        with self._lock:
            if pos in self._max_depth:
                return self._max_depth[pos]
        longest: dict[int, int] = {}

        def longest_from_root(c, on_path=frozenset()):
            if c in longest:
                return longest[c]
            best = 1
            for p in self.hypernyms(c):
                if p not in on_path:
                    best = max(best, longest_from_root(p, on_path | {c}) + 1)
            longest[c] = best
            return best

        value = max(longest_from_root(s) for s in self.store.synset_ids(pos))
        with self._lock:
            self._max_depth[pos] = value
        return value

    # -- least common subsumer --------------------------------------------

    def lcs(self, c1: int, c2: int) -> list[LcsResult]:
        """One result per (chain of c1, chain of c2) pair."""
        p1, p2 = self._check_hierarchy(c1), self._check_hierarchy(c2)
        if p1 != p2:
            raise TaxonomyError(f"cannot compare a {p1!r} synset with a {p2!r} synset")
        out = []
        for a in self.hypernym_chains(c1):
            for b in self.hypernym_chains(c2):
                k = common_prefix(a, b)
                out.append(LcsResult(a[k - 1], k, len(a), len(b)))
        return out

    def deepest_lcs(self, c1: int, c2: int) -> LcsResult:
        best = None
        for r in self.lcs(c1, c2):
            if best is None or r.depth_lcs > best.depth_lcs:
                best = r
        return best

    def lcs_of_set(self, concepts: Iterable[int]) -> int:
        concepts = list(concepts)
        if not concepts:
            raise TaxonomyError("lcs of an empty set")
        acc = concepts[0]
        self._check_hierarchy(acc)
        for c in concepts[1:]:
            acc = self.deepest_lcs(acc, c).lcs_id
        return acc

    # -- hyponyms ------------------------------------------------------------

    def hyponyms_upto_level(self, concept: int, level: int) -> set[int]:
        if level < 1:
            raise TaxonomyError("level must be >= 1")
        self._known(concept)
        seen = {concept}
        frontier = [concept]
        for _ in range(level):
            nxt = []
            for c in frontier:
                for h in self.hyponyms(c):
                    if h not in seen:
                        seen.add(h)
                        nxt.append(h)
            if not nxt:
                break
            frontier = nxt
        seen.discard(concept)
        return seen

    def all_hyponyms(self, concept: int) -> set[int]:
        self._known(concept)
        seen = set()
        queue = deque([concept])
        while queue:
            c = queue.popleft()
            for h in self.hyponyms(c):
                if h not in seen and h != concept:
                    seen.add(h)
                    queue.append(h)
        return seen

    def _known(self, concept):
        if concept not in ROOT_POS and concept not in self.store.synsets:
            raise LookupFailed(f"unknown synset id {concept}")

    # -- graph export --------------------------------------------------------

    def hypernym_graph(self, word: str) -> tuple[list[int], list[tuple[int, int]]]:
        """Nodes and hyponym->hypernym edges of the union of all sense HyperTrees."""
        senses = [s for s in self.store.senses(word) if self.pos_of(s) in HIERARCHY_POS]
        if not senses:
            raise LookupFailed(f"{word!r} has no noun or verb senses")
        nodes, edges = set(), set()
        for s in senses:
            for chain in self.hypernym_chains(s):
                nodes.update(chain)
                edges.update((chain[i + 1], chain[i]) for i in range(len(chain) - 1))
        return sorted(nodes), sorted(edges)

    def label(self, concept: int) -> str:
        if concept in ROOT_POS:
            return "*ROOT*"
        return self.store.synset(concept).head_word

    def export_hypernym_graph(self, word: str) -> str:
        nodes, edges = self.hypernym_graph(word)

        def node_id(c):
            return f"{self.label(c)}_{c}".replace('"', '\\"')

        lines = ["digraph hypernyms {"]
        for c in nodes:
            label = self.label(c).replace('"', '\\"')
            lines.append(f'  "{node_id(c)}" [label="{label}", tooltip="{c}"];')
        for hypo, hyper in edges:
            lines.append(f'  "{node_id(hypo)}" -> "{node_id(hyper)}";')
        lines.append("}")
        return "\n".join(lines) + "\n"
