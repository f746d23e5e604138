import random
import re
from collections import deque

import pytest

from wnflp.taxonomy import GLOBAL_ROOT, TaxonomyError
from wnflp.wn_store import WordTerm

ROOT_N = GLOBAL_ROOT["n"]


@pytest.fixture(scope="module")
def tx(wn):
    return wn.taxonomy


@pytest.fixture(scope="module")
def sample(wn):
    rng = random.Random(11)
    return rng.sample(wn.store.synset_ids("n"), 150) + rng.sample(wn.store.synset_ids("v"), 50)


def ancestors(tx, c):
    return {x for ch in tx.hypernym_chains(c) for x in ch}


def bfs_levels(store, c, level):
    """Reference breadth-first walk straight off the reverse link index."""
    seen, frontier = {c}, [c]
    for _ in range(level):
        frontier = [h for x in frontier for h in store.hyponyms_of.get(x, ()) if h not in seen]
        seen.update(frontier)
    return seen - {c}


def test_root_chain(tx):
    assert tx.hypernym_chains(ROOT_N) == ((ROOT_N,),)
    assert tx.depth(ROOT_N) == 1


def test_chain_edges_replay(wn, tx, sample):
    for c in sample:
        chains = tx.hypernym_chains(c)
        assert list(chains) == sorted(chains)
        for ch in chains:
            assert ch[0] == GLOBAL_ROOT[wn.store.pos_of(c)] and ch[-1] == c
            assert ch[1] not in wn.store.hypernyms_of
            for hyper, hypo in zip(ch[1:], ch[2:]):
                assert hyper in wn.store.hypernyms_of[hypo]


def test_god_senses_share_upper_nodes(wn, tx):
    senses = wn.store.senses("god", "n")
    assert len(senses) == 4
    nodes, edges = tx.hypernym_graph("god")
    assert set(senses) <= set(nodes)
    assert len(edges) < sum(len(ch) - 1 for s in senses for ch in tx.hypernym_chains(s))


def test_max_depths(tx):
    assert tx.max_depth("n") == 21
    assert tx.max_depth("v") == 14
    with pytest.raises(TaxonomyError):
        tx.max_depth("a")


def test_lcs_self(tx, sample):
    for c in sample[:30]:
        for r in tx.lcs(c, c):
            if r.depth_c1 == r.depth_c2 and r.lcs_id == c:
                break
        else:
            pytest.fail(f"no identical chain pair for {c}")
        assert tx.deepest_lcs(c, c).lcs_id == c


def test_lcs_matches_intersection_oracle(tx, wn):
    rng = random.Random(5)
    ns, vs = wn.store.synset_ids("n"), wn.store.synset_ids("v")
    for i in range(300):
        ids = ns if i % 3 else vs
        c1, c2 = rng.choice(ids), rng.choice(ids)
        common = ancestors(tx, c1) & ancestors(tx, c2)
        best = max(max(map(len, tx.hypernym_chains(x))) for x in common)
        r = tx.deepest_lcs(c1, c2)
        assert r.lcs_id in common and r.depth_lcs == best
        assert tx.deepest_lcs(c2, c1).depth_lcs == best
        assert all(x.depth_lcs <= min(x.depth_c1, x.depth_c2) for x in tx.lcs(c1, c2))


def test_lcs_pos_mismatch(tx, wn):
    with pytest.raises(TaxonomyError):
        tx.lcs(wn.store.synset_ids("n")[0], wn.store.synset_ids("v")[0])
    adj = wn.store.synset_ids("a")[0]
    with pytest.raises(TaxonomyError):
        tx.hypernym_chains(adj)


def test_lcs_of_felines(wn, tx):
    ids = [wn.store.resolve(WordTerm(w, "n", 1)) for w in ("lion", "leopard", "cougar", "cat")]
    assert wn.lcs_of_words(["lion", "leopard", "cougar", "cat"]) == 102120997
    got = tx.lcs_of_set(ids)
    for c in ids:
        assert got in ancestors(tx, c)
    assert tx.lcs_of_set([ids[0]]) == ids[0]
    with pytest.raises(TaxonomyError):
        tx.lcs_of_set([])


def test_lcs_of_set_subsumes_inputs(tx, wn):
    rng = random.Random(8)
    ns = wn.store.synset_ids("n")
    for _ in range(50):
        group = rng.sample(ns, rng.randint(2, 4))
        got = tx.lcs_of_set(group)
        assert all(got in ancestors(tx, c) for c in group)


def test_hyponym_levels_match_bfs(wn, tx, sample):
    store = wn.store
    for c in sample[:60]:
        assert tx.hyponyms_upto_level(c, 1) == set(store.hyponyms_of.get(c, ()))
        prev = set()
        for level in (1, 2, 3):
            cur = tx.hyponyms_upto_level(c, level)
            assert cur == bfs_levels(store, c, level)
            assert prev <= cur
            prev = cur
    with pytest.raises(TaxonomyError):
        tx.hyponyms_upto_level(sample[0], 0)


def test_hyponym_hypernym_duality(wn, tx, sample):
    for x in sample[:60]:
        for y in tx.hyponyms_upto_level(x, 1):
            assert x in tx.hypernyms(y)
        for p in tx.hypernyms(x):
            assert x in tx.hyponyms(p)


def test_all_hyponyms_fixpoint(wn, tx):
    cat = wn.store.resolve(WordTerm("feline", "n", 1))
    level, prev = 1, set()
    while True:
        cur = tx.hyponyms_upto_level(cat, level)
        if cur == prev:
            break
        prev, level = cur, level + 1
    assert tx.all_hyponyms(cat) == prev


def test_all_hyponyms_of_root(wn, tx):
    assert len(tx.all_hyponyms(ROOT_N)) == len(wn.store.synset_ids("n"))
    assert len(tx.all_hyponyms(GLOBAL_ROOT["v"])) == len(wn.store.synset_ids("v"))


def test_leaf(wn, tx):
    leaf = next(s for s in wn.store.synset_ids("n") if s not in wn.store.hyponyms_of)
    assert tx.all_hyponyms(leaf) == set()
    assert tx.hyponyms_upto_level(leaf, 3) == set()


def test_dot_edges_replay(wn, tx):
    text = tx.export_hypernym_graph("god")
    assert text.startswith("digraph hypernyms {")
    edges = re.findall(r'"[^"]*_(\d+)" -> "[^"]*_(\d+)"', text)
    assert edges
    for hypo, hyper in edges:
        hypo, hyper = int(hypo), int(hyper)
        assert hyper in tx.hypernyms(hypo)
    labels = re.findall(r'\[label="([^"]*)", tooltip="(\d+)"\]', text)
    by_id = {int(sid): lab for lab, sid in labels}
    for sense in wn.store.senses("god", "n"):
        assert by_id[sense] == wn.store.synset(sense).members[0].word
    assert by_id[wn.store.senses("god", "n")[0]] == "God"
    assert text == tx.export_hypernym_graph("god")
