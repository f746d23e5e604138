import math
import random

import pytest

from wnflp.sim_measures import Measure, SimilarityResult
from wnflp.taxonomy import TaxonomyError, common_prefix
from wnflp.wn_store import WordTerm

GOLDEN_WUP = [("man:n:1", "human:n:1", 0.56), ("man:n:1", "person:n:1", 0.8888888888888888),
              ("human:n:1", "person:n:1", 0.6086956521739131), ("grain:n:8", "wheat:n:2", 0.2608695652173913)]


@pytest.fixture(scope="module")
def pairs(wn):
    rng = random.Random(9)
    ns, vs = wn.store.synset_ids("n"), wn.store.synset_ids("v")
    out = [(rng.choice(ns), rng.choice(ns)) for _ in range(150)]
    out += [(rng.choice(vs), rng.choice(vs)) for _ in range(50)]
    return out


@pytest.mark.parametrize("a, b, want", GOLDEN_WUP)
def test_golden_wup(wn, a, b, want):
    assert wn.sim.similarity("wup", a, b) == SimilarityResult(want, want)


def test_identities(wn, pairs):
    for c, _ in pairs[:40]:
        pos = wn.taxonomy.pos_of(c)
        assert wn.sim.raw("path", c, c) == 1.0
        assert wn.sim.raw("wup", c, c) == 1.0
        assert wn.sim.raw("lin", c, c) == 1.0
        assert wn.sim.degree("jcn", c, c) == 1.0
        assert wn.sim.degree("lch", c, c) == pytest.approx(1.0)
        assert wn.sim.raw("lch", c, c) == pytest.approx(math.log(2 * wn.taxonomy.max_depth(pos)))


@pytest.mark.parametrize("measure", list(Measure))
def test_symmetry_and_range(wn, pairs, measure):
    for a, b in pairs:
        ab, ba = wn.sim.similarity(measure, a, b), wn.sim.similarity(measure, b, a)
        assert ab == ba
        assert 0.0 < ab.normalized <= 1.0 or (measure.ic_based and ab.raw == 0.0)


@pytest.mark.parametrize("measure", list(Measure))
def test_max_selection(wn, pairs, measure):
    for a, b in pairs[:20]:
        per_pair = wn.sim.raw_pairs(measure, a, b)
        assert len(per_pair) == len(wn.taxonomy.hypernym_chains(a)) * len(wn.taxonomy.hypernym_chains(b))
        assert wn.sim.raw(measure, a, b) == max(per_pair)


def test_edge_formulas_by_hand(wn, pairs):
    for a, b in pairs[:20]:
        best = {"path": 0.0, "wup": 0.0}
        for ca in wn.taxonomy.hypernym_chains(a):
            for cb in wn.taxonomy.hypernym_chains(b):
                shared = 0
                while shared < min(len(ca), len(cb)) and ca[shared] == cb[shared]:
                    shared += 1
                best["path"] = max(best["path"], 1 / (len(ca) + len(cb) - 2 * shared + 1))
                best["wup"] = max(best["wup"], 2 * shared / (len(ca) + len(cb)))
        assert wn.sim.raw("path", a, b) == pytest.approx(best["path"])
        assert wn.sim.raw("wup", a, b) == pytest.approx(best["wup"])


def test_res_against_subtree_oracle(wn):
    rng = random.Random(30)
    ns = wn.store.synset_ids("n")
    root = wn.ic.root_frequency("n")
    for _ in range(20):
        a, b = rng.choice(ns), rng.choice(ns)
        best = 0.0
        for ca in wn.taxonomy.hypernym_chains(a):
            for cb in wn.taxonomy.hypernym_chains(b):
                lcs = ca[common_prefix(ca, cb) - 1]
                below = wn.taxonomy.all_hyponyms(lcs)
                freq = wn.ic.synset_tag_num(lcs) + sum(wn.ic.synset_tag_num(x) for x in below)
                best = max(best, -math.log(max(freq, 0.1) / root))
        assert wn.sim.raw("res", a, b) == pytest.approx(best, abs=1e-12)


@pytest.mark.parametrize("measure", list(Measure))
def test_normalization_monotone(wn, measure):
    raws = [0.0, 1e-6, 0.01, 0.3, 0.56, 1.0, 2.0, 3.7, 10.0, 1e6]
    if measure in (Measure.PATH, Measure.WUP, Measure.LIN):
        raws = [r for r in raws if r <= 1.0]
    normed = [wn.sim.normalize(measure, r) for r in raws]
    assert all(x <= y for x, y in zip(normed, normed[1:]))
    assert all(0.0 <= x <= 1.0 for x in normed)
    with pytest.raises(ValueError):
        wn.sim.normalize(measure, -0.1)


def test_fixed_normalizations(wn):
    assert wn.sim.normalize("wup", 0.56) == 0.56
    assert wn.sim.normalize("jcn", math.inf) == 1.0
    assert wn.sim.normalize("lch", math.log(2 * 21)) == 1.0
    assert wn.sim.normalize("res", wn.ic.ic_max("n")) == 1.0


def test_rejects_mixed_and_adjectives(wn):
    with pytest.raises(TaxonomyError):
        wn.sim.similarity("wup", "cat:n:1", "run:v:1")
    with pytest.raises(TaxonomyError):
        wn.sim.similarity("wup", WordTerm("good", "a", 1), WordTerm("bad", "a", 1))


def test_measure_parse():
    assert Measure.parse("WUP") is Measure.WUP
    with pytest.raises(ValueError):
        Measure.parse("cosine")
