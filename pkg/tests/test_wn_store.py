import random

import pytest

from wnflp.wn_store import (DatabaseFormatError, LookupFailed, WordNetError, WordSenseEntry, WordTerm,
                            load_db, parse_s_line)


def write_db(tmp_path, s="", hyp="", g=""):
    (tmp_path / "wn_s.pl").write_text(s)
    (tmp_path / "wn_hyp.pl").write_text(hyp)
    (tmp_path / "wn_g.pl").write_text(g)
    return tmp_path


TINY_S = """% comment line
s(100000001,1,'entity',n,1,5).
s(100000002,1,'thing',n,1,3).
s(100000002,2,'object',n,1,0).
s(100000003,1,'it''s',n,1,0).
s(200000001,1,'move',v,1,7).
"""
TINY_HYP = "hyp(100000002,100000001).\nhyp(100000003,100000002).\n"
TINY_G = "g(100000001,'that which is').\n\ng(100000002,'a ''physical'' entity').\n"


def test_parse_s_line():
    assert parse_s_line("s(102121620,1,'cat',n,1,18).") == WordSenseEntry(102121620, 1, "cat", "n", 1, 18)
    assert parse_s_line("s(102121620,1,'cat',n,1).") is None
    assert parse_s_line("s(1,1,'o''clock',n,1,0).").word == "o'clock"


def test_word_term_parse():
    assert WordTerm.parse("grain:n:8") == WordTerm("grain", "n", 8)
    assert WordTerm.parse("run:v") == WordTerm("run", "v", 1)
    assert WordTerm.parse("cat", "n") == WordTerm("cat", "n", 1)
    with pytest.raises(ValueError):
        WordTerm.parse("cat")


def test_tiny_database(tmp_path):
    store = load_db(write_db(tmp_path, TINY_S, TINY_HYP, TINY_G))
    assert len(store) == 4
    assert store.resolve(WordTerm("object", "n", 1)) == 100000002
    assert [str(t) for t in store.synset_components(100000002)] == ["thing:n:1", "object:n:1"]
    assert store.gloss(100000002) == "a 'physical' entity"
    assert store.synset(100000003).head_word == "it's"
    assert store.hypernyms_of[100000003] == (100000002,)
    assert store.hyponyms_of[100000001] == (100000002,)


def test_empty_hypernym_file(tmp_path):
    store = load_db(write_db(tmp_path, TINY_S, "", TINY_G))
    assert len(store.hypernyms_of) == 0
    assert len(store) == 4


@pytest.mark.parametrize("s, hyp, lineno", [
    (TINY_S + "s(1,1,cat,n,1,0).\n", TINY_HYP, 7),
    (TINY_S + "s(100000009,1,'thing',n,1,0).\n", TINY_HYP, 7),
    (TINY_S, TINY_HYP + "hyp(100000003,200000001).\n", 3),
    (TINY_S, "hyp(100000002 100000001).\n", 1),
], ids=["unquoted-word", "duplicate-key", "cross-pos-link", "malformed-hyp"])
def test_format_errors_report_line(tmp_path, s, hyp, lineno):
    with pytest.raises(DatabaseFormatError) as err:
        load_db(write_db(tmp_path, s, hyp, TINY_G))
    assert err.value.lineno == lineno
    assert err.value.text


def test_missing_file(tmp_path):
    (tmp_path / "wn_s.pl").write_text(TINY_S)
    with pytest.raises(WordNetError, match="missing"):
        load_db(tmp_path)


def test_loader_is_deterministic(tmp_path):
    path = write_db(tmp_path, TINY_S, TINY_HYP, TINY_G)
    a, b = load_db(path), load_db(path)
    assert dict(a.synsets) == dict(b.synsets)
    assert dict(a.hypernyms_of) == dict(b.hypernyms_of)


def test_cat_record(wn):
    rec = next(wn.store.word_info("cat"))
    assert (rec.synset.synset_id, rec.w_num, rec.synset.pos, rec.sense_number, rec.tag_count) == \
        (102121620, 1, "n", 1, 18)
    assert rec.gloss.startswith("feline mammal usually having thick soft fur")


def test_cat_has_nine_senses(wn):
    recs = list(wn.store.word_info("cat"))
    assert len(recs) == 9
    assert [r.synset.pos for r in recs] == ["n"] * 7 + ["v"] * 2
    assert [r.sense_number for r in recs] == [1, 2, 3, 4, 5, 6, 7, 1, 2]


def test_unknown_word(wn):
    assert list(wn.store.word_info("zzzq")) == []
    with pytest.raises(LookupFailed):
        wn.store.resolve(WordTerm("zzzq", "n", 1))
    with pytest.raises(LookupFailed):
        wn.store.resolve(WordTerm("cat", "n", 99))


def test_feline_is_felid(wn):
    assert wn.store.resolve(WordTerm("feline", "n", 1)) == wn.store.resolve(WordTerm("felid", "n", 1)) == 102120997
    assert [str(t) for t in wn.store.synset_components(102120997)] == ["feline:n:1", "felid:n:1"]


def test_components_round_trip(wn):
    rng = random.Random(3)
    for sid in rng.sample(wn.store.synset_ids(), 100):
        terms = wn.store.synset_components(sid)
        assert terms
        for t in terms:
            assert wn.store.resolve(t) == sid


def test_every_entry_resolves(wn):
    for entries in wn.store.entries_by_word.values():
        for e in entries:
            assert wn.store.resolve(WordTerm(e.word, e.pos, e.sense_number)) == e.synset_id


def test_links_stay_within_a_hierarchy(wn):
    for hypo, hypers in wn.store.hypernyms_of.items():
        for h in hypers:
            assert wn.store.pos_of(hypo) == wn.store.pos_of(h) in ("n", "v")
