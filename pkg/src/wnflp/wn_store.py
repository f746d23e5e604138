"""Load the WNprolog-3.0 fact files (``wn_s``, ``wn_hyp``, ``wn_g``) into memory."""
from __future__ import annotations

import gc
import os
import re
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Iterator, NamedTuple

POS_CODES = ("n", "v", "a", "s", "r")
HIERARCHY_POS = ("n", "v")
REQUIRED_FILES = ("wn_s.pl", "wn_hyp.pl", "wn_g.pl")


class WordNetError(Exception):
    """Base class for database problems."""


class DatabaseFormatError(WordNetError):
    def __init__(self, path, lineno, text, reason="malformed fact"):
        self.path, self.lineno, self.text = str(path), lineno, text
        super().__init__(f"{path}:{lineno}: {reason}: {text!r}")


class LookupFailed(WordNetError, LookupError):
    """A word, word term or synset id is not in the database."""


class WordSenseEntry(NamedTuple):
    synset_id: int
    w_num: int
    word: str
    pos: str
    sense_number: int
    tag_count: int


class WordTerm(NamedTuple):
    word: str
    pos: str
    sense: int

    def __str__(self):
        return f"{self.word}:{self.pos}:{self.sense}"

    @classmethod
    def parse(cls, text: str, default_pos: str | None = None, default_sense: int = 1) -> "WordTerm":
        """Parse ``word``, ``word:pos`` or ``word:pos:sense``."""
        parts = text.rsplit(":", 2)
        if len(parts) == 3 and parts[1] in POS_CODES and parts[2].isdigit():
            return cls(parts[0], parts[1], int(parts[2]))
        parts = text.rsplit(":", 1)
        if len(parts) == 2 and parts[1] in POS_CODES:
            return cls(parts[0], parts[1], default_sense)
        if default_pos is None:
            raise ValueError(f"word term {text!r} needs a part of speech")
        return cls(text, default_pos, default_sense)


@dataclass(frozen=True)
class Synset:
    synset_id: int
    pos: str
    members: tuple[WordSenseEntry, ...]
    gloss: str = ""

    @property
    def head_word(self) -> str:
        return self.members[0].word

    def terms(self) -> list[WordTerm]:
        return [WordTerm(m.word, m.pos, m.sense_number) for m in self.members]


class WordInfo(NamedTuple):
    synset: Synset
    w_num: int
    sense_number: int
    tag_count: int
    gloss: str


_S_FACT = re.compile(r"s\((\d+),(\d+),'((?:[^']|'')*)',([nvasr]),(\d+),(\d+)\)\.$")
_HYP_FACT = re.compile(r"hyp\((\d+),(\d+)\)\.$")
_G_FACT = re.compile(r"g\((\d+),'((?:[^']|'')*)'\)\.$")


_S_ALL = re.compile("^" + _S_FACT.pattern.rstrip("$") + "$", re.M)
_HYP_ALL = re.compile("^" + _HYP_FACT.pattern.rstrip("$") + "$", re.M)
_G_ALL = re.compile("^" + _G_FACT.pattern.rstrip("$") + "$", re.M)


def _unquote(text: str) -> str:
    return text.replace("''", "'")


def _line_at(path: Path, lineno: int) -> str:
    with open(path, encoding="utf-8") as fh:
        for i, line in enumerate(fh, start=1):
            if i == lineno:
                return line.strip()
    return ""


def _scan(path: Path, pattern, parse_line):
    """Yield (lineno, parsed) for every fact in *path*.

    One regex pass over the joined fact lines is the fast path; when the match
    count disagrees the lines are re-parsed one by one to locate the bad one.
    """
    with open(path, encoding="utf-8") as fh:
        numbered = [(i, s) for i, s in enumerate((l.strip() for l in fh), start=1)
                    if s and not s.startswith("%")]
    matches = pattern.findall("\n".join(s for _, s in numbered))
    if len(matches) == len(numbered):
        if pattern is _S_ALL:
            rows = (WordSenseEntry(int(a), int(b), _unquote(w), p, int(c), int(d))
                    for a, b, w, p, c, d in matches)
        elif pattern is _HYP_ALL:
            rows = ((int(a), int(b)) for a, b in matches)
        else:
            rows = ((int(a), _unquote(g)) for a, g in matches)
        yield from zip((i for i, _ in numbered), rows)
        return
    for lineno, line in numbered:
        parsed = parse_line(line)
        if parsed is None:
            raise DatabaseFormatError(path, lineno, line)
        yield lineno, parsed


def parse_s_line(line: str) -> WordSenseEntry | None:
    m = _S_FACT.match(line)
    if m is None:
        return None
    sid, w_num, word, pos, sense, tag = m.groups()
    return WordSenseEntry(int(sid), int(w_num), _unquote(word), pos, int(sense), int(tag))


def parse_hyp_line(line: str) -> tuple[int, int] | None:
    m = _HYP_FACT.match(line)
    return None if m is None else (int(m.group(1)), int(m.group(2)))


def parse_g_line(line: str) -> tuple[int, str] | None:
    m = _G_FACT.match(line)
    return None if m is None else (int(m.group(1)), _unquote(m.group(2)))


@dataclass(frozen=True, eq=False)
class WordNetStore:
    """Read-only indexes over the loaded facts."""

    synsets: MappingProxyType
    entries_by_word: MappingProxyType
    hypernyms_of: MappingProxyType
    hyponyms_of: MappingProxyType
    source: str = ""
    _by_key: dict = field(default_factory=dict, repr=False)
    _folded: dict = field(default_factory=dict, repr=False)
    _lemmas: dict = field(default_factory=dict, repr=False)

    def __len__(self):
        return len(self.synsets)

    def synset(self, synset_id: int) -> Synset:
        try:
            return self.synsets[synset_id]
        except KeyError:
            raise LookupFailed(f"unknown synset id {synset_id}") from None

    def gloss(self, synset_id: int) -> str:
        return self.synset(synset_id).gloss

    def pos_of(self, synset_id: int) -> str:
        return self.synset(synset_id).pos

    def has_word(self, word: str, pos: str | None = None) -> bool:
        entries = self.entries_by_word.get(word, ())
        return any(pos is None or e.pos == pos for e in entries)

    def resolve(self, term: WordTerm) -> int:
        sid = self.try_resolve(term)
        if sid is not None:
            return sid
        if term.word not in self.entries_by_word:
            raise LookupFailed(f"unknown word {term.word!r}")
        raise LookupFailed(f"{term.word!r} has no sense {term.pos}:{term.sense}")

    def try_resolve(self, term: WordTerm) -> int | None:
        """Exact (case-sensitive) match first, then the case-folded lemma.

        Sense numbers are assigned per lowercase lemma, so ``god:n:1`` finds
        the capitalised ``God`` entry.
        """
        sid = self._by_key.get((term.word, term.pos, term.sense))
        if sid is None:
            sid = self._folded.get((term.word.lower(), term.pos, term.sense))
        return sid

    def senses(self, word: str, pos: str | None = None) -> list[int]:
        """Synset ids of every sense of *word* (case-folded), by POS then sense number."""
        order = {p: i for i, p in enumerate(POS_CODES)}
        keys = sorted((k for k in self._lemmas.get(word.lower(), ()) if pos is None or k[1] == pos),
                      key=lambda k: (order[k[1]], k[2]))
        return [self._folded[k] for k in keys]

    def word_info(self, word: str) -> Iterator[WordInfo]:
        """All senses of *word*, ordered by POS code then sense number."""
        order = {p: i for i, p in enumerate(POS_CODES)}
        entries = sorted(self.entries_by_word.get(word, ()),
                         key=lambda e: (order[e.pos], e.sense_number))
        for e in entries:
            ss = self.synsets[e.synset_id]
            yield WordInfo(ss, e.w_num, e.sense_number, e.tag_count, ss.gloss)

    def synset_components(self, synset_id: int) -> list[WordTerm]:
        return self.synset(synset_id).terms()

    def synset_ids(self, pos: str | None = None) -> list[int]:
        return sorted(sid for sid, ss in self.synsets.items() if pos is None or ss.pos == pos)


def load_db(db_dir: str | os.PathLike | None = None) -> WordNetStore:
    """Parse ``wn_s.pl``, ``wn_hyp.pl`` and ``wn_g.pl`` from *db_dir*.

    Falls back to the ``WNDB`` environment variable when *db_dir* is None.
    """
    if db_dir is None:
        db_dir = os.environ.get("WNDB")
        if not db_dir:
            raise WordNetError("no database directory given and WNDB is not set")
    db_dir = Path(db_dir)
    for name in REQUIRED_FILES:
        if not (db_dir / name).is_file():
            raise WordNetError(f"missing database file {db_dir / name}")
    # hundreds of thousands of small acyclic objects: the cycle collector only adds overhead
    enabled = gc.isenabled()
    gc.disable()
    try:
        return _load(db_dir)
    finally:
        if enabled:
            gc.enable()


def _load(db_dir: Path) -> WordNetStore:

    members: dict[int, list[WordSenseEntry]] = {}
    by_word: dict[str, list[WordSenseEntry]] = {}
    by_key: dict[tuple[str, str, int], int] = {}
    folded: dict[tuple[str, str, int], int] = {}
    lemmas: dict[str, list[tuple[str, str, int]]] = {}
    path = db_dir / "wn_s.pl"
    for lineno, e in _scan(path, _S_ALL, parse_s_line):
        key = (e.word, e.pos, e.sense_number)
        if key in by_key:
            raise DatabaseFormatError(path, lineno, _line_at(path, lineno),
                                      "duplicate (word, pos, sense)")
        by_key[key] = e.synset_id
        fkey = (e.word.lower(), e.pos, e.sense_number)
        if fkey not in folded:
            folded[fkey] = e.synset_id
            lemmas.setdefault(fkey[0], []).append(fkey)
        members.setdefault(e.synset_id, []).append(e)
        by_word.setdefault(e.word, []).append(e)

    glosses = {sid: text for _, (sid, text) in _scan(db_dir / "wn_g.pl", _G_ALL, parse_g_line)}

    synsets = {}
    for sid, ms in members.items():
        ms.sort(key=lambda e: e.w_num)
        # adjective satellites share the 'a' id space; the synset keeps its own type
        synsets[sid] = Synset(sid, ms[0].pos, tuple(ms), glosses.get(sid, ""))

    up: dict[int, list[int]] = {}
    down: dict[int, list[int]] = {}
    path = db_dir / "wn_hyp.pl"
    for lineno, (hypo, hyper) in _scan(path, _HYP_ALL, parse_hyp_line):
        if hypo == hyper or hypo not in synsets or hyper not in synsets:
            raise DatabaseFormatError(path, lineno, _line_at(path, lineno), "bad hypernym link")
        if synsets[hypo].pos != synsets[hyper].pos or synsets[hypo].pos not in HIERARCHY_POS:
            raise DatabaseFormatError(path, lineno, _line_at(path, lineno),
                                      "hypernym link crosses parts of speech")
        up.setdefault(hypo, []).append(hyper)
        down.setdefault(hyper, []).append(hypo)

    return WordNetStore(
        synsets=MappingProxyType(synsets),
        entries_by_word=MappingProxyType({w: tuple(es) for w, es in by_word.items()}),
        hypernyms_of=MappingProxyType({k: tuple(v) for k, v in up.items()}),
        hyponyms_of=MappingProxyType({k: tuple(v) for k, v in down.items()}),
        source=str(db_dir),
        _by_key=by_key,
        _folded=folded,
        _lemmas=lemmas,
    )
