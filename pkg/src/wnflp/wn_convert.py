"""Convert a WordNet 3.0 ``dict/`` directory into WNprolog-3.0 fact files.

Only the three relations the library consumes are written: ``wn_s.pl``,
``wn_hyp.pl`` and ``wn_g.pl``. Synset ids follow the WNprolog convention of
a leading POS digit (1 noun, 2 verb, 3 adjective/satellite, 4 adverb)
followed by the 8-digit byte offset from the ``data.*`` files.
"""
from __future__ import annotations

import os
import re
from pathlib import Path

POS_DIGIT = {"n": 1, "v": 2, "a": 3, "s": 3, "r": 4}
# ss_type digit used inside sense keys
SENSE_KEY_DIGIT = {"n": "1", "v": "2", "a": "3", "r": "4", "s": "5"}
DATA_FILES = ("data.noun", "data.verb", "data.adj", "data.adv")

_ADJ_MARKER = re.compile(r"\((?:a|p|ip)\)$")


def quote(text: str) -> str:
    return "'" + text.replace("'", "''") + "'"


def read_sense_index(dict_dir: Path) -> dict[tuple[str, str, int], tuple[int, int]]:
    """Map (lowercase lemma, sense-key ss digit, offset) -> (sense_number, tag_count)."""
    table = {}
    with open(dict_dir / "index.sense", encoding="utf-8") as fh:
        for line in fh:
            key, offset, sense_number, tag_count = line.split()
            lemma, rest = key.split("%", 1)
            table[(lemma, rest[0], int(offset))] = (int(sense_number), int(tag_count))
    return table


def iter_data_lines(path: Path):
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.startswith("  "):  # license header
                continue
            yield line.rstrip("\n")


def parse_data_line(line: str):
    """Split one ``data.*`` line into (offset, ss_type, words, pointers, gloss)."""
    body, _, gloss = line.partition(" | ")
    fields = body.split()
    offset = int(fields[0])
    ss_type = fields[2]
    w_cnt = int(fields[3], 16)
    words = [fields[4 + 2 * i] for i in range(w_cnt)]
    pos_i = 4 + 2 * w_cnt
    p_cnt = int(fields[pos_i])
    pointers = []
    for j in range(p_cnt):
        sym, target, tpos, _src = fields[pos_i + 1 + 4 * j: pos_i + 5 + 4 * j]
        pointers.append((sym, int(target), tpos))
    return offset, ss_type, words, pointers, gloss.strip()


def convert(dict_dir: str | os.PathLike, out_dir: str | os.PathLike) -> dict[str, int]:
    """Write ``wn_s.pl``, ``wn_hyp.pl`` and ``wn_g.pl`` into *out_dir*.

    Returns the number of facts written per file.
    """
    dict_dir, out_dir = Path(dict_dir), Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    senses = read_sense_index(dict_dir)
    counts = {"wn_s.pl": 0, "wn_hyp.pl": 0, "wn_g.pl": 0}
    with open(out_dir / "wn_s.pl", "w", encoding="utf-8") as fs, \
            open(out_dir / "wn_hyp.pl", "w", encoding="utf-8") as fh, \
            open(out_dir / "wn_g.pl", "w", encoding="utf-8") as fg:
        for name in DATA_FILES:
            for line in iter_data_lines(dict_dir / name):
                offset, ss_type, words, pointers, gloss = parse_data_line(line)
                sid = POS_DIGIT[ss_type] * 100_000_000 + offset
                for w_num, raw in enumerate(words, start=1):
                    word = _ADJ_MARKER.sub("", raw)
                    key = (word.lower(), SENSE_KEY_DIGIT[ss_type], offset)
                    sense_number, tag_count = senses[key]
                    text = word.replace("_", " ")
                    fs.write(f"s({sid},{w_num},{quote(text)},{ss_type},{sense_number},{tag_count}).\n")
                    counts["wn_s.pl"] += 1
                for sym, target, tpos in pointers:
                    if sym == "@":
                        fh.write(f"hyp({sid},{POS_DIGIT[tpos] * 100_000_000 + target}).\n")
                        counts["wn_hyp.pl"] += 1
                fg.write(f"g({sid},{quote(gloss)}).\n")
                counts["wn_g.pl"] += 1
    return counts
