"""Command-line entry point: ``wnflp <subcommand>``.

Exit status: 0 success, 1 user error, 2 data error (missing or malformed database).
"""
from __future__ import annotations

import argparse
import csv
import itertools
import os
import random
import sys
import time
from pathlib import Path

from .equation_gen import PatternError, format_sim, generate, patterns_from_term
from .infocontent import DEFAULT_EPSILON
from .proximity import ClosureKind, TNorm
from .sim_measures import Measure
from .taxonomy import TaxonomyError
from .terms import format_atom
from .wn_store import DatabaseFormatError, HIERARCHY_POS, LookupFailed, WordNetError, WordTerm


class UserError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UserError(message)


def fmt(x: float) -> str:
    """Shortest text that round-trips the double (at most 17 significant digits)."""
    return repr(float(x))


def _unit_interval(text: str) -> float:
    v = float(text)
    if not 0.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError(f"must lie in [0, 1], got {text}")
    return v


def _epsilon(text: str) -> float:
    v = float(text)
    if not 0.0 < v < 1.0:
        raise argparse.ArgumentTypeError(f"must lie in (0, 1), got {text}")
    return v


# -- session ----------------------------------------------------------------

class Session:
    """Settings shared by every subcommand plus lazily opened WordNet."""

    def __init__(self, args):
        self.wndb = args.wndb or os.environ.get("WNDB")
        self.ic_epsilon = args.ic_epsilon
        self.lam = args.lam
        self.tnorm = args.tnorm
        self.closure = args.closure
        self.emit_tpl = args.emit_tpl
        self.dedup = args.dedup_max
        self.max_depth = args.max_depth
        self._wn = None

    @property
    def wordnet(self):
        if self._wn is None:
            if not self.wndb:
                raise DataError("no WordNet database: pass --wndb DIR or set WNDB")
            if not Path(self.wndb).is_dir():
                raise DataError(f"WordNet database directory not found: {self.wndb}")
            from .lexicon import WordNet
            try:
                self._wn = WordNet.open(self.wndb, self.ic_epsilon)
            except (DatabaseFormatError, OSError) as exc:
                raise DataError(str(exc)) from None
        return self._wn

    def load(self, path):
        from .flp import load_program
        wn = None
        text = Path(path).read_text(encoding="utf-8")
        if "wn_gen_prox_equations" in text or "wn_connect" in text:
            wn = self.wordnet
        settings = {"lam": self.lam, "tnorm": self.tnorm, "closure": self.closure}
        program = load_program(path, wn, **{k: v for k, v in settings.items() if v is not None})
        if self.emit_tpl:
            from .flp import emit_tpl
            out = Path(path).with_suffix(".tpl")
            out.write_text(emit_tpl(program), encoding="utf-8")
            print(f"translated program written to {out}", file=sys.stderr)
        return program

    def answers(self, program, query):
        from .flp import solve
        return solve(program, query, max_depth=self.max_depth, dedup_max=self.dedup)


def _print_answers(session, program, query, out=None) -> int:
    out = out or sys.stdout
    n = 0
    for ans in session.answers(program, query):
        if ans.bindings:
            body = ", ".join(f"{k}={v}" for k, v in ans.bindings.items())
        else:
            body = "true"
        print(f"{body} with {fmt(ans.degree)}", file=out)
        n += 1
    if n == 0:
        print("no", file=out)
    return n


# -- program commands ---------------------------------------------------------

def cmd_ld(session, args):
    program = session.load(args.file)
    print(f"{len(program.rules)} rules, {len(program.hand_equations)} equations, "
          f"{len(program.generated_equations)} generated equations, "
          f"{len(program.relation)} related pairs")
    for line in _generated_lines(program):
        print(line)
    return 0


def _generated_lines(program):
    return [format_sim(eq) for eq in program.generated_equations]


def cmd_solve(session, args):
    if not args.program:
        raise UserError("no program loaded: pass --program FILE")
    program = session.load(args.program)
    for q in args.query:
        _print_answers(session, program, q)
    return 0


def cmd_repl(session, args):
    from .flp import ParseError, ProgramError
    program = None
    if args.file:
        program = session.load(args.file)
    interactive = sys.stdin.isatty()
    buffer = ""
    while True:
        if interactive:
            print("?- " if not buffer else "|  ", end="", flush=True)
        line = sys.stdin.readline()
        if not line:
            break
        line = line.strip()
        if not buffer and line in (":quit", ":q", "halt."):
            break
        if not buffer and line.startswith("ld "):
            try:
                program = session.load(line[3:].strip())
                print(f"loaded {len(program.rules)} rules")
            except (OSError, ProgramError, WordNetError, DataError) as exc:
                print(f"error: {exc}", file=sys.stderr)
            continue
        buffer = f"{buffer} {line}".strip()
        if not buffer.endswith("."):
            continue
        query, buffer = buffer, ""
        if program is None:
            print("error: no program loaded (use: ld <file>)", file=sys.stderr)
            continue
        try:
            _print_answers(session, program, query)
        except (ParseError, ProgramError, RuntimeError) as exc:
            print(f"error: {exc}", file=sys.stderr)
    return 0


# -- WordNet commands ---------------------------------------------------------

def cmd_wn_info(session, args):
    wn = session.wordnet
    records = list(wn.store.word_info(args.word))
    if not records:
        raise UserError(f"{args.word!r} is not in WordNet")
    print(f"word {args.word!r}: {len(records)} senses")
    for r in records:
        print("-----------")
        print(f"synset_id: {r.synset.synset_id}")
        print(f"w_num: {r.w_num}")
        print(f"type: {r.synset.pos}")
        print(f"sense: {r.sense_number}")
        print(f"tag_count: {r.tag_count}")
        print(f"gloss: {r.gloss}")
    return 0


def _term(text: str, pos: str = "n") -> WordTerm:
    return WordTerm.parse(text, default_pos=pos)


def cmd_wn_sim(session, args):
    wn = session.wordnet
    res = wn.sim.similarity(args.measure, _term(args.a, args.pos), _term(args.b, args.pos))
    print(f"{args.measure.value} {args.a} {args.b} raw {fmt(res.raw)} normalized {fmt(res.normalized)}")
    return 0


def cmd_wn_lcs(session, args):
    wn = session.wordnet
    sid = wn.lcs_of_words(args.items)
    comps = ", ".join(str(t) for t in wn.store.synset_components(sid))
    print(f"{sid} [{comps}]")
    return 0


def cmd_wn_hypernyms(session, args):
    wn = session.wordnet
    if args.dot is not None:
        text = wn.taxonomy.export_hypernym_graph(args.word)
        if args.dot == "-":
            sys.stdout.write(text)
        else:
            Path(args.dot).write_text(text, encoding="utf-8")
            print(f"graph written to {args.dot}", file=sys.stderr)
        return 0
    for sid in wn.concept_candidates(args.word):
        for chain in wn.taxonomy.hypernym_chains(sid):
            print(" > ".join(f"{wn.taxonomy.label(c)}({c})" for c in chain))
    return 0


def cmd_wn_hyponyms(session, args):
    wn = session.wordnet
    sid = wn.store.resolve(_term(args.term))
    for h in sorted(wn.taxonomy.hyponyms_upto_level(sid, args.level)):
        comps = ", ".join(str(t) for t in wn.store.synset_components(h))
        print(f"{h} [{comps}]")
    return 0


# -- generation, classification ----------------------------------------------

def read_pattern_lists(path) -> list:
    """Either one ``[[...],[...]]`` term, or one comma/space separated list per line."""
    from .flp.parser import ParseError, parse_term
    text = Path(path).read_text(encoding="utf-8").strip()
    if text.startswith("["):
        try:
            return patterns_from_term(parse_term(text.rstrip(".")))
        except ParseError as exc:
            raise UserError(f"{path}: {exc}") from None
    lists = []
    for line in text.splitlines():
        line = line.split("%", 1)[0].strip()
        if line:
            lists.append([t if ":" not in t else WordTerm.parse(t)
                          for t in line.replace(",", " ").split()])
    return lists


def cmd_gen_equations(session, args):
    wn = session.wordnet
    lists = read_pattern_lists(args.lists)
    lam = args.gen_lambda if args.gen_lambda is not None else (session.lam or 0.0)
    eqs = generate(wn, args.measure, lists, lam)
    if args.output:
        lines = [f"% {args.measure.value} proximity equations, lambda {fmt(lam)}"]
        for block, group in itertools.groupby(eqs, key=lambda e: e.block):
            lines.append(f"% block {block}")
            lines += [f"{format_atom(e.sym_a)}~{format_atom(e.sym_b)}={fmt(e.degree)}." for e in group]
        Path(args.output).write_text("\n".join(lines) + "\n", encoding="utf-8")
        print(f"{len(eqs)} equations written to {args.output}", file=sys.stderr)
    for e in eqs:
        print(format_sim(e))
    return 0


def cmd_classify(session, args):
    from .textclass import TextClassifier
    wn = session.wordnet
    cats = [c.strip() for c in args.categories.split(",") if c.strip()]
    docs_dir = Path(args.docs)
    if not docs_dir.is_dir():
        raise UserError(f"document directory not found: {docs_dir}")
    docs = {p.name: p.read_text(encoding="utf-8", errors="replace")
            for p in sorted(docs_dir.iterdir()) if p.is_file()}
    lam = args.cls_lambda if args.cls_lambda is not None else (session.lam or 0.0)
    clf = TextClassifier(wn, cats, args.ontology, args.measure, args.compat, lam)
    rows = clf.classify_documents(docs)
    out = open(args.output, "w", newline="", encoding="utf-8") if args.output else sys.stdout
    try:
        w = csv.writer(out)
        w.writerow(["doc_id", "category", "score", "assigned"])
        for score, assigned in rows:
            w.writerow([score.doc_id, score.category, fmt(score.score), int(assigned)])
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


# -- benchmark ------------------------------------------------------------------

def experiment1_pairs(wn, n_words: int = 12) -> list[tuple[int, int]]:
    """Cartesian products of noun senses for the most polysemous nouns, paired in order."""
    counts = {}
    for sid in wn.store.synset_ids("n"):
        for m in wn.store.synset(sid).members:
            counts[m.word.lower()] = counts.get(m.word.lower(), 0) + 1
    words = sorted(counts, key=lambda w: (-len(wn.store.senses(w, "n")), w))[:n_words]
    pairs = []
    for w1, w2 in zip(words[0::2], words[1::2]):
        pairs.extend(itertools.product(wn.store.senses(w1, "n"), wn.store.senses(w2, "n")))
    return pairs


def experiment2_pairs(wn, n: int, seed: int) -> list[tuple[int, int]]:
    """Random same-type noun or verb sense pairs."""
    rng = random.Random(seed)
    pools = {p: wn.store.synset_ids(p) for p in HIERARCHY_POS}
    out = []
    for _ in range(n):
        pool = pools[rng.choice(HIERARCHY_POS)]
        out.append((rng.choice(pool), rng.choice(pool)))
    return out


def run_bench(wn, measure: Measure, pairs) -> dict:
    """Time one measure over *pairs*; chains and IC tables are built first and reported as setup."""
    t0 = time.perf_counter()
    for a, b in pairs:
        wn.taxonomy.hypernym_chains(a)
        wn.taxonomy.hypernym_chains(b)
    if measure.ic_based:
        for p in HIERARCHY_POS:
            wn.ic.table(p)
    setup = time.perf_counter() - t0
    t0 = time.perf_counter()
    for a, b in pairs:
        wn.sim.degree(measure, a, b)
    elapsed = time.perf_counter() - t0
    n = max(len(pairs), 1)
    return {"measure": measure.value, "pairs": len(pairs), "time_ms": elapsed * 1e3,
            "ms_per_pair": elapsed * 1e3 / n, "pairs_per_s": n / elapsed if elapsed else float("inf"),
            "setup_ms": setup * 1e3}


def cmd_bench(session, args):
    wn = session.wordnet
    measures = [args.measure] if args.measure else list(Measure)
    if args.experiment == 1:
        pairs = experiment1_pairs(wn)
        if args.pairs:
            pairs = pairs[:args.pairs]
    else:
        pairs = experiment2_pairs(wn, args.pairs or 10000, args.seed)
    print("measure,pairs,time_ms,ms_per_pair,pairs_per_s,setup_ms")
    results = []
    for m in measures:
        r = run_bench(wn, m, pairs)
        results.append(r)
        print(f"{r['measure']},{r['pairs']},{r['time_ms']:.3f},{r['ms_per_pair']:.6f},"
              f"{r['pairs_per_s']:.1f},{r['setup_ms']:.1f}")
    edge = [r["ms_per_pair"] for r in results if not Measure(r["measure"]).ic_based]
    ic = [r["ms_per_pair"] for r in results if Measure(r["measure"]).ic_based]
    if edge and ic:
        ratio = (sum(ic) / len(ic)) / (sum(edge) / len(edge))
        print(f"ic/edge latency ratio {ratio:.2f}", file=sys.stderr)
    return 0


def cmd_convert(session, args):
    from .wn_convert import convert
    counts = convert(args.dict_dir, args.out_dir)
    for name, n in counts.items():
        print(f"{name} {n}")
    return 0


# -- argument parsing ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wnflp", description="WordNet similarity and fuzzy logic programming")
    p.add_argument("--wndb", help="WordNet fact directory (default: $WNDB)")
    p.add_argument("--ic-epsilon", type=_epsilon, default=DEFAULT_EPSILON,
                   help="frequency used for unseen concepts")
    p.add_argument("--lambda", dest="lam", type=_unit_interval, help="lambda-cut")
    p.add_argument("--tnorm", type=TNorm.parse, help="godel, product or lukasiewicz")
    p.add_argument("--closure", choices=[c.value for c in ClosureKind],
                   help="proximity (as written) or similarity (t-transitive closure)")
    p.add_argument("--emit-tpl", action="store_true", help="write the translated program next to the source")
    p.add_argument("--dedup-max", action="store_true", help="merge equal answers keeping the best degree")
    p.add_argument("--max-depth", type=int, help="bound on resolution steps per derivation")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("repl", help="interactive shell")
    s.add_argument("file", nargs="?")
    s.set_defaults(func=cmd_repl)
    s = sub.add_parser("ld", help="load a program and report what it contains")
    s.add_argument("file")
    s.set_defaults(func=cmd_ld)
    s = sub.add_parser("solve", help="answer queries against a program")
    s.add_argument("query", nargs="+")
    s.add_argument("-p", "--program")
    s.set_defaults(func=cmd_solve)

    wn = sub.add_parser("wn", help="WordNet queries")
    wsub = wn.add_subparsers(dest="wn_command", required=True, parser_class=_Parser)
    s = wsub.add_parser("info")
    s.add_argument("word")
    s.set_defaults(func=cmd_wn_info)
    s = wsub.add_parser("sim")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--measure", type=Measure.parse, default=Measure.WUP)
    s.add_argument("--pos", choices=HIERARCHY_POS, default="n")
    s.set_defaults(func=cmd_wn_sim)
    s = wsub.add_parser("lcs")
    s.add_argument("items", nargs="+")
    s.set_defaults(func=cmd_wn_lcs)
    s = wsub.add_parser("hypernyms")
    s.add_argument("word")
    s.add_argument("--dot", nargs="?", const="-", help="write DOT (to FILE, or stdout)")
    s.set_defaults(func=cmd_wn_hypernyms)
    s = wsub.add_parser("hyponyms")
    s.add_argument("term")
    s.add_argument("--level", type=int, default=1)
    s.set_defaults(func=cmd_wn_hyponyms)

    s = sub.add_parser("gen-equations", help="proximity equations from pattern lists")
    s.add_argument("--measure", type=Measure.parse, default=Measure.WUP)
    s.add_argument("--lists", required=True)
    s.add_argument("--lambda", dest="gen_lambda", type=_unit_interval)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen_equations)

    s = sub.add_parser("classify", help="assign documents to categories")
    s.add_argument("--categories", required=True)
    s.add_argument("--docs", required=True)
    s.add_argument("--ontology", default="hyponyms:2")
    s.add_argument("--measure", type=Measure.parse, default=Measure.WUP)
    s.add_argument("--compat", choices=("wsum", "max"), default="wsum")
    s.add_argument("--lambda", dest="cls_lambda", type=_unit_interval)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("bench", help="similarity latency over sense pairs")
    s.add_argument("--measure", type=Measure.parse)
    s.add_argument("--pairs", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--experiment", type=int, choices=(1, 2), default=2)
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("convert-dict", help="build the fact files from a WordNet dict directory")
    s.add_argument("dict_dir")
    s.add_argument("out_dir")
    s.set_defaults(func=cmd_convert)
    return p


def main(argv=None) -> int:
    from .flp import EngineError, ParseError, ProgramError
    try:
        args = build_parser().parse_args(argv)
        return args.func(Session(args), args)
    except UserError as exc:
        print(f"wnflp: {exc}", file=sys.stderr)
        return 1
    except (DataError, DatabaseFormatError) as exc:
        print(f"wnflp: data error: {exc}", file=sys.stderr)
        return 2
    except (LookupFailed, TaxonomyError, PatternError, ProgramError, ParseError, EngineError,
            ValueError) as exc:
        print(f"wnflp: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"wnflp: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
