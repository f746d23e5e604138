"""Programs and independent oracles shared by the test modules."""
import itertools

from wnflp.proximity import TNorm
from wnflp.terms import Struct, Var

FAMILY = """\
ancestor~ascendant=1.0.    ancestor~progenitor=0.9.

father(abraham,isaac).     father(isaac,esau).     father(isaac,jacob).
mother(sara,isaac).        mother(rebeca,jacob).   mother(rebeca,esau).

direct_ancestor(X,Y) :- father(X,Y); mother(X,Y).

ancestor(X,Z) :- direct_ancestor(X,Z).
ancestor(X,Z) :- direct_ancestor(X,Y), ancestor(Y,Z).
"""


def tnorm_fn(t):
    return {"godel": min, "product": lambda a, b: a * b,
            "lukasiewicz": lambda a, b: max(0.0, a + b - 1.0)}[TNorm.parse(t).value]


def maxt_power_closure(mat, tnorm):
    """Least t-transitive relation above *mat*: R, R o R, ... until nothing grows."""
    t = tnorm_fn(tnorm)
    n = len(mat)
    cur = [row[:] for row in mat]
    while True:
        nxt = [row[:] for row in cur]
        for i in range(n):
            for j in range(n):
                best = cur[i][j]
                for k in range(n):
                    v = t(cur[i][k], mat[k][j])
                    if v > best:
                        best = v
                nxt[i][j] = best
        if nxt == cur:
            return cur
        cur = nxt


def ground_terms(symbols, depth, arity_of):
    """All ground terms over *symbols* up to *depth* (constants at depth 0)."""
    level = [Struct(s) for s in symbols if arity_of[s] == 0]
    out = list(level)
    for _ in range(depth):
        new = []
        for s in symbols:
            n = arity_of[s]
            if n:
                for args in itertools.product(out, repeat=n):
                    new.append(Struct(s, tuple(args)))
        out = list(dict.fromkeys(out + new))
    return out


def subst_apply(term, subst):
    if isinstance(term, Var):
        return subst.get(term, term)
    if not term.args:
        return term
    return Struct(term.functor, tuple(subst_apply(a, subst) for a in term.args))


def naive_fixpoint(rules, rel_degree, atoms, tnorm, lam):
    """Best degree of each ground atom by bottom-up iteration.

    ``rules``: list of (head, [body atoms], delta), all ground. A rule head h
    supports atom a with degree R(a, h) computed by ``rel_degree``.
    """
    t = tnorm_fn(tnorm)
    val = {a: 0.0 for a in atoms}
    changed = True
    while changed:
        changed = False
        for a in atoms:
            for head, body, delta in rules:
                beta = rel_degree(a, head)
                if beta <= 0.0 or beta < lam - 1e-9:
                    continue
                d = t(delta, beta)
                for b in body:
                    d = t(d, val.get(b, 0.0))
                if d > 1e-12 and d >= lam - 1e-9 and d > val[a] + 1e-15:
                    val[a] = d
                    changed = True
    return val


CORPUS_CATEGORIES = ("vehicle", "fruit", "tool")


def seeded_corpus(ontologies, docs_per_category=4, words_per_doc=8, seed=12):
    """Documents seeded with ontology words owned by exactly one category, padded with stopwords."""
    import random

    from wnflp.textclass import STOPWORDS

    rng = random.Random(seed)
    owners = {}
    for ont in ontologies:
        for w in ont.degrees():
            owners.setdefault(w, set()).add(ont.category)
    filler = sorted(STOPWORDS)
    docs, gold = {}, {}
    for ont in ontologies:
        own = sorted(w for w in ont.degrees()
                     if owners[w] == {ont.category} and w.isalpha() and w != ont.category)
        for i in range(docs_per_category):
            words = rng.sample(own, words_per_doc) + rng.sample(filler, words_per_doc)
            rng.shuffle(words)
            doc_id = f"{ont.category}_{i}.txt"
            docs[doc_id] = " ".join(words)
            gold[doc_id] = [ont.category]
    return docs, gold
