"""Block-partitioned fuzzy relations over symbols, t-norms and closures."""
from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field
from typing import Hashable, Iterable, NamedTuple

import numpy as np

from . import _kernels


# Degrees folded in a different order can differ in the last bits, so cuts allow for that.
CUT_TOLERANCE = 1e-12


def passes_cut(degree: float, lam: float) -> bool:
    """True when *degree* is positive and at least *lam*, up to rounding."""
    return degree > 0.0 and degree >= lam - CUT_TOLERANCE


class TNorm(str, enum.Enum):
    GODEL = "godel"
    PRODUCT = "product"
    LUKASIEWICZ = "lukasiewicz"

    def __call__(self, a: float, b: float) -> float:
        if self is TNorm.GODEL:
            return a if a < b else b
        if self is TNorm.PRODUCT:
            return a * b
        return max(0.0, a + b - 1.0)

    def fold(self, values: Iterable[float], start: float = 1.0) -> float:
        acc = start
        for v in values:
            acc = self(acc, v)
        return acc

    @property
    def code(self) -> int:
        return _kernels.TNORM_CODES[self.value]

    @classmethod
    def parse(cls, name) -> "TNorm":
        if isinstance(name, TNorm):
            return name
        aliases = {"min": "godel", "goedel": "godel", "gödel": "godel", "prod": "product",
                   "luka": "lukasiewicz", "luk": "lukasiewicz"}
        key = str(name).lower()
        try:
            return cls(aliases.get(key, key))
        except ValueError:
            raise ValueError(f"unknown t-norm {name!r}") from None


class ClosureKind(str, enum.Enum):
    PROXIMITY = "proximity"
    SIMILARITY = "similarity"


class ProximityEquation(NamedTuple):
    """``sym_a ~ sym_b = degree`` inside *block* (None: hand-written equations)."""
    sym_a: Hashable
    sym_b: Hashable
    degree: float
    block: int | None = None


class ProximityWarning(UserWarning):
    pass


@dataclass(frozen=True, eq=False)
class FuzzyRelation:
    """Symmetric fuzzy relation; reflexive pairs are implicit.

    ``blocks`` maps each block key to its closed, lambda-cut entry table keyed
    by ``frozenset({a, b})``. ``degree_of`` takes the max over blocks, so a
    pair split across blocks has degree 0.
    """

    blocks: dict
    lam: float = 0.0
    tnorm: TNorm = TNorm.GODEL
    closure: ClosureKind = ClosureKind.PROXIMITY
    _index: dict = field(init=False, repr=False)
    _adj: dict = field(init=False, repr=False)

    def __post_init__(self):
        index, adj = {}, {}
        for table in self.blocks.values():
            for pair, d in table.items():
                if d > index.get(pair, 0.0):
                    index[pair] = d
        for pair, d in index.items():
            a, b = tuple(pair)
            adj.setdefault(a, {})[b] = d
            adj.setdefault(b, {})[a] = d
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_adj", adj)

    def degree_of(self, a, b) -> float:
        if a == b:
            return 1.0
        return self._index.get(frozenset((a, b)), 0.0)

    def entries(self) -> dict[tuple, float]:
        """Each stored unordered pair once, as a sorted (a, b) tuple."""
        out = {}
        for pair, d in self._index.items():
            a, b = sorted(pair, key=repr)
            out[(a, b)] = d
        return out

    def neighbours(self, sym) -> list[tuple[object, float]]:
        """Symbols related to *sym* (itself first at 1.0), by descending degree."""
        near = list(self._adj.get(sym, {}).items())
        near.sort(key=lambda t: (-t[1], repr(t[0])))
        return [(sym, 1.0)] + near

    def equations(self) -> list[ProximityEquation]:
        out = []
        for block, table in self.blocks.items():
            for pair, d in table.items():
                a, b = sorted(pair, key=repr)
                out.append(ProximityEquation(a, b, d, block))
        return out

    def symbols(self) -> set:
        return {s for pair in self._index for s in pair}

    def __len__(self):
        return len(self._index)


def _close_block(table: dict, tnorm: TNorm) -> dict:
    syms = sorted({s for pair in table for s in pair}, key=repr)
    pos = {s: i for i, s in enumerate(syms)}
    mat = np.eye(len(syms), dtype=np.float64)
    for pair, d in table.items():
        a, b = tuple(pair)
        mat[pos[a], pos[b]] = mat[pos[b], pos[a]] = d
    closed = _kernels.maxt_closure(mat, tnorm.code)
    out = {}
    for i in range(len(syms)):
        for j in range(i + 1, len(syms)):
            d = float(closed[i, j])
            if d > 0.0:
                out[frozenset((syms[i], syms[j]))] = d
    return out


def build_relation(equations: Iterable, lam: float = 0.0, tnorm=TNorm.GODEL,
                   closure=ClosureKind.PROXIMITY) -> FuzzyRelation:
    """Symmetric (and optionally t-transitive) closure of *equations*, then the lambda-cut.

    Duplicate pairs within a block keep their maximum degree with a warning.
    """
    tnorm, closure = TNorm.parse(tnorm), ClosureKind(closure)
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda must lie in [0, 1], got {lam}")
    raw: dict = {}
    for eq in equations:
        eq = ProximityEquation(*eq)
        if not 0.0 < eq.degree <= 1.0:
            raise ValueError(f"degree of {eq.sym_a}~{eq.sym_b} must lie in (0, 1], got {eq.degree}")
        if eq.sym_a == eq.sym_b:
            continue
        table = raw.setdefault(eq.block, {})
        pair = frozenset((eq.sym_a, eq.sym_b))
        old = table.get(pair)
        if old is not None and old != eq.degree:
            warnings.warn(f"conflicting degrees for {eq.sym_a}~{eq.sym_b}: {old} and {eq.degree}; "
                          f"keeping {max(old, eq.degree)}", ProximityWarning, stacklevel=2)
        table[pair] = eq.degree if old is None else max(old, eq.degree)

    blocks = {}
    for block, table in raw.items():
        if closure is ClosureKind.SIMILARITY:
            table = _close_block(table, tnorm)
        blocks[block] = {p: d for p, d in table.items() if passes_cut(d, lam)}
    return FuzzyRelation(blocks, lam, tnorm, closure)


def identity_relation(lam: float = 0.0, tnorm=TNorm.GODEL) -> FuzzyRelation:
    return build_relation((), lam, tnorm)


def lambda_cut(rel: FuzzyRelation, lam: float) -> FuzzyRelation:
    """Re-cut a built relation at *lam* (closure already happened before any cut)."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda must lie in [0, 1], got {lam}")
    blocks = {b: {p: d for p, d in t.items() if passes_cut(d, lam)} for b, t in rel.blocks.items()}
    return FuzzyRelation(blocks, lam, rel.tnorm, rel.closure)
