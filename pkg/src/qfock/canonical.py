"""Bar matrices, canonical bases and q-decomposition matrices of a block.

Write ``bar|lam> = sum_mu a[lam][mu] |mu>``.  A bar-invariant vector
``G = sum_mu D[mu] |mu>`` satisfies, for every ``nu``,

    D[nu] - bar(D[nu]) = sum_{mu != nu} bar(D[mu]) * a[mu][nu],

and the right side only involves ``mu`` strictly above ``nu``.  Walking down a
linear extension, each right side is bar-antisymmetric, and the lattice
condition picks ``D[nu]`` as its part of positive (``plus``) or negative
(``minus``) degree.
"""
from __future__ import annotations

import csv
import io
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .cache import BlockCache
from .combinatorics import (BlockSpec, MultiPartition, as_multipartition, decode, encode,
                            enumerate_block, multipartitions)
from .fock import FockVector, bar_wedge, choose_truncation
from .laurent import ONE, ZERO, LaurentPoly

SIGNS = ("plus", "minus")

Rows = dict[MultiPartition, dict[MultiPartition, LaurentPoly]]


class EngineError(RuntimeError):
    """An internal consistency check failed; this indicates a bug, not bad input."""


class NotTriangularError(EngineError):
    """The bar matrix is not unitriangular along the requested order."""


def format_multipartition(lam: Sequence[Sequence[int]]) -> str:
    """Compact label such as ``(1,1|∅|3)``."""
    return "(" + "|".join(",".join(map(str, p)) if p else "∅" for p in lam) + ")"


def _jsonable(lam: MultiPartition) -> list[list[int]]:
    return [list(p) for p in lam]


# -- bar matrix -------------------------------------------------------------------

@dataclass
class BarMatrix:
    """Rows ``bar|lam> = sum_mu a[lam][mu] |mu>`` of a block, plus the order used."""
    block: BlockSpec
    r: int
    order: list[MultiPartition]
    rows: Rows

    def entry(self, lam, mu) -> LaurentPoly:
        return self.rows[as_multipartition(lam)].get(as_multipartition(mu), ZERO)

    def row_vector(self, lam) -> FockVector:
        return FockVector.from_multipartitions(self.block, self.rows[as_multipartition(lam)], self.r)

    def apply(self, coeffs: Mapping[MultiPartition, LaurentPoly]) -> dict[MultiPartition, LaurentPoly]:
        """Bar image of ``sum c_lam |lam>`` in multipartition labels."""
        acc: dict[MultiPartition, LaurentPoly] = {}
        for lam, c in coeffs.items():
            cb = c.bar()
            for mu, a in self.rows[lam].items():
                v = acc.get(mu, ZERO) + cb * a
                if v:
                    acc[mu] = v
                else:
                    acc.pop(mu, None)
        return acc

    def to_json(self) -> dict:
        return {"block": self.block.to_json(), "r": self.r,
                "order": [_jsonable(lam) for lam in self.order],
                "entries": [[_jsonable(lam), _jsonable(mu), c.to_json()]
                            for lam in self.order for mu, c in _ordered(self.rows[lam], self.order)]}


def _ordered(row: Mapping[MultiPartition, LaurentPoly], order: Sequence[MultiPartition]):
    pos = {lam: i for i, lam in enumerate(order)}
    return sorted(row.items(), key=lambda t: pos[t[0]])


def _bar_row(args) -> tuple[MultiPartition, dict[MultiPartition, LaurentPoly]]:
    block, lam, r = args
    w = encode(lam, block.charge, block.n, r)
    out = {}
    for w2, c in bar_wedge(w, block.n, block.level).items():
        out[decode(w2, block.n, block.level)[0]] = c
    return lam, out


_MEMORY: dict[tuple[BlockSpec, int], Rows] = {}


def bar_rows(block: BlockSpec, r: int | None = None, cache: BlockCache | None = None,
             jobs: int = 1) -> tuple[int, Rows]:
    """All bar rows of a block, from memory, the disk cache, or fresh computation."""
    r = choose_truncation(block) if r is None else r
    key = (block, r)
    rows = _MEMORY.get(key)
    if rows is None and cache is not None:
        rows = cache.load(block, r)
    if rows is None:
        tasks = [(block, lam, r) for lam in multipartitions(block.size, block.level)]
        if jobs > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as ex:
                rows = dict(ex.map(_bar_row, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
        else:
            rows = dict(map(_bar_row, tasks))
        for lam, row in rows.items():
            if size_of(row) != {block.size}:
                raise EngineError(f"bar row of {lam} leaves the block")
        if cache is not None:
            cache.store(block, r, rows)
    _MEMORY[key] = rows
    return r, rows


def size_of(row: Mapping[MultiPartition, LaurentPoly]) -> set[int]:
    return {sum(sum(p) for p in mu) for mu in row}


def bar_matrix(block: BlockSpec, r: int | None = None, order: Sequence[MultiPartition] | None = None,
               cache: BlockCache | None = None, jobs: int = 1) -> BarMatrix:
    r, rows = bar_rows(block, r, cache, jobs)
    order = list(order) if order is not None else enumerate_block(block)
    return BarMatrix(block, r, order, rows)


def clear_memory_cache() -> None:
    _MEMORY.clear()


# -- decomposition matrices -----------------------------------------------------------

@dataclass
class DecompMatrix:
    """``G(lam) = sum_mu D[lam][mu] |mu>``: rows are canonical-basis labels."""
    block: BlockSpec
    sign: str
    order: list[MultiPartition]
    entries: Rows = field(default_factory=dict)

    def entry(self, lam, mu) -> LaurentPoly:
        return self.entries.get(as_multipartition(lam), {}).get(as_multipartition(mu), ZERO)

    def row(self, lam) -> dict[MultiPartition, LaurentPoly]:
        return dict(self.entries[as_multipartition(lam)])

    def nonzero(self) -> Iterable[tuple[MultiPartition, MultiPartition, LaurentPoly]]:
        for lam in self.order:
            for mu, c in _ordered(self.entries[lam], self.order):
                yield lam, mu, c

    def __eq__(self, other) -> bool:
        if not isinstance(other, DecompMatrix):
            return NotImplemented
        return self.block == other.block and self.sign == other.sign and self.entries == other.entries

    def to_json(self) -> dict:
        return {"block": self.block.to_json(), "sign": self.sign,
                "order": [_jsonable(lam) for lam in self.order],
                "entries": [[_jsonable(lam), _jsonable(mu), c.to_json()] for lam, mu, c in self.nonzero()]}

    @classmethod
    def from_json(cls, data: dict) -> "DecompMatrix":
        order = [as_multipartition(lam) for lam in data["order"]]
        entries: Rows = {lam: {} for lam in order}
        for lam, mu, c in data["entries"]:
            entries[as_multipartition(lam)][as_multipartition(mu)] = LaurentPoly.from_json(c)
        return cls(BlockSpec.from_json(data["block"]), data["sign"], order, entries)

    def to_csv(self) -> str:
        """Dense table: one row per canonical-basis label, entries in human form."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([""] + [format_multipartition(mu) for mu in self.order])
        for lam in self.order:
            row = self.entries[lam]
            w.writerow([format_multipartition(lam)] + [str(row[mu]) if mu in row else "0" for mu in self.order])
        return buf.getvalue()

    def to_latex(self) -> str:
        """A ``tabular`` with rows indexed by ``lam`` and columns by ``mu``."""
        labels = [_latex_label(lam) for lam in self.order]
        lines = ["\\begin{tabular}{l" + "c" * len(self.order) + "}",
                 " & ".join([""] + labels) + " \\\\", "\\hline"]
        for lam, lab in zip(self.order, labels):
            row = self.entries[lam]
            cells = [f"${latex_poly(row[mu])}$" if mu in row else "$0$" for mu in self.order]
            lines.append(" & ".join([lab] + cells) + " \\\\")
        lines.append("\\end{tabular}")
        return "\n".join(lines) + "\n"


def _latex_label(lam: MultiPartition) -> str:
    return "$(" + ", ".join("(" + ",".join(map(str, p)) + ")" if p else "\\emptyset" for p in lam) + ")$"


def latex_poly(p: LaurentPoly) -> str:
    """LaTeX form of the human rendering, e.g. ``-q^{-1} + 2q^{3}``."""
    return re.sub(r"q\^(-?\d+)", r"q^{\1}", str(p)).replace("*", "")


def solve_triangular(order: Sequence[MultiPartition], rows: Mapping[MultiPartition, Mapping[MultiPartition, LaurentPoly]],
                     sign: str, labels: Iterable[MultiPartition] | None = None) -> Rows:
    """Canonical-basis rows from bar rows that are unitriangular along ``order``.

    ``rows`` must contain a row for every element of ``order`` and mention
    no other labels.  ``labels`` restricts which canonical-basis rows are built.
    """
    if sign not in SIGNS:
        raise ValueError(f"sign must be one of {SIGNS}")
    pos = {lam: i for i, lam in enumerate(order)}
    if set(rows) != set(pos):
        raise ValueError("bar rows and order do not cover the same labels")
    columns: dict[MultiPartition, list[tuple[MultiPartition, LaurentPoly]]] = {lam: [] for lam in order}
    for lam, row in rows.items():
        for mu, a in row.items():
            if mu not in pos:
                raise ValueError(f"bar row of {lam} mentions {mu}, which is not in the order")
            if mu == lam:
                if a != ONE:
                    raise NotTriangularError(f"diagonal bar coefficient at {lam} is {a}, expected 1")
            elif pos[mu] < pos[lam]:
                raise NotTriangularError(f"bar row of {lam} has a term at {mu}, which comes earlier")
            else:
                columns[mu].append((lam, a))
    out: Rows = {}
    for lam in (order if labels is None else labels):
        i = pos[lam]
        delta = {lam: ONE}
        for nu in order[i + 1:]:
            rhs = ZERO
            for mu, a in columns[nu]:
                d = delta.get(mu)
                if d is not None:
                    rhs = rhs + d.bar() * a
            if not rhs:
                continue
            if rhs.bar() != -rhs:
                raise EngineError(f"right side at ({lam}, {nu}) is not bar-antisymmetric: {rhs}")
            d = rhs.truncate(lo=1) if sign == "plus" else rhs.truncate(hi=-1)
            delta[nu] = d
        out[lam] = delta
    return out


def canonical_basis(block: BlockSpec, sign: str, r: int | None = None,
                    order: Sequence[MultiPartition] | None = None, barm: BarMatrix | None = None,
                    cache: BlockCache | None = None, jobs: int = 1) -> DecompMatrix:
    """The q-decomposition matrix of a block for ``sign`` in ``{"plus", "minus"}``."""
    if barm is None:
        barm = bar_matrix(block, r, order, cache, jobs)
    order = list(order) if order is not None else barm.order
    entries = solve_triangular(order, barm.rows, sign)
    return DecompMatrix(block, sign, order, entries)


def canonical_row(block: BlockSpec, lam, sign: str, **kw) -> dict[MultiPartition, LaurentPoly]:
    """One canonical-basis vector ``G(lam)`` in multipartition labels."""
    barm = kw.pop("barm", None) or bar_matrix(block, **kw)
    lam = as_multipartition(lam)
    return solve_triangular(barm.order, barm.rows, sign, labels=[lam])[lam]


# -- verification ------------------------------------------------------------------

def verify_canonical(matrix: DecompMatrix, barm: BarMatrix) -> dict[MultiPartition, dict[str, bool]]:
    """Re-check bar-invariance, the lattice condition and unitriangularity row by row."""
    if matrix.block != barm.block:
        raise ValueError("matrix and bar matrix belong to different blocks")
    pos = {lam: i for i, lam in enumerate(barm.order)}
    report = {}
    for lam in matrix.order:
        row = matrix.entries.get(lam, {})
        invariant = barm.apply(row) == {mu: c for mu, c in row.items() if c}
        if matrix.sign == "plus":
            lattice = all(c.in_positive_part() for mu, c in row.items() if mu != lam)
        else:
            lattice = all(c.in_negative_part() for mu, c in row.items() if mu != lam)
        unitri = row.get(lam) == ONE and all(pos[mu] >= pos[lam] for mu, c in row.items() if c)
        report[lam] = {"bar_invariant": invariant, "lattice": lattice, "unitriangular": unitri}
    return report


def verification_passed(report: Mapping[MultiPartition, Mapping[str, bool]]) -> bool:
    return all(all(v.values()) for v in report.values())
