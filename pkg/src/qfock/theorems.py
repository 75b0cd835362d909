"""Level-reduction checks: comparing decomposition matrices across levels.

When one charge component is far above the others (``sufficiently large``) or
far below them (``sufficiently small``), entries of the level-``l`` matrix are
expected to agree with entries of the level ``l-1`` matrix in which that
component has been deleted.  The checkers here recompute both sides from
scratch and report every compared entry.

The quotient route builds the canonical basis inside the span of the
``|lam; s>`` with empty ``j``-th component and ``|lam| <= N``, with the bar map
transported through the projection that kills every other basis vector.
"""
from __future__ import annotations

import random
import time
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

from .cache import BlockCache
from .canonical import DecompMatrix, bar_matrix, canonical_basis, solve_triangular
from .combinatorics import BlockSpec, MultiPartition, enumerate_block, multipartitions
from .fock import FockVector, choose_truncation
from .laurent import ZERO, LaurentPoly


# -- charge conditions ------------------------------------------------------------

def is_sufficiently_large(charge: Sequence[int], j: int, lam: MultiPartition) -> bool:
    """``s_j - s_i >= lam^(i)_1`` for every ``i`` (so in particular ``lam^(j)`` is empty)."""
    _check_j(j, len(charge))
    sj = charge[j - 1]
    return all(sj - si >= (p[0] if p else 0) for si, p in zip(charge, lam))


def is_sufficiently_small(charge: Sequence[int], j: int, N: int) -> bool:
    """``s_i - s_j >= N`` for every ``i != j``."""
    _check_j(j, len(charge))
    sj = charge[j - 1]
    return all(si - sj >= N for i, si in enumerate(charge, 1) if i != j)


def omit_component(x: Sequence, j: int) -> tuple:
    """Delete the ``j``-th component of a multipartition or charge."""
    if len(x) < 2:
        raise ValueError("cannot omit a component at level 1")
    _check_j(j, len(x))
    return tuple(x[:j - 1]) + tuple(x[j:])


def _check_j(j: int, level: int) -> None:
    if not 1 <= j <= level:
        raise ValueError(f"j={j} outside [1, {level}]")


# -- reports --------------------------------------------------------------------

@dataclass
class Comparison:
    lam: MultiPartition
    mu: MultiPartition
    lhs: LaurentPoly
    rhs: LaurentPoly

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {"lambda": [list(p) for p in self.lam], "mu": [list(p) for p in self.mu],
                "lhs": self.lhs.to_json(), "rhs": self.rhs.to_json(), "pass": self.passed}


@dataclass
class Case:
    n: int
    level: int
    charge: tuple[int, ...]
    size: int
    j: int
    sign: str
    theorem: str = "A"

    @property
    def block(self) -> BlockSpec:
        return BlockSpec(self.n, self.level, self.charge, self.size)

    def to_json(self) -> dict:
        d = asdict(self)
        d["charge"] = list(self.charge)
        return d


@dataclass
class TheoremReport:
    case: Case
    comparisons: list[Comparison] = field(default_factory=list)
    seed: int | None = None
    r_used: dict[str, int] = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.comparisons)

    @property
    def failures(self) -> list[Comparison]:
        return [c for c in self.comparisons if not c.passed]

    def to_json(self) -> dict:
        return {"case": self.case.to_json(), "comparisons": [c.to_json() for c in self.comparisons],
                "seed": self.seed, "r_used": self.r_used, "elapsed": round(self.elapsed, 3)}


def _lower_matrix(block: BlockSpec, j: int, sign: str, cache: BlockCache | None, r: int | None):
    lower = BlockSpec(block.n, block.level - 1, omit_component(block.charge, j), block.size)
    return lower, canonical_basis(lower, sign, r=r, cache=cache)


def check_theorem_A(block: BlockSpec, j: int, sign: str, r: int | None = None,
                    cache: BlockCache | None = None, seed: int | None = None) -> TheoremReport:
    """Compare rows ``lam`` for which ``s_j`` is sufficiently large with the level ``l-1`` rows.

    Every ``mu`` with empty ``j``-th component is compared, as is every ``mu``
    with a nonzero entry; entries whose ``mu`` has nonempty ``j``-th component
    are expected to vanish.
    """
    t0 = time.perf_counter()
    case = Case(block.n, block.level, block.charge, block.size, j, sign, "A")
    report = TheoremReport(case, seed=seed)
    if block.level < 2:
        raise ValueError("the level must be at least 2")
    D = canonical_basis(block, sign, r=r, cache=cache)
    lower, Dl = _lower_matrix(block, j, sign, cache, None)
    report.r_used = {"upper": r or choose_truncation(block), "lower": choose_truncation(lower)}
    for lam in D.order:
        if not is_sufficiently_large(block.charge, j, lam):
            continue
        lam_c = omit_component(lam, j)
        row = D.entries[lam]
        for mu in D.order:
            if mu[j - 1] and mu not in row:
                continue
            rhs = Dl.entry(lam_c, omit_component(mu, j)) if not mu[j - 1] else ZERO
            report.comparisons.append(Comparison(lam, mu, row.get(mu, ZERO), rhs))
    report.elapsed = time.perf_counter() - t0
    return report


def check_theorem_B(block: BlockSpec, j: int, sign: str, r: int | None = None,
                    cache: BlockCache | None = None, seed: int | None = None) -> TheoremReport:
    """Compare columns ``mu`` with empty ``j``-th component when ``s_j`` is sufficiently small.

    Rows ``lam`` with nonempty ``j``-th component are expected to vanish in
    those columns.
    """
    t0 = time.perf_counter()
    case = Case(block.n, block.level, block.charge, block.size, j, sign, "B")
    report = TheoremReport(case, seed=seed)
    if block.level < 2:
        raise ValueError("the level must be at least 2")
    D = canonical_basis(block, sign, r=r, cache=cache)
    lower, Dl = _lower_matrix(block, j, sign, cache, None)
    report.r_used = {"upper": r or choose_truncation(block), "lower": choose_truncation(lower)}
    if is_sufficiently_small(block.charge, j, block.size):
        for mu in D.order:
            if mu[j - 1]:
                continue
            mu_c = omit_component(mu, j)
            for lam in D.order:
                lhs = D.entries[lam].get(mu, ZERO)
                rhs = ZERO if lam[j - 1] else Dl.entry(omit_component(lam, j), mu_c)
                report.comparisons.append(Comparison(lam, mu, lhs, rhs))
    report.elapsed = time.perf_counter() - t0
    return report


# -- the quotient route ---------------------------------------------------------------

@dataclass(frozen=True)
class QuotientSpace:
    """Span of ``|lam; s>`` with ``lam^(j)`` empty and ``|lam| <= N``."""
    n: int
    level: int
    charge: tuple[int, ...]
    j: int
    N: int

    def __post_init__(self):
        object.__setattr__(self, "charge", tuple(self.charge))
        _check_j(self.j, self.level)
        if len(self.charge) != self.level:
            raise ValueError("charge length differs from the level")

    def contains(self, lam: MultiPartition) -> bool:
        return not lam[self.j - 1] and sum(map(sum, lam)) <= self.N

    def block(self, size: int) -> BlockSpec:
        return BlockSpec(self.n, self.level, self.charge, size)

    def labels(self, size: int) -> list[MultiPartition]:
        """Quotient labels of one size, in the order of the ambient block."""
        return [lam for lam in enumerate_block(self.block(size)) if self.contains(lam)]


def project_quotient(v: FockVector, qs: QuotientSpace) -> FockVector:
    """Drop the terms whose label is outside the quotient."""
    return FockVector(v.block, v.r, {w: c for w, c in v.terms.items() if qs.contains(v.label(w))})


def quotient_bar_rows(qs: QuotientSpace, size: int, cache: BlockCache | None = None, r: int | None = None):
    """``pi(bar|lam>)`` for every quotient label of ``size``, plus the kernel defects.

    The second value maps each label outside the quotient to the part of
    ``pi(bar|lam>)`` that survives; it is empty exactly when the transported
    bar map is well defined on this block.
    """
    barm = bar_matrix(qs.block(size), r=r, cache=cache)
    rows, defects = {}, {}
    for lam, row in barm.rows.items():
        kept = {mu: c for mu, c in row.items() if qs.contains(mu)}
        if qs.contains(lam):
            rows[lam] = kept
        elif kept:
            defects[lam] = kept
    return rows, defects


def quotient_canonical_basis(qs: QuotientSpace, sign: str, cache: BlockCache | None = None,
                             r: int | None = None) -> DecompMatrix:
    """Canonical basis of the quotient, for all sizes up to ``N``.

    The result's ``order`` lists size 0 first; entries between different
    sizes are zero.  Its ``block`` records the ambient data with ``size = N``.
    """
    if not is_sufficiently_small(qs.charge, qs.j, qs.N):
        raise ValueError(f"s_{qs.j} is not sufficiently small for N={qs.N}")
    order, entries = [], {}
    for size in range(qs.N + 1):
        rows, defects = quotient_bar_rows(qs, size, cache, r)
        if defects:
            raise ValueError(f"the transported bar map is not well defined at size {size}")
        labels = qs.labels(size)
        entries.update(solve_triangular(labels, rows, sign))
        order.extend(labels)
    return DecompMatrix(qs.block(qs.N), sign, order, entries)


# -- randomized campaigns ---------------------------------------------------------

def random_case(rng: random.Random, theorem: str, ns: Sequence[int] = (2, 3), levels: Sequence[int] = (2, 3),
                max_size: int = 5, signs: Sequence[str] = ("plus", "minus")) -> Case:
    """Draw a case whose charge forces the large (A) or small (B) condition for some ``j``.

    Charges start uniform in ``[-N-3, N+3]`` and component ``j`` is then moved
    above (A) or below (B) the others.
    """
    n, level = rng.choice(tuple(ns)), rng.choice(tuple(levels))
    N = rng.randint(1, max_size)
    s = [rng.randint(-N - 3, N + 3) for _ in range(level)]
    j = rng.randint(1, level)
    others = [x for i, x in enumerate(s, 1) if i != j]
    if theorem == "A":
        s[j - 1] = max(others) + rng.randint(0, N)
    elif theorem == "B":
        s[j - 1] = min(others) - N - rng.randint(0, 2)
    else:
        raise ValueError("theorem must be 'A' or 'B'")
    return Case(n, level, tuple(s), N, j, rng.choice(tuple(signs)), theorem)


def run_case(case: Case, cache: BlockCache | None = None, seed: int | None = None) -> TheoremReport:
    check = check_theorem_A if case.theorem == "A" else check_theorem_B
    return check(case.block, case.j, case.sign, cache=cache, seed=seed)


def campaign(theorem: str, count: int, seed: int, cache: BlockCache | None = None,
             **kw) -> list[TheoremReport]:
    """``count`` random cases of one theorem; cases with nothing to compare are redrawn."""
    rng = random.Random(seed)
    out: list[TheoremReport] = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 20 * count:
            raise RuntimeError("could not draw enough qualifying cases")
        rep = run_case(random_case(rng, theorem, **kw), cache, seed)
        if rep.comparisons:
            out.append(rep)
    return out


def summarize(reports: Iterable[TheoremReport]) -> dict:
    reports = list(reports)
    return {"cases": len(reports), "comparisons": sum(len(r.comparisons) for r in reports),
            "failures": sum(len(r.failures) for r in reports)}
