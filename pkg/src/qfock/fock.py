"""Truncated Fock-space vectors and the bar involution.

A :class:`FockVector` lives in one block ``(n, level, charge, N)`` and stores its
terms as ordered wedges truncated at a common length ``r``.  The truncation
must be long enough that every wedge of the block has a frozen tail after
position ``r``; :func:`choose_truncation` gives a generous default.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .combinatorics import (BlockSpec, MultiPartition, TruncationError, Wedge, as_multipartition,
                            decode, encode, global_index, join_index, minimal_truncation,
                            multipartitions, size, split_index)
from .laurent import ONE, ZERO, LaurentPoly
from .wedge import _add_into, engine, kappa

# Insertion recurses once per factor of a wedge; long truncations need headroom.
if sys.getrecursionlimit() < 20000:
    sys.setrecursionlimit(20000)


@dataclass
class FockVector:
    """Finite combination ``sum c_w |w>`` of truncated ordered wedges of one block."""
    block: BlockSpec
    r: int
    terms: dict[Wedge, LaurentPoly] = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {w: c for w, c in self.terms.items() if c}

    @classmethod
    def basis(cls, block: BlockSpec, lam: MultiPartition, r: int | None = None) -> "FockVector":
        r = choose_truncation(block) if r is None else r
        lam = as_multipartition(lam)
        if size(lam) != block.size or len(lam) != block.level:
            raise ValueError(f"{lam} is not in block {block.key}")
        return cls(block, r, {encode(lam, block.charge, block.n, r): ONE})

    @classmethod
    def from_multipartitions(cls, block: BlockSpec, coeffs: Mapping[MultiPartition, LaurentPoly],
                             r: int | None = None) -> "FockVector":
        r = choose_truncation(block) if r is None else r
        return cls(block, r, {encode(as_multipartition(lam), block.charge, block.n, r): c
                              for lam, c in coeffs.items()})

    def label(self, w: Wedge) -> MultiPartition:
        return decode(w, self.block.n, self.block.level)[0]

    def by_multipartition(self) -> dict[MultiPartition, LaurentPoly]:
        return {self.label(w): c for w, c in self.terms.items()}

    def coeff(self, lam: MultiPartition) -> LaurentPoly:
        return self.terms.get(encode(as_multipartition(lam), self.block.charge, self.block.n, self.r), ZERO)

    def _check_same(self, other: "FockVector") -> None:
        if self.block != other.block or self.r != other.r:
            raise ValueError("vectors live in different blocks or truncations")

    def __add__(self, other: "FockVector") -> "FockVector":
        self._check_same(other)
        acc = dict(self.terms)
        for w, c in other.terms.items():
            _add_into(acc, w, c)
        return FockVector(self.block, self.r, acc)

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + other.scale(LaurentPoly.const(-1))

    def scale(self, c: LaurentPoly) -> "FockVector":
        return FockVector(self.block, self.r, {w: v * c for w, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.block == other.block and self.r == other.r and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def to_json(self) -> dict:
        items = sorted(self.terms.items(), key=lambda t: t[0], reverse=True)
        return {"block": self.block.to_json(), "r": self.r,
                "terms": [{"multipartition": [list(p) for p in self.label(w)], "coeff": c.to_json()}
                          for w, c in items]}

    @classmethod
    def from_json(cls, data: dict) -> "FockVector":
        block = BlockSpec.from_json(data["block"])
        coeffs = {as_multipartition(t["multipartition"]): LaurentPoly.from_json(t["coeff"])
                  for t in data["terms"]}
        return cls.from_multipartitions(block, coeffs, data.get("r"))


# -- truncation -----------------------------------------------------------------

def required_truncation(block: BlockSpec) -> int:
    """Smallest ``r`` at which every wedge of the block has a frozen tail."""
    return max(minimal_truncation(lam, block.charge, block.n)
               for lam in multipartitions(block.size, block.level))


def default_truncation(block: BlockSpec) -> int:
    """Smallest multiple of ``n*level`` that is at least ``level*(N + max s - min s + 1)``."""
    step = block.n * block.level
    lo = block.level * (block.size + max(block.charge) - min(block.charge) + 1)
    return -(-lo // step) * step


def choose_truncation(block: BlockSpec) -> int:
    """Default truncation for a block, raised by multiples of ``n*level`` if ever too short."""
    r = default_truncation(block)
    need = required_truncation(block)
    step = block.n * block.level
    while r < need:  # never observed; kept so a short default cannot silently corrupt results
        r += step
    return r


def check_truncation(w: Sequence[int], charge_sum: int) -> None:
    """Raise :class:`TruncationError` unless ``k_r = s - r + 1``."""
    r = len(w)
    if r == 0 or w[-1] != charge_sum - r + 1:
        raise TruncationError(f"wedge {tuple(w)} is not frozen at r={r} for total charge {charge_sum}")


# -- the bar involution -------------------------------------------------------

def bar_wedge(w: Wedge, n: int, level: int) -> dict[Wedge, LaurentPoly]:
    """Bar image of one truncated ordered wedge, as an ordered-wedge expansion.

    The factors are reversed, multiplied by ``(-q)^kappa(d) q^-kappa(c)`` and
    straightened.  Coefficients of the basis vector are 1, so no bar is
    applied to them here.
    """
    coords = [split_index(k, n, level) for k in w]
    kd = kappa(t.d for t in coords)
    kc = kappa(t.c for t in coords)
    pre = LaurentPoly.monomial(kd - kc, -1 if kd % 2 else 1)
    out = engine(n, level).normal_order(tuple(reversed(w)))
    return {v: c * pre for v, c in out.items()}


def bar_basis(block: BlockSpec, lam: MultiPartition, r: int | None = None) -> FockVector:
    """``bar(|lam; s>)`` at truncation ``r`` (default :func:`choose_truncation`)."""
    r = choose_truncation(block) if r is None else r
    w = encode(as_multipartition(lam), block.charge, block.n, r)
    return FockVector(block, r, bar_wedge(w, block.n, block.level))


def bar_vector(v: FockVector, rows: Mapping[Wedge, Mapping[Wedge, LaurentPoly]] | None = None) -> FockVector:
    """Semilinear extension of the bar involution to ``v``.

    ``rows`` may supply precomputed bar images keyed by wedge.
    """
    s = sum(v.block.charge)
    acc: dict[Wedge, LaurentPoly] = {}
    for w, c in v.terms.items():
        check_truncation(w, s)
        row = rows.get(w) if rows is not None else None
        if row is None:
            row = bar_wedge(w, v.block.n, v.block.level)
        cb = c.bar()
        for w2, a in row.items():
            _add_into(acc, w2, cb * a)
    return FockVector(v.block, v.r, acc)


# -- sector columns -----------------------------------------------------------------

def empty_column(j: int, charge: Sequence[int], depth: int, n: int) -> tuple[int, ...]:
    """Raw indices of the first ``depth`` factors of the vacuum column of sector ``j``."""
    return partition_column((), j, charge, depth, n)


def partition_column(part: Sequence[int], j: int, charge: Sequence[int], depth: int, n: int) -> tuple[int, ...]:
    """Raw indices of the first ``depth`` factors of the column of ``part`` in sector ``j``.

    Factor ``a`` (from 1) sits at sector position ``s_j + part_a - a + 1``.
    """
    level = len(charge)
    if not 1 <= j <= level:
        raise ValueError(f"j={j} outside [1, {level}]")
    if depth < 0:
        raise ValueError("depth must be >= 0")
    sj = charge[j - 1]
    return tuple(global_index(sj + (part[a] if a < len(part) else 0) - a, j, n, level)
                 for a in range(depth))


def relabel_sector(k: int, j: int, n: int, level: int) -> int:
    """Index of ``k`` after deleting sector ``j`` (``k`` must lie outside sector ``j``)."""
    c, d, m = split_index(k, n, level)
    if d == j:
        raise ValueError(f"u_{k} lies in sector {j}")
    return join_index((c, d if d < j else d - 1, m), n, level - 1)


def insert_sector(k: int, j: int, n: int, level: int) -> int:
    """Inverse of :func:`relabel_sector`: view a level ``level`` index at level ``level + 1``."""
    c, d, m = split_index(k, n, level)
    return join_index((c, d if d < j else d + 1, m), n, level + 1)


def check_vector(w: Sequence[int], j: int, n: int, level: int, relabel: bool = False) -> tuple[int, ...]:
    """The subword of factors outside sector ``j``, order preserved.

    With ``relabel=True`` the indices are rewritten for level ``level - 1``.
    """
    if not 1 <= j <= level:
        raise ValueError(f"j={j} outside [1, {level}]")
    sub = tuple(k for k in w if split_index(k, n, level).d != j)
    if relabel:
        return tuple(relabel_sector(k, j, n, level) for k in sub)
    return sub


def sector_split(w: Sequence[int], j: int, n: int, level: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """``(factors in sector j, factors elsewhere)``, each in original order."""
    inside = tuple(k for k in w if split_index(k, n, level).d == j)
    return inside, check_vector(w, j, n, level)


def basis_vectors(block: BlockSpec, r: int | None = None) -> Iterable[FockVector]:
    for lam in multipartitions(block.size, block.level):
        yield FockVector.basis(block, lam, r)
