"""Multipartitions, multicharges and their wedge (bead) encodings.

A wedge index ``k`` is split as ``k = c + n(d-1) - n*level*m`` with
``1 <= c <= n`` and ``1 <= d <= level``.  Within sector ``d`` the bead sits at
position ``x = c - n*m``; the beads of sector ``d`` form the beta-set of the
``d``-th partition shifted by its charge.

Multipartitions are tuples of partitions, partitions are non-increasing
tuples of positive ints, and charges are tuples of ints.  Ordered wedges are
strictly decreasing tuples ``(k_1, ..., k_r)`` continued implicitly by
``k_t = s - t + 1`` for ``t > r``.
"""
from __future__ import annotations

import enum
import heapq
from dataclasses import dataclass
from functools import lru_cache
from itertools import accumulate
from typing import Iterator, NamedTuple, Sequence

Partition = tuple[int, ...]
MultiPartition = tuple[Partition, ...]
Charge = tuple[int, ...]
Wedge = tuple[int, ...]


class TruncationError(ValueError):
    """A wedge does not have a frozen tail at the requested truncation."""


class TripleCoord(NamedTuple):
    c: int
    d: int
    m: int


class Ordering(str, enum.Enum):
    GREATER = "greater"
    LESS = "less"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


# -- index coordinates ----------------------------------------------------

def split_index(k: int, n: int, level: int) -> TripleCoord:
    """Return the unique ``(c, d, m)`` with ``k = c + n(d-1) - n*level*m``."""
    q, rem = divmod(k - 1, n * level)
    return TripleCoord(rem % n + 1, rem // n + 1, -q)


def join_index(t: TripleCoord | Sequence[int], n: int, level: int) -> int:
    c, d, m = t
    if not 1 <= c <= n:
        raise ValueError(f"c={c} outside [1, {n}]")
    if not 1 <= d <= level:
        raise ValueError(f"d={d} outside [1, {level}]")
    return c + n * (d - 1) - n * level * m


def sector_position(k: int, n: int, level: int) -> tuple[int, int]:
    """Return ``(d, x)``: the sector of ``k`` and its relabeled position ``c - n*m``."""
    c, d, m = split_index(k, n, level)
    return d, c - n * m


def global_index(x: int, d: int, n: int, level: int) -> int:
    """Inverse of :func:`sector_position`."""
    c = (x - 1) % n + 1
    return c + n * (d - 1) + level * (x - c)


# -- partitions -------------------------------------------------------------

def as_partition(parts: Sequence[int]) -> Partition:
    p = tuple(int(a) for a in parts if a != 0)
    if any(a < 0 for a in p):
        raise ValueError(f"negative part in {parts!r}")
    if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
        raise ValueError(f"parts of {parts!r} are not non-increasing")
    return p


def as_multipartition(components: Sequence[Sequence[int]]) -> MultiPartition:
    if len(components) < 1:
        raise ValueError("a multipartition needs at least one component")
    return tuple(as_partition(c) for c in components)


def size(lam: MultiPartition) -> int:
    return sum(sum(p) for p in lam)


@lru_cache(maxsize=None)
def partitions(N: int) -> tuple[Partition, ...]:
    """All partitions of ``N`` in reverse lexicographic order."""
    if N == 0:
        return ((),)
    out = []

    def rec(rest, cap, prefix):
        if rest == 0:
            out.append(tuple(prefix))
            return
        for a in range(min(rest, cap), 0, -1):
            prefix.append(a)
            rec(rest - a, a, prefix)
            prefix.pop()

    rec(N, N, [])
    return tuple(out)


@lru_cache(maxsize=None)
def multipartitions(N: int, level: int) -> tuple[MultiPartition, ...]:
    if level == 1:
        return tuple((p,) for p in partitions(N))
    out = []
    for a in range(N, -1, -1):
        for p in partitions(a):
            for rest in multipartitions(N - a, level - 1):
                out.append((p,) + rest)
    return tuple(out)


# -- blocks -------------------------------------------------------------------

@dataclass(frozen=True)
class BlockSpec:
    """The basis vectors ``|lam; s>`` with ``|lam| = size`` for fixed ``n``, level and charge."""
    n: int
    level: int
    charge: Charge
    size: int

    def __post_init__(self):
        object.__setattr__(self, "charge", tuple(int(s) for s in self.charge))
        if self.n < 2:
            raise ValueError("n must be >= 2")
        if self.level < 1:
            raise ValueError("level must be >= 1")
        if len(self.charge) != self.level:
            raise ValueError(f"charge {self.charge} does not have length {self.level}")
        if self.size < 0:
            raise ValueError("size must be >= 0")

    @property
    def key(self) -> str:
        return f"n{self.n}-l{self.level}-s{','.join(map(str, self.charge))}-N{self.size}"

    def to_json(self) -> dict:
        return {"n": self.n, "level": self.level, "charge": list(self.charge), "size": self.size}

    @classmethod
    def from_json(cls, data: dict) -> "BlockSpec":
        return cls(data["n"], data["level"], tuple(data["charge"]), data["size"])


# -- encoding / decoding --------------------------------------------------------

def minimal_truncation(lam: MultiPartition, charge: Charge, n: int) -> int:
    """Smallest ``r >= 1`` with ``k_r = s - r + 1`` for the wedge of ``|lam; charge>``."""
    level = len(charge)
    # lowest hole of sector d sits at x = s_d - l(lam^(d)) + 1
    holes = [global_index(charge[d] - len(lam[d]) + 1, d + 1, n, level) for d in range(level)]
    K = min(holes) - 1  # every integer <= K is a bead
    r0 = 0
    for d in range(level):
        r0 += len(lam[d])
        x = charge[d] - len(lam[d])
        while global_index(x, d + 1, n, level) > K:
            r0 += 1
            x -= 1
    return r0 + 1


def encode(lam: MultiPartition, charge: Charge, n: int, r: int | None = None) -> Wedge:
    """The ordered wedge ``(k_1, ..., k_r)`` of ``|lam; charge>``.

    With ``r=None`` the minimal valid truncation is used.
    """
    return _encode(tuple(map(tuple, lam)), tuple(charge), n, r)


@lru_cache(maxsize=1 << 16)
def _encode(lam: MultiPartition, charge: Charge, n: int, r: int | None) -> Wedge:
    level = len(charge)
    if len(lam) != level:
        raise ValueError(f"multipartition has {len(lam)} components, charge has {level}")
    s = sum(charge)
    if r is None:
        r = minimal_truncation(lam, charge, n)
    floor = s - r + 1
    beads = []
    for d in range(level):
        part, sd = lam[d], charge[d]
        a = 1
        while True:
            x = (part[a - 1] if a <= len(part) else 0) + sd - a + 1
            k = global_index(x, d + 1, n, level)
            if k < floor:
                break
            beads.append(k)
            a += 1
    beads.sort(reverse=True)
    if len(beads) != r or beads[-1] != floor:
        raise TruncationError(f"r={r} is too small for {lam} with charge {charge}")
    if any(beads[i] == beads[i + 1] for i in range(r - 1)):
        raise AssertionError("duplicate bead while encoding")  # pragma: no cover
    return tuple(beads)


def wedge_charge(w: Wedge) -> int:
    """Total charge ``s`` of a truncated ordered wedge (``k_r = s - r + 1``)."""
    return w[-1] + len(w) - 1


def check_frozen(w: Sequence[int]) -> None:
    if not w:
        raise TruncationError("empty wedge")
    if any(w[i] <= w[i + 1] for i in range(len(w) - 1)):
        raise TruncationError(f"{tuple(w)} is not strictly decreasing")


def pad(w: Wedge, r: int) -> Wedge:
    """Extend a truncated wedge with its frozen tail up to length ``r``."""
    if r <= len(w):
        if r < len(w):
            s = wedge_charge(w)
            if w[r - 1] != s - r + 1:
                raise TruncationError(f"cannot shorten {w} to length {r}")
            return w[:r]
        return w
    last = w[-1]
    return w + tuple(range(last - 1, last - 1 - (r - len(w)), -1))


def decode(w: Sequence[int], n: int, level: int) -> tuple[MultiPartition, Charge]:
    """Inverse of :func:`encode`: recover ``(lam, charge)`` from an ordered wedge."""
    w = tuple(w)
    check_frozen(w)
    kr = w[-1]
    explicit: list[list[int]] = [[] for _ in range(level)]
    for k in w:
        d, x = sector_position(k, n, level)
        explicit[d - 1].append(x)
    lam, charge = [], []
    for d in range(level):
        # largest position of sector d strictly below k_r: start of its frozen run
        k = kr - 1
        while split_index(k, n, level).d != d + 1:
            k -= 1
        X = sector_position(k, n, level)[1]
        xs = explicit[d]  # already decreasing, all above X
        sd = X + len(xs)
        parts = tuple(x - sd + a for a, x in enumerate(xs))  # lam_a = x_a - s_d + a - 1, a from 1
        lam.append(tuple(p for p in parts if p))
        charge.append(sd)
    return tuple(lam), tuple(charge)


# -- dominance order ---------------------------------------------------------------

def _tilde_pair(lam: MultiPartition, mu: MultiPartition, charge: Charge):
    lt, mt = [], []
    for d, sd in enumerate(charge):
        L = max(len(lam[d]), len(mu[d]))
        lt.extend((lam[d][a] if a < len(lam[d]) else 0) + sd for a in range(L))
        mt.extend((mu[d][a] if a < len(mu[d]) else 0) + sd for a in range(L))
    lt.sort(reverse=True)
    mt.sort(reverse=True)
    return lt, mt


def _partial_sums_geq(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x >= y for x, y in zip(accumulate(a), accumulate(b)))


def dominance_compare(lam: MultiPartition, mu: MultiPartition, charge: Charge, n: int) -> Ordering:
    """Compare ``|lam; s>`` and ``|mu; s>`` in the dominance order on charged multipartitions.

    Unequal sizes are reported as incomparable.
    """
    if size(lam) != size(mu):
        return Ordering.INCOMPARABLE
    if lam == mu:
        return Ordering.EQUAL
    lt, mt = _tilde_pair(lam, mu, charge)
    if lt != mt:
        a, b = lt, mt
    else:
        wa, wb = encode(lam, charge, n), encode(mu, charge, n)
        r = max(len(wa), len(wb))
        a, b = pad(wa, r), pad(wb, r)
    if _partial_sums_geq(a, b):
        return Ordering.GREATER
    if _partial_sums_geq(b, a):
        return Ordering.LESS
    return Ordering.INCOMPARABLE


def dominates(lam: MultiPartition, mu: MultiPartition, charge: Charge, n: int) -> bool:
    """``|lam; s> >= |mu; s>`` in :func:`dominance_compare`."""
    return dominance_compare(lam, mu, charge, n) in (Ordering.GREATER, Ordering.EQUAL)


def wedge_compare(lam: MultiPartition, mu: MultiPartition, charge: Charge, n: int) -> Ordering:
    """Compare by partial sums of the ordered wedges ``k(lam)`` and ``k(mu)``.

    Straightening only moves pairs of beads towards each other at fixed sum,
    so every coefficient of the bar involution respects this order.  It is the
    order used to triangularise blocks.
    """
    if size(lam) != size(mu):
        return Ordering.INCOMPARABLE
    if lam == mu:
        return Ordering.EQUAL
    wa, wb = encode(lam, charge, n), encode(mu, charge, n)
    r = max(len(wa), len(wb))
    a, b = pad(wa, r), pad(wb, r)
    if _partial_sums_geq(a, b):
        return Ordering.GREATER
    if _partial_sums_geq(b, a):
        return Ordering.LESS
    return Ordering.INCOMPARABLE


ORDERS = {"wedge": wedge_compare, "dominance": dominance_compare}


def _tie_key(lam: MultiPartition, charge: Charge, n: int, N: int, r: int):
    tilde = sorted(((lam[d][a] if a < len(lam[d]) else 0) + sd
                    for d, sd in enumerate(charge) for a in range(max(N, 1))), reverse=True)
    return (tuple(tilde), pad(encode(lam, charge, n), r), lam)


def enumerate_block(spec: BlockSpec, order: str = "wedge", tie_break=None) -> list[MultiPartition]:
    """All multipartitions of the block, listed so that ``lam`` precedes ``mu`` whenever ``lam > mu``.

    ``order`` names the partial order being extended (see ``ORDERS``).  Ties are
    resolved by preferring the lexicographically largest padded shifted-part
    sequence, then wedge, then raw multipartition; ``tie_break`` may supply a
    different key (larger first).
    """
    compare = ORDERS[order]
    items = list(multipartitions(spec.size, spec.level))
    r = max(minimal_truncation(lam, spec.charge, spec.n) for lam in items)
    if tie_break is None:
        keys = {lam: _tie_key(lam, spec.charge, spec.n, spec.size, r) for lam in items}
    else:
        keys = {lam: tie_break(lam) for lam in items}
    above = {lam: 0 for lam in items}  # number of strictly greater elements
    below: dict[MultiPartition, list[MultiPartition]] = {lam: [] for lam in items}
    for i, a in enumerate(items):
        for b in items[i + 1:]:
            o = compare(a, b, spec.charge, spec.n)
            if o is Ordering.GREATER:
                below[a].append(b)
                above[b] += 1
            elif o is Ordering.LESS:
                below[b].append(a)
                above[a] += 1
    heap = [(_neg_key(keys[lam]), lam) for lam in items if above[lam] == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        _, lam = heapq.heappop(heap)
        out.append(lam)
        for mu in below[lam]:
            above[mu] -= 1
            if above[mu] == 0:
                heapq.heappush(heap, (_neg_key(keys[mu]), mu))
    if len(out) != len(items):
        raise AssertionError(f"{order} relation has a cycle")  # pragma: no cover
    return out


class _Rev:
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return self.v > other.v

    def __eq__(self, other):
        return self.v == other.v


def _neg_key(key):
    return _Rev(key)


# -- abacus ---------------------------------------------------------------------------

def render_abacus(w: Sequence[int], n: int, level: int, extra_rows: int = 1) -> str:
    """Text picture of the ``n*level``-runner abacus of ``w``.

    Rows are indexed by ``m`` (largest ``m`` on top, as positions decrease
    upward); a bead is drawn as ``(k)``.  The left grid uses global labels
    ``k``, the right grid the per-sector labels ``c - n*m``.
    """
    w = tuple(w)
    check_frozen(w)
    beads = set(w)
    kr = w[-1]
    width = n * level
    m_top = split_index(kr, n, level).m + extra_rows
    m_bot = split_index(w[0], n, level).m
    cell = max(len(str(x)) for x in (w[0], kr - width * (extra_rows + 1), n)) + 2
    header = []
    for d in range(1, level + 1):
        header.append(f"d={d}".ljust((cell + 1) * n - 1))
    lines = ["   ".join(header)]
    rows = []
    for m in range(m_top, m_bot - 1, -1):
        glob, loc = [], []
        for d in range(1, level + 1):
            g_sec, l_sec = [], []
            for c in range(1, n + 1):
                k = join_index((c, d, m), n, level)
                on = k in beads or k < kr
                g_sec.append(_cell(k, on, cell))
                l_sec.append(_cell(c - n * m, on, cell))
            glob.append(" ".join(g_sec))
            loc.append(" ".join(l_sec))
        rows.append(" | ".join(glob) + "  ||  " + " | ".join(loc) + f"   m={m}")
    lines.extend(rows)
    return "\n".join(lines)


def _cell(label: int, on: bool, width: int) -> str:
    s = f"({label})" if on else f" {label} "
    return s.rjust(width)


def abacus_beads(text: str) -> set[int]:
    """Global bead labels shown in the left grid of :func:`render_abacus` output."""
    out = set()
    for line in text.splitlines()[1:]:
        left = line.split("||")[0]
        for tok in left.replace("|", " ").split():
            if tok.startswith("("):
                out.add(int(tok[1:-1]))
    return out
