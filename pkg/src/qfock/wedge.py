"""Straightening of q-wedge words into ordered wedges.

The only relation used is the two-factor commutation rule for
``u_{k2} ^ u_{k1}`` with ``k2 < k1``; longer words are reduced by memoised insertion: a factor is bubbled
rightwards through an ordered tail, straightening one adjacent pair at a
time.
"""
from __future__ import annotations

from bisect import bisect_right
from collections import Counter
from operator import neg as _neg
from typing import Iterable, Mapping, Sequence

from .combinatorics import split_index
from .laurent import ONE, ZERO, LaurentPoly

Expansion = dict[tuple[int, ...], LaurentPoly]

_Q_MINUS_QINV = LaurentPoly({1: 1, -1: -1})
_MINUS_QINV = LaurentPoly({-1: -1})


def kappa(a: Iterable) -> int:
    """Number of pairs ``i < j`` with ``a_i == a_j``."""
    return sum(v * (v - 1) // 2 for v in Counter(a).values())


def _add_into(acc: Expansion, key, coeff: LaurentPoly) -> None:
    v = acc.get(key)
    v = coeff if v is None else v + coeff
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


class Straightener:
    """Normal-ordering engine for fixed ``n`` and level, with memo tables.

    Instances are cheap; reuse one per ``(n, level)`` to share the caches.
    """

    def __init__(self, n: int, level: int):
        if n < 2 or level < 1:
            raise ValueError("need n >= 2 and level >= 1")
        self.n = n
        self.level = level
        self._pair_raw: dict[tuple[int, int], list[tuple[LaurentPoly, int, int]]] = {}
        self._pair: dict[tuple[int, int], Expansion] = {}
        self._insert: dict[tuple[int, tuple[int, ...]], Expansion] = {}

    # -- the two-factor rule ------------------------------------------------

    def raw_pair_rule(self, k2: int, k1: int) -> list[tuple[LaurentPoly, int, int]]:
        """One application of the commutation rule to ``u_{k2} ^ u_{k1}`` with ``k2 < k1``.

        Returns ``[(coeff, a, b), ...]`` meaning ``sum coeff * u_a ^ u_b``; the
        first entry is the swapped word ``u_{k1} ^ u_{k2}``, the others are the
        correction words, which need not be ordered yet.
        """
        key = (k2, k1)
        hit = self._pair_raw.get(key)
        if hit is not None:
            return hit
        if not k2 < k1:
            raise ValueError("raw_pair_rule expects k2 < k1")
        n, level = self.n, self.level
        c1, d1, m1 = split_index(k1, n, level)
        c2, d2, m2 = split_index(k2, n, level)
        pre = _MINUS_QINV if d1 == d2 else ONE
        alpha = 1 if c1 == c2 else 0  # k1 > k2 here
        out = [(pre.shift(alpha), k1, k2)]
        # k1 > k2 forces m1 <= m2.  For m1 == m2 the range below is empty
        # except when c1 > c2 and d1 > d2, which contributes the j = 0 term.
        beta = 0 if c1 > c2 else 1
        gamma = 0 if d1 > d2 else 1  # d1 == d2 behaves like d1 < d2
        coeff = pre * _Q_MINUS_QINV
        step = n * level
        for j in range(beta, m2 - m1 - gamma + 1):
            a = k1 - c1 + c2 - step * j
            b = k2 + c1 - c2 + step * j
            out.append((coeff, a, b))
        self._pair_raw[key] = out
        return out

    def straighten_pair(self, k2: int, k1: int) -> Expansion:
        """Expansion of ``u_{k2} ^ u_{k1}`` in ordered pairs ``(a, b)``, ``a > b``."""
        if k2 == k1:
            return {}
        if k2 > k1:
            return {(k2, k1): ONE}
        key = (k2, k1)
        hit = self._pair.get(key)
        if hit is not None:
            return hit
        acc: Expansion = {}
        for coeff, a, b in self.raw_pair_rule(k2, k1):
            if a > b:
                _add_into(acc, (a, b), coeff)
            elif a < b:
                for w, c in self.straighten_pair(a, b).items():
                    _add_into(acc, w, coeff * c)
        self._pair[key] = acc
        return acc

    # -- words -------------------------------------------------------------------

    def insert(self, x: int, ordered: tuple[int, ...]) -> Expansion:
        """Normal form of ``u_x ^ u_{v_1} ^ u_{v_2} ^ ...`` for an ordered tuple ``v``."""
        # Straightening a pair only produces indices between the two inputs,
        # so the factors of ``ordered`` strictly below ``x`` are never touched.
        p = bisect_right(ordered, -x, key=_neg)
        if p == 0:
            return {(x,) + ordered: ONE}
        core = self._insert_core(x, ordered[:p])
        if p == len(ordered):
            return core
        tail = ordered[p:]
        return {w + tail: c for w, c in core.items()}

    def _insert_core(self, x: int, above: tuple[int, ...]) -> Expansion:
        # every entry of ``above`` is >= x
        head, rest = above[0], above[1:]
        if head == x:
            return {}
        key = (x, above)
        hit = self._insert.get(key)
        if hit is not None:
            return hit
        acc: Expansion = {}
        for (a, b), c in self.straighten_pair(x, head).items():
            if a == head:
                # leading term: everything produced below stays under ``head``
                for w, c2 in self.insert(b, rest).items():
                    _add_into(acc, (head,) + w, c * c2)
                continue
            for w, c2 in self.insert(b, rest).items():
                cc = c * c2
                for w2, c3 in self.insert(a, w).items():
                    _add_into(acc, w2, cc * c3)
        self._insert[key] = acc
        return acc

    def normal_order(self, word: Sequence[int]) -> Expansion:
        """Expand an arbitrary wedge word in the ordered (standard) basis."""
        acc: Expansion = {(): ONE}
        for x in reversed(tuple(word)):
            nxt: Expansion = {}
            for w, c in acc.items():
                for w2, c2 in self.insert(x, w).items():
                    _add_into(nxt, w2, c * c2)
            acc = nxt
            if not acc:
                break
        return acc

    def apply_linear(self, prefix: Sequence[int], expansion: Mapping[tuple[int, ...], LaurentPoly],
                     suffix: Sequence[int] = ()) -> Expansion:
        """Normal form of ``prefix ^ (sum c_w w) ^ suffix``."""
        acc: Expansion = {}
        for w, c in expansion.items():
            for w2, c2 in self.normal_order(tuple(prefix) + tuple(w) + tuple(suffix)).items():
                _add_into(acc, w2, c * c2)
        return acc

    def clear(self) -> None:
        self._pair_raw.clear()
        self._pair.clear()
        self._insert.clear()


_ENGINES: dict[tuple[int, int], Straightener] = {}


def engine(n: int, level: int) -> Straightener:
    """Shared :class:`Straightener` for ``(n, level)``."""
    e = _ENGINES.get((n, level))
    if e is None:
        e = _ENGINES[(n, level)] = Straightener(n, level)
    return e


def straighten_pair(k2: int, k1: int, n: int, level: int) -> Expansion:
    return engine(n, level).straighten_pair(k2, k1)


def normal_order(word: Sequence[int], n: int, level: int) -> Expansion:
    return engine(n, level).normal_order(word)


def parse_word(text: str) -> tuple[int, ...]:
    """Parse ``"6,3,2,1,-2"`` into a tuple of ints."""
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise ValueError("empty wedge word")
    return tuple(int(p) for p in parts)


def expansion_to_json(exp: Mapping[tuple[int, ...], LaurentPoly]) -> list[dict]:
    return [{"indices": list(w), "coeff": c.to_json()}
            for w, c in sorted(exp.items(), key=lambda t: t[0], reverse=True)]


def expansion_from_json(data: Iterable[Mapping]) -> Expansion:
    return {tuple(t["indices"]): LaurentPoly.from_json(t["coeff"]) for t in data}


# -- sector statistics ---------------------------------------------------------------

def xi(u: Sequence[int], v: Sequence[int], n: int, level: int) -> int:
    """Cross-pair count: factors ``u_a`` of ``u`` and ``v_b`` of ``v`` with equal
    ``c``-coordinate and ``u_a < v_b``.

    ``u`` and ``v`` are words of raw indices whose sectors must be disjoint.
    """
    cu = [split_index(k, n, level) for k in u]
    cv = [split_index(k, n, level) for k in v]
    du = {t.d for t in cu}
    if du & {t.d for t in cv}:
        raise ValueError("xi needs words supported on disjoint sectors")
    count = 0
    for ka, ta in zip(u, cu):
        for kb, tb in zip(v, cv):
            if ta.c == tb.c and ka < kb:
                count += 1
    return count


def zero_expansion() -> Expansion:
    return {}


def scale(exp: Mapping[tuple[int, ...], LaurentPoly], c: LaurentPoly) -> Expansion:
    if not c:
        return {}
    return {w: v * c for w, v in exp.items()}


__all__ = ["Straightener", "engine", "straighten_pair", "normal_order", "kappa", "xi",
           "parse_word", "expansion_to_json", "expansion_from_json", "Expansion", "ZERO"]
