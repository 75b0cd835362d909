"""Acceptance criteria 1-10.  Each test prints one ``[criterion k] PASS/FAIL`` line."""
import itertools
import json
import random
import time
from io import StringIO

import pytest

from oracles import dense_canonical, naive_normal_order
from qfock.canonical import bar_matrix, canonical_basis
from qfock.cli import main
from qfock.combinatorics import (BlockSpec, Ordering, abacus_beads, decode, dominance_compare, encode,
                                 multipartitions, render_abacus, wedge_compare)
from qfock.fock import choose_truncation
from qfock.laurent import ONE, LaurentPoly, parse
from qfock.theorems import QuotientSpace, campaign, quotient_canonical_basis, summarize
from qfock.wedge import kappa, normal_order, straighten_pair

GE = (Ordering.GREATER, Ordering.EQUAL)

CHARGES = {
    1: [(0,), (1,), (-2,), (3,), (-5,)],
    2: [(0, 0), (1, 0), (0, 2), (3, -3), (-2, 1)],
    3: [(0, 0, 0), (1, 0, -1), (0, 2, -2), (2, -1, 0), (-1, 1, 3)],
}
SUITE = [BlockSpec(n, level, s, N) for n in (2, 3) for level in (1, 2, 3) for s in CHARGES[level] for N in range(6)]


@pytest.fixture
def report(capsys):
    def emit(k, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {k}] {'PASS' if ok else 'FAIL'} {detail}")
    return emit


def P(text):
    return parse(text)


def test_criterion_1_golden_straightening(report):
    t0 = time.perf_counter()
    cases = [
        (straighten_pair(-2, 4, 2, 2), {(4, -2): P("q"), (2, 0): P("q^2 - 1")}),
        (straighten_pair(-10, 1, 2, 3), {(1, -10): P("-q^-1"), (-4, -5): P("q^-2 - 1")}),
        (straighten_pair(-2, 1, 2, 1), {(1, -2): P("-q^-1"), (0, -1): P("q^-2 - 1")}),
    ]
    ok = all(got == want for got, want in cases)
    ms = 1000 * (time.perf_counter() - t0)
    report(1, ok, f"three golden pair expansions exact ({ms:.1f} ms)")
    assert ok


def test_criterion_2_golden_encoding(report):
    lam, s, k = ((), (1, 1), (4,)), (2, 0, -2), (6, 3, 2, 1, -2, -4, -5, -7)
    enc = encode(lam, s, 2) == k
    dec = decode(k + (-8, -9), 2, 3) == (lam, s)
    beads = abacus_beads(render_abacus(k, 2, 3))
    bead_ok = beads == {x for x in range(-17, 7) if x in k or x < k[-1]}
    ok = enc and dec and bead_ok
    report(2, ok, f"encode={enc} decode={dec} abacus bead set={bead_ok}")
    assert ok


def test_criterion_3_headline_value(report):
    t0 = time.perf_counter()
    out = StringIO()
    code = main(["decomp", "--n", "2", "--level", "2", "--charge", "3,-3", "--size", "6", "--sign", "minus",
                 "--no-cache"], out=out)
    entries = {(json.dumps(a), json.dumps(b)): LaurentPoly.from_json(c)
               for a, b, c in json.loads(out.getvalue())["entries"]}
    out1 = StringIO()
    code1 = main(["decomp", "--n", "2", "--level", "1", "--charge", "-3", "--size", "6", "--sign", "minus",
                  "--no-cache"], out=out1)
    entries1 = {(json.dumps(a), json.dumps(b)): LaurentPoly.from_json(c)
                for a, b, c in json.loads(out1.getvalue())["entries"]}
    want = P("-q^-1")
    got = [entries.get((json.dumps([[], [6]]), json.dumps([[], [5, 1]]))),
           entries.get((json.dumps([[6], []]), json.dumps([[5, 1], []]))),
           entries1.get((json.dumps([[6]]), json.dumps([[5, 1]])))]
    secs = time.perf_counter() - t0
    ok = code == code1 == 0 and all(g == want for g in got) and secs < 60
    report(3, ok, f"entries {[str(g) for g in got]} in {secs:.1f} s")
    assert ok


def test_criterion_4_involutivity(report):
    t0 = time.perf_counter()
    vectors = failures = 0
    for block in SUITE:
        A = bar_matrix(block)
        for lam in A.order:
            vectors += 1
            if A.apply(A.rows[lam]) != {lam: ONE}:
                failures += 1
    secs = time.perf_counter() - t0
    ok = failures == 0 and secs < 600
    report(4, ok, f"{len(SUITE)} blocks, {vectors} basis vectors, {failures} failures, {secs:.1f} s")
    assert ok


def _support_survey(compare):
    bad = {"bar": 0, "plus": 0, "minus": 0}
    total = {"bar": 0, "plus": 0, "minus": 0}
    example = None
    for block in SUITE:
        mats = {"bar": bar_matrix(block).rows,
                "plus": canonical_basis(block, "plus").entries,
                "minus": canonical_basis(block, "minus").entries}
        for name, rows in mats.items():
            for lam, row in rows.items():
                for mu in row:
                    total[name] += 1
                    if compare(lam, mu, block.charge, block.n) not in GE:
                        bad[name] += 1
                        if example is None:
                            example = (block.key, name, lam, mu, str(row[mu]))
    return bad, total, example


def test_criterion_5_unitriangularity(report):
    """Support of the bar matrix and both decomposition matrices in the shifted-part dominance order."""
    diag = lattice = True
    for block in SUITE:
        A = bar_matrix(block)
        Dp, Dm = canonical_basis(block, "plus"), canonical_basis(block, "minus")
        for lam in A.order:
            diag &= A.entry(lam, lam) == ONE and Dp.entry(lam, lam) == ONE and Dm.entry(lam, lam) == ONE
            lattice &= all(c.in_positive_part() for mu, c in Dp.entries[lam].items() if mu != lam)
            lattice &= all(c.in_negative_part() for mu, c in Dm.entries[lam].items() if mu != lam)
    bad, total, example = _support_survey(dominance_compare)
    support = not any(bad.values())
    ok = diag and lattice and support
    detail = (f"diagonal={diag} lattice={lattice}; support outside the shifted-part order: "
              + ", ".join(f"{k} {bad[k]}/{total[k]}" for k in bad))
    if example:
        detail += f"; first: block {example[0]} {example[1]} entry ({example[2]}, {example[3]}) = {example[4]}"
    report(5, ok, detail)
    assert diag and lattice
    assert support, detail


def test_criterion_5_counterexample_is_genuine():
    """The smallest support violation, recomputed with the naive rewriter."""
    block = BlockSpec(2, 2, (3, 2), 2)
    lam, mu = ((1,), (1,)), ((1, 1), ())
    r = choose_truncation(block)
    w = encode(lam, block.charge, 2, r)
    naive = naive_normal_order(tuple(reversed(w)), 2, 2)
    coords = [((k - 1) % 2, ((k - 1) // 2) % 2) for k in w]
    kc, kd = kappa(c for c, _ in coords), kappa(d for _, d in coords)
    pre = LaurentPoly({kd - kc: -1 if kd % 2 else 1})
    target = encode(mu, block.charge, 2, r)
    assert naive[target] * pre == P("q - q^-1")
    assert dominance_compare(lam, mu, block.charge, 2) is Ordering.LESS
    assert wedge_compare(lam, mu, block.charge, 2) is Ordering.GREATER


def test_criterion_5_support_in_the_solving_order(report):
    bad, total, _ = _support_survey(wedge_compare)
    ok = not any(bad.values())
    report("5b", ok, "support inside the wedge partial-sum order: "
           + ", ".join(f"{k} {bad[k]}/{total[k]} outside" for k in bad))
    assert ok


def test_criterion_6_truncation_stability(report):
    t0 = time.perf_counter()
    changed = []
    for block in SUITE:
        r = choose_truncation(block)
        for sign in ("plus", "minus"):
            if canonical_basis(block, sign).entries != canonical_basis(block, sign, r=2 * r).entries:
                changed.append((block.key, sign))
    ok = not changed
    report(6, ok, f"{2 * len(SUITE)} matrices recomputed at 2r, {len(changed)} changed, "
                  f"{time.perf_counter() - t0:.1f} s")
    assert ok, changed


@pytest.mark.parametrize("k,theorem,seed", [(7, "A", 20240), (8, "B", 20241)])
def test_criteria_7_and_8_campaigns(report, k, theorem, seed):
    t0 = time.perf_counter()
    reps = campaign(theorem, 50, seed=seed, ns=(2, 3), levels=(2, 3), max_size=5)
    summary = summarize(reps)
    ok = summary["cases"] >= 50 and summary["failures"] == 0 and summary["comparisons"] > 0
    report(k, ok, f"theorem {theorem}: {summary['cases']} cases, {summary['comparisons']} comparisons, "
                  f"{summary['failures']} failures, {time.perf_counter() - t0:.1f} s")
    assert ok


def test_criterion_9_quotient_route(report):
    rng = random.Random(909)
    cases = compared = mismatches = 0
    while cases < 24:
        n, level = rng.choice((2, 3)), rng.choice((2, 3))
        N = rng.randint(1, 4 if level == 2 else 3)
        j = rng.randint(1, level)
        s = [rng.randint(-N - 3, N + 3) for _ in range(level)]
        s[j - 1] = min(x for i, x in enumerate(s, 1) if i != j) - N - rng.randint(0, 2)
        qs = QuotientSpace(n, level, tuple(s), j, N)
        sign = rng.choice(("plus", "minus"))
        Dq = quotient_canonical_basis(qs, sign)
        for size in range(N + 1):
            full = canonical_basis(qs.block(size), sign)
            for lam in qs.labels(size):
                for mu in qs.labels(size):
                    compared += 1
                    mismatches += Dq.entry(lam, mu) != full.entry(lam, mu)
        cases += 1
    ok = mismatches == 0
    report(9, ok, f"{cases} quotient cases, {compared} entries compared, {mismatches} mismatches")
    assert ok


def _naive_bar_rows(block):
    r = choose_truncation(block)
    labels = multipartitions(block.size, block.level)
    by_wedge = {encode(lam, block.charge, block.n, r): lam for lam in labels}
    n, level = block.n, block.level
    rows = {}
    for w, lam in by_wedge.items():
        cs = [(k - 1) % n for k in w]
        ds = [((k - 1) // n) % level for k in w]
        kc, kd = kappa(cs), kappa(ds)
        pre = LaurentPoly({kd - kc: -1 if kd % 2 else 1})
        rows[lam] = {by_wedge[v]: c * pre for v, c in naive_normal_order(tuple(reversed(w)), n, level).items()}
    return labels, rows


def _small_blocks():
    for n in (2, 3):
        for s in itertools.product(range(-4, 5), repeat=1):
            for N in range(4):
                yield BlockSpec(n, 1, s, N)
        for s in itertools.product(range(-3, 4), repeat=2):
            for N in range(2):
                yield BlockSpec(n, 2, s, N)
        for s in itertools.product(range(-1, 2), repeat=3):
            for N in range(2):
                yield BlockSpec(n, 3, s, N)


def test_criterion_10_dense_oracle(report):
    t0 = time.perf_counter()
    blocks = compared = mismatches = 0
    for block in _small_blocks():
        labels, rows = _naive_bar_rows(block)
        assert len(labels) <= 4
        width = 2 + max(abs(e) for row in rows.values() for c in row.values() for e, _ in c.items())
        for sign in ("plus", "minus"):
            want = dense_canonical(labels, rows, sign, width)
            got = canonical_basis(block, sign).entries
            compared += 1
            mismatches += want != got
        blocks += 1
    ok = mismatches == 0
    report(10, ok, f"{blocks} blocks with at most 4 vectors, {compared} matrices, {mismatches} mismatches, "
                   f"{time.perf_counter() - t0:.1f} s")
    assert ok
