"""Acceptance gate: ten end-to-end checks, each with a wall-clock limit.

Every check prints one ``PASS``/``FAIL`` line.  Run ``pytest -v tests/test_acceptance.py``
or ``python3 tests/test_acceptance.py`` for just the summary lines.
"""

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))
import oracles  # noqa: E402
from shirshov import bounds  # noqa: E402
from shirshov.chains import Poset, chain_cover  # noqa: E402
from shirshov.divisibility import LemmaStatus, check_lemma_2_10, max_ordinary_divisibility, max_tail_divisibility  # noqa: E402
from shirshov.enumeration import latyshev_check, longest_avoider, verify_finiteness, xi  # noqa: E402
from shirshov.height import essential_height, height_decompose, run_algorithm_5_1  # noqa: E402
from shirshov.periodicity import check_lemma_2_6, find_power  # noqa: E402
from shirshov.process import max_process_length, process_bound, validate_process  # noqa: E402
from shirshov.words import Word  # noqa: E402

EIGHT = ("phi-log3", "phi-log2", "psi-log3", "psi-log2", "upsilon", "lopatin", "lower-gk", "kuzmin")

# measured maxima; every entry equals the bound p^(k-1) - 1
PROCESS_GOLDEN = {(2, 2): 1, (2, 3): 3, (2, 4): 7, (3, 2): 2, (3, 3): 8, (3, 4): 26}

AVOIDER_SETS = [
    (2, None, 2, "ordinary"), (1, 2, 3, "ordinary"), (2, 2, 3, "ordinary"), (2, 3, 3, "ordinary"),
    (2, 3, 3, "tail"), (3, 3, 2, "ordinary"), (2, 2, 4, "ordinary"), (2, 3, 4, "ordinary"), (2, 3, 4, "tail"),
]


def corpus():
    for size, max_len in ((2, 12), (3, 9)):
        for s in oracles.all_words(size, max_len):
            yield size, s


def criterion_1():
    problems = []
    exact = {
        "psi_log2(2,2,2)": (bounds.psi_log2(2, 2, 2).exact, 549755813888),
        "upsilon(3,2)": (bounds.upsilon(3, 2).exact, 8748),
        "kuzmin(4)": (bounds.kuzmin(4).exact, 9),
    }
    problems += [f"{k} = {got}" for k, (got, want) in exact.items() if got != want]
    nonlinear = {}
    for which in EIGHT:
        for n in range(1, 9):
            for l in range(1, 9):
                d = n if which in bounds.TAKES_D else None
                a, b = bounds.evaluate(which, n, l, d), bounds.evaluate(which, n, 2 * l, d)
                if (b.lo, b.hi, b.exact) != (2 * a.lo, 2 * a.hi, None if a.exact is None else 2 * a.exact):
                    nonlinear.setdefault(which, []).append((n, l))
    for which, cells in nonlinear.items():
        n, l = cells[0]
        problems.append(f"{which} not doubled at {len(cells)}/64 grid points, e.g. n={n} l={l}")
    return not problems, "; ".join(problems) or "exact values and linearity on 64 points"


def criterion_2():
    count = 0
    for size, s in corpus():
        w = Word.of(s, size)
        n, div = max_ordinary_divisibility(w)
        m, tdiv = max_tail_divisibility(w)
        if n != oracles.ordinary_divisibility(s) or m != oracles.tail_divisibility(s):
            return False, f"mismatch on {w.encode()}"
        if not (div.validate(w) and tdiv.validate(w)):
            return False, f"invalid witness on {w.encode()}"
        count += 1
    return True, f"{count} words"


def criterion_3():
    count = 0
    for size, s in corpus():
        w = Word.of(s, size)
        for d in (2, 3):
            got = find_power(w, d)
            ref = oracles.find_power(s, d)
            if (None if got is None else (got.period.letters, got.start, got.exponent)) != ref:
                return False, f"find_power mismatch on {w.encode()} d={d}"
            if len(w) >= d:
                r = check_lemma_2_6(w, d)
                if not r.comparable and r.power is None:
                    return False, f"incomparable tails without a power in {w.encode()} d={d}"
        count += 1
    return True, f"{count} words, d in (2, 3)"


def criterion_4():
    rng = random.Random(20240501)
    for trial in range(500):
        size = rng.randint(0, 12)
        perm = list(range(size))
        rng.shuffle(perm)
        density = rng.random()
        p = Poset(size, [(perm[a], perm[b]) for a in range(size) for b in range(a + 1, size) if rng.random() < density])
        cover = chain_cover(p)
        if not cover.validate(p) or cover.count != oracles.max_antichain_size(p.size, p.less):
            return False, f"poset {trial} disagrees"
    return True, "500 posets"


def criterion_5():
    seen = {}
    for p in (2, 3):
        for k in (2, 3, 4):
            if p ** (k - 1) > 81:
                continue
            L, witness = max_process_length(p, k)
            if L > process_bound(p, k) or not validate_process(witness) or len(witness) != L:
                return False, f"p={p} k={k}: L={L}"
            seen[(p, k)] = L
    if seen != PROCESS_GOLDEN:
        return False, f"golden values changed: {seen}"
    if any(seen[(p, 2)] != p - 1 for p in (2, 3)):
        return False, "L(1) differs from p-1"
    return True, "L = p^(k-1) - 1 in every case"


def criterion_6():
    checked = 0
    for s in oracles.all_words(2, 14):
        if check_lemma_2_10(Word.of(s, 2), 1, 2).status is LemmaStatus.COUNTEREXAMPLE:
            return False, f"binary counterexample {s}"
        checked += 1
    rng = random.Random(2010)
    for _ in range(10 ** 4):
        w = Word.of([rng.randrange(3) for _ in range(30)], 3)
        for n, d in ((1, 2), (2, 2)):
            r = check_lemma_2_10(w, n, d)
            if r.status is LemmaStatus.COUNTEREXAMPLE or (r.verdict is not None and not r.verdict.validate(w, n, d)):
                return False, f"ternary counterexample {w.encode()} n={n}"
        checked += 1
    return True, f"{checked} words, no counterexample"


def criterion_7():
    catalan = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862]
    got = [xi(k, 3) for k in range(10)]
    if got != catalan:
        return False, f"xi(k,3) = {got}"
    bad = [(k, n) for k in range(9) for n in range(2, 5) if not latyshev_check(k, n)]
    return not bad, f"latyshev fails at {bad}" if bad else "Catalan k=0..9, latyshev k<=8 n<=4"


def criterion_8():
    r = longest_avoider(2, None, 2)
    if (r.max_length, r.witness.encode(), r.exhausted) != (3, "aba", True):
        return False, f"square-free binary gave {r.max_length} {r.witness.encode()}"
    if longest_avoider(1, 2, 3).max_length != 2:
        return False, "unary cube-free length differs from 2"
    for l, n, d, sense in AVOIDER_SETS:
        rep = verify_finiteness(l, n, d, sense)
        if not rep.holds:
            return False, f"bound violated at l={l} n={n} d={d} {sense}"
    return True, f"{len(AVOIDER_SETS)} exhausted searches below both bounds"


def criterion_9():
    rng = random.Random(51)
    full = 0
    for _ in range(10 ** 3):
        w = Word.of([rng.randrange(2) for _ in range(200)], 2)
        tr = run_algorithm_5_1(w, 2)
        if tr.reinsert() != w:
            return False, f"reinsertion failed on {w.encode()}"
        if not (tr.piece_bound_holds() and tr.weighted_bound_holds()):
            return False, f"accounting failed on {w.encode()}"
        full += len(tr.steps) >= 4 * tr.t + 1 and tr.t > 0
    return True, f"1000 traces reconstructed, {full} with a full group of steps"


def criterion_10():
    count = 0
    for s in oracles.all_words(2, 12):
        w = Word.of(s, 2)
        for n in (2, 3):
            d = height_decompose(w, n)
            e = essential_height(w, n)
            if not d.validate() or (d.height, e) != (oracles.height_and_essential(s, n)[0], oracles.essential_height(s, n)):
                return False, f"mismatch on {s} n={n}"
            if e > d.height:
                return False, f"essential above height on {s} n={n}"
        count += 1
    return True, f"{count} words, n in (2, 3)"


CRITERIA = [
    (1, "formula reproduction and linearity in l", criterion_1, 1),
    (2, "divisibility against oracles", criterion_2, 120),
    (3, "periodicity against oracles", criterion_3, 120),
    (4, "Dilworth equality", criterion_4, 30),
    (5, "process bound", criterion_5, 60),
    (6, "4nd-divisible words are cancellable", criterion_6, 300),
    (7, "Catalan identity", criterion_7, 60),
    (8, "finiteness at desk scale", criterion_8, 120),
    (9, "fragment removal accounting", criterion_9, 300),
    (10, "height DP against exhaustive factorisation", criterion_10, 120),
]


def judge(number, title, fn, limit):
    started = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - started
    if elapsed >= limit:
        ok, detail = False, f"{detail}; took {elapsed:.1f}s, limit {limit}s"
    line = f"{'PASS' if ok else 'FAIL'} criterion {number:>2} ({title}): {detail} [{elapsed:.2f}s < {limit}s]"
    return ok, line


@pytest.mark.parametrize("number, title, fn, limit", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, fn, limit, capsys):
    ok, line = judge(number, title, fn, limit)
    with capsys.disabled():
        print(f"\n{line}")
    assert ok, line


if __name__ == "__main__":
    results = [judge(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
