import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from shirshov.chains import (
    Poset,
    b_set_trace,
    antichain_to_division,
    build_omega_prime,
    build_tail_poset,
    chain_cover,
    check_basic_lemma_psi,
    longest_constant_run,
    max_antichain,
    patience_chain_cover,
    phi_measure,
    psi_measure,
    psi_profile,
    tail_chain_cover,
)
from shirshov.divisibility import max_tail_divisibility, p_nd
from shirshov.errors import UsageError
from shirshov.periodicity import check_lemma_2_6
from shirshov.words import Order, Word, compare_seq

W = Word.parse


def random_poset(rng, size):
    perm = list(range(size))
    rng.shuffle(perm)
    density = rng.random()
    return Poset(size, [(perm[a], perm[b]) for a in range(size) for b in range(a + 1, size) if rng.random() < density])


def dominance(perm):
    return Poset.from_predicate(len(perm), lambda a, b: a < b and perm[a] < perm[b])


def test_poset_closure_and_cycles():
    p = Poset(3, [(0, 1), (1, 2)])
    assert p.less(0, 2) and not p.less(2, 0)
    with pytest.raises(UsageError):
        Poset(2, [(0, 1), (1, 0)])


@pytest.mark.parametrize(
    "poset, width",
    [(Poset(5, [(i, i + 1) for i in range(4)]), 1), (Poset(3), 3), (dominance((3, 1, 2)), 2)],
)
def test_width_examples(poset, width):
    cover = chain_cover(poset)
    assert cover.count == width and cover.validate(poset)
    assert len(max_antichain(poset)) == width
    assert len(max_antichain(poset, "exhaustive")) == width


def test_permutation_cover_chains():
    cover = chain_cover(dominance((3, 1, 2)))
    assert cover.chains == ((0,), (1, 2))


def test_dilworth_equality_on_random_posets():
    rng = random.Random(11)
    for _ in range(200):
        p = random_poset(rng, rng.randint(0, 12))
        cover = chain_cover(p)
        anti = max_antichain(p)
        assert cover.validate(p) and p.is_antichain(anti)
        assert cover.count == len(anti) == oracles.max_antichain_size(p.size, p.less)


def test_exhaustive_antichain_size_limit():
    with pytest.raises(UsageError):
        max_antichain(Poset(25), "exhaustive")


@given(st.permutations(range(9)))
def test_patience_cover_is_minimal(perm):
    cover = patience_chain_cover(perm)
    p = dominance(perm)
    assert cover.validate(p)
    assert cover.count == chain_cover(p).count


def test_tail_poset_examples():
    assert build_tail_poset(W("ba"), 1).poset.pairs() == []
    assert len(max_antichain(build_tail_poset(W("ba"), 1).poset)) == 2
    assert build_tail_poset(W("ab"), 1).poset.pairs() == [(0, 1)]
    assert build_tail_poset(W("aaa"), 1).poset.pairs() == []
    assert build_tail_poset(W("abcab"), 2).positions == (0, 1)


def test_tail_poset_needs_both_conditions():
    w = W("ba")
    s = w.letters
    lex_only = [(i, j) for i in range(2) for j in range(2) if compare_seq(s[i:], s[j:]) is Order.LESS]
    left_only = [(0, 1)]
    got = build_tail_poset(w, 1).poset.pairs()
    assert set(got) < set(lex_only) and set(got) < set(left_only)


def test_patience_cover_agrees_on_comparable_tails():
    rng = random.Random(3)
    for _ in range(200):
        w = Word.of([rng.randrange(3) for _ in range(rng.randint(2, 25))], 3)
        d = rng.choice([2, 3])
        if len(w) < d or not check_lemma_2_6(w, d).comparable:
            continue
        fast = tail_chain_cover(w, d, "patience")
        exact = tail_chain_cover(w, d)
        assert fast.count == exact.count
        assert fast.validate(build_tail_poset(w, d).poset)


def naive_trace(w, d, p, width):
    tp = build_tail_poset(w, d)
    colours = chain_cover(tp.poset).assignment
    rows = []
    for i in range(len(tp.positions)):
        row = []
        for j in range(width):
            starts = [f for f in range(i + 1) if colours[f] == j]
            row.append(w.letters[max(starts):max(starts) + p] if starts else ())
        rows.append(tuple(row))
    return rows


@pytest.mark.parametrize("text, n, d, p", [("ab", 1, 2, 1), ("abab", 1, 2, 2), ("aabb", 1, 2, 1), ("cbacab", 2, 2, 2)])
def test_trace_against_recomputation(text, n, d, p):
    w = W(text)
    trace = b_set_trace(w, n, d, p)
    assert trace.width == max(p_nd(n, d), tail_chain_cover(w, d).count)
    got = [tuple(x.letters for x in row) for row in trace.entries]
    assert got == naive_trace(w, d, p, trace.width)


def test_single_tail_trace():
    trace = b_set_trace(W("abc"), 1, 2, 2)
    assert len(trace.entries) == 1
    assert sum(1 for x in trace.entries[0] if len(x)) == 1


def test_psi_examples():
    assert longest_constant_run([("x",)] * 5) == 5
    assert longest_constant_run([(i,) for i in range(5)]) == 1
    # tails aabb < abb with 0 left of 1: one chain, both 1-beginnings are "a"
    assert psi_measure(b_set_trace(W("aabb"), 1, 2, 1)) == 2
    with pytest.raises(UsageError):
        longest_constant_run([])


@settings(max_examples=60)
@given(st.lists(st.integers(0, 2), min_size=2, max_size=24))
def test_psi_is_nonincreasing_in_p(xs):
    w = Word.of(xs, 3)
    profile = psi_profile(w, 1, 2, range(1, 6))
    values = [profile[p] for p in range(1, 6)]
    assert values == sorted(values, reverse=True)


def test_overflow_means_many_decreasing_tails():
    rng = random.Random(5)
    hits = 0
    for _ in range(300):
        w = Word.of([rng.randrange(4) for _ in range(30)], 4)
        trace = b_set_trace(w, 1, 1, 1)
        if trace.overflow:
            hits += 1
            assert max_tail_divisibility(w)[0] > p_nd(1, 1)
    assert hits


def test_basic_lemma_binary_sweep():
    for s in oracles.all_words(2, 12, min_len=2):
        r = check_basic_lemma_psi(Word.of(s, 2), 1, 2, 1, 3)
        assert r.satisfied


def test_basic_lemma_ternary_samples():
    rng = random.Random(2024)
    for _ in range(100):
        w = Word.of([rng.randrange(3) for _ in range(30)], 3)
        for a, k in ((1, 2), (2, 2), (1, 3)):
            r = check_basic_lemma_psi(w, 1, 2, a, k)
            assert r.satisfied


def test_basic_lemma_trivial_when_psi_is_one():
    r = check_basic_lemma_psi(W("cba"), 1, 1, 1, 1)
    assert r.psi_a == 1 and r.satisfied


def test_omega_prime_two_cycles():
    om = build_omega_prime([W("ab"), W("ba")], 2)
    assert [(i, j, str(v)) for i, j, v in om.elements] == [(1, 1, "ab"), (1, 2, "ba"), (2, 1, "ba"), (2, 2, "ab")]
    assert om.poset.pairs() == [(0, 2)]
    anti = max_antichain(om.poset)
    assert len(anti) == 3 == len(max_antichain(om.poset, "exhaustive"))


def test_omega_prime_single_cycle_is_an_antichain():
    om = build_omega_prime([W("abc")], 3)
    assert om.poset.pairs() == [] and len(max_antichain(om.poset)) == 3


def test_omega_prime_preconditions():
    with pytest.raises(UsageError):
        build_omega_prime([W("abab")], 4)
    with pytest.raises(UsageError):
        build_omega_prime([W("ab"), W("abc")], 2)


def test_antichains_become_divisions():
    n = 2
    cycles = [W("ab"), W("ba"), W("ac")]
    host = W("c" + "abab" * 2 + "cc" + "baba" * 2 + "bb" + "acac" * 2)
    om = build_omega_prime(cycles, 2)
    realised = 0
    for combo in itertools.combinations(range(len(om.elements)), n):
        div, reason = antichain_to_division(host, om, combo, n)
        if not om.poset.is_antichain(combo):
            assert div is None
            continue
        assert div is not None, reason
        assert div.validate(host) and div.n == n
        realised += 1
    assert realised > 0


def test_unrealisable_antichain_reported():
    om = build_omega_prime([W("ab"), W("ac")], 2)
    div, reason = antichain_to_division(W("abab"), om, (0, 1), 2)
    assert div is None and "no occurrence" in reason


def test_phi_single_fragment():
    r = phi_measure(W("ab" * 6), 3)
    assert r.m == 2 and all(v == 1 for v in r.phi.values())


def test_phi_alternating_letters():
    w = W("aaaaaa" + "cdcd" + "bbbbbb" + "cdcd" + "aaaaaa" + "cdcd" + "bbbbbb")
    r = phi_measure(w, 3, m=1)
    assert [str(x) for x in r.representatives] == ["a", "b"]
    assert r.phi == {1: 1}
    assert r.lemma_4_8


def test_phi_no_fragments():
    assert phi_measure(W("abc"), 2) is None
    assert phi_measure(W("aaaa"), 2, m=3) is None


def test_phi_lemmas_on_constructed_words():
    rng = random.Random(9)
    seen = 0
    for _ in range(200):
        parts = []
        for _ in range(rng.randint(1, 5)):
            x = [rng.randrange(3) for _ in range(2)]
            parts += x * 8 + [3] * 5 + [rng.randrange(3)]
        w = Word.of(parts, 4)
        r = phi_measure(w, 4, m=2, d=2)
        if r is None or not r.within_hypotheses:
            continue
        seen += 1
        assert r.lemma_4_8
        assert all(r.lemma_4_10.values()) and all(r.lemma_4_10_pnd.values())
    assert seen
