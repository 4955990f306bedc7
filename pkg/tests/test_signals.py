import itertools

import numpy as np
import pytest

from dropctrl import Signal, SignalSet, dominates, is_minimal_k, minimal_filter


def all_signals(T):
    return [Signal(bits) for bits in itertools.product((0, 1), repeat=T)]


def test_signal_construction_and_str():
    s = Signal("0110")
    assert s.bits == (0, 1, 1, 0)
    assert str(s) == "0110"
    assert len(s) == 4
    assert s.support() == (1, 2)
    assert s.count_ones() == 2
    assert Signal([1, 0]) == Signal("10")


def test_signal_rejects_bad_input():
    with pytest.raises(ValueError):
        Signal("")
    with pytest.raises(ValueError):
        Signal("012")
    with pytest.raises(ValueError):
        Signal([])
    with pytest.raises(ValueError):
        Signal([2, 0])


def test_signal_immutable_and_hashable():
    s = Signal("01")
    with pytest.raises(AttributeError):
        s.bits = (1, 1)
    assert len({Signal("01"), Signal("01"), Signal("10")}) == 2


def test_signalset_dedups_and_sorts():
    ss = SignalSet([Signal("10"), Signal("01"), Signal("10")])
    assert ss.to_strings() == ("01", "10")
    assert Signal("01") in ss
    assert "10" in ss
    assert ss.length == 2


def test_signalset_rejects_mixed_lengths():
    with pytest.raises(ValueError):
        SignalSet([Signal("10"), Signal("100")])


def test_dominates_examples():
    assert dominates(Signal("0101"), Signal("0111"))
    s = Signal("0110")
    assert dominates(s, s)
    assert not dominates(Signal("0110"), Signal("0101"))
    with pytest.raises(ValueError):
        dominates(Signal("01"), Signal("011"))


def test_partial_order_laws_exhaustive_pairs():
    # reflexivity and antisymmetry over every pair at T = 10 via bit masks
    T = 10
    codes = np.arange(2**T, dtype=np.uint64)
    assert np.all((codes & ~codes) == 0)  # a <= a for all a
    A = codes[:, None]
    B = codes[None, :]
    both = ((A & ~B) == 0) & ((B & ~A) == 0)
    assert np.array_equal(np.nonzero(both)[0], np.nonzero(both)[1])


def test_partial_order_transitive():
    # exhaustive triples at T = 5, sampled triples at T = 10
    for T, triples in ((5, None), (10, 20000)):
        codes = list(range(2**T))
        rng = np.random.default_rng(0)
        if triples is None:
            iterator = itertools.product(codes, repeat=3)
        else:
            iterator = (tuple(rng.integers(0, 2**T, size=3)) for _ in range(triples))
        for a, b, c in iterator:
            if (a & ~b) == 0 and (b & ~c) == 0:
                assert (a & ~c) == 0


def test_minimal_filter_worked_example():
    admissible = SignalSet(
        Signal(s) for s in ["1111", "1010", "0101", "0110", "0111", "1011"]
    )
    assert minimal_filter(admissible).to_strings() == ("0101", "0110", "1010")


def test_minimal_filter_singleton():
    ss = SignalSet([Signal("111")])
    assert minimal_filter(ss) == ss


def test_minimal_filter_k1_T5_brute_force():
    # oracle: all 13 length-5 words without "00", pairwise dominance filter
    admissible = [s for s in all_signals(5) if "00" not in str(s)]
    assert len(admissible) == 13
    expected = {
        str(s)
        for s in admissible
        if not any(t != s and dominates(t, s) for t in admissible)
    }
    assert expected == {"01010", "10101", "01101", "10110"}
    got = minimal_filter(SignalSet(admissible))
    assert set(got.to_strings()) == expected


def test_minimal_filter_matches_pairwise_definition_randomized():
    rng = np.random.default_rng(42)
    for _ in range(20):
        T = int(rng.integers(2, 9))
        pool = all_signals(T)
        take = rng.random(len(pool)) < 0.4
        subset = [s for s, keep in zip(pool, take) if keep]
        if not subset:
            continue
        ss = SignalSet(subset)
        expected = {
            str(s)
            for s in subset
            if not any(t != s and dominates(t, s) for t in subset)
        }
        assert set(minimal_filter(ss).to_strings()) == expected


def test_is_minimal_k_examples():
    assert is_minimal_k(Signal("0110"), 1)
    assert not is_minimal_k(Signal("1011"), 1)  # trailing 1 has p = q = 0
    assert not is_minimal_k(Signal("1111"), 1)
    assert not is_minimal_k(Signal("000"), 2)  # inadmissible run
    assert is_minimal_k(Signal("0010"), 2)
    assert is_minimal_k(Signal("1001"), 2)
    assert not is_minimal_k(Signal("0101"), 2)
