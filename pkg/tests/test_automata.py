import itertools

import pytest

from dropctrl import (
    Automaton,
    CapExceeded,
    Edge,
    Signal,
    SignalSet,
    build_k_constraint_automaton,
    build_k_minimal_automaton,
    enumerate_admissible,
    is_admissible,
    is_minimal_k,
    minimal_filter,
    minimal_signals_bfs,
)


def brute_force_language(k, T):
    """All length-T words with no run of k+1 zeros."""
    out = set()
    for bits in itertools.product((0, 1), repeat=T):
        word = "".join(map(str, bits))
        if "0" * (k + 1) not in word:
            out.add(word)
    return out


def test_automaton_validation():
    with pytest.raises(ValueError):
        Automaton([], [], [])
    with pytest.raises(ValueError):
        Automaton([1], [(1, 2, "0")], [1])  # undeclared node 2
    with pytest.raises(ValueError):
        Automaton([1], [(1, 1, "2")], [1])  # bad label
    with pytest.raises(ValueError):
        Automaton([1], [(1, 1, "")], [1])  # empty label
    with pytest.raises(ValueError):
        Automaton([1, 2], [(1, 2, "0")], [])  # no start nodes
    with pytest.raises(ValueError):
        Automaton([1], [(1, 1, "1")], [2])  # start not declared


def test_is_admissible_worked_examples():
    a = build_k_constraint_automaton(1)
    assert is_admissible(a, Signal("0110"))
    assert not is_admissible(a, Signal("1001"))
    loop = Automaton([1], [(1, 1, "1")], [1])
    assert is_admissible(loop, Signal("11111"))
    assert not is_admissible(loop, Signal("10"))


def test_is_admissible_multibit_labels():
    a = Automaton([1, 2], [(1, 2, "10"), (2, 1, "1")], [1])
    assert is_admissible(a, Signal("10"))
    assert is_admissible(a, Signal("101"))
    assert is_admissible(a, Signal("10110"))
    assert not is_admissible(a, Signal("1"))  # mid-label stop is not a walk
    assert not is_admissible(a, Signal("11"))


def test_enumerate_k1_T4_language():
    got = enumerate_admissible(build_k_constraint_automaton(1), 4)
    # defining property: exactly the words without two consecutive zeros
    assert set(got.to_strings()) == brute_force_language(1, 4)
    assert len(got) == 8
    # the six words quoted in the source example are all admissible; its
    # listing omits 1101 and 1110 (see the acceptance notes)
    assert {"1111", "1010", "0101", "0110", "0111", "1011"} <= set(got.to_strings())


def test_enumerate_single_loop():
    a = Automaton([1], [(1, 1, "1")], [1])
    assert enumerate_admissible(a, 3).to_strings() == ("111",)


def test_enumerate_k2_T3():
    got = enumerate_admissible(build_k_constraint_automaton(2), 3)
    expected = brute_force_language(2, 3)
    assert set(got.to_strings()) == expected
    assert len(got) == 7  # every length-3 word except 000


def test_enumerate_k3_T4_size():
    got = enumerate_admissible(build_k_constraint_automaton(3), 4)
    assert len(got) == 15  # only 0000 excluded


def test_enumerate_language_matches_brute_force():
    for k in (1, 2, 3):
        for T in range(1, 9):
            got = set(enumerate_admissible(build_k_constraint_automaton(k), T).to_strings())
            assert got == brute_force_language(k, T), (k, T)


def test_enumerate_dead_automaton_empty():
    a = Automaton([1, 2], [(1, 2, "0")], [1])
    assert len(enumerate_admissible(a, 3)) == 0


def test_enumerate_cap():
    with pytest.raises(CapExceeded):
        enumerate_admissible(build_k_constraint_automaton(2), 12, cap=10)


def test_enumerate_members_are_admissible():
    a = build_k_constraint_automaton(2)
    for s in enumerate_admissible(a, 6):
        assert is_admissible(a, s)


def test_minimal_automaton_k1_structure():
    a = build_k_minimal_automaton(1)
    assert sorted(a.nodes) == [1, 2]
    assert a.start_nodes == {1}
    assert set(a.out_edges(1)) == {(2, "0"), (2, "10")}
    assert set(a.out_edges(2)) == {(1, "1")}


def test_minimal_automaton_k2_last_node_forbids_zero():
    a = build_k_minimal_automaton(2)
    assert sorted(a.nodes) == [1, 2, 3]
    assert a.out_edges(3) == ((1, "1"),)
    assert set(a.out_edges(1)) == {(2, "0"), (3, "100")}
    assert set(a.out_edges(2)) == {(3, "0"), (2, "10")}


def test_minimal_automaton_cycles_contain_a_one():
    # all-zero labels only move down the chain i -> i+1, so no cycle of
    # zero-only labels exists
    for k in range(1, 5):
        a = build_k_minimal_automaton(k)
        for e in a.edges:
            if "1" not in e.label:
                assert e.dst == e.src + 1


def test_bfs_worked_examples():
    assert minimal_signals_bfs(1, 4).to_strings() == ("0101", "0110", "1010")
    assert minimal_signals_bfs(1, 1).to_strings() == ("0",)
    assert set(minimal_signals_bfs(1, 5).to_strings()) == {
        "01010", "10101", "01101", "10110",
    }


def test_bfs_outputs_admissible_for_constraint():
    for k in (1, 2, 3):
        a = build_k_constraint_automaton(k)
        for T in (1, 3, 6, 9):
            for s in minimal_signals_bfs(k, T):
                assert is_admissible(a, s)


def test_bfs_equals_filter_and_surround_rule():
    for k in (1, 2, 3):
        for T in range(1, 11):
            bfs = minimal_signals_bfs(k, T)
            filt = minimal_filter(enumerate_admissible(build_k_constraint_automaton(k), T))
            assert bfs == filt, (k, T)
            by_surround = SignalSet(
                Signal(w) for w in brute_force_language(k, T) if is_minimal_k(Signal(w), k)
            )
            assert by_surround == bfs, (k, T)


def test_compact_automaton_language_is_the_minimal_set():
    # the bfs is exactly path enumeration on the compact automaton, so its
    # fixed-length language must agree with the generic enumerator
    for k in (1, 2, 3):
        a = build_k_minimal_automaton(k)
        for T in (1, 2, 4, 7, 10):
            assert enumerate_admissible(a, T) == minimal_signals_bfs(k, T)


def test_flipping_characterization():
    # an admissible word is non-minimal iff flipping some nonempty subset
    # of its 1s to 0 stays admissible; exhaustive for k=1 at T=12
    k, T = 1, 12
    language = brute_force_language(k, T)
    minimal = set(minimal_signals_bfs(k, T).to_strings())
    for word in language:
        ones = [i for i, ch in enumerate(word) if ch == "1"]
        flippable = False
        for r in range(1, len(ones) + 1):
            for subset in itertools.combinations(ones, r):
                flipped = list(word)
                for i in subset:
                    flipped[i] = "0"
                if "".join(flipped) in language:
                    flippable = True
                    break
            if flippable:
                break
        assert flippable == (word not in minimal), word


def test_bad_parameters():
    with pytest.raises(ValueError):
        build_k_constraint_automaton(0)
    with pytest.raises(ValueError):
        build_k_minimal_automaton(0)
    with pytest.raises(ValueError):
        minimal_signals_bfs(1, 0)
    with pytest.raises(ValueError):
        enumerate_admissible(build_k_constraint_automaton(1), 0)


def test_edge_validation():
    with pytest.raises(ValueError):
        Edge(1, 2, "a")
