import random

import pytest

from hypharm.kernel import miller_rabin
from hypharm.search import (
    SearchConfig,
    confirm_exact,
    detect_duplicates,
    interval_fingerprint,
    prefix_residues,
    search,
    select_moduli,
)
from hypharm.sums import Interval, IntervalPair, g_exact, g_mod

import oracles


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(max_n=1)
    with pytest.raises(ValueError):
        SearchConfig(max_n=10, exponent=0)
    with pytest.raises(ValueError):
        SearchConfig(max_n=10, modulus_count=0)


def test_moduli_are_seeded_distinct_primes_above_bound():
    config = SearchConfig(max_n=5000, modulus_count=4, seed=7)
    moduli = select_moduli(config)
    assert moduli == select_moduli(config)  # deterministic
    assert len(set(moduli)) == 4
    assert all(m > 5000 and miller_rabin(m) and m.bit_length() == 62 for m in moduli)
    assert moduli != select_moduli(SearchConfig(max_n=5000, modulus_count=4, seed=8))


def test_prefix_residues_examples():
    prefix = prefix_residues(10, 101, 2)
    assert prefix[0] == 0
    assert prefix[2] == 77  # 1 + inverse(4) mod 101
    assert (prefix[2] - prefix[0]) % 101 == g_mod(Interval(1, 1), 101)
    with pytest.raises(ValueError):
        prefix_residues(10, 7, 2)  # modulus below the bound


def test_prefix_differences_are_window_sums_mod_p():
    for exponent in (1, 2, 3):
        for p in (211, 1009):
            prefix = prefix_residues(200, p, exponent)
            rng = random.Random(exponent)
            for _ in range(50):
                a = rng.randint(1, 200)
                end = rng.randint(a, 200)
                expected = g_mod(Interval(a, end - a), p, exponent)
                assert (prefix[end] - prefix[a - 1]) % p == expected


def test_fingerprint_homomorphism_spot_check():
    config = SearchConfig(max_n=500, modulus_count=3, seed=0)
    moduli = select_moduli(config)
    prefixes = [prefix_residues(500, p, 2) for p in moduli]
    rng = random.Random(42)
    for _ in range(1000):
        a = rng.randint(1, 500)
        end = rng.randint(a, 500)
        interval = Interval(a, end - a)
        value = g_exact(interval)
        fp = interval_fingerprint(interval, moduli, prefixes)
        assert fp == tuple(
            value.numerator * pow(value.denominator, -1, p) % p for p in moduli
        )


def test_search_enumerates_the_full_triangle():
    report = search(SearchConfig(max_n=10, seed=0))
    assert report.interval_count == 55
    assert report.exact_collision_pairs == []


def test_search_matches_exact_bruteforce_small():
    for exponent in (1, 2):
        report = search(SearchConfig(max_n=100, exponent=exponent, seed=0))
        brute = oracles.exact_collision_groups(100, exponent)
        assert brute == []  # no equal window sums
        assert report.exact_collision_pairs == []
        assert report.screen_collision_pairs == []


def test_search_deterministic_across_worker_counts():
    reference = search(SearchConfig(max_n=150, seed=0), threads=1)
    for threads in (2, 5):
        other = search(SearchConfig(max_n=150, seed=0), threads=threads)
        assert other.interval_count == reference.interval_count
        assert other.moduli == reference.moduli
        assert other.screen_collision_pairs == reference.screen_collision_pairs
        assert other.exact_collision_pairs == reference.exact_collision_pairs


def test_confirm_exact_examples():
    assert confirm_exact(IntervalPair(Interval(1, 0), Interval(1, 0)))
    assert not confirm_exact(IntervalPair(Interval(1, 0), Interval(2, 0)))
    assert confirm_exact(IntervalPair(Interval(3, 2), Interval(3, 2)), exponent=1)


def test_manufactured_duplicates_are_detected():
    config = SearchConfig(max_n=50, seed=0)
    pairs = detect_duplicates([Interval(7, 4), Interval(2, 1), Interval(7, 4)], config)
    assert pairs == [IntervalPair(Interval(7, 4), Interval(7, 4))]
    assert detect_duplicates([Interval(7, 4), Interval(2, 1)], config) == []


def test_search_supports_exploratory_exponents():
    report = search(SearchConfig(max_n=30, exponent=3, seed=0))
    assert report.interval_count == 465 and report.exact_collision_pairs == []


def test_single_modulus_screen_still_confirms_exactly():
    # with one small-ish prime the screen may group unequal sums, but the
    # exact confirmation step must reject all of them
    report = search(SearchConfig(max_n=60, modulus_count=1, seed=3))
    assert report.exact_collision_pairs == []


def test_screen_collisions_from_a_tiny_modulus_are_all_rejected_exactly():
    # force genuine screen collisions: 1830 windows cannot have distinct
    # single residues mod 61, so grouping must kick in, and every group
    # must then fail exact confirmation
    n, p = 60, 61
    prefix = prefix_residues(n, p, 2)
    by_print = {}
    for a in range(1, n + 1):
        for end in range(a, n + 1):
            interval = Interval(a, end - a)
            fp = interval_fingerprint(interval, (p,), [prefix])
            by_print.setdefault(fp, []).append(interval)
    groups = [members for members in by_print.values() if len(members) > 1]
    assert groups, "pigeonhole guarantees screen collisions here"
    for members in groups:
        values = {g_exact(interval) for interval in members}
        assert len(values) == len(members)  # no exact equality hides inside
