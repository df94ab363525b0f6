import random

import pytest

from khoma.exceptions import ChainComplexError, FiltrationError
from khoma.homalg import (
    BasedComplex,
    ChainMap,
    filtered_homology_q,
    gaussian_eliminate,
    homology_q,
    homology_z,
    mapping_cone,
    nonzero_invariant_factors,
    prime_power_torsion,
    rank_q,
    reduce,
)


def two_term(coefficient):
    return BasedComplex({"a": (0, 0), "b": (1, 0)}, {"a": {"b": coefficient}})


def test_smith_normal_form():
    assert nonzero_invariant_factors([[2, 0], [0, 3]], 2) == [1, 6]
    assert nonzero_invariant_factors([], 0) == []
    assert prime_power_torsion([1, 6]) == [2, 3]
    assert prime_power_torsion([12]) == [3, 4]
    assert rank_q([[1, 2], [2, 4]], 2) == 1


def test_torsion_from_multiplication():
    homology = homology_z(two_term(2))
    assert homology.group_at(1, 0).torsion == (2,)
    assert homology.group_at(0, 0).is_zero
    assert homology_z(two_term(6)).group_at(1, 0).torsion == (2, 3)
    assert homology_q(two_term(6)).groups == {}


def test_zero_differential_keeps_everything():
    homology = homology_z(two_term(0))
    assert homology.total_rank == 2


def test_validation():
    with pytest.raises(ChainComplexError):
        BasedComplex({"a": (0, 0), "b": (0, 0)}, {"a": {"b": 1}})
    with pytest.raises(ChainComplexError):
        BasedComplex({"a": (0, 0), "b": (1, 0), "c": (2, 0)}, {"a": {"b": 1}, "b": {"c": 1}})
    with pytest.raises(FiltrationError):
        BasedComplex({"a": (0, 4), "b": (1, 0)}, {"a": {"b": 1}}, allowed_dj=(0, 4))


def test_gaussian_elimination():
    complex_ = BasedComplex(
        {"x": (0, 0), "y": (0, 0), "b": (1, 0)},
        {"x": {"b": 1}, "y": {"b": 1}},
    )
    reduced = gaussian_eliminate(complex_, "x", "b")
    assert list(reduced.generators) == ["y"]
    assert reduced.differential() == {}
    assert homology_z(reduced).groups == homology_z(complex_).groups


def test_elimination_updates_the_remaining_entries():
    # u -> t and s -> v through the pivot s -> t gives u -> v = -a * phi * b
    complex_ = BasedComplex(
        {"u": (0, 0), "s": (0, 0), "t": (1, 0), "v": (1, 0), "w": (2, 0)},
        {"u": {"t": 2, "v": 2}, "s": {"t": 1, "v": 1}, "t": {"w": 1}, "v": {"w": -1}},
    )
    reduced = gaussian_eliminate(complex_, "s", "t")
    assert reduced.row("u") == {}
    assert reduced.row("v") == {"w": -1}


def test_non_unit_pivot():
    with pytest.raises(ChainComplexError):
        gaussian_eliminate(two_term(2), "a", "b")


def test_filtered_pivot_must_keep_j():
    complex_ = BasedComplex({"a": (0, 0), "b": (1, 4)}, {"a": {"b": 1}}, allowed_dj=(0, 4))
    with pytest.raises(FiltrationError):
        gaussian_eliminate(complex_, "a", "b", filtered=True)
    assert filtered_homology_q(complex_).groups == {}


def test_filtered_homology_keeps_levels():
    complex_ = BasedComplex({"p": (0, -1), "q": (0, 1)}, allowed_dj=(0, 4))
    assert set(filtered_homology_q(complex_).groups) == {(0, -1), (0, 1)}


def test_random_reduction_preserves_homology():
    rng = random.Random(11)
    for _ in range(20):
        # two-term complexes with random integer entries
        sources = [f"s{k}" for k in range(3)]
        middles = [f"m{k}" for k in range(4)]
        degrees = {g: (0, 0) for g in sources}
        degrees.update({g: (1, 0) for g in middles})
        rows = {s: {m: rng.choice([-2, -1, 0, 1, 3]) for m in middles} for s in sources}
        complex_ = BasedComplex(degrees, rows)
        assert homology_z(reduce(complex_, "full")).groups == homology_z(complex_).groups


def test_spanning_tree_strategy_needs_a_plan():
    with pytest.raises(ValueError):
        reduce(two_term(1), "spanning_tree")


def test_mapping_cone():
    source = BasedComplex({"s": (0, 0)})
    target = BasedComplex({"t": (0, 0)})
    cone = mapping_cone(ChainMap(source, target, {"s": {"t": 1}}))
    assert cone.degree((1, "t")) == (1, 0)
    assert homology_z(cone).groups == {}


def test_mapping_cone_needs_a_chain_map():
    source = BasedComplex({"s0": (0, 0), "s1": (1, 0)}, {"s0": {"s1": 1}})
    target = BasedComplex({"t0": (0, 0), "t1": (1, 0)}, {"t0": {"t1": 1}})
    with pytest.raises(ChainComplexError):
        mapping_cone(ChainMap(source, target, {"s0": {"t0": 1}}))


# pairs of degrees joined inside one column of a split complex on degrees 0..3
SPLIT_PATTERNS = [(), ((0, 1),), ((2, 3),), ((0, 1), (2, 3)), ((1, 2),)]


def random_complex(rng, size=4, moves=6):
    """A split complex on degrees 0..3 after random unimodular changes of basis"""
    matrices = {i: [[0] * size for _ in range(size)] for i in range(3)}
    for k in range(size):
        for i, _ in rng.choice(SPLIT_PATTERNS):
            matrices[i][k][k] = rng.choice([1, 1, 2, 3])
    for _ in range(moves):
        i = rng.randrange(4)
        a, b = rng.sample(range(size), 2)
        s = rng.choice([1, -1])
        # e_a' = e_a + s e_b: rows of d into degree i, columns of d out of degree i
        if i > 0:
            m = matrices[i - 1]
            m[a] = [x + s * y for x, y in zip(m[a], m[b])]
        if i < 3:
            for row in matrices[i]:
                row[b] -= s * row[a]
    degrees = {(i, k): (i, 0) for i in range(4) for k in range(size)}
    rows = {
        (i, col): {(i + 1, row): m[row][col] for row in range(size) if m[row][col]}
        for i, m in matrices.items()
        for col in range(size)
    }
    return BasedComplex(degrees, rows)


def test_random_eliminations_preserve_homology():
    rng = random.Random(2024)
    eliminations = attempts = 0
    while eliminations < 100:
        attempts += 1
        assert attempts < 2000
        complex_ = random_complex(rng)
        assert {key[0] for key in complex_.generators.values()} == {0, 1, 2, 3}
        units = [(g, h) for g, h, c in complex_.entries() if c in (1, -1)]
        if not units:
            continue
        expected = homology_z(complex_).groups
        reduced = gaussian_eliminate(complex_, *rng.choice(units))
        assert len(reduced) == len(complex_) - 2
        assert reduced.square() == {}
        assert homology_z(reduced).groups == expected
        eliminations += 1
