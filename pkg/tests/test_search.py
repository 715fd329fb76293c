import pytest

from sl2tilings import (
    SearchConfig,
    UnsupportedOperationError,
    ValidationError,
    block_is_fully_wild,
    block_is_sl2,
    brute_force_oracle,
    canonical_block,
    propagate_cell,
    search_fully_wild,
    z36_tiling,
)

Z36_BLOCK = (
    (3, 2, 33, 34),
    (4, 3, 32, 33),
    (9, 16, 3, 2),
    (14, 9, 4, 3),
)


class TestPropagate:
    def test_gcd_fan_out(self):
        assert list(propagate_cell(3, 2, 4, 36).values()) == [3, 15, 27]

    def test_unique(self):
        assert list(propagate_cell(1, 0, 0, 5).values()) == [1]

    def test_two_solutions(self):
        assert list(propagate_cell(2, 1, 1, 4).values()) == [1, 3]

    def test_empty(self):
        assert propagate_cell(2, 1, 2, 4).is_empty

    def test_agrees_with_brute_force(self):
        for n in (4, 6, 9):
            for nw in range(n):
                for ne in range(n):
                    for sw in range(n):
                        want = [x for x in range(n) if (nw * x - 1 - ne * sw) % n == 0]
                        assert list(propagate_cell(nw, ne, sw, n).values()) == want


class TestValidators:
    def test_z36_block(self):
        assert block_is_sl2(Z36_BLOCK, 36)
        assert block_is_fully_wild(Z36_BLOCK, 36)

    def test_z36_matches_catalog(self):
        rows = tuple(tuple(r) for r in z36_tiling().block.to_int_rows())
        assert rows == Z36_BLOCK

    def test_broken_block(self):
        rows = [list(r) for r in Z36_BLOCK]
        rows[0][0] = 4
        bad = tuple(tuple(r) for r in rows)
        assert not block_is_sl2(bad, 36)

    def test_canonical_translation_invariance(self):
        shifted = tuple(
            tuple(Z36_BLOCK[(i + 2) % 4][(j + 3) % 4] for j in range(4))
            for i in range(4)
        )
        assert canonical_block(shifted) == canonical_block(Z36_BLOCK)


class TestConfig:
    def test_validation(self):
        with pytest.raises(ValidationError):
            SearchConfig(1)
        with pytest.raises(ValidationError):
            SearchConfig(4, rows=1)
        with pytest.raises(ValidationError):
            SearchConfig(4, node_budget=0)
        with pytest.raises(ValidationError):
            SearchConfig(4, worker_count=0)


class TestSearch:
    def test_2x2_never_fully_wild(self):
        for n in range(2, 7):
            result = search_fully_wild(SearchConfig(n, 2, 2))
            assert result.solutions == ()
            assert result.stats.solutions == 0

    def test_oracle_equivalence_2x2(self):
        for n in range(2, 7):
            dfs = search_fully_wild(SearchConfig(n, 2, 2))
            pruned = search_fully_wild(SearchConfig(n, 2, 2, prune_nonunits=True))
            oracle = brute_force_oracle(n, 2, 2)
            assert dfs.solutions == oracle.solutions
            assert pruned.solutions == oracle.solutions

    def test_oracle_equivalence_small_4x4(self):
        dfs = search_fully_wild(SearchConfig(2, 4, 4))
        oracle = brute_force_oracle(2, 4, 4)
        assert dfs.solutions == oracle.solutions == ()

    def test_prime_modulus_empty(self):
        for n in (2, 3, 5):
            assert search_fully_wild(SearchConfig(n, 2, 2)).solutions == ()
        assert search_fully_wild(SearchConfig(3, 4, 4)).solutions == ()

    def test_budget_exhaustion(self):
        full = search_fully_wild(SearchConfig(6, 2, 2))
        capped = search_fully_wild(SearchConfig(6, 2, 2, node_budget=5))
        assert capped.stats.budget_exhausted
        assert capped.stats.nodes <= 5
        assert set(capped.solutions) <= set(full.solutions)
        assert not full.stats.budget_exhausted

    def test_worker_count_invariance(self):
        solo = search_fully_wild(SearchConfig(5, 2, 2))
        multi = search_fully_wild(SearchConfig(5, 2, 2, worker_count=3))
        assert solo.solutions == multi.solutions
        assert solo.stats.nodes == multi.stats.nodes
        assert solo.stats.solutions == multi.stats.solutions

    def test_node_counting_monotone(self):
        plain = search_fully_wild(SearchConfig(6, 2, 2))
        pruned = search_fully_wild(SearchConfig(6, 2, 2, prune_nonunits=True))
        assert 0 < pruned.stats.nodes <= plain.stats.nodes


class TestOracle:
    def test_state_guard(self):
        with pytest.raises(UnsupportedOperationError):
            brute_force_oracle(7, 4, 4)

    def test_counts_all_states(self):
        result = brute_force_oracle(3, 2, 2)
        assert result.stats.nodes == 3**4
        result = brute_force_oracle(2, 4, 4)
        assert result.stats.nodes == 2**16
