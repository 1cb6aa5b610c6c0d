
import numpy as np
import pytest

from binstretch.combinatorics import CountTable
from binstretch.core import GameParams, place
from binstretch.feasibility import front_for_items
from binstretch.pruning import (
    compute_v_table,
    enumerate_ranked_packings,
    is_base_alg_winning,
    prune_wins_for_algorithm,
)


@pytest.fixture(scope="module")
def game_2_6_8():
    params = GameParams(2, 6, 8)
    tables = CountTable(params)
    return params, tables, compute_v_table(params, tables, engine="python")


def test_base_criterion_worked_examples(game_2_6_8):
    params, _, _ = game_2_6_8
    assert is_base_alg_winning((5, 5), params)
    assert is_base_alg_winning((6, 5), params)
    assert not is_base_alg_winning((4, 4), params)


def test_v_table_worked_examples(game_2_6_8):
    params, tables, vt = game_2_6_8
    expected = {
        (4, 4): 4,
        (4, 3): 5,
        (4, 2): 6,
        (3, 2): 6,
        (4, 1): 7,
        (5, 5): 7,
        (6, 5): 7,
    }
    for b, v in expected.items():
        assert vt.value(tables, b) == v, b


def test_base_criterion_implies_alg_winning_entry(game_2_6_8):
    params, tables, vt = game_2_6_8
    g = params.g
    for b in enumerate_ranked_packings(params):
        if is_base_alg_winning(b, params):
            assert vt.value(tables, b) == g + 1, b


def test_value_range_and_unreachable_entries(game_2_6_8):
    params, tables, vt = game_2_6_8
    g, mg = params.g, params.m * params.g
    assert vt.values.min() >= 1
    assert vt.values.max() <= g + 1
    for b in enumerate_ranked_packings(params):
        if sum(b) > mg:
            assert vt.value(tables, b) == g + 1


def test_propagation_closure(game_2_6_8):
    """If every item size has a placement into a g+1 entry, the entry is g+1."""
    params, tables, vt = game_2_6_8
    m, g, t, mg = params.m, params.g, params.t, params.m * params.g

    def child_v(b, s, i):
        child = place(b, i, s)
        if child[0] >= t:
            return 0
        return vt.value(tables, child)

    for b in enumerate_ranked_packings(params):
        total = sum(b)
        if total >= mg:
            continue
        s_max = min(g, mg - total)
        covered = all(
            any(child_v(b, s, i) == g + 1 for i in range(m))
            for s in range(1, s_max + 1)
        )
        if covered:
            assert vt.value(tables, b) == g + 1, b


def test_fast_fill_matches_python(warm_kernel):
    for m, g, t in [(2, 6, 8), (3, 5, 7), (2, 3, 4), (3, 8, 11)]:
        params = GameParams(m, g, t)
        tables = CountTable(params)
        py = compute_v_table(params, tables, engine="python").values
        fast = warm_kernel.fill_v_table(params, tables)
        assert np.array_equal(py, fast), (m, g, t)


def test_prune_query(game_2_6_8):
    params, tables, vt = game_2_6_8
    # v = g+1 always prunes
    assert prune_wins_for_algorithm(vt, tables, (6, 5), params.g)
    # (3,2) requires a 6; an instance with y_max 5 prunes
    assert prune_wins_for_algorithm(vt, tables, (3, 2), 5)
    assert not prune_wins_for_algorithm(vt, tables, (3, 2), 6)
    # after {4,4} only a 2 can come: 2 < v((4,4)) = 4
    front = front_for_items(params, [4, 4], tables)
    assert front.y_max == 2
    assert prune_wins_for_algorithm(vt, tables, (4, 4), front.y_max)


def test_v_dtype_compact():
    params = GameParams(2, 6, 8)
    tables = CountTable(params)
    vt = compute_v_table(params, tables, engine="python")
    assert vt.values.dtype == np.int8
    stats = vt.stats()
    assert stats["size"] == tables.n_ranked_packings
    assert stats["alg_winning"] + stats["interior"] == stats["size"]
