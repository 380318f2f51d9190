import json
from itertools import combinations

import pytest

from pdckit.champions import (
    ChampionRecord,
    champion_scan,
    find_pdc,
    jumping_champion,
    records_to_csv,
    records_to_json,
)
from pdckit.counting import DifferenceSet, count_tuple
from pdckit.errors import InsufficientPrimesError, SearchLimitError


def brute_best(table, x, k):
    best, winners = 0, []
    for ds in combinations(range(1, x), k):
        c = count_tuple(table, x, DifferenceSet(ds))
        if c > best:
            best, winners = c, [ds]
        elif c == best and c > 0:
            winners.append(ds)
    return best, winners


def test_jumping_champion(table_1e4):
    jc = jumping_champion(table_1e4, 20)
    assert [w.elements for w in jc.winners] == [(2,)]
    assert jc.max_count == 4
    assert jc.search_space == "consecutive prime gaps"


def test_jumping_champion_tie(table_1e4):
    jc = jumping_champion(table_1e4, 5)
    assert [w.elements for w in jc.winners] == [(1,), (2,)]
    assert jc.max_count == 1


def test_k1_exhaustive_50(table_1e4):
    r = find_pdc(table_1e4, 50, 1)
    assert [w.elements for w in r.winners] == [(6,)]
    assert r.max_count == 9
    assert r.d_star == 6
    assert [(w.elements[0], c) for w, c in r.runners_up] == [
        (12, 7), (2, 6), (4, 6), (10, 6), (18, 6),
    ]


def test_k1_tiny(table_1e4):
    r = find_pdc(table_1e4, 4, 1)
    assert [w.elements for w in r.winners] == [(1,)]
    assert r.max_count == 1


def test_k2_exhaustive_20(table_1e4):
    r = find_pdc(table_1e4, 20, 2)
    assert [w.elements for w in r.winners] == [(2, 8)]
    assert r.max_count == 3
    # the less specific floor some references quote
    assert r.max_count >= 2
    assert count_tuple(table_1e4, 20, DifferenceSet((2, 6))) == 2


@pytest.mark.parametrize("x", [30, 50, 100])
def test_k2_matches_brute_force(table_1e4, x):
    r = find_pdc(table_1e4, x, 2)
    best, winners = brute_best(table_1e4, x, 2)
    assert r.max_count == best
    assert [w.elements for w in r.winners] == winners


def test_k2_known_values(table_1e4):
    r = find_pdc(table_1e4, 50, 2)
    assert [w.elements for w in r.winners] == [(4, 10), (6, 12), (6, 24)]
    assert r.max_count == 5
    r = find_pdc(table_1e4, 100, 2)
    assert [w.elements for w in r.winners] == [(6, 30), (6, 36)]
    assert r.max_count == 10
    r = find_pdc(table_1e4, 300, 2)
    assert [w.elements for w in r.winners] == [(12, 42)]
    assert r.max_count == 23
    r = find_pdc(table_1e4, 2000, 2)
    assert [w.elements for w in r.winners] == [(120, 330)]
    assert r.max_count == 92


def test_k3_exhaustive_100(table_1e4):
    r = find_pdc(table_1e4, 100, 3)
    assert [w.elements for w in r.winners] == [(6, 12, 36), (6, 30, 36)]
    assert r.max_count == 7
    best, winners = brute_best(table_1e4, 100, 3)
    assert (r.max_count, [w.elements for w in r.winners]) == (best, winners)


def test_exhaustive_limits(table_1e4):
    with pytest.raises(SearchLimitError):
        find_pdc(table_1e4, 10**4, 3, mode="exhaustive")
    with pytest.raises(SearchLimitError):
        find_pdc(table_1e4, 10**4, 2, mode="exhaustive", limits={2: 100})


def test_insufficient_primes(table_1e4):
    with pytest.raises(InsufficientPrimesError):
        find_pdc(table_1e4, 3, 2)
    with pytest.raises(InsufficientPrimesError):
        find_pdc(table_1e4, 2, 1)


def test_pruned_mode(table_1e6):
    r = find_pdc(table_1e6, 10**6, 2, mode="pruned")
    assert [w.elements for w in r.winners] == [(9240, 39270)]
    assert r.max_count == 11753
    assert r.mode == "pruned"
    assert r.d_star == 2310


def test_pruned_thread_determinism(table_1e4):
    a = find_pdc(table_1e4, 10**4, 2, mode="pruned", threads=1)
    b = find_pdc(table_1e4, 10**4, 2, mode="pruned", threads=8)
    assert a == b


def test_pruned_candidates_beat_nothing(table_1e4):
    # a pruned winner can never beat the exhaustive one
    exh = find_pdc(table_1e4, 2000, 2, mode="exhaustive")
    pru = find_pdc(table_1e4, 2000, 2, mode="pruned")
    assert pru.max_count <= exh.max_count


def test_champion_scan(table_1e4):
    records = champion_scan(table_1e4, (100, 1000), 1)
    assert [r.x for r in records] == [100, 1000]
    assert [r.d_star for r in records] == [6, 30]
    assert [r.max_count for r in records] == [15, 97]


def test_csv_and_json(tmp_path, table_1e4):
    records = champion_scan(table_1e4, (50, 100), 1)
    text = records_to_csv(records)
    lines = text.strip().splitlines()
    assert lines[0] == "x,k,mode,max_count,winners,gcd,runner_ups"
    assert lines[1].startswith("50,1,exhaustive,9,6,6,")
    path = tmp_path / "r.json"
    records_to_json(records, path, {"command": "champions"})
    payload = json.loads(path.read_text())
    assert payload["config"] == {"command": "champions"}
    assert payload["records"][0]["winners"] == [[6]]
    assert payload["records"][0]["gcd"] == 6
