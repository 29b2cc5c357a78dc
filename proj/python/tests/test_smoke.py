import pytest

import tdmasched


def example():
    return tdmasched.TrafficInstance([[7, 12, 9], [8, 11, 14], [0, 9, 13]], 2)


def test_stats():
    s = example().stats()
    assert (s.delta, s.workload, s.lower_bound) == (3, 36, 42)


def test_parse_round_trip():
    text = "4 3 0\n7 3 4\n3 4 3\n0 5 4\n2 8 5\n"
    inst = tdmasched.TrafficInstance.parse(text)
    assert inst.format() == text
    assert inst.senders == 4 and inst.receivers == 3


def test_parse_error():
    with pytest.raises(ValueError):
        tdmasched.TrafficInstance.parse("2 2 1\n1 -1\n0 2\n")


@pytest.mark.parametrize("alg", tdmasched.ALGORITHMS)
def test_every_algorithm_validates(alg):
    inst = example()
    r = tdmasched.schedule(inst, alg)
    assert tdmasched.validate(inst, r["frames"]) == []
    assert r["cost"] == tdmasched.makespan(r["frames"], inst.setup_delay)
    assert r["cost"] >= r["lower_bound"] == 42
    assert r["text"].startswith("frames ")


def test_printed_schedule_costs_44():
    frames = [
        [(0, 0, 7), (1, 2, 14), (2, 1, 9)],
        [(0, 1, 12), (1, 0, 8), (2, 2, 13)],
        [(0, 2, 9), (1, 1, 11)],
    ]
    assert tdmasched.validate(example(), frames) == []
    assert tdmasched.makespan(frames, 2) == 44


def test_oracle():
    assert tdmasched.optimal_cost(tdmasched.TrafficInstance([[3, 3], [3, 3]], 1)) == 8
    with pytest.raises(tdmasched.OracleLimitError):
        tdmasched.optimal_cost(tdmasched.generate())


def test_unknown_algorithm():
    with pytest.raises(ValueError):
        tdmasched.schedule(example(), "nope")


def test_bench_is_deterministic():
    a = tdmasched.bench([1, 5], ["mga", "gwa"], 2, senders=5, receivers=6, seed=3)
    b = tdmasched.bench([1, 5], ["mga", "gwa"], 2, senders=5, receivers=6, seed=3)
    assert a == b
    records, aggregates = a
    assert records.splitlines()[0] == "algorithm,instance,d,cost,lower_bound,ratio"
    assert len(records.splitlines()) == 1 + 2 * 2 * 2
    assert aggregates.splitlines()[0] == "algorithm,d,mean_ratio,max_ratio"
