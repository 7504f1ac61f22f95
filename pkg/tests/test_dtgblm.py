import json
from pathlib import Path

import numpy as np
import pytest

from road.models import InitialSpeed, ModelParams, Placement
from road.placement import init_road
from road.random_source import RandomSource
from scripted_random import ScriptedRandomSource
from rules.common import AccelBranch, SlowdownCase
from rules.dtgblm import dtgblm_step

FIXTURE = Path(__file__).parent / "fixtures" / "dtgblm_hand_trace.json"


@pytest.mark.parametrize("ordered", [False, True])
def test_hand_trace(make_road, default_params, ordered):
    trace = json.loads(FIXTURE.read_text(encoding="utf-8"))
    initial = trace["initial"]
    road = make_road(trace["length_cells"], initial["x"], initial["v"], initial["s"])
    rng = ScriptedRandomSource([r for step in trace["draws"] for r in step])

    for expected in trace["steps"]:
        outcome = dtgblm_step(road, default_params, rng, order=[3, 1, 0, 2] if ordered else None)
        road = outcome.next

        assert road.x.tolist() == expected["x"]
        assert road.v.tolist() == expected["v"]
        assert road.s.tolist() == expected["s"]
        assert [decision.case.tag for decision in outcome.decisions] == expected["cases"]
        assert [decision.randomized for decision in outcome.decisions] == expected["randomized"]
        assert [decision.branch.tag for decision in outcome.decisions] == expected["branches"]

    assert road.t == 3


def test_slow_to_start_without_braking(make_road, default_params):
    road = make_road(200, [0], [0])
    outcome = dtgblm_step(road, default_params, ScriptedRandomSource(fill=1.0))

    assert outcome.next.v.tolist() == [default_params.a_1]
    assert outcome.next.s.tolist() == [0]
    assert outcome.decisions[0].branch == AccelBranch.A_1


def test_braking_leader_triggers_p_b(make_road, default_params):
    road = make_road(200, [0, 17], [6, 6], s=[0, 1])
    outcome = dtgblm_step(road, default_params, ScriptedRandomSource(fill=0.0))

    follower = outcome.decisions[0]
    assert follower.case == SlowdownCase.P_B
    assert follower.randomized
    assert follower.branch == AccelBranch.A_BLOCKED
    # accelerate step caps at floor(13 / 2.8) = 4, randomization removes b_rand
    assert outcome.next.v[0] == 4 - default_params.b_rand
    assert outcome.next.s[0] == 1


def test_blocked_branch_acceleration_is_configurable(make_road):
    road = make_road(400, [0, 35], [6, 6], s=[0, 1])
    literal = dtgblm_step(road, ModelParams(), ScriptedRandomSource(fill=1.0))
    zero = dtgblm_step(road, ModelParams(a_blocked=0), ScriptedRandomSource(fill=1.0))

    assert literal.next.v[0] == 7
    assert zero.next.v[0] == 6


def _random_state(generator: np.random.Generator, params: ModelParams):
    length = int(generator.integers(100, 600))
    n = int(generator.integers(1, length // params.l_veh + 1))
    road = init_road(length, n, Placement.UNIFORM, InitialSpeed.VMAX, params, RandomSource(int(generator.integers(1 << 32))))
    warm = RandomSource(int(generator.integers(1 << 32)))
    for _ in range(int(generator.integers(0, 30))):
        road = dtgblm_step(road, params, warm).next
    return road


def test_processing_order_does_not_matter(default_params):
    generator = np.random.default_rng(77)
    for _ in range(100):
        road = _random_state(generator, default_params)
        seed = int(generator.integers(1 << 32))
        order = generator.permutation(road.n_vehicles).tolist()

        ascending = dtgblm_step(road, default_params, RandomSource(seed))
        shuffled = dtgblm_step(road, default_params, RandomSource(seed), order=order)

        for column in ("x", "v", "s"):
            assert np.array_equal(getattr(ascending.next, column), getattr(shuffled.next, column))
        assert np.array_equal(ascending.cases, shuffled.cases)
        assert np.array_equal(ascending.randomized, shuffled.randomized)
        assert np.array_equal(ascending.branches, shuffled.branches)


def test_empty_road_steps(default_params):
    road = init_road(100, 0, Placement.UNIFORM, InitialSpeed.ZERO, default_params, RandomSource(1))
    outcome = dtgblm_step(road, default_params, RandomSource(1))
    assert outcome.next.t == 1
    assert outcome.decisions == ()
