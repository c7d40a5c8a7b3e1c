# Copyright 2026 The collperf Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import os

import pytest

import collperf

T0_TEXT = "L 10\n1 1 0.5 0.5\n1000000 1000000 500000 500000\n"


@pytest.fixture
def t0():
    return collperf.load_table(T0_TEXT)


def test_table_queries(t0):
    assert t0.latency == 10
    assert t0.gap(8) == pytest.approx(8)
    assert t0.send_overhead(8) == pytest.approx(4)
    assert t0.extrapolates(2_000_000)


def test_table_from_rows_matches_text(t0):
    built = collperf.ParamTable(10, [(1, 1, 0.5, 0.5), (1000000, 1e6, 5e5, 5e5)])
    assert built.gap(501) == t0.gap(501)


def test_golden_file_loads():
    path = os.path.join(os.environ.get("COLLPERF_GOLDEN_DIR", ""), "t0.plogp")
    if not os.path.exists(path):
        pytest.skip("golden directory not available")
    assert collperf.load_table_file(path).max_measured_size == 1000000


def test_predict_examples(t0):
    flat = collperf.predict(t0, "broadcast", "flat", 4, 8)
    assert flat["time"] == 34
    assert flat["segment"] is None
    assert sum(v for _, v in flat["terms"]) == 34
    pipe = collperf.predict(t0, "broadcast", "pipeline", 4, 8, segment=2)
    assert pipe["time"] == 42
    assert collperf.predict(t0, "alltoall", "contended", 4, 8, gamma=0.4)["time"] == pytest.approx(38.8)


def test_errors_are_value_errors(t0):
    with pytest.raises(collperf.ModelError):
        collperf.predict(t0, "broadcast", "flat", 1, 8)
    with pytest.raises(ValueError):
        collperf.predict(t0, "broadcast", "nosuch", 4, 8)
    with pytest.raises(collperf.ParseError, match="line 1"):
        collperf.load_table("1 2 3 4\n")


def test_optimize_segment(t0):
    r = collperf.optimize_segment(t0, "pipeline", 8, 64)
    assert r["segment"] == 1
    assert r["time"] == 140


def test_simulation_matches_models(t0):
    sim = collperf.simulate(t0, "scatter", "binomial", 4, 8)
    assert sim["completion"] == 44
    assert sim["violations"] == []
    assert sim["events"].count("\n") == 9
    assert collperf.simulate(t0, "alltoall", "overlapped", 4, 8)["completion"] == 34


def test_fit_and_blend(t0):
    cells = []
    for p in (2, 4, 8, 16):
        for m in (64, 1024):
            lo = (p - 1) * m + 10
            cells.append((p, m, lo + 0.4 * (p - 1) * m / 2))
    fit = collperf.fit_gamma(t0, cells)
    assert fit["gamma"] == pytest.approx(0.4, abs=1e-12)
    assert fit["samples"] == 8
    assert collperf.linear_contention_time(0.001, 1e6, 12.5e6, 8) == pytest.approx(0.641)


def test_select(t0):
    report = collperf.select(t0, "broadcast", 16, 1024)
    assert report["winner"] == "pipeline"
    assert report["winner_segment"] == 1
    assert [p["strategy"] for p in report["ranked"]] == ["pipeline", "binomial", "flat", "chain"]
    tie = collperf.select(t0, "scatter", 2, 8)
    assert [p["strategy"] for p in tie["ranked"]] == ["flat", "chain", "binomial"]
