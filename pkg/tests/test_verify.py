import pytest

from modwind.geodesics import EnumerationConfig, enumerate_geodesics
from modwind.verify import stratified_sample


@pytest.fixture(scope="module")
def census12():
    return enumerate_geodesics(EnumerationConfig(max_length=12.0))


class TestStratifiedSample:
    def test_deterministic(self, census12):
        a = stratified_sample(census12, 200, seed=3)
        b = stratified_sample(census12, 200, seed=3)
        assert a == b

    def test_size_and_uniqueness(self, census12):
        picked = stratified_sample(census12, 200, seed=3)
        assert len(picked) == 200
        assert len({r.word.entries for r in picked}) == 200

    def test_forces_large_entries(self, census12):
        picked = stratified_sample(census12, 200, seed=3)
        assert any(max(r.word.entries) >= 50 for r in picked)

    def test_small_pool_returned_whole(self, census12):
        pool = [r for r in census12 if r.trace <= 5]
        assert stratified_sample(pool, 50, seed=0) == sorted(
            pool, key=lambda r: (r.trace, r.word.entries)
        )

    def test_spreads_over_traces(self, census12):
        picked = stratified_sample(census12, 200, seed=3)
        traces = sorted(r.trace for r in picked)
        median = traces[len(traces) // 2]
        assert traces[0] < median < traces[-1]
