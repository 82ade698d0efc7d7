import pytest

from nfv_workload_forge.rng import SplitMix64


class FixedRng(SplitMix64):
    """Generator whose ``random()`` replays given uniforms."""

    def __init__(self, *uniforms):
        super().__init__(0)
        self._uniforms = list(uniforms)

    def random(self):
        return self._uniforms.pop(0)


@pytest.fixture
def fixed_rng():
    return FixedRng
