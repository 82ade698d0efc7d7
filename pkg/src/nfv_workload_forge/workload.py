"""Policy (service chain) generation for large enterprise networks.

Chain lengths follow a power law with exponent 2 truncated to [2, 7]; NF
types are drawn without replacement within a chain, each step choosing a
remaining type with probability proportional to its deployment count.
Every enterprise receives policies whose lengths add up to its NF budget.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import WorkloadError
from .rng import SplitMix64, as_rng

MIN_CHAIN = 2
MAX_CHAIN = 7
EXPONENT = 2
DEFAULT_NF_BUDGET = 100

# Average middlebox deployment counts for large (10k-100k host) enterprises.
DEFAULT_WEIGHTS: tuple[tuple[str, int], ...] = (
    ("ip_firewall", 46),
    ("app_firewall", 9),
    ("wan_optimizer", 0),
    ("proxy", 6),
    ("gateway", 3),
    ("vpn", 6),
    ("load_balancer", 7),
    ("ids_ips", 23),
)


@dataclass(frozen=True)
class NfTypeCatalog:
    entries: tuple[tuple[str, int], ...] = DEFAULT_WEIGHTS

    def __post_init__(self):
        entries = tuple((str(name), weight) for name, weight in self.entries)
        object.__setattr__(self, "entries", entries)
        names = [name for name, _ in entries]
        if len(set(names)) != len(names):
            raise WorkloadError("catalog type names must be unique")
        for name, weight in entries:
            if isinstance(weight, bool) or not isinstance(weight, int) or weight < 0:
                raise WorkloadError(f"catalog weight for {name!r} must be a non-negative integer")
        if self.positive_count < 2:
            raise WorkloadError("catalog needs at least two types with positive weight")

    @classmethod
    def from_mapping(cls, weights: Mapping[str, int]) -> "NfTypeCatalog":
        return cls(tuple(weights.items()))

    @property
    def positive_count(self) -> int:
        return sum(1 for _, w in self.entries if w > 0)

    @property
    def total_weight(self) -> int:
        return sum(w for _, w in self.entries)

    def as_dict(self) -> dict[str, int]:
        return dict(self.entries)


@dataclass(frozen=True)
class EnterpriseProfile:
    enterprise_id: int
    nf_budget: int = DEFAULT_NF_BUDGET
    catalog: NfTypeCatalog = field(default_factory=NfTypeCatalog)

    def __post_init__(self):
        if self.enterprise_id < 0:
            raise WorkloadError("enterprise_id must be non-negative")
        if self.nf_budget < MIN_CHAIN:
            raise WorkloadError(f"nf_budget must be >= {MIN_CHAIN}, got {self.nf_budget}")


@dataclass(frozen=True)
class NfInstance:
    type: str
    instance_id: int


@dataclass(frozen=True)
class Policy:
    enterprise_id: int
    policy_id: int
    chain: tuple[NfInstance, ...]

    def __len__(self):
        return len(self.chain)

    @property
    def types(self) -> list[str]:
        return [nf.type for nf in self.chain]


def chain_length_pmf() -> dict[int, float]:
    """Mass ``n**-2 / Z`` over n = 2..7, normalized in exact arithmetic."""
    raw = {n: Fraction(1, n**EXPONENT) for n in range(MIN_CHAIN, MAX_CHAIN + 1)}
    z = sum(raw.values())
    return {n: float(m / z) for n, m in raw.items()}


def _cdf() -> tuple[list[float], list[int]]:
    raw = {n: Fraction(1, n**EXPONENT) for n in range(MIN_CHAIN, MAX_CHAIN + 1)}
    z = sum(raw.values())
    support, cum, acc = [], [], Fraction(0)
    for n, m in raw.items():
        acc += m / z
        support.append(n)
        cum.append(float(acc))
    cum[-1] = 1.0
    return cum, support


_CDF, _SUPPORT = _cdf()


def chain_length_from_uniform(u: float) -> int:
    """Inverse CDF: the smallest n with CDF(n) > u, for u in [0, 1)."""
    if not 0.0 <= u < 1.0:
        raise ValueError(f"uniform draw must lie in [0, 1), got {u}")
    return _SUPPORT[bisect.bisect_right(_CDF, u)]


def sample_chain_length(rng: SplitMix64) -> int:
    return chain_length_from_uniform(rng.random())


def sample_chain(rng: SplitMix64, catalog: NfTypeCatalog, length: int) -> list[str]:
    """Weighted sampling of ``length`` distinct types, in selection order."""
    if length < 1:
        raise WorkloadError("chain length must be positive")
    candidates = [(name, w) for name, w in catalog.entries if w > 0]
    if length > len(candidates):
        raise WorkloadError(
            f"insufficient distinct NF types: need {length}, catalog has {len(candidates)} with positive weight"
        )
    chosen = []
    for _ in range(length):
        total = sum(w for _, w in candidates)
        r = rng.randbelow(total)
        for i, (name, w) in enumerate(candidates):
            if r < w:
                chosen.append(name)
                del candidates[i]
                break
            r -= w
    return chosen


def fit_length(n: int, remaining: int) -> int:
    """Adjust a drawn length so the leftover budget is never exactly 1.

    A leftover of 1 cannot host a chain, so the draw is bumped up (or down,
    when already at the maximum); when the budget is nearly spent the draw
    is first clamped to what remains.
    """
    if remaining <= MAX_CHAIN:
        n = min(n, remaining)
    if remaining - n == 1:
        n = n + 1 if n < MAX_CHAIN else n - 1
    return n


def generate_enterprise_policies(
    profile: EnterpriseProfile, rng: SplitMix64 | int
) -> list[Policy]:
    rng = as_rng(rng)
    policies: list[Policy] = []
    remaining = profile.nf_budget
    next_instance = 0
    while remaining > 0:
        n = fit_length(sample_chain_length(rng), remaining)
        types = sample_chain(rng, profile.catalog, n)
        chain = tuple(NfInstance(t, next_instance + i) for i, t in enumerate(types))
        next_instance += n
        policies.append(Policy(profile.enterprise_id, len(policies), chain))
        remaining -= n
    return policies


def generate_workload(
    num_enterprises: int,
    seed: int,
    nf_budget: int = DEFAULT_NF_BUDGET,
    catalog: NfTypeCatalog | None = None,
) -> list[tuple[EnterpriseProfile, list[Policy]]]:
    """One policy set per enterprise, enterprise ``e`` seeded with ``derive_seed(seed, e)``."""
    if num_enterprises < 1:
        raise WorkloadError("empty workload: num_enterprises must be >= 1")
    catalog = catalog or NfTypeCatalog()
    master = SplitMix64(seed)
    out = []
    for eid in range(num_enterprises):
        profile = EnterpriseProfile(eid, nf_budget, catalog)
        out.append((profile, generate_enterprise_policies(profile, master.spawn(eid))))
    return out


def policies_by_enterprise(
    workload: Iterable[tuple[EnterpriseProfile, list[Policy]]],
) -> dict[int, list[Policy]]:
    return {profile.enterprise_id: list(policies) for profile, policies in workload}
