"""Instance generation and the on-disk formats.

Instance files are JSON: ``{"m": int, "n": int, "rewards": [[...], ...]}``
with row-major rewards and zeros in column 1. Moisture maps are headerless
numeric CSV, one line per aisle.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .aisle_graph import AisleGraph, InstanceError, new_graph

GENERATOR = "numpy.random.Generator(PCG64), seed=SeedSequence(seed)"


@dataclass(frozen=True)
class ZipfConfig:
    theta: float = 0.0
    max_reward: int = 100
    seed: int = 0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.theta) and self.theta >= 0):
            raise ValueError(f"theta must be a finite value >= 0, got {self.theta}")
        if int(self.max_reward) != self.max_reward or self.max_reward < 1:
            raise ValueError(f"max_reward must be an integer >= 1, got {self.max_reward}")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError(f"seed must fit in 64 unsigned bits, got {self.seed}")

    def probabilities(self) -> np.ndarray:
        """P(reward = k) proportional to ``(k + 1) ** -theta`` for ``k < max_reward``."""
        w = np.arange(1, self.max_reward + 1, dtype=np.float64) ** -self.theta
        return w / w.sum()

    def metadata(self) -> dict:
        return {
            "theta": self.theta,
            "max_reward": self.max_reward,
            "seed": int(self.seed),
            "generator": GENERATOR,
        }


def generate_zipf(m: int, n: int, config: ZipfConfig) -> AisleGraph:
    """Draw i.i.d. Zipf rewards for columns 2..n; column 1 stays zero."""
    if m < 1 or n < 1:
        raise InstanceError(f"aisle-graph needs m >= 1 and n >= 1, got m={m}, n={n}")
    rng = np.random.Generator(np.random.PCG64(int(config.seed)))
    rewards = np.zeros((m, n))
    if n > 1:
        rewards[:, 1:] = rng.choice(config.max_reward, size=(m, n - 1), p=config.probabilities())
    return new_graph(m, n, rewards)


@dataclass(frozen=True, eq=False)
class MoistureMap:
    grid: np.ndarray
    target: float

    def __post_init__(self) -> None:
        grid = np.asarray(self.grid, dtype=np.float64)
        if grid.ndim != 2 or grid.size == 0:
            raise InstanceError("moisture grid must be a non-empty 2-D array")
        bad = ~np.isfinite(grid)
        if bad.any():
            i, j = np.argwhere(bad)[0]
            raise InstanceError(f"moisture cell ({i + 1},{j + 1}) is not finite")
        if not math.isfinite(self.target):
            raise InstanceError(f"moisture target must be finite, got {self.target}")
        object.__setattr__(self, "grid", grid)

    def transposed(self) -> "MoistureMap":
        return MoistureMap(self.grid.T.copy(), self.target)


def from_moisture(moisture: MoistureMap) -> AisleGraph:
    """Reward each vine by its distance from the target moisture.

    Column 1 is forced to zero whatever the map says.
    """
    rewards = np.abs(moisture.target - moisture.grid)
    rewards[:, 0] = 0.0
    m, n = rewards.shape
    return new_graph(m, n, rewards)


def read_moisture_csv(path: str | Path, target: float, transpose: bool = False) -> MoistureMap:
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    try:
        grid = np.array([[float(c) for c in r] for r in rows])
    except ValueError as exc:
        raise InstanceError(f"{path}: non-numeric moisture value ({exc})") from None
    if grid.ndim != 2:
        raise InstanceError(f"{path}: rows have different lengths")
    mm = MoistureMap(grid, target)
    return mm.transposed() if transpose else mm


def instance_to_dict(graph: AisleGraph) -> dict:
    return {"m": graph.m, "n": graph.n, "rewards": graph.to_lists()}


def instance_from_dict(data: dict) -> AisleGraph:
    if not isinstance(data, dict) or not {"m", "n", "rewards"} <= data.keys():
        raise InstanceError('instance JSON needs the keys "m", "n" and "rewards"')
    m, n = data["m"], data["n"]
    if not (isinstance(m, int) and isinstance(n, int)) or isinstance(m, bool) or isinstance(n, bool):
        raise InstanceError(f'"m" and "n" must be integers, got {m!r} and {n!r}')
    if not isinstance(data["rewards"], list):
        raise InstanceError('"rewards" must be a list of rows')
    return new_graph(m, n, data["rewards"])


def read_instance(path: str | Path) -> AisleGraph:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InstanceError(f"{path}: malformed JSON ({exc})") from None
    return instance_from_dict(data)


def write_instance(graph: AisleGraph, path: str | Path, metadata: dict | None = None) -> None:
    """Write the instance JSON, plus ``<stem>.meta.json`` when ``metadata`` is given."""
    path = Path(path)
    path.write_text(json.dumps(instance_to_dict(graph), separators=(",", ":")) + "\n")
    if metadata is not None:
        meta_path(path).write_text(json.dumps(metadata, sort_keys=True) + "\n")


def meta_path(path: Path) -> Path:
    return path.with_name(path.stem + ".meta.json")
