"""TSP and CVRP task definitions over the unified permutation space.

Each task exposes ``dimension`` and ``cost(perm)``; the engine projects a
unified genome down to the task's dimension before evaluating. Distances
follow the TSPLIB EUC_2D convention (nearest integer, half up), which is
what the published optima of the bundled instances assume.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


def _euc2d_matrix(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Pairwise EUC_2D distances between coordinate arrays (n,2) and (m,2)."""
    diff = a[:, None, :] - b[None, :, :]
    return np.floor(np.sqrt((diff ** 2).sum(axis=2)) + 0.5).astype(np.int64)


def project(genome: np.ndarray, dimension: int) -> np.ndarray:
    """Project a unified genome onto a task of the given dimension.

    Keeps the values {1..dimension} in their genome order; the result is a
    permutation of {1..dimension}.
    """
    if dimension > len(genome):
        raise ValueError(f"task dimension {dimension} exceeds d_max {len(genome)}")
    return genome[genome <= dimension]


@dataclass
class TspInstance:
    name: str
    coords: np.ndarray  # (dimension, 2)
    _dist: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.coords = np.asarray(self.coords, dtype=float)
        if self.dimension < 3:
            raise ValueError("TSP instance needs at least 3 cities")
        self._dist = _euc2d_matrix(self.coords, self.coords)

    @property
    def dimension(self) -> int:
        return len(self.coords)

    def cost(self, perm: np.ndarray) -> float:
        return tsp_cost(perm, self)


def tsp_cost(perm: np.ndarray, inst: TspInstance) -> float:
    """Closed-tour length of ``perm`` (1-based city ids) on ``inst``."""
    idx = perm - 1
    d = inst._dist
    return float(d[idx[:-1], idx[1:]].sum() + d[idx[-1], idx[0]])


@dataclass
class RoutePlan:
    routes: list[np.ndarray]  # 1-based customer indices per vehicle route
    total_distance: float


@dataclass
class CvrpInstance:
    name: str
    depot_coord: tuple[float, float]
    customer_coords: np.ndarray  # (dimension, 2)
    demands: np.ndarray          # (dimension,)
    capacity: int
    _dist: np.ndarray = field(init=False, repr=False)
    _depot_dist: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.customer_coords = np.asarray(self.customer_coords, dtype=float)
        self.demands = np.asarray(self.demands, dtype=np.int64)
        if len(self.demands) != len(self.customer_coords):
            raise ValueError("demand count does not match customer count")
        if (self.demands > self.capacity).any():
            raise ValueError("a single customer demand exceeds vehicle capacity")
        self._dist = _euc2d_matrix(self.customer_coords, self.customer_coords)
        depot = np.asarray([self.depot_coord], dtype=float)
        self._depot_dist = _euc2d_matrix(depot, self.customer_coords)[0]

    @property
    def dimension(self) -> int:
        return len(self.customer_coords)

    def cost(self, perm: np.ndarray) -> float:
        return cvrp_cost(perm, self)


def cvrp_decode(perm: np.ndarray, inst: CvrpInstance) -> RoutePlan:
    """Split a customer permutation into capacity-feasible routes.

    Greedy left-to-right: accumulate demand and close the current route
    whenever the next customer would exceed capacity (this is where the
    route-separating zeros are inserted). Distance per route is
    depot -> first -> ... -> last -> depot.
    """
    demands = inst.demands
    cap = inst.capacity
    routes: list[np.ndarray] = []
    total = 0
    start = 0
    load = 0
    idx = perm - 1
    for pos, c in enumerate(idx):
        q = demands[c]
        if load + q > cap:
            routes.append(perm[start:pos])
            total += _route_distance(idx[start:pos], inst)
            start = pos
            load = 0
        load += q
    routes.append(perm[start:])
    total += _route_distance(idx[start:], inst)
    return RoutePlan(routes=routes, total_distance=float(total))


def _route_distance(idx: np.ndarray, inst: CvrpInstance) -> int:
    if len(idx) == 0:
        return 0
    inner = inst._dist[idx[:-1], idx[1:]].sum() if len(idx) > 1 else 0
    return int(inst._depot_dist[idx[0]] + inner + inst._depot_dist[idx[-1]])


def cvrp_cost(perm: np.ndarray, inst: CvrpInstance) -> float:
    """Total routed distance of the greedy capacity decoding of ``perm``."""
    # Inlined decode without building route arrays; hot path of CVRP runs.
    demands = inst.demands
    cap = inst.capacity
    dist = inst._dist
    depot = inst._depot_dist
    idx = perm - 1
    total = 0
    load = 0
    prev = -1
    for c in idx:
        q = demands[c]
        if load + q > cap:
            total += depot[prev]
            prev = -1
            load = 0
        total += depot[c] if prev < 0 else dist[prev, c]
        prev = c
        load += q
    total += depot[prev]
    return float(total)
