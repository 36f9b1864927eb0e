"""Deterministic force simulation for the cluster canvas.

Four forces act on every step: short-range pairwise repulsion, global
gravity toward the canvas center, springs along links, and a pull toward
each multi-member group's centroid so groups separate spatially. Integration
is explicit Euler with velocity damping; positions are clamped to the
canvas. Everything is a pure function of (state, graph, params), so the same
seed always reproduces the same trajectory.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, replace

from .cluster_graph import ClusterGraph
from .errors import EmptyCanvas, MissingPosition

# repulsion is cut off beyond this distance so far-apart groups stop drifting
REPULSION_CUTOFF = 300.0

Vec = tuple[float, float]


@dataclass(frozen=True)
class LayoutParams:
    gravity: float = 0.05
    repulsion: float = 800.0
    spring_length: float = 60.0
    spring_k: float = 0.08
    group_pull: float = 0.1
    damping: float = 0.6
    radius: float = 30.0
    dt: float = 1.0

    def __post_init__(self):
        for name in ("gravity", "repulsion", "spring_k", "group_pull"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        if not 0 < self.damping < 1:
            raise ValueError("damping must be in (0, 1)")
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        if self.spring_length < 0:
            raise ValueError("spring_length must be >= 0")


@dataclass(frozen=True)
class LayoutState:
    positions: dict[int, Vec]
    velocities: dict[int, Vec]
    canvas: tuple[float, float]
    rng_seed: int


def init_layout(graph: ClusterGraph, canvas: tuple[float, float],
                seed: int) -> LayoutState:
    """Scatter nodes uniformly inside the canvas from a seeded RNG."""
    width, height = canvas
    if width <= 0 or height <= 0:
        raise EmptyCanvas("canvas dimensions must be positive",
                          canvas=list(canvas))
    rng = random.Random(seed)
    positions = {}
    for node_id in sorted(graph.nodes):
        positions[node_id] = (rng.uniform(0.0, width),
                              rng.uniform(0.0, height))
    velocities = {node_id: (0.0, 0.0) for node_id in positions}
    return LayoutState(positions, velocities, (float(width), float(height)),
                       seed)


def _pair_direction(a: int, b: int) -> Vec:
    # deterministic jitter for coincident nodes, derived from the pair ids
    angle = ((a * 73856093) ^ (b * 19349663)) % 360
    rad = math.radians(angle)
    return math.cos(rad), math.sin(rad)


def net_forces(state: LayoutState, graph: ClusterGraph,
               params: LayoutParams) -> dict[int, Vec]:
    """Per-node net force under the current graph and parameters."""
    ids = sorted(graph.nodes)
    for node_id in ids:
        if node_id not in state.positions:
            raise MissingPosition("node has no layout position", node=node_id)
    pos = state.positions
    forces: dict[int, list[float]] = {i: [0.0, 0.0] for i in ids}

    cx, cy = state.canvas[0] / 2.0, state.canvas[1] / 2.0
    for i in ids:
        x, y = pos[i]
        forces[i][0] += params.gravity * (cx - x)
        forces[i][1] += params.gravity * (cy - y)

    for idx, a in enumerate(ids):
        ax, ay = pos[a]
        for b in ids[idx + 1:]:
            bx, by = pos[b]
            dx, dy = ax - bx, ay - by
            dist = math.hypot(dx, dy)
            if dist > REPULSION_CUTOFF:
                continue
            if dist < 1.0:
                ux, uy = _pair_direction(a, b)
            else:
                ux, uy = dx / dist, dy / dist
            # fade to zero at the cutoff so the force field stays continuous
            fade = 1.0 - dist / REPULSION_CUTOFF
            f = fade * params.repulsion / max(dist, 1.0) ** 2
            forces[a][0] += f * ux
            forces[a][1] += f * uy
            forces[b][0] -= f * ux
            forces[b][1] -= f * uy

    for a, b in sorted(graph.links):
        ax, ay = pos[a]
        bx, by = pos[b]
        dx, dy = bx - ax, by - ay
        dist = math.hypot(dx, dy)
        if dist < 1e-9:
            ux, uy = _pair_direction(a, b)
        else:
            ux, uy = dx / dist, dy / dist
        f = params.spring_k * (dist - params.spring_length)
        forces[a][0] += f * ux
        forces[a][1] += f * uy
        forces[b][0] -= f * ux
        forces[b][1] -= f * uy

    for component in graph.components():
        if len(component) < 2:
            continue
        members = sorted(component)
        mx = sum(pos[m][0] for m in members) / len(members)
        my = sum(pos[m][1] for m in members) / len(members)
        for m in members:
            x, y = pos[m]
            forces[m][0] += params.group_pull * (mx - x)
            forces[m][1] += params.group_pull * (my - y)

    return {i: (fx, fy) for i, (fx, fy) in forces.items()}


def _integrate(state: LayoutState, forces: dict[int, Vec],
               params: LayoutParams) -> LayoutState:
    width, height = state.canvas
    positions = dict(state.positions)
    velocities = dict(state.velocities)
    for node_id, (fx, fy) in forces.items():
        vx, vy = velocities[node_id]
        vx = (vx + fx * params.dt) * params.damping
        vy = (vy + fy * params.dt) * params.damping
        x, y = positions[node_id]
        x = min(max(x + vx * params.dt, 0.0), width)
        y = min(max(y + vy * params.dt, 0.0), height)
        positions[node_id] = (x, y)
        velocities[node_id] = (vx, vy)
    return replace(state, positions=positions, velocities=velocities)


def step(state: LayoutState, graph: ClusterGraph,
         params: LayoutParams) -> LayoutState:
    """Advance the simulation by one explicit-Euler step."""
    return _integrate(state, net_forces(state, graph, params), params)


def group_centroids(state: LayoutState,
                    graph: ClusterGraph) -> dict[frozenset[int], Vec]:
    """Arithmetic mean position of every group's members."""
    centroids = {}
    for component in graph.components():
        members = sorted(component)
        for m in members:
            if m not in state.positions:
                raise MissingPosition("node has no layout position", node=m)
        mx = sum(state.positions[m][0] for m in members) / len(members)
        my = sum(state.positions[m][1] for m in members) / len(members)
        centroids[frozenset(component)] = (mx, my)
    return centroids


def run_until_stable(state: LayoutState, graph: ClusterGraph,
                     params: LayoutParams, eps: float,
                     max_steps: int) -> tuple[LayoutState, int]:
    """Step until the largest per-node net force drops below eps.

    Returns the settled state and the number of steps taken (capped at
    max_steps).
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    if max_steps <= 0:
        raise ValueError("max_steps must be positive")
    steps = 0
    while steps < max_steps:
        forces = net_forces(state, graph, params)
        peak = max((math.hypot(fx, fy) for fx, fy in forces.values()),
                   default=0.0)
        if peak < eps:
            break
        state = _integrate(state, forces, params)
        steps += 1
    return state, steps
