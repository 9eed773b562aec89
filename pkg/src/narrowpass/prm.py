"""Probabilistic roadmap construction, queries, and the graph file format.

The roadmap mixes fresh uniform free samples with a batch of narrow-passage
samples, connects each node to its k nearest neighbours through a discretized
straight-line local planner, and answers queries with uniform-cost search
over metric edge lengths.  Start and goal are attached at query time so one
roadmap serves many queries.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

import numpy as np

from .cspace import Configuration, SpaceSpec, distance, interpolate, sample_uniform
from .geometry import CollisionCounter, Scene, is_colliding
from .samplers import SampleBatch

TWO_PI = 2.0 * math.pi


@dataclass
class Roadmap:
    """Undirected graph of free configurations with validated edges."""

    spec: SpaceSpec
    nodes: list = field(default_factory=list)
    origins: list = field(default_factory=list)
    adjacency: list = field(default_factory=list)

    def add_node(self, q: Configuration, origin: str) -> int:
        self.spec.check(q)
        self.nodes.append(q)
        self.origins.append(origin)
        self.adjacency.append({})
        return len(self.nodes) - 1

    def add_edge(self, i: int, j: int, length: float) -> None:
        if i == j:
            raise ValueError("self edges are not allowed")
        self.adjacency[i][j] = length
        self.adjacency[j][i] = length

    def has_edge(self, i: int, j: int) -> bool:
        return j in self.adjacency[i]

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_edges(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def edges(self):
        for i, nbrs in enumerate(self.adjacency):
            for j, length in sorted(nbrs.items()):
                if i < j:
                    yield i, j, length

    def components(self):
        """Connected components as a list of node-index sets."""
        seen = set()
        comps = []
        for root in range(self.n_nodes):
            if root in seen:
                continue
            comp = {root}
            stack = [root]
            while stack:
                u = stack.pop()
                for v in self.adjacency[u]:
                    if v not in comp:
                        comp.add(v)
                        stack.append(v)
            seen |= comp
            comps.append(comp)
        return comps


@dataclass
class PlanResult:
    """Query outcome: a path (possibly empty), its length, and run stats."""

    path: list
    found: bool
    path_length: float
    stats: dict = field(default_factory=dict)


def local_path_valid(scene, robot, spec, q1, q2, resolution, counter) -> bool:
    """Collision-check the straight segment q1..q2 at the given resolution.

    Samples ceil(distance/resolution) + 1 evenly spaced configurations,
    endpoints included.  Obstacles thinner than the resolution can slip
    between consecutive checks; choose resolution accordingly.
    """
    if resolution <= 0.0:
        raise ValueError("resolution must be > 0")
    d = distance(spec, q1, q2)
    n = max(1, math.ceil(d / resolution))
    for i in range(n + 1):
        q = interpolate(spec, q1, q2, i / n)
        if is_colliding(scene, robot, q, counter):
            return False
    return True


def _config_matrix(spec: SpaceSpec, configs):
    arr = np.empty((len(configs), spec.dim))
    for i, q in enumerate(configs):
        arr[i, : spec.trans_dims] = q.trans
        if spec.angle_dims:
            arr[i, spec.trans_dims :] = q.angles
    return arr


def _distances_to(spec: SpaceSpec, matrix: np.ndarray, q: Configuration) -> np.ndarray:
    nt = spec.trans_dims
    dt = matrix[:, :nt] - q.trans
    total = np.einsum("ij,ij->i", dt, dt)
    if spec.angle_dims:
        da = np.abs(matrix[:, nt:] - q.angles)
        da = np.minimum(da, TWO_PI - da) * spec.angle_weight
        total = total + np.einsum("ij,ij->i", da, da)
    return np.sqrt(total)


def sample_free(scene, robot, spec, rng, counter, budget: int = 1000) -> Configuration:
    """Rejection-sample one collision-free configuration."""
    for _ in range(budget):
        q = sample_uniform(spec, rng)
        if not is_colliding(scene, robot, q, counter):
            return q
    raise RuntimeError(f"no free configuration found in {budget} uniform draws")


def connect_k_nearest(roadmap, scene, robot, spec, node_ids, k, resolution, counter):
    """Try k-nearest connections for the given nodes against the whole graph."""
    matrix = _config_matrix(spec, roadmap.nodes)
    attempted = set()
    for i in node_ids:
        dists = _distances_to(spec, matrix, roadmap.nodes[i])
        dists[i] = np.inf
        order = np.argsort(dists, kind="stable")[:k]
        for j in order:
            j = int(j)
            if not np.isfinite(dists[j]):
                continue
            pair = (min(i, j), max(i, j))
            if pair in attempted or roadmap.has_edge(i, j):
                continue
            attempted.add(pair)
            if local_path_valid(scene, robot, spec, roadmap.nodes[i], roadmap.nodes[j], resolution, counter):
                roadmap.add_edge(i, j, float(dists[j]))


def build_roadmap(
    scene: Scene,
    robot,
    spec: SpaceSpec,
    n_uniform: int,
    bridge_batch: SampleBatch | None,
    k: int,
    resolution: float,
    rng: np.random.Generator,
    counter: CollisionCounter,
) -> Roadmap:
    """Sample nodes, then attempt k-nearest connections for every node.

    Nodes are ``n_uniform`` fresh uniform free samples plus the bridge batch
    (already verified free by its sampler).  The graph may end up
    disconnected; callers decide whether that matters.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    roadmap = Roadmap(spec=spec)
    budget = max(1000, 200 * n_uniform)
    drawn = 0
    while sum(o == "uniform" for o in roadmap.origins) < n_uniform:
        if drawn >= budget:
            raise RuntimeError(
                f"uniform sampling budget exhausted: {roadmap.n_nodes} of {n_uniform} nodes"
            )
        drawn += 1
        q = sample_uniform(spec, rng)
        if not is_colliding(scene, robot, q, counter):
            roadmap.add_node(q, "uniform")
    if bridge_batch is not None:
        for q in bridge_batch.samples:
            roadmap.add_node(q, bridge_batch.sampler)
    connect_k_nearest(roadmap, scene, robot, spec, range(roadmap.n_nodes), k, resolution, counter)
    return roadmap


def extend_roadmap(roadmap, scene, robot, spec, configs, origin, k, resolution, counter):
    """Insert extra free configurations and connect them; never removes edges."""
    new_ids = [roadmap.add_node(q, origin) for q in configs]
    connect_k_nearest(roadmap, scene, robot, spec, new_ids, k, resolution, counter)
    return new_ids


def _dijkstra(neighbors, source, target):
    # uniform-cost search; `neighbors` maps a node to {neighbor: edge length}.
    dist = {source: 0.0}
    prev = {}
    heap = [(0.0, 0, source)]
    seq = 1  # tie-breaker keeps heap entries comparable across node types
    done = set()
    while heap:
        d, _, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        if u == target:
            order = [u]
            while order[-1] != source:
                order.append(prev[order[-1]])
            order.reverse()
            return order, d
        for v, length in neighbors(u).items():
            nd = d + length
            if nd < dist.get(v, math.inf):
                dist[v] = nd
                prev[v] = u
                heapq.heappush(heap, (nd, seq, v))
                seq += 1
    return None, math.inf


def query(
    roadmap: Roadmap,
    start: Configuration,
    goal: Configuration,
    scene: Scene,
    robot,
    spec: SpaceSpec,
    k: int,
    resolution: float,
    counter: CollisionCounter,
) -> PlanResult:
    """Connect start/goal to the roadmap and run shortest-path search."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if is_colliding(scene, robot, start, counter):
        raise ValueError("start configuration is colliding")
    if is_colliding(scene, robot, goal, counter):
        raise ValueError("goal configuration is colliding")
    stats = {"nodes": roadmap.n_nodes, "edges": roadmap.n_edges}
    if distance(spec, start, goal) == 0.0:
        return PlanResult(path=[start], found=True, path_length=0.0, stats=stats)

    start_links = {}
    goal_links = {}
    if roadmap.n_nodes:
        matrix = _config_matrix(spec, roadmap.nodes)
        for links, q in ((start_links, start), (goal_links, goal)):
            dists = _distances_to(spec, matrix, q)
            order = np.argsort(dists, kind="stable")[:k]
            for j in order:
                j = int(j)
                if local_path_valid(scene, robot, spec, q, roadmap.nodes[j], resolution, counter):
                    links[j] = float(dists[j])
    # a direct start-goal connection competes with roadmap routes
    if local_path_valid(scene, robot, spec, start, goal, resolution, counter):
        start_links["goal"] = distance(spec, start, goal)

    def neighbors(u):
        if u == "start":
            return start_links
        if u == "goal":
            return {}
        nbrs = dict(roadmap.adjacency[u])
        if u in goal_links:
            nbrs["goal"] = goal_links[u]
        return nbrs

    order, length = _dijkstra(neighbors, "start", "goal")
    if order is None:
        return PlanResult(path=[], found=False, path_length=math.inf, stats=stats)
    path = []
    for node in order:
        if node == "start":
            path.append(start)
        elif node == "goal":
            path.append(goal)
        else:
            path.append(roadmap.nodes[node])
    return PlanResult(path=path, found=True, path_length=float(length), stats=stats)


def serialize_roadmap(roadmap: Roadmap) -> str:
    """Plain-text graph format; repr floats give a bit-exact round trip."""
    spec = roadmap.spec
    lines = ["# narrow-pass roadmap v1"]
    lines.append(
        "space trans "
        + str(spec.trans_dims)
        + " "
        + " ".join(f"{repr(float(l))} {repr(float(h))}" for l, h in spec.trans_bounds)
    )
    lines.append(f"space angles {spec.angle_dims} {repr(float(spec.angle_weight))}")
    for i, (q, origin) in enumerate(zip(roadmap.nodes, roadmap.origins)):
        coords = " ".join(repr(float(v)) for v in np.concatenate([q.trans, q.angles]))
        lines.append(f"node {i} {origin} {coords}")
    for i, j, length in roadmap.edges():
        lines.append(f"edge {i} {j} {repr(float(length))}")
    return "\n".join(lines) + "\n"


def parse_roadmap(text: str) -> Roadmap:
    """Inverse of serialize_roadmap."""
    trans_bounds = None
    angle_dims = 0
    angle_weight = 1.0
    nodes = []
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "space" and parts[1] == "trans":
            n = int(parts[2])
            vals = [float(v) for v in parts[3:]]
            if len(vals) != 2 * n:
                raise ValueError(f"line {lineno}: trans bounds need {2 * n} numbers")
            trans_bounds = np.array(vals).reshape(n, 2)
        elif parts[0] == "space" and parts[1] == "angles":
            angle_dims = int(parts[2])
            angle_weight = float(parts[3])
        elif parts[0] == "node":
            idx = int(parts[1])
            if idx != len(nodes):
                raise ValueError(f"line {lineno}: node ids must be sequential")
            origin = parts[2]
            coords = [float(v) for v in parts[3:]]
            nodes.append((origin, coords))
        elif parts[0] == "edge":
            edges.append((int(parts[1]), int(parts[2]), float(parts[3])))
        else:
            raise ValueError(f"line {lineno}: unknown directive '{parts[0]}'")
    if trans_bounds is None:
        raise ValueError("roadmap file missing 'space trans' header")
    spec = SpaceSpec(trans_bounds, angle_dims, angle_weight)
    roadmap = Roadmap(spec=spec)
    for origin, coords in nodes:
        if len(coords) != spec.dim:
            raise ValueError("node coordinate count does not match space")
        q = Configuration(np.array(coords[: spec.trans_dims]), np.array(coords[spec.trans_dims :]))
        roadmap.add_node(q, origin)
    for i, j, length in edges:
        roadmap.add_edge(i, j, length)
    return roadmap


def save_roadmap(roadmap: Roadmap, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_roadmap(roadmap))


def load_roadmap(path) -> Roadmap:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_roadmap(fh.read())
