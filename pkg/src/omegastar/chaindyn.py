"""Chain transitivity and chain recurrence for finite dynamical systems.

A finite system is a set of labelled states with a total self-map, plus
optionally a rational metric and named covers.  A *resolution* fixes what
counts as a small error: either a positive rational epsilon (strict
``d(f(x), y) < eps``) or the name of a cover (``f(x)`` and ``y`` share a
block).  The names ``"singleton"`` and ``"whole"`` are always available
and mean the finest and the coarsest cover.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from numbers import Rational
from typing import Iterable, Mapping, Optional, Sequence, Union

import networkx as nx

__all__ = [
    "SystemSpecError", "FiniteSystem", "ChainGraph", "Chain", "Resolution", "OracleBoundError",
    "DEFAULT_ORACLE_BOUND", "eps_graph", "cover_graph", "chain_graph", "find_chain",
    "is_chain_transitive", "is_chain_recurrent", "clopen_transitive_oracle",
    "clopen_recurrent_oracle", "chain_recurrent_set", "minimal_subsystem", "unit_metric",
    "validate_chain", "parse_resolution",
]

DEFAULT_ORACLE_BOUND = 16
SINGLETON = "singleton"
WHOLE = "whole"

Resolution = Union[Fraction, str]


class SystemSpecError(ValueError):
    pass


class OracleBoundError(ValueError):
    pass


def _fraction(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise SystemSpecError(f"{where}: expected a rational, got {value!r}")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value).limit_denominator(10**9)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except ValueError:
            pass
    raise SystemSpecError(f"{where}: expected a rational, got {value!r}")


@dataclass(frozen=True)
class FiniteSystem:
    states: tuple
    map: Mapping[str, str]
    metric: Optional[tuple] = None
    covers: Mapping[str, tuple] = field(default_factory=dict)

    def __post_init__(self):
        states = tuple(self.states)
        object.__setattr__(self, "states", states)
        if not states:
            raise SystemSpecError("a system needs at least one state")
        if len(set(states)) != len(states):
            raise SystemSpecError("state labels must be distinct")
        known = set(states)
        mapping = dict(self.map)
        for x in states:
            if x not in mapping:
                raise SystemSpecError(f"map is not total: no image for {x!r}")
            if mapping[x] not in known:
                raise SystemSpecError(f"map sends {x!r} to unknown state {mapping[x]!r}")
        extra = set(mapping) - known
        if extra:
            raise SystemSpecError(f"map mentions unknown states {sorted(extra)}")
        object.__setattr__(self, "map", mapping)
        if self.metric is not None:
            object.__setattr__(self, "metric", _check_metric(self.metric, len(states)))
        covers = {}
        for name, blocks in dict(self.covers).items():
            blocks = tuple(frozenset(b) for b in blocks)
            for b in blocks:
                if not b <= known:
                    raise SystemSpecError(f"cover {name!r} mentions unknown states {sorted(b - known)}")
            if set().union(*blocks) != known:
                missing = sorted(known - set().union(*blocks), key=states.index)
                raise SystemSpecError(f"cover {name!r} does not cover {missing}")
            covers[name] = blocks
        object.__setattr__(self, "covers", covers)

    def __hash__(self):
        return hash((self.states, tuple(self.map[x] for x in self.states), self.metric,
                     tuple(sorted((k, tuple(sorted(map(sorted, v)))) for k, v in self.covers.items()))))

    def __call__(self, x):
        return self.map[x]

    @cached_property
    def position(self) -> dict:
        return {x: i for i, x in enumerate(self.states)}

    def dist(self, x, y) -> Fraction:
        if self.metric is None:
            raise SystemSpecError("system has no metric")
        pos = self.position
        return self.metric[pos[x]][pos[y]]

    def cover(self, name: str) -> tuple:
        if name in self.covers:
            return self.covers[name]
        if name == SINGLETON:
            return tuple(frozenset([x]) for x in self.states)
        if name == WHOLE:
            return (frozenset(self.states),)
        raise SystemSpecError(f"unknown cover {name!r}")

    def with_metric(self, metric) -> "FiniteSystem":
        return FiniteSystem(self.states, self.map, metric, self.covers)

    def diameter(self) -> Fraction:
        if self.metric is None:
            raise SystemSpecError("system has no metric")
        return max(max(row) for row in self.metric)

    def is_bijective(self) -> bool:
        return len(set(self.map.values())) == len(self.states)

    is_surjective = is_bijective

    def image(self, subset: Iterable) -> frozenset:
        return frozenset(self.map[x] for x in subset)

    # --- JSON -----------------------------------------------------------
    def to_dict(self) -> dict:
        data = {"states": list(self.states), "map": {x: self.map[x] for x in self.states}}
        if self.metric is not None:
            data["metric"] = [[_rat_to_json(v) for v in row] for row in self.metric]
        if self.covers:
            order = self.position
            data["covers"] = {
                name: [sorted(b, key=order.__getitem__) for b in blocks]
                for name, blocks in self.covers.items()
            }
        return data

    @classmethod
    def from_dict(cls, data) -> "FiniteSystem":
        if not isinstance(data, dict):
            raise SystemSpecError("system must be a JSON object")
        for key in ("states", "map"):
            if key not in data:
                raise SystemSpecError(f"system is missing field {key!r}")
        if not isinstance(data["states"], list) or not all(isinstance(s, str) for s in data["states"]):
            raise SystemSpecError("field 'states': expected a list of strings")
        if not isinstance(data["map"], dict):
            raise SystemSpecError("field 'map': expected an object")
        covers = data.get("covers") or {}
        if not isinstance(covers, dict):
            raise SystemSpecError("field 'covers': expected an object")
        return cls(tuple(data["states"]), data["map"], data.get("metric"), covers)

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def _rat_to_json(v: Fraction):
    return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _check_metric(metric, n: int) -> tuple:
    rows = list(metric)
    if len(rows) != n or any(len(row) != n for row in rows):
        raise SystemSpecError(f"metric must be a {n}x{n} matrix")
    m = tuple(tuple(_fraction(v, f"metric[{i}][{j}]") for j, v in enumerate(row))
              for i, row in enumerate(rows))
    for i in range(n):
        if m[i][i] != 0:
            raise SystemSpecError(f"metric[{i}][{i}] must be 0")
        for j in range(n):
            if m[i][j] != m[j][i]:
                raise SystemSpecError(f"metric is not symmetric at ({i}, {j})")
            if i != j and m[i][j] <= 0:
                raise SystemSpecError(f"metric[{i}][{j}] must be positive")
    for i, j, k in itertools.product(range(n), repeat=3):
        if m[i][k] > m[i][j] + m[j][k]:
            raise SystemSpecError(f"triangle inequality fails for ({i}, {j}, {k})")
    return m


def unit_metric(n: int) -> tuple:
    return tuple(tuple(Fraction(0 if i == j else 1) for j in range(n)) for i in range(n))


def parse_resolution(value) -> Resolution:
    """A positive rational (epsilon) or a cover name."""
    if isinstance(value, str):
        try:
            eps = Fraction(value)
        except ValueError:
            return value
    else:
        eps = _fraction(value, "resolution")
    if eps <= 0:
        raise SystemSpecError(f"epsilon must be positive, got {eps}")
    return eps


@dataclass(frozen=True)
class ChainGraph:
    vertices: tuple
    edges: frozenset

    def successors(self, x) -> list:
        return [y for y in self.vertices if (x, y) in self.edges]

    def to_networkx(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return g

    def to_dot(self, name: str = "chains") -> str:
        order = {v: i for i, v in enumerate(self.vertices)}
        lines = [f"digraph {_dot_id(name)} {{"]
        for v in self.vertices:
            lines.append(f"  {_dot_id(v)} [label={_dot_id(v)}];")
        for x, y in sorted(self.edges, key=lambda e: (order[e[0]], order[e[1]])):
            lines.append(f"  {_dot_id(x)} -> {_dot_id(y)} [step=1];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _dot_id(label) -> str:
    text = str(label).replace("\\", "\\\\").replace('"', '\\"')
    return f'"{text}"'


@dataclass(frozen=True)
class Chain:
    points: tuple
    resolution: Resolution

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if len(self.points) < 2:
            raise ValueError("a chain needs at least one step")

    def __len__(self):
        return len(self.points) - 1

    def to_dict(self) -> dict:
        res = self.resolution
        return {"points": list(self.points),
                "resolution": res if isinstance(res, str) else {"eps": _rat_to_json(res)}}


def eps_graph(sys: FiniteSystem, eps) -> ChainGraph:
    eps = parse_resolution(eps)
    if isinstance(eps, str):
        raise SystemSpecError(f"expected an epsilon, got cover name {eps!r}")
    if sys.metric is None:
        raise SystemSpecError("eps_graph needs a metric")
    pos = sys.position
    edges = frozenset(
        (x, y) for x in sys.states for y in sys.states
        if sys.metric[pos[sys.map[x]]][pos[y]] < eps
    )
    return ChainGraph(sys.states, edges)


def cover_graph(sys: FiniteSystem, cover: str) -> ChainGraph:
    blocks = sys.cover(cover)
    edges = set()
    for x in sys.states:
        fx = sys.map[x]
        for b in blocks:
            if fx in b:
                edges.update((x, y) for y in b)
    return ChainGraph(sys.states, frozenset(edges))


def chain_graph(sys: FiniteSystem, resolution) -> ChainGraph:
    res = parse_resolution(resolution)
    if isinstance(res, str):
        return cover_graph(sys, res)
    return eps_graph(sys, res)


def _step_ok(sys: FiniteSystem, res: Resolution, x, y) -> bool:
    if isinstance(res, str):
        fx = sys.map[x]
        return any(fx in b and y in b for b in sys.cover(res))
    return sys.dist(sys.map[x], y) < res


def validate_chain(sys: FiniteSystem, chain: Chain) -> bool:
    """Re-check every step of ``chain`` directly from the definition."""
    res = parse_resolution(chain.resolution)
    if len(chain.points) < 2:
        return False
    return all(_step_ok(sys, res, x, y) for x, y in zip(chain.points, chain.points[1:]))


def find_chain(sys: FiniteSystem, resolution, a, b) -> Optional[Chain]:
    """Shortest chain from ``a`` to ``b`` with at least one step, or None."""
    res = parse_resolution(resolution)
    graph = chain_graph(sys, res)
    for v in (a, b):
        if v not in sys.position:
            raise SystemSpecError(f"unknown state {v!r}")
    succ = {x: graph.successors(x) for x in sys.states}
    parent = {}
    queue = deque()
    for y in succ[a]:
        if y not in parent:
            parent[y] = a
            queue.append(y)
    while queue:
        y = queue.popleft()
        if y == b:
            path = [b]
            cur = b
            while True:
                cur = parent[cur]
                path.append(cur)
                if cur == a and len(path) >= 2:
                    break
            return Chain(tuple(reversed(path)), res)
        for w in succ[y]:
            if w not in parent:
                parent[w] = y
                queue.append(w)
    return None


def is_chain_transitive(sys: FiniteSystem, resolution=SINGLETON) -> bool:
    g = chain_graph(sys, resolution).to_networkx()
    if len(sys.states) == 1:
        return g.has_edge(sys.states[0], sys.states[0])
    return nx.is_strongly_connected(g)


def _cyclic_vertices(graph: ChainGraph) -> set:
    g = graph.to_networkx()
    out = set()
    for comp in nx.strongly_connected_components(g):
        if len(comp) > 1:
            out |= comp
        else:
            (v,) = comp
            if g.has_edge(v, v):
                out.add(v)
    return out


def chain_recurrent_set(sys: FiniteSystem, resolution=SINGLETON) -> frozenset:
    return frozenset(_cyclic_vertices(chain_graph(sys, resolution)))


def is_chain_recurrent(sys: FiniteSystem, resolution=SINGLETON) -> bool:
    return len(chain_recurrent_set(sys, resolution)) == len(sys.states)


def _proper_subsets(states: Sequence, include_full: bool):
    n = len(states)
    for mask in range(1, 1 << n):
        if mask == (1 << n) - 1 and not include_full:
            continue
        yield frozenset(states[i] for i in range(n) if mask >> i & 1)


def _bound_check(sys: FiniteSystem, bound: int) -> None:
    if len(sys.states) > bound:
        raise OracleBoundError(
            f"brute-force oracle refused: {len(sys.states)} states exceeds the bound of {bound}")


def clopen_transitive_oracle(sys: FiniteSystem, bound: int = DEFAULT_ORACLE_BOUND) -> bool:
    """No proper nonempty subset is mapped into itself."""
    _bound_check(sys, bound)
    return not any(sys.image(u) <= u for u in _proper_subsets(sys.states, include_full=False))


def clopen_recurrent_oracle(sys: FiniteSystem, bound: int = DEFAULT_ORACLE_BOUND) -> bool:
    """No subset is mapped onto a strict subset of itself."""
    _bound_check(sys, bound)
    return not any(sys.image(u) < u for u in _proper_subsets(sys.states, include_full=True))


def minimal_subsystem(sys: FiniteSystem) -> frozenset:
    """The periodic cycle of least size, ties broken by least state position."""
    pos = sys.position
    cycles = {}
    for start in sys.states:
        seen = []
        x = start
        while x not in seen:
            seen.append(x)
            x = sys.map[x]
        cycle = frozenset(seen[seen.index(x):])
        cycles[cycle] = (len(cycle), min(pos[y] for y in cycle))
    return min(cycles, key=cycles.__getitem__)
