"""Exchange-graph exploration of decorated seeds.

A decorated seed carries, besides the naked seed, the walk from the root
(its provenance word), the tuple of chart coordinates ``xvars`` (the
chart pullbacks of the seed monomials z^{e_i}), and, on demand, the
composed ambient torus transformation from the root chart.  Mutating
twice at an index restores the decoration exactly, and vertices of the
exchange graph are identified by the sorted multiset of X-variable
renderings, i.e. up to simultaneous index permutation of the decoration.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Callable

from .curves import GeodesicConfig, is_mutable, ledger_from_geodesics, mutate_geodesics
from .errors import BudgetExceeded
from .laurent import RationalExpr, RationalMap, compose_maps, term_limit, x_mutation_map
from .seeds import Seed, mutate_seed, mutation_sign

DEFAULT_EXPR_BUDGET = 10_000
ENV_BUDGET = "MUTWB_BUDGET"


def expression_budget(override: int | None = None) -> int:
    if override is not None:
        return override
    raw = os.environ.get(ENV_BUDGET)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return DEFAULT_EXPR_BUDGET


@dataclass(frozen=True)
class DecoratedSeed:
    """A seed with its chart decoration along a mutation walk.

    ``xvars[i]`` is the pullback of z^{e_i} to the root torus; ``word`` is
    the provenance (0-based indices).  The full ambient ``chart`` map is
    replayed lazily from the word since only the X-variables are needed
    for vertex identity.
    """

    seed: Seed
    xvars: tuple[RationalExpr, ...]
    word: tuple[int, ...]
    root_seed: Seed
    _chart: RationalMap | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if len(self.xvars) != self.seed.size:
            raise ValueError("need one X-variable per seed vector")

    @property
    def chart(self) -> RationalMap:
        """The composed transformation from the root torus to this chart."""
        if self._chart is None:
            chart = RationalMap.identity(self.root_seed.rank)
            s = self.root_seed
            for k in self.word:
                step = x_mutation_map(s, k, use_sign=True)
                chart = compose_maps(step, chart)
                s = mutate_seed(s, k)
            object.__setattr__(self, "_chart", chart)
        return self._chart

    def max_expression_size(self) -> int:
        return max((x.monomial_count() for x in self.xvars), default=1)

    def same_decoration(self, other: "DecoratedSeed") -> bool:
        """Exact indexwise equality of X-variable decorations."""
        return self.xvars == other.xvars


def root_decorated(seed: Seed) -> DecoratedSeed:
    xvars = tuple(RationalExpr.monomial(v) for v in seed.vectors)
    return DecoratedSeed(seed, xvars, (), seed, RationalMap.identity(seed.rank))


def mutate_decorated(d: DecoratedSeed, k: int) -> DecoratedSeed:
    """Extend the walk by one mutation, updating the X-variables by the
    chart-coordinate exchange recurrence."""
    seed = d.seed
    seed.check_index(k)
    eps = mutation_sign(seed, k)
    sgn = -1 if seed.signing[k] else 1
    xk = d.xvars[k]
    oriented = xk if eps > 0 else xk.inverse()
    base = RationalExpr.one(xk.rank) + (oriented if sgn > 0 else -oriented)
    new_xvars = []
    for i in range(seed.size):
        if i == k:
            new_xvars.append(xk.inverse())
            continue
        c = seed.pairing(i, k)
        value = d.xvars[i]
        shift = eps * c
        if shift > 0:
            value = value * xk**shift
        value = value * base ** (-c)
        new_xvars.append(value)
    return DecoratedSeed(mutate_seed(seed, k), tuple(new_xvars), d.word + (k,), d.root_seed)


def mutate_decorated_word(d: DecoratedSeed, word) -> DecoratedSeed:
    for k in word:
        d = mutate_decorated(d, k)
    return d


def canonical_key(d: DecoratedSeed) -> bytes:
    """Deterministic byte string identifying the chart up to simultaneous
    index permutation: the sorted multiset of X-variable renderings."""
    return "\n".join(sorted(x.render() for x in d.xvars)).encode()


@dataclass
class ExchangeGraph:
    root_key: bytes
    vertices: dict
    edges: set
    layer_sizes: list[int]
    complete: bool

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)


MutableFilter = Callable[[tuple[int, ...], int], bool]


def explore(
    root: Seed | DecoratedSeed,
    depth: int,
    mutable_filter: MutableFilter | None = None,
    expr_budget: int | None = None,
    max_vertices: int | None = None,
) -> ExchangeGraph:
    """Breadth-first mutation orbit up to the given depth.

    Vertices are deduplicated by :func:`canonical_key`; edges are stored
    symmetrically.  Raises :class:`BudgetExceeded` (carrying the partial
    graph) when an X-variable outgrows the expression budget or the vertex
    cap is hit.  The layer-by-layer traversal makes the result independent
    of frontier ordering.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    start = root if isinstance(root, DecoratedSeed) else root_decorated(root)
    budget = expression_budget(expr_budget)
    root_key = canonical_key(start)
    vertices = {root_key: start}
    edges: set = set()
    graph = ExchangeGraph(root_key, vertices, edges, [1], False)
    frontier = [(root_key, start)]
    for _ in range(depth):
        next_frontier = []
        for key, vertex in sorted(frontier, key=lambda kv: kv[0]):
            for k in range(vertex.seed.size):
                if mutable_filter is not None and not mutable_filter(vertex.word, k):
                    continue
                try:
                    with term_limit(budget):
                        neighbor = mutate_decorated(vertex, k)
                except BudgetExceeded as exc:
                    graph.layer_sizes.append(len(next_frontier))
                    exc.partial = graph
                    raise
                if neighbor.max_expression_size() > budget:
                    graph.layer_sizes.append(len(next_frontier))
                    raise BudgetExceeded(
                        f"expression size exceeded {budget} monomials", partial=graph
                    )
                nkey = canonical_key(neighbor)
                edges.add((key, k, nkey))
                edges.add((nkey, k, key))
                if nkey not in vertices:
                    vertices[nkey] = neighbor
                    next_frontier.append((nkey, neighbor))
                    if max_vertices is not None and len(vertices) > max_vertices:
                        graph.layer_sizes.append(len(next_frontier))
                        raise BudgetExceeded(
                            f"vertex budget {max_vertices} exceeded", partial=graph
                        )
        graph.layer_sizes.append(len(next_frontier))
        if not next_frontier:
            graph.complete = True
            break
        frontier = next_frontier
    return graph


@dataclass(frozen=True)
class FiniteTypeResult:
    kind: str  # "finite" | "exceeded"
    size: int | None = None

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"


def is_finite_type(root: Seed, budget: int) -> FiniteTypeResult:
    """BFS until the orbit closes or the vertex budget is exceeded."""
    if budget <= 0:
        raise ValueError("budget must be positive")
    try:
        graph = explore(root, depth=budget, max_vertices=budget)
    except BudgetExceeded:
        return FiniteTypeResult("exceeded")
    if graph.complete:
        return FiniteTypeResult("finite", graph.vertex_count)
    return FiniteTypeResult("exceeded")


@dataclass
class ConfigOrbit:
    """BFS orbit of a curve configuration, keyed by the class multiset.

    Infinite-type chart decorations outgrow any budget within a few steps,
    so configuration exploration identifies vertices by their classes (up
    to simultaneous index permutation); the ledger is redundant data for
    geodesic configurations and is recomputed per vertex.
    """

    root_key: bytes
    vertices: dict
    edges: set
    layer_sizes: list[int]
    complete: bool

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)


def config_key(cfg: GeodesicConfig) -> bytes:
    return repr(sorted(cfg.classes)).encode()


def explore_config(cfg: GeodesicConfig, depth: int, max_vertices: int | None = None) -> ConfigOrbit:
    """Breadth-first orbit of a geodesic configuration under mutation."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    root_key = config_key(cfg)
    vertices = {root_key: cfg}
    edges: set = set()
    orbit = ConfigOrbit(root_key, vertices, edges, [1], False)
    frontier = [(root_key, cfg)]
    for _ in range(depth):
        next_frontier = []
        for key, vertex in sorted(frontier, key=lambda kv: kv[0]):
            ledger = ledger_from_geodesics(vertex)
            for k in range(vertex.size):
                if not is_mutable(ledger, k):
                    continue
                neighbor = mutate_geodesics(vertex, k)
                nkey = config_key(neighbor)
                edges.add((key, k, nkey))
                edges.add((nkey, k, key))
                if nkey not in vertices:
                    vertices[nkey] = neighbor
                    next_frontier.append((nkey, neighbor))
                    if max_vertices is not None and len(vertices) > max_vertices:
                        orbit.layer_sizes.append(len(next_frontier))
                        raise BudgetExceeded(
                            f"vertex budget {max_vertices} exceeded", partial=orbit
                        )
        orbit.layer_sizes.append(len(next_frontier))
        if not next_frontier:
            orbit.complete = True
            break
        frontier = next_frontier
    return orbit


def config_orbit_to_json(orbit: ConfigOrbit) -> dict:
    vertices = []
    for key in sorted(orbit.vertices):
        cfg = orbit.vertices[key]
        vertices.append({"key": key.decode(), "classes": [list(v) for v in cfg.classes]})
    edges = sorted(
        {(min(a, b).decode(), k + 1, max(a, b).decode()) for (a, k, b) in orbit.edges}
    )
    return {
        "root": orbit.root_key.decode(),
        "vertices": vertices,
        "edges": [list(e) for e in edges],
        "layer_sizes": orbit.layer_sizes,
        "complete": orbit.complete,
    }


def graph_to_json(graph: ExchangeGraph) -> dict:
    vertices = []
    for key in sorted(graph.vertices):
        v = graph.vertices[key]
        vertices.append(
            {
                "key": key.decode(),
                "vectors": [list(vec) for vec in v.seed.vectors],
                "xvars": [x.render() for x in v.xvars],
                "word": [k + 1 for k in v.word],
            }
        )
    edges = sorted(
        {(min(a, b).decode(), k + 1, max(a, b).decode()) for (a, k, b) in graph.edges}
    )
    return {
        "root": graph.root_key.decode(),
        "vertices": vertices,
        "edges": [list(e) for e in edges],
        "layer_sizes": graph.layer_sizes,
        "complete": graph.complete,
    }


def graph_to_dot(graph: ExchangeGraph) -> str:
    index = {key: i for i, key in enumerate(sorted(graph.vertices))}
    lines = ["graph exchange {"]
    for key, i in index.items():
        v = graph.vertices[key]
        label = ",".join(str(list(vec)) for vec in v.seed.vectors)
        lines.append(f'  n{i} [label="{label}"];')
    seen = set()
    for a, k, b in sorted(graph.edges):
        lo, hi = min(a, b), max(a, b)
        if (lo, k, hi) in seen:
            continue
        seen.add((lo, k, hi))
        lines.append(f'  n{index[lo]} -- n{index[hi]} [label="{k + 1}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
