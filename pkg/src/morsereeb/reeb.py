"""Combinatorial Reeb graphs of simple Morse functions.

A graph is a linearly ordered vertex sequence (by critical value) with
Morse index labels and direction-respecting multiedges.  In dimension 3
the vertex shapes are forced: degree-1 vertices are extrema, degree-2
vertices are genus-changing index-1/2 points, degree-3 vertices merge
(two in, one out, index 1) or split (one in, two out, index 2) level-set
components.  Anything else is rejected at construction.
"""

from dataclasses import dataclass
from fractions import Fraction
import json


@dataclass(frozen=True)
class ReebGraph:
    """Immutable labeled multigraph; vertex v is the rank in ``indices``."""

    dim: int
    indices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError("dimension must be >= 2")
        n = len(self.indices)
        if n == 0:
            raise ValueError("graph needs at least one vertex")
        for v, idx in enumerate(self.indices):
            if not 0 <= idx <= self.dim:
                raise ValueError(f"vertex {v}: index {idx} outside 0..{self.dim}")
        ins = [0] * n
        outs = [0] * n
        for u, v in self.edges:
            if not (0 <= u < v < n):
                raise ValueError(f"edge ({u},{v}) must ascend within 0..{n - 1}")
            outs[u] += 1
            ins[v] += 1
        for v in range(n):
            idx = self.indices[v]
            deg = ins[v] + outs[v]
            if deg == 0:
                raise ValueError(f"vertex {v} is isolated")
            if deg == 1:
                if ins[v] == 0 and idx != 0:
                    raise ValueError(f"vertex {v}: degree-1 source must have index 0")
                if outs[v] == 0 and idx != self.dim:
                    raise ValueError(
                        f"vertex {v}: degree-1 sink must have index {self.dim}"
                    )
                continue
            if self.dim != 3:
                continue
            if deg == 2:
                if (ins[v], outs[v]) != (1, 1) or idx not in (1, 2):
                    raise ValueError(
                        f"vertex {v}: degree-2 must be one-in one-out with index 1 or 2"
                    )
            elif deg == 3:
                if (ins[v], outs[v]) == (2, 1):
                    if idx != 1:
                        raise ValueError(f"vertex {v}: merge vertices carry index 1")
                elif (ins[v], outs[v]) == (1, 2):
                    if idx != 2:
                        raise ValueError(f"vertex {v}: split vertices carry index 2")
                else:
                    raise ValueError(
                        f"vertex {v}: degree-3 must merge (2 in) or split (2 out)"
                    )
            else:
                raise ValueError(
                    f"vertex {v}: degree {deg} impossible for a simple Morse function"
                    " in dimension 3"
                )

    @property
    def vertex_count(self) -> int:
        return len(self.indices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def in_edges(self, v: int) -> list[tuple[int, int]]:
        return [e for e in self.edges if e[1] == v]

    def out_edges(self, v: int) -> list[tuple[int, int]]:
        return [e for e in self.edges if e[0] == v]

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def is_connected(self) -> bool:
        n = self.vertex_count
        if n == 1:
            return True
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        seen = {0}
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == n


@dataclass(frozen=True)
class Census:
    """Index and degree tallies.  For dim 3 the construction rules force
    delta2 + delta3 = k1 + k2."""

    vertex_count: int
    edge_count: int
    index_counts: tuple[int, ...]
    degree_counts: dict[int, int]

    @property
    def delta2(self) -> int:
        return self.degree_counts.get(2, 0)

    @property
    def delta3(self) -> int:
        return self.degree_counts.get(3, 0)

    def k(self, i: int) -> int:
        return self.index_counts[i]


def census(g: ReebGraph) -> Census:
    idx_counts = [0] * (g.dim + 1)
    for i in g.indices:
        idx_counts[i] += 1
    deg_counts: dict[int, int] = {}
    for v in range(g.vertex_count):
        d = g.degree(v)
        deg_counts[d] = deg_counts.get(d, 0) + 1
    return Census(
        vertex_count=g.vertex_count,
        edge_count=g.edge_count,
        index_counts=tuple(idx_counts),
        degree_counts=deg_counts,
    )


def cycle_rank(g: ReebGraph) -> int:
    """First Betti number of the underlying graph (connected graphs only)."""
    if not g.is_connected():
        raise ValueError("cycle rank needs a connected graph")
    return g.edge_count - g.vertex_count + 1


@dataclass(frozen=True)
class IdentityCheck:
    ok: bool
    cycle_rank: int
    expected: Fraction
    detail: str = ""


def betti_identity_check(g: ReebGraph) -> IdentityCheck:
    """Cycle rank against -(k0+kn)/2 + delta3/2 + 1 for a closed function."""
    c = census(g)
    beta = cycle_rank(g)
    expected = Fraction(-(c.k(0) + c.k(g.dim)) + c.delta3, 2) + 1
    return IdentityCheck(
        ok=beta == expected,
        cycle_rank=beta,
        expected=expected,
        detail=f"k0={c.k(0)} k{g.dim}={c.k(g.dim)} delta3={c.delta3}",
    )


def parity_check(g: ReebGraph, euler_char: int) -> bool:
    """delta2 must agree with the Euler characteristic mod 2."""
    return census(g).delta2 % 2 == euler_char % 2


def _rebuild(g: ReebGraph, keep: list[int], edges: list[tuple[int, int]]) -> ReebGraph:
    rank = {v: i for i, v in enumerate(keep)}
    return ReebGraph(
        dim=g.dim,
        indices=tuple(g.indices[v] for v in keep),
        edges=tuple((rank[u], rank[v]) for u, v in edges),
    )


def reduce_extrema(g: ReebGraph) -> ReebGraph:
    """Cancel surplus extrema against adjacent degree-3 vertices.

    A source is cancellable when its unique out-neighbor is a merge; the
    pair is removed and the merge's other input rewired to its output
    (dually for sinks against splits).  Lowest rank goes first.  Cycle
    rank and the degree-2 census are preserved.  Raises when extrema
    remain but no adjacent pair exists.
    """
    if g.dim != 3:
        raise ValueError("extremum cancellation is defined for dimension 3")
    work = g
    while True:
        progress = False
        while True:
            c = census(work)
            if c.k(0) <= 1:
                break
            candidate = None
            for v in range(work.vertex_count):
                if work.indices[v] == 0 and work.degree(v) == 1:
                    m = work.out_edges(v)[0][1]
                    if work.indices[m] == 1 and work.degree(m) == 3:
                        candidate = (v, m)
                        break
            if candidate is None:
                break
            v, m = candidate
            (u, _), = [e for e in work.in_edges(m) if e[0] != v]
            (_, w), = work.out_edges(m)
            keep = [x for x in range(work.vertex_count) if x not in (v, m)]
            edges = [e for e in work.edges if v not in e and m not in e] + [(u, w)]
            work = _rebuild(work, keep, edges)
            progress = True
        while True:
            c = census(work)
            if c.k(3) <= 1:
                break
            candidate = None
            for v in range(work.vertex_count):
                if work.indices[v] == 3 and work.degree(v) == 1:
                    q = work.in_edges(v)[0][0]
                    if work.indices[q] == 2 and work.degree(q) == 3:
                        candidate = (v, q)
                        break
            if candidate is None:
                break
            v, q = candidate
            (u, _), = work.in_edges(q)
            (_, w), = [e for e in work.out_edges(q) if e[1] != v]
            keep = [x for x in range(work.vertex_count) if x not in (v, q)]
            edges = [e for e in work.edges if v not in e and q not in e] + [(u, w)]
            work = _rebuild(work, keep, edges)
            progress = True
        c = census(work)
        if c.k(0) == 1 and c.k(3) == 1:
            return work
        if not progress:
            raise ValueError(
                f"stuck with k0={c.k(0)}, k3={c.k(3)}: no extremum is adjacent"
                " to a cancelling degree-3 vertex"
            )


def canonical_form(g: ReebGraph) -> ReebGraph:
    """Slide degree-2 vertices to the ends of the order: the index-1 block
    directly above the minimum, the index-2 block directly below the
    maximum.

    This is a homeomorphism of the underlying graph (smooth out bivalent
    vertices, re-subdivide near the extrema), so cycle rank, the degree
    census and every k_i are unchanged.  Idempotent.  Pre-condition:
    dimension 3, connected, unique minimum and maximum.
    """
    if g.dim != 3:
        raise ValueError("canonical form is defined for dimension 3")
    if not g.is_connected():
        raise ValueError("canonical form needs a connected graph")
    c = census(g)
    if c.k(0) != 1 or c.k(3) != 1:
        raise ValueError("canonical form needs a unique minimum and maximum")
    n = g.vertex_count
    deg2 = [g.degree(v) == 2 for v in range(n)]
    block_a = [v for v in range(n) if deg2[v] and g.indices[v] == 1]
    block_b = [v for v in range(n) if deg2[v] and g.indices[v] == 2]
    core = [v for v in range(n) if not deg2[v]]
    vmin, vmax = 0, n - 1

    out_next = {}
    for v in range(n):
        if deg2[v]:
            out_next[v] = g.out_edges(v)[0][1]
    core_edges = []
    for u in core:
        for _, x in g.out_edges(u):
            while deg2[x]:
                x = out_next[x]
            core_edges.append((u, x))

    interior = [v for v in core if v not in (vmin, vmax)]
    new_order = [vmin] + block_a + interior + block_b + [vmax]
    rank = {v: i for i, v in enumerate(new_order)}
    new_edges = []
    for u, w in core_edges:
        path = [u]
        if u == vmin:
            path.extend(block_a)
        if w == vmax:
            path.extend(block_b)
        path.append(w)
        for a, b in zip(path, path[1:]):
            new_edges.append((rank[a], rank[b]))
    return ReebGraph(
        dim=g.dim,
        indices=tuple(g.indices[v] for v in new_order),
        edges=tuple(new_edges),
    )


@dataclass(frozen=True)
class RealizationReport:
    """Whether a graph could be the Reeb graph of some Morse function on a
    profiled manifold.  Necessary conditions only: passing means nothing
    is obstructed, not that a realizing function exists."""

    status: str  # "obstructed" | "not-obstructed" | "insufficient-data"
    reasons: tuple[str, ...] = ()
    checks_run: tuple[str, ...] = ()
    missing: tuple[str, ...] = ()


def realization_obstruction(g: ReebGraph, profile) -> RealizationReport:
    """Test a dim-3 graph against a manifold profile's certified bounds."""
    from .bounds import estimate  # soft layering: profiles know nothing of graphs

    if g.dim != profile.dim:
        return RealizationReport(
            status="obstructed",
            reasons=(f"graph dimension {g.dim} differs from profile dimension {profile.dim}",),
            checks_run=("dimension",),
        )
    c = census(g)
    reasons = []
    checks = []
    missing = []
    if profile.pi1_corank is not None:
        checks.append("corank")
        beta = cycle_rank(g)
        if beta > profile.pi1_corank:
            reasons.append(
                f"cycle rank {beta} exceeds corank {profile.pi1_corank}"
            )
    else:
        missing.append("pi1_corank")
    if profile.euler_char is not None:
        checks.append("parity")
        if c.delta2 % 2 != profile.euler_char % 2:
            reasons.append(
                f"delta2 = {c.delta2} has the wrong parity for euler characteristic"
                f" {profile.euler_char}"
            )
    else:
        missing.append("euler_char")
    est = estimate(profile)
    if est.lower > 0 or est.provenance:
        checks.append("delta2-lower-bound")
        if c.delta2 < est.lower:
            reasons.append(
                f"delta2 = {c.delta2} is below the certified lower bound {est.lower}"
            )
    if not checks:
        return RealizationReport(
            status="insufficient-data", missing=tuple(missing)
        )
    return RealizationReport(
        status="obstructed" if reasons else "not-obstructed",
        reasons=tuple(reasons),
        checks_run=tuple(checks),
        missing=tuple(missing),
    )


# ---------------------------------------------------------------------------
# Serialization

def to_dot(g: ReebGraph) -> str:
    """Deterministic DOT rendering; repeated calls are byte-identical."""
    lines = ["digraph reeb {"]
    for v in range(g.vertex_count):
        lines.append(
            f'  v{v} [label="v{v}: idx={g.indices[v]} deg={g.degree(v)}"];'
        )
    for u, v in g.edges:
        lines.append(f"  v{u} -> v{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json_dict(g: ReebGraph) -> dict:
    return {
        "dim": g.dim,
        "vertices": list(g.indices),
        "edges": [list(e) for e in g.edges],
    }


def from_json_dict(data: dict) -> ReebGraph:
    try:
        dim = int(data["dim"])
        indices = tuple(int(i) for i in data["vertices"])
        edges = tuple((int(u), int(v)) for u, v in data["edges"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed graph JSON: {exc}") from None
    return ReebGraph(dim=dim, indices=indices, edges=edges)


def to_json(g: ReebGraph) -> str:
    return json.dumps(to_json_dict(g), indent=2) + "\n"


def from_json(text: str) -> ReebGraph:
    return from_json_dict(json.loads(text))
