"""Handle-attachment scripts over evolving boundary surfaces.

A simple Morse function on a closed orientable 3-manifold is modeled as a
sequence of handle events acting on a multiset of level-set components,
each an orientable closed surface carrying only its genus.  Replaying a
sequence emits the Reeb graph vertex by vertex.

Event kinds and their Reeb vertex shapes:
    h0              new genus-0 component         degree-1 source, index 0
    h1 +g @c        genus +1 on one component     degree-2, index 1
    h1 merge @a @b  join two components           merge (2 in, 1 out), index 1
    h2 split @c (p,q)  split, genus partition     split (1 in, 2 out), index 2
    h2 -g @c        genus -1 (needs genus >= 1)   degree-2, index 2
    h3 @c           cap a genus-0 component       degree-1 sink, index 3

Component ids are assigned in creation order starting from 1.  Events
that keep a component (genus changes) keep its id; merges and splits
allocate fresh ids.
"""

import re
from dataclasses import dataclass, replace

from .presentations import Presentation, omega_fixed
from .reeb import Census, ReebGraph, census, cycle_rank

_KIND_INDEX = {
    "h0": 0,
    "h1 +g": 1,
    "h1 merge": 1,
    "h2 split": 2,
    "h2 -g": 2,
    "h3": 3,
}


@dataclass(frozen=True)
class HandleEvent:
    kind: str
    targets: tuple[int, ...] = ()
    partition: tuple[int, int] | None = None

    def __post_init__(self):
        if self.kind not in _KIND_INDEX:
            raise ValueError(f"unknown event kind {self.kind!r}")
        want = {"h0": 0, "h1 +g": 1, "h1 merge": 2, "h2 split": 1, "h2 -g": 1, "h3": 1}
        if len(self.targets) != want[self.kind]:
            raise ValueError(
                f"{self.kind} takes {want[self.kind]} target(s), got {len(self.targets)}"
            )
        if self.kind == "h1 merge" and self.targets[0] == self.targets[1]:
            raise ValueError("merge needs two distinct components")
        if self.kind == "h2 split":
            if self.partition is None:
                raise ValueError("split needs a genus partition")
            if self.partition[0] < 0 or self.partition[1] < 0:
                raise ValueError("genus partition parts must be non-negative")
        elif self.partition is not None:
            raise ValueError(f"{self.kind} takes no partition")

    @property
    def index(self) -> int:
        return _KIND_INDEX[self.kind]


def h0() -> HandleEvent:
    return HandleEvent("h0")


def add_genus(c: int) -> HandleEvent:
    return HandleEvent("h1 +g", (c,))


def merge(c1: int, c2: int) -> HandleEvent:
    return HandleEvent("h1 merge", (c1, c2))


def split(c: int, left: int, right: int) -> HandleEvent:
    return HandleEvent("h2 split", (c,), (left, right))


def drop_genus(c: int) -> HandleEvent:
    return HandleEvent("h2 -g", (c,))


def h3(c: int) -> HandleEvent:
    return HandleEvent("h3", (c,))


@dataclass(frozen=True)
class SurfaceState:
    """Multiset of live level-set components as (id, genus) pairs."""

    components: tuple[tuple[int, int], ...] = ()
    next_id: int = 1

    def genus(self, cid: int) -> int:
        for i, g in self.components:
            if i == cid:
                return g
        raise ValueError(f"no live component @c{cid}")

    def has(self, cid: int) -> bool:
        return any(i == cid for i, _ in self.components)

    def describe(self) -> str:
        if not self.components:
            return "(empty)"
        return " ".join(f"@c{i}:genus{g}" for i, g in self.components)


@dataclass(frozen=True)
class StepResult:
    state: SurfaceState
    index: int
    consumed: tuple[int, ...]
    produced: tuple[int, ...]


def apply_event(state: SurfaceState, event: HandleEvent) -> StepResult:
    """One transition of the surface state machine.

    consumed/produced list the component ids whose pending Reeb edges end
    or begin at this vertex; genus-changing events re-anchor their
    component, so it appears in both.
    """
    comps = dict(state.components)
    for t in event.targets:
        if t not in comps:
            raise ValueError(f"no live component @c{t}")
    nid = state.next_id

    if event.kind == "h0":
        comps[nid] = 0
        out = (nid,)
        return StepResult(_pack(comps, nid + 1), 0, (), out)
    if event.kind == "h1 +g":
        (c,) = event.targets
        comps[c] += 1
        return StepResult(_pack(comps, nid), 1, (c,), (c,))
    if event.kind == "h1 merge":
        c1, c2 = event.targets
        g = comps.pop(c1) + comps.pop(c2)
        comps[nid] = g
        return StepResult(_pack(comps, nid + 1), 1, (c1, c2), (nid,))
    if event.kind == "h2 split":
        (c,) = event.targets
        left, right = event.partition
        if left + right != comps[c]:
            raise ValueError(
                f"partition ({left},{right}) does not sum to genus {comps[c]} of @c{c}"
            )
        del comps[c]
        comps[nid] = left
        comps[nid + 1] = right
        return StepResult(_pack(comps, nid + 2), 2, (c,), (nid, nid + 1))
    if event.kind == "h2 -g":
        (c,) = event.targets
        if comps[c] < 1:
            raise ValueError(f"genus decrement on genus-0 component @c{c}")
        comps[c] -= 1
        return StepResult(_pack(comps, nid), 2, (c,), (c,))
    # h3
    (c,) = event.targets
    if comps[c] != 0:
        raise ValueError(f"3-handle on @c{c} with genus {comps[c]} > 0")
    del comps[c]
    return StepResult(_pack(comps, nid), 3, (c,), ())


def _pack(comps: dict[int, int], next_id: int) -> SurfaceState:
    return SurfaceState(tuple(sorted(comps.items())), next_id)


@dataclass(frozen=True)
class HandleSequence:
    events: tuple[HandleEvent, ...]

    def __post_init__(self):
        if not self.events:
            raise ValueError("empty sequence")

    def __len__(self) -> int:
        return len(self.events)


@dataclass(frozen=True)
class SimulationResult:
    graph: ReebGraph
    census: Census
    states: tuple[SurfaceState, ...]

    @property
    def k(self) -> tuple[int, ...]:
        return self.census.index_counts


def run(seq: HandleSequence) -> SimulationResult:
    """Replay a closed sequence and assemble its Reeb graph.

    Each live component carries a pending edge anchored at the vertex
    that last produced it; the edge materializes when the component is
    next consumed.  The sequence must start from and return to the empty
    state, and the resulting graph must be connected.
    """
    state = SurfaceState()
    pending: dict[int, int] = {}
    indices: list[int] = []
    edges: list[tuple[int, int]] = []
    states: list[SurfaceState] = []
    for rank, ev in enumerate(seq.events):
        try:
            res = apply_event(state, ev)
        except ValueError as exc:
            raise ValueError(
                f"event {rank} ({format_event(ev)}): {exc}; state before:"
                f" {state.describe()}"
            ) from None
        for cid in res.consumed:
            edges.append((pending.pop(cid), rank))
        for cid in res.produced:
            pending[cid] = rank
        indices.append(res.index)
        state = res.state
        states.append(state)
    if state.components:
        raise ValueError(f"sequence is not closed: {state.describe()} remain")
    graph = ReebGraph(3, tuple(indices), tuple(edges))
    if not graph.is_connected():
        raise ValueError("sequence describes a disconnected manifold")
    return SimulationResult(graph=graph, census=census(graph), states=tuple(states))


def validate(seq: HandleSequence) -> str | None:
    """None when the sequence replays cleanly and closes, else the error."""
    try:
        run(seq)
    except ValueError as exc:
        return str(exc)
    return None


# ---------------------------------------------------------------------------
# Script format

def format_event(ev: HandleEvent) -> str:
    if ev.kind == "h0":
        return "h0"
    if ev.kind == "h2 split":
        return f"h2 split @c{ev.targets[0]} ({ev.partition[0]},{ev.partition[1]})"
    refs = " ".join(f"@c{t}" for t in ev.targets)
    return f"{ev.kind} {refs}"


def format_script(seq: HandleSequence) -> str:
    return "\n".join(format_event(ev) for ev in seq.events) + "\n"


_LINE_RES = [
    (re.compile(r"h0\Z"), lambda m: h0()),
    (re.compile(r"h1\s+\+g\s+@c(\d+)\Z"), lambda m: add_genus(int(m.group(1)))),
    (
        re.compile(r"h1\s+merge\s+@c(\d+)\s+@c(\d+)\Z"),
        lambda m: merge(int(m.group(1)), int(m.group(2))),
    ),
    (
        re.compile(r"h2\s+split\s+@c(\d+)\s+\(\s*(\d+)\s*,\s*(\d+)\s*\)\Z"),
        lambda m: split(int(m.group(1)), int(m.group(2)), int(m.group(3))),
    ),
    (re.compile(r"h2\s+-g\s+@c(\d+)\Z"), lambda m: drop_genus(int(m.group(1)))),
    (re.compile(r"h3\s+@c(\d+)\Z"), lambda m: h3(int(m.group(1)))),
]


def parse_script(text: str) -> HandleSequence:
    """One event per line; blank lines and '#' comments are skipped."""
    events = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        for pattern, build in _LINE_RES:
            m = pattern.fullmatch(line)
            if m:
                events.append(build(m))
                break
        else:
            raise ValueError(f"line {lineno}: cannot parse event {line!r}")
    if not events:
        raise ValueError("script contains no events")
    return HandleSequence(tuple(events))


# ---------------------------------------------------------------------------
# Builders

def ordered(g: int) -> HandleSequence:
    """All genus changes on a single component: a path graph with g
    degree-2 vertices of each middle index."""
    if g < 1:
        raise ValueError("genus must be >= 1")
    events = [h0()]
    events += [add_genus(1)] * g
    events += [drop_genus(1)] * g
    events.append(h3(1))
    return HandleSequence(tuple(events))


def s2xs1() -> HandleSequence:
    """Split a sphere in two, then merge the halves: one cycle, no
    degree-2 vertices, and the split sits below the merge."""
    return HandleSequence((h0(), split(1, 0, 0), merge(2, 3), h3(4)))


def circle_bundle_seq(g: int, e: int) -> HandleSequence:
    """Grow genus g+1, split off g one-handled pieces, merge them back,
    then shed the genus.

    The twisting number e selects the manifold but not the level-set
    bookkeeping, so the graph is the same for every e: k1 = k2 = 2g+1,
    2g+2 degree-2 vertices, 2g degree-3 vertices, cycle rank g.
    """
    if g < 1:
        raise ValueError("genus must be >= 1")
    int(e)
    events = [h0()]
    events += [add_genus(1)] * (g + 1)
    remainder = 1
    genus = g + 1
    sides = []
    nid = 2
    for _ in range(g):
        events.append(split(remainder, genus - 1, 1))
        remainder, side = nid, nid + 1
        nid += 2
        sides.append(side)
        genus -= 1
    current = remainder
    for side in sides:
        events.append(merge(current, side))
        current = nid
        nid += 1
    events += [drop_genus(current)] * (g + 1)
    events.append(h3(current))
    return HandleSequence(tuple(events))


def canonical_sequence(k1: int, r: int) -> HandleSequence:
    """The staircase ordering: k1-r genus increments, r split/merge
    pairs, k1-r genus decrements.  Cycle rank r, 2(k1-r) degree-2
    vertices.  (0, 0) gives the two-vertex sphere graph."""
    if not 0 <= r <= k1:
        raise ValueError("need 0 <= r <= k1")
    events = [h0()]
    events += [add_genus(1)] * (k1 - r)
    current = 1
    genus = k1 - r
    nid = 2
    for _ in range(r):
        events.append(split(current, genus, 0))
        a, b = nid, nid + 1
        nid += 2
        events.append(merge(a, b))
        current = nid
        nid += 1
    events += [drop_genus(current)] * (k1 - r)
    events.append(h3(current))
    return HandleSequence(tuple(events))


def connected_sum(s1: HandleSequence, s2: HandleSequence) -> HandleSequence:
    """Drop s1's final cap and s2's initial 0-handle, splicing s2 onto
    the genus-0 component s1 would have capped.  s2's component ids are
    re-assigned by replaying its allocation in the combined numbering."""
    err = validate(s1)
    if err is not None:
        raise ValueError(f"first summand: {err}")
    err = validate(s2)
    if err is not None:
        raise ValueError(f"second summand: {err}")
    # a closed sequence necessarily starts h0 and ends h3
    head = list(s1.events[:-1])
    glue = s1.events[-1].targets[0]

    state_c = SurfaceState()
    for ev in head:
        state_c = apply_event(state_c, ev).state
    first = apply_event(SurfaceState(), s2.events[0])
    state_o = first.state
    trans = {first.produced[0]: glue}
    for ev in s2.events[1:]:
        mapped = replace(ev, targets=tuple(trans[t] for t in ev.targets))
        head.append(mapped)
        res_o = apply_event(state_o, ev)
        res_c = apply_event(state_c, mapped)
        for old, new in zip(res_o.produced, res_c.produced):
            trans[old] = new
        state_o, state_c = res_o.state, res_c.state
    return HandleSequence(tuple(head))


# ---------------------------------------------------------------------------
# Support-window consistency

@dataclass(frozen=True)
class WindowCheck:
    relator_index: int  # 1-based position in the relator order
    max_position: int  # largest generator position the relator touches
    allowed: int  # positions available when its 2-handle is attached

    @property
    def ok(self) -> bool:
        return self.max_position <= self.allowed


@dataclass(frozen=True)
class ConsistencyReport:
    passed: bool
    k1: int
    k2: int
    beta1: int
    windows: tuple[WindowCheck, ...]
    omega: int | None
    implied_bound: int

    def failing(self) -> tuple[WindowCheck, ...]:
        return tuple(w for w in self.windows if not w.ok)


def thm45_omega_consistency(seq: HandleSequence, p: Presentation) -> ConsistencyReport:
    """Check a presentation against the staircase geometry of a sequence.

    With r = cycle rank, the i-th of the first r relators is laid down
    while only k1 - r + i - 1 generators exist, so its support must fit
    in that prefix of the generator order.  When every window holds, the
    staircase invariant of p is capped by max(1, k1 - r).
    """
    result = run(seq)
    c = result.census
    if c.k(0) != 1 or c.k(3) != 1:
        raise ValueError("sequence must have a unique minimum and maximum")
    k1, k2 = c.k(1), c.k(2)
    if p.rank != k1:
        raise ValueError(f"presentation has {p.rank} generators, sequence has {k1}")
    if p.relator_count != k2:
        raise ValueError(f"presentation has {p.relator_count} relators, sequence has {k2}")
    r = cycle_rank(result.graph)
    windows = []
    for i in range(1, r + 1):
        rel = p.relators[i - 1]
        windows.append(
            WindowCheck(
                relator_index=i,
                max_position=rel.max_support_position(),
                allowed=k1 - r + i - 1,
            )
        )
    try:
        omega = omega_fixed(p)
    except ValueError:
        omega = None
    return ConsistencyReport(
        passed=all(w.ok for w in windows),
        k1=k1,
        k2=k2,
        beta1=r,
        windows=tuple(windows),
        omega=omega,
        implied_bound=max(1, k1 - r),
    )
