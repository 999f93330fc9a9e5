"""Nielsen reduction of word tuples and the free-basis test.

Elementary moves: swap two entries, invert an entry, multiply one entry by
another (or its inverse) on either side.  All moves preserve the generated
subgroup.
"""

from dataclasses import dataclass

from .words import Alphabet, Word

ORBIT_NODE_LIMIT = 250_000


@dataclass(frozen=True)
class Move:
    """One elementary move.  kind is 'swap', 'invert' or 'mult'; for
    'mult', entry i becomes u_i * u_j^sign (side 'R') or u_j^sign * u_i
    (side 'L')."""

    kind: str
    i: int
    j: int = -1
    sign: int = 1
    side: str = "R"

    def apply(self, words: tuple[Word, ...]) -> tuple[Word, ...]:
        out = list(words)
        if self.kind == "swap":
            out[self.i], out[self.j] = out[self.j], out[self.i]
        elif self.kind == "invert":
            out[self.i] = out[self.i].inverse()
        elif self.kind == "mult":
            other = out[self.j] if self.sign == 1 else out[self.j].inverse()
            out[self.i] = (out[self.i] * other) if self.side == "R" else (other * out[self.i])
        else:
            raise ValueError(f"unknown move kind {self.kind!r}")
        return tuple(out)

    def describe(self) -> str:
        if self.kind == "swap":
            return f"swap {self.i} {self.j}"
        if self.kind == "invert":
            return f"invert {self.i}"
        op = "*" if self.sign == 1 else "*inv"
        return f"mult {self.i} {op} {self.j} ({self.side})"


@dataclass(frozen=True)
class NielsenResult:
    words: tuple[Word, ...]
    moves: tuple[Move, ...]
    total_length: int


def replay(words: tuple[Word, ...], moves) -> tuple[Word, ...]:
    """Apply a move log; reproduces nielsen_reduce output from its input."""
    current = tuple(w.reduce() for w in words)
    for mv in moves:
        current = mv.apply(current)
    return current


def _tuple_key(words: tuple[Word, ...]):
    return tuple((len(w.letters), w.letters) for w in words)


def _total_length(words: tuple[Word, ...]) -> int:
    return sum(len(w.letters) for w in words)


def _candidate_moves(n: int):
    for i in range(n):
        yield Move("invert", i)
    for i in range(n):
        for j in range(i + 1, n):
            yield Move("swap", i, j)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for side in ("R", "L"):
                for sign in (1, -1):
                    yield Move("mult", i, j, sign, side)


def nielsen_reduce(words, alpha: Alphabet | None = None) -> NielsenResult:
    """Greedy reduction: repeatedly apply the first move (in a fixed scan
    order) that lowers (total length, lexicographic tuple key).

    The length-preserving key comparisons both break ties and normalize
    the result (entries sorted, oriented below their inverses), so output
    is deterministic.  Replaying the move log on the input reproduces the
    output exactly.
    """
    current = tuple(w.reduce() for w in words)
    if alpha is None:
        if not current:
            raise ValueError("empty tuple needs an explicit alphabet")
        alpha = current[0].alpha
    for w in current:
        if w.alpha != alpha:
            raise ValueError("alphabet mismatch in tuple")
    n = len(current)
    log: list[Move] = []
    state = (_total_length(current), _tuple_key(current))
    improved = True
    while improved:
        improved = False
        for mv in _candidate_moves(n):
            nxt = mv.apply(current)
            nxt_state = (_total_length(nxt), _tuple_key(nxt))
            if nxt_state < state:
                current, state = nxt, nxt_state
                log.append(mv)
                improved = True
                break
    return NielsenResult(words=current, moves=tuple(log), total_length=state[0])


def _is_letter_tuple(words: tuple[Word, ...], rank: int) -> bool:
    seen = set()
    for w in words:
        if len(w.letters) != 1:
            return False
        seen.add(abs(w.letters[0]))
    return seen == set(range(1, rank + 1)) and len(words) == rank


def _orbit_reaches_letters(start: tuple[Word, ...], rank: int) -> bool:
    # Exhaustive search of the Nielsen orbit restricted to tuples of total
    # length <= the start's.  A basis always has a non-length-increasing
    # elementary path to the letter tuple, so hitting the node limit on a
    # non-basis-sized orbit is a genuine resource failure, not a verdict.
    n = len(start)
    seen = {_tuple_key(start)}
    frontier = [start]
    start_len = _total_length(start)
    while frontier:
        nxt_frontier = []
        for tup in frontier:
            for mv in _candidate_moves(n):
                cand = mv.apply(tup)
                if _total_length(cand) > start_len:
                    continue
                key = _tuple_key(cand)
                if key in seen:
                    continue
                if _is_letter_tuple(cand, rank):
                    return True
                seen.add(key)
                if len(seen) > ORBIT_NODE_LIMIT:
                    raise RuntimeError(
                        "Nielsen orbit exceeded the node limit; basis test undecided"
                    )
                nxt_frontier.append(cand)
        frontier = nxt_frontier
    return False


def is_basis(words, alpha: Alphabet | None = None) -> bool:
    """Does an n-tuple freely generate the rank-n free group?

    Pre-condition: tuple length equals the alphabet rank.  Greedy
    reduction decides almost every case; a bounded orbit search certifies
    the rare greedy local minimum that is not a letter tuple.
    """
    tup = tuple(w.reduce() for w in words)
    if alpha is None:
        if not tup:
            raise ValueError("empty tuple needs an explicit alphabet")
        alpha = tup[0].alpha
    if len(tup) != alpha.rank:
        raise ValueError(
            f"basis test needs exactly {alpha.rank} words, got {len(tup)}"
        )
    if alpha.rank == 0:
        return True
    reduced = nielsen_reduce(tup, alpha).words
    if _is_letter_tuple(reduced, alpha.rank):
        return True
    if _total_length(reduced) > alpha.rank:
        return _orbit_reaches_letters(reduced, alpha.rank)
    return False
