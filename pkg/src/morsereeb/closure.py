"""Bounded normal-closure membership in a free group.

Membership in the normal closure of a relator set is undecidable in
general, so the oracle is explicit about its bounds: it searches products
of at most ``factor_bound`` conjugates t r^+-1 t^-1 with |t| <= radius.
Positive answers carry a verifiable witness; negative answers carry a
certificate (an abelianization obstruction, or full coverage in the one
case where the bounded space provably is the whole closure); everything
else is Unknown rather than a guess.
"""

from dataclasses import dataclass
from functools import lru_cache
import os
import random

from .snf import in_row_lattice
from .words import Alphabet, Word, format_word

DEFAULT_NODE_LIMIT = 1_000_000
NODE_LIMIT_ENV = "MORSEREEB_NODE_LIMIT"
DEFAULT_SEED = 1729

MEMBER = "member"
NOT_MEMBER = "not_member"
UNKNOWN = "unknown"


def node_limit_default() -> int:
    raw = os.environ.get(NODE_LIMIT_ENV)
    if raw is None:
        return DEFAULT_NODE_LIMIT
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{NODE_LIMIT_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{NODE_LIMIT_ENV} must be positive")
    return value


@dataclass(frozen=True)
class ClosureQuery:
    alpha: Alphabet
    relators: tuple[Word, ...]
    target: Word
    radius: int
    factor_bound: int

    def __post_init__(self):
        if self.radius < 0 or self.factor_bound < 0:
            raise ValueError("bounds must be nonnegative")
        for w in self.relators + (self.target,):
            if w.alpha != self.alpha:
                raise ValueError("alphabet mismatch in query")


@dataclass(frozen=True)
class ClosureVerdict:
    """status: member / not_member / unknown.

    certificate: 'witness' (member), 'abelianization' or 'exhaustive'
    (not_member), 'bounded-exhausted' or 'node-limit' (unknown).  The
    witness lists (conjugator, relator index, sign) factors whose product
    is the target; bounds and seed-free determinism make it reproducible.
    """

    status: str
    certificate: str
    witness: tuple[tuple[Word, int, int], ...] | None
    explored: int
    radius: int
    factor_bound: int
    node_limit: int
    note: str = ""


def _reduced_words_upto(alpha: Alphabet, radius: int) -> list[tuple[int, ...]]:
    # Deterministic order: by length, then letters in order 1, -1, 2, -2, ...
    letter_order = []
    for i in range(1, alpha.rank + 1):
        letter_order.append(i)
        letter_order.append(-i)
    out: list[tuple[int, ...]] = [()]
    frontier: list[tuple[int, ...]] = [()]
    for _ in range(radius):
        nxt = []
        for w in frontier:
            for x in letter_order:
                if w and w[-1] == -x:
                    continue
                nxt.append(w + (x,))
        out.extend(nxt)
        frontier = nxt
    return out


@dataclass
class _Space:
    # visited maps reduced letters -> (depth, parent letters, factor index);
    # the identity is depth 0 with no parent.
    visited: dict
    factors: list
    capped: bool
    explored: int


@lru_cache(maxsize=8)
def _bounded_space(
    alpha: Alphabet,
    relators: tuple[Word, ...],
    radius: int,
    factor_bound: int,
    node_limit: int,
) -> _Space:
    factor_specs = []  # (conjugator letters, relator index, sign, product word)
    seen_products = set()
    for ri, rel in enumerate(relators):
        for sign in (1, -1):
            base = rel if sign == 1 else rel.inverse()
            for t_letters in _reduced_words_upto(alpha, radius):
                t = Word(alpha, t_letters)
                prod = t * base * t.inverse()
                if prod.letters in seen_products:
                    continue
                seen_products.add(prod.letters)
                factor_specs.append((t_letters, ri, sign, prod))
    visited = {(): (0, None, None)}
    frontier = [()]
    capped = False
    for _depth in range(factor_bound):
        if capped or not frontier:
            break
        nxt = []
        for w_letters in frontier:
            w = Word(alpha, w_letters)
            for fi, (_t, _ri, _sign, prod) in enumerate(factor_specs):
                result = (w * prod).letters
                if result in visited:
                    continue
                visited[result] = (_depth + 1, w_letters, fi)
                nxt.append(result)
                if len(visited) > node_limit:
                    capped = True
                    break
            if capped:
                break
        frontier = nxt
    return _Space(
        visited=visited,
        factors=factor_specs,
        capped=capped,
        explored=len(visited),
    )


def _reconstruct_witness(space: _Space, alpha: Alphabet, letters) -> tuple:
    chain = []
    cursor = letters
    while True:
        depth, parent, fi = space.visited[cursor]
        if parent is None:
            break
        t_letters, ri, sign, _prod = space.factors[fi]
        chain.append((Word(alpha, t_letters), ri, sign))
        cursor = parent
    chain.reverse()
    return tuple(chain)


def evaluate_witness(
    alpha: Alphabet, relators: tuple[Word, ...], witness
) -> Word:
    out = Word(alpha)
    for t, ri, sign in witness:
        base = relators[ri] if sign == 1 else relators[ri].inverse()
        out = out * t * base * t.inverse()
    return out


def _exponent_rows(relators: tuple[Word, ...], rank: int) -> list[list[int]]:
    rows = []
    for r in relators:
        row = [0] * rank
        for x in r.letters:
            row[abs(x) - 1] += 1 if x > 0 else -1
        rows.append(row)
    return rows


def member_bounded(query: ClosureQuery, node_limit: int | None = None) -> ClosureVerdict:
    """Decide bounded membership of the target in the normal closure.

    Verdicts only strengthen as bounds grow: a member stays a member, the
    two not_member certificates are permanent, and unknown may later flip
    to either.
    """
    limit = node_limit_default() if node_limit is None else node_limit
    target = query.target.reduce()
    if not target.letters:
        return ClosureVerdict(
            status=MEMBER, certificate="witness", witness=(),
            explored=0, radius=query.radius, factor_bound=query.factor_bound,
            node_limit=limit, note="identity is the empty product",
        )
    if not query.relators:
        return ClosureVerdict(
            status=NOT_MEMBER, certificate="exhaustive", witness=None,
            explored=0, radius=query.radius, factor_bound=query.factor_bound,
            node_limit=limit, note="empty relator set has trivial closure",
        )
    rank = query.alpha.rank
    rows = _exponent_rows(query.relators, rank)
    tgt_row = _exponent_rows((target,), rank)[0]
    if not in_row_lattice(rows, tgt_row, cols=rank):
        return ClosureVerdict(
            status=NOT_MEMBER, certificate="abelianization", witness=None,
            explored=0, radius=query.radius, factor_bound=query.factor_bound,
            node_limit=limit,
            note="exponent vector outside the relator lattice",
        )
    space = _bounded_space(
        query.alpha, query.relators, query.radius, query.factor_bound, limit
    )
    if target.letters in space.visited:
        witness = _reconstruct_witness(space, query.alpha, target.letters)
        check = evaluate_witness(query.alpha, query.relators, witness)
        if check != target:  # pragma: no cover - internal consistency
            raise RuntimeError("witness failed re-evaluation")
        return ClosureVerdict(
            status=MEMBER, certificate="witness", witness=witness,
            explored=space.explored, radius=query.radius,
            factor_bound=query.factor_bound, node_limit=limit,
        )
    certificate = "node-limit" if space.capped else "bounded-exhausted"
    note = (
        "search hit the node limit"
        if space.capped
        else "not expressible within the given radius and factor bound"
    )
    return ClosureVerdict(
        status=UNKNOWN, certificate=certificate, witness=None,
        explored=space.explored, radius=query.radius,
        factor_bound=query.factor_bound, node_limit=limit, note=note,
    )


def format_witness(witness) -> str:
    parts = []
    for t, ri, sign in witness:
        exp = "" if sign == 1 else "^-1"
        core = f"r{ri + 1}{exp}"
        if t.letters:
            parts.append(f"({format_word(t)}) {core} ({format_word(t.inverse())})")
        else:
            parts.append(core)
    return " * ".join(parts) if parts else "(empty product)"


# ---------------------------------------------------------------------------
# Randomized support probe

@dataclass(frozen=True)
class ProbeReport:
    """Outcome of sampling products of conjugates of one relator and
    checking that every nontrivial product uses the probed generator."""

    relator: Word
    gen: str
    samples: int
    radius: int
    factor_bound: int
    seed: int
    nontrivial: int
    trivial: int
    counterexamples: tuple[Word, ...]

    @property
    def passed(self) -> bool:
        return not self.counterexamples


def freiheitssatz_probe(
    relator: Word,
    gen: str,
    samples: int = 1000,
    radius: int = 2,
    factor_bound: int = 3,
    seed: int = DEFAULT_SEED,
    check_support: bool = True,
    keep: int = 10,
) -> ProbeReport:
    """Randomized harness for the support property of one-relator closures.

    Pre-condition: ``gen`` appears in the cyclically reduced core of the
    relator.  ``check_support=False`` skips that check so the harness can
    be validated against a generator that should yield counterexamples.
    """
    alpha = relator.alpha
    gen_idx = alpha.index(gen)
    _conj, core = relator.cyclic_reduce()
    if core.is_identity():
        raise ValueError("relator is trivial")
    if check_support and gen_idx not in core.support():
        raise ValueError(
            f"generator {gen!r} does not appear in the cyclically reduced relator"
        )
    rng = random.Random(seed)
    letter_order = []
    for i in range(1, alpha.rank + 1):
        letter_order.extend((i, -i))

    def random_conjugator() -> Word:
        length = rng.randint(0, radius)
        letters: list[int] = []
        while len(letters) < length:
            x = rng.choice(letter_order)
            if letters and letters[-1] == -x:
                continue
            letters.append(x)
        return Word(alpha, tuple(letters))

    nontrivial = 0
    trivial = 0
    counterexamples: list[Word] = []
    for _ in range(samples):
        k = rng.randint(1, factor_bound)
        prod = Word(alpha)
        for _ in range(k):
            t = random_conjugator()
            base = relator if rng.random() < 0.5 else relator.inverse()
            prod = prod * t * base * t.inverse()
        if prod.is_identity():
            trivial += 1
            continue
        nontrivial += 1
        if gen_idx not in prod.support() and len(counterexamples) < keep:
            counterexamples.append(prod)
    return ProbeReport(
        relator=relator,
        gen=gen,
        samples=samples,
        radius=radius,
        factor_bound=factor_bound,
        seed=seed,
        nontrivial=nontrivial,
        trivial=trivial,
        counterexamples=tuple(counterexamples),
    )
