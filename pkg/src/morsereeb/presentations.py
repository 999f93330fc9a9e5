"""Finite group presentations and their ordering-sensitive invariants.

A presentation is an ordered generator alphabet plus an ordered tuple of
relators.  Order matters: the staircase invariant (``omega_fixed``) reads
both orders, and ``omega_search`` minimizes it over reorderings.
"""

from dataclasses import dataclass, field
import itertools
import random

from .snf import SNFResult, smith_normal_form
from .words import (
    Alphabet,
    Word,
    commutator,
    generator,
    identity,
    parse_word,
    format_word,
)

DEFAULT_OMEGA_BUDGET = 200_000
DEFAULT_SEED = 1729


@dataclass(frozen=True)
class Presentation:
    """Generators and relators; relators are stored freely reduced."""

    alpha: Alphabet
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        reduced = []
        for r in self.relators:
            if r.alpha != self.alpha:
                raise ValueError("relator over a different alphabet")
            reduced.append(r.reduce())
        object.__setattr__(self, "relators", tuple(reduced))

    @property
    def rank(self) -> int:
        return self.alpha.rank

    @property
    def relator_count(self) -> int:
        return len(self.relators)

    def is_free(self) -> bool:
        return not self.relators

    def __str__(self) -> str:
        return format_presentation(self)


def presentation(text: str) -> Presentation:
    return parse_presentation(text)


def deficiency(p: Presentation) -> int:
    """Generator count minus relator count."""
    return p.rank - p.relator_count


# ---------------------------------------------------------------------------
# Abelianization

@dataclass(frozen=True)
class AbelianInvariants:
    """Z^free_rank plus cyclic summands Z/d, d ascending and dividing."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError("torsion factors must divide in order")
        if any(d < 2 for d in self.torsion):
            raise ValueError("torsion factors must be >= 2")

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def exponent_matrix(p: Presentation) -> list[list[int]]:
    """Relator-by-generator matrix of exponent sums."""
    rows = []
    for r in p.relators:
        row = [0] * p.rank
        for x in r.letters:
            row[abs(x) - 1] += 1 if x > 0 else -1
        rows.append(row)
    return rows


def abelianize(p: Presentation) -> AbelianInvariants:
    """Invariants of the abelianized group, exactly."""
    res = smith_normal_form(exponent_matrix(p), cols=p.rank)
    return AbelianInvariants(free_rank=res.coker_free_rank, torsion=res.torsion)


def abelianization_snf(p: Presentation) -> SNFResult:
    return smith_normal_form(exponent_matrix(p), cols=p.rank)


# ---------------------------------------------------------------------------
# Staircase invariant

def _staircase_value(n: int, maxpos_in_order: list[int]) -> int:
    # Smallest w in [1, n] such that relator i (1-based) uses only the first
    # w+i-1 generators whenever i <= n-w.  Equivalently a max of per-relator
    # terms: relator i forces w >= maxpos_i - i + 1 unless w > n - i.
    best = 1
    for i, mp in enumerate(maxpos_in_order, start=1):
        need = min(n - i + 1, mp - i + 1)
        if need > best:
            best = need
    return best


def omega_fixed(p: Presentation) -> int:
    """Staircase invariant of the presentation with its given orders.

    Pre-condition: at least one relator (free presentations have no
    staircase invariant).
    """
    if p.is_free():
        raise ValueError("free presentation: staircase invariant undefined")
    maxpos = [r.max_support_position() for r in p.relators]
    return _staircase_value(p.rank, maxpos)


@dataclass(frozen=True)
class OmegaSearchResult:
    """Minimum of omega_fixed over reorderings, with a verifying witness.

    ``certified`` is True when the permutation space was fully enumerated;
    otherwise the value is only a budget-limited upper bound.
    """

    omega: int
    gen_order: tuple[str, ...]
    relator_order: tuple[int, ...]
    certified: bool
    evaluations: int
    minimizers: int = 0
    seed: int | None = None

    def permuted(self, p: Presentation) -> Presentation:
        """The witness presentation realizing ``omega``."""
        alpha = Alphabet(self.gen_order)
        old_index = {name: i + 1 for i, name in enumerate(p.alpha.names)}
        remap = [0] * (p.rank + 1)
        for new_pos, name in enumerate(self.gen_order, start=1):
            remap[old_index[name]] = new_pos
        rels = []
        for ri in self.relator_order:
            letters = tuple(
                remap[abs(x)] * (1 if x > 0 else -1) for x in p.relators[ri].letters
            )
            rels.append(Word(alpha, letters))
        return Presentation(alpha, tuple(rels))


def omega_search(
    p: Presentation,
    budget: int = DEFAULT_OMEGA_BUDGET,
    seed: int = DEFAULT_SEED,
) -> OmegaSearchResult:
    """Minimize omega_fixed over generator and relator permutations.

    Exhaustive (certified) when n <= 8, m <= 8 and n!*m! fits the budget;
    beyond that, seeded random sampling under the same budget, flagged
    non-certified.  Budget counts ordering evaluations.
    """
    if p.is_free():
        raise ValueError("free presentation: staircase invariant undefined")
    n, m = p.rank, p.relator_count
    supports = [r.support() for r in p.relators]
    gen_ids = list(range(1, n + 1))
    rel_ids = list(range(m))

    def eval_order(gen_perm, rel_perm):
        pos = [0] * (n + 1)
        for newpos, g in enumerate(gen_perm, start=1):
            pos[g] = newpos
        maxpos = [max((pos[g] for g in supports[ri]), default=0) for ri in rel_perm]
        return _staircase_value(n, maxpos)

    total = None
    if n <= 8 and m <= 8:
        total = 1
        for k in range(2, n + 1):
            total *= k
        for k in range(2, m + 1):
            total *= k
    exhaustive = total is not None and total <= budget

    best = None
    best_orders = None
    minimizers = 0
    evals = 0
    if exhaustive:
        for gen_perm in itertools.permutations(gen_ids):
            for rel_perm in itertools.permutations(rel_ids):
                value = eval_order(gen_perm, rel_perm)
                evals += 1
                if best is None or value < best:
                    best = value
                    best_orders = (gen_perm, rel_perm)
                    minimizers = 1
                elif value == best:
                    minimizers += 1
            if best == 1:
                break  # cannot improve further
        return OmegaSearchResult(
            omega=best,
            gen_order=tuple(p.alpha.names[g - 1] for g in best_orders[0]),
            relator_order=best_orders[1],
            certified=True,
            evaluations=evals,
            minimizers=minimizers,
        )

    rng = random.Random(seed)
    gen_perm = list(gen_ids)
    rel_perm = list(rel_ids)
    while evals < budget:
        value = eval_order(gen_perm, rel_perm)
        evals += 1
        if best is None or value < best:
            best = value
            best_orders = (tuple(gen_perm), tuple(rel_perm))
            minimizers = 1
        elif value == best:
            minimizers += 1
        if best == 1:
            break
        rng.shuffle(gen_perm)
        rng.shuffle(rel_perm)
    return OmegaSearchResult(
        omega=best,
        gen_order=tuple(p.alpha.names[g - 1] for g in best_orders[0]),
        relator_order=best_orders[1],
        certified=best == 1,
        evaluations=evals,
        minimizers=minimizers,
        seed=seed,
    )


# ---------------------------------------------------------------------------
# Tietze moves

def tietze_remove_trivial_generator(p: Presentation, relator_index: int) -> Presentation:
    """Drop a relator that is a bare generator, and that generator with it.

    The removed generator is set to the identity in the remaining relators.
    Rank and relator count each drop by one.
    """
    if not 0 <= relator_index < p.relator_count:
        raise ValueError("relator index out of range")
    r = p.relators[relator_index]
    if len(r.letters) != 1:
        raise ValueError(f"relator {format_word(r)} is not a bare generator")
    gen_idx = abs(r.letters[0])
    names = tuple(nm for i, nm in enumerate(p.alpha.names, start=1) if i != gen_idx)
    alpha = Alphabet(names)

    def remap(x: int) -> int | None:
        a = abs(x)
        if a == gen_idx:
            return None
        shifted = a - 1 if a > gen_idx else a
        return shifted if x > 0 else -shifted

    rels = []
    for j, rel in enumerate(p.relators):
        if j == relator_index:
            continue
        letters = tuple(y for y in (remap(x) for x in rel.letters) if y is not None)
        rels.append(Word(alpha, letters))
    return Presentation(alpha, tuple(rels))


@dataclass(frozen=True)
class ConjugateProduct:
    """A product of conjugated relators: each factor is (t, index, sign),
    standing for t * r_index^sign * t^-1."""

    factors: tuple[tuple[Word, int, int], ...]

    def evaluate(self, alpha: Alphabet, relators: tuple[Word, ...]) -> Word:
        out = identity(alpha)
        for t, idx, sign in self.factors:
            if not 0 <= idx < len(relators):
                raise ValueError("witness references a missing relator")
            if sign not in (1, -1):
                raise ValueError("witness signs must be +1 or -1")
            if t.alpha != alpha:
                raise ValueError("witness conjugator over a different alphabet")
            r = relators[idx] if sign == 1 else relators[idx].inverse()
            out = out * t * r * t.inverse()
        return out


@dataclass(frozen=True)
class ReplacementWitness:
    """Two-sided certificate for swapping one relator for another.

    ``expresses_new`` writes the new relator as a conjugate product of the
    old relators; ``recovers_old`` writes the replaced relator as a
    conjugate product of the new relator list.  Both sides are checked by
    exact evaluation in the free group.
    """

    expresses_new: ConjugateProduct
    recovers_old: ConjugateProduct


def tietze_replace_relator(
    p: Presentation,
    relator_index: int,
    new: Word,
    witness: ReplacementWitness,
) -> Presentation:
    if not 0 <= relator_index < p.relator_count:
        raise ValueError("relator index out of range")
    if new.alpha != p.alpha:
        raise ValueError("replacement relator over a different alphabet")
    new = new.reduce()
    forward = witness.expresses_new.evaluate(p.alpha, p.relators)
    if forward.reduce() != new:
        raise ValueError(
            f"witness evaluates to {format_word(forward.reduce())}, "
            f"not the proposed relator {format_word(new)}"
        )
    new_relators = tuple(
        new if j == relator_index else r for j, r in enumerate(p.relators)
    )
    backward = witness.recovers_old.evaluate(p.alpha, new_relators)
    if backward.reduce() != p.relators[relator_index]:
        raise ValueError(
            f"reverse witness evaluates to {format_word(backward.reduce())}, "
            f"not the replaced relator {format_word(p.relators[relator_index])}"
        )
    return Presentation(p.alpha, new_relators)


# ---------------------------------------------------------------------------
# Builders

def _symplectic_names(g: int) -> tuple[str, ...]:
    names = []
    for i in range(1, g + 1):
        names.append(f"a{i}")
        names.append(f"b{i}")
    return tuple(names)


def surface_relator(alpha: Alphabet, g: int) -> Word:
    out = identity(alpha)
    for i in range(1, g + 1):
        ai = generator(alpha, alpha.index(f"a{i}"))
        bi = generator(alpha, alpha.index(f"b{i}"))
        out = out * commutator(ai, bi)
    return out


def surface_group(g: int) -> Presentation:
    """Closed orientable genus-g surface group, one relator."""
    if g < 0:
        raise ValueError("genus must be >= 0")
    if g == 0:
        return Presentation(Alphabet(()), ())
    alpha = Alphabet(_symplectic_names(g))
    return Presentation(alpha, (surface_relator(alpha, g),))


def circle_bundle(g: int, e: int) -> Presentation:
    """Fundamental group of the euler-number-e circle bundle over the
    genus-g surface: 2g+1 generators, 2g+1 relators, deficiency 0.

    Generators a1, b1, ..., ag, bg, h; the fiber h commutes with every
    base generator and the surface relator equals h^e.
    """
    if g < 1:
        raise ValueError("base genus must be >= 1")
    alpha = Alphabet(_symplectic_names(g) + ("h",))
    h = generator(alpha, alpha.rank)
    rels = []
    for i in range(1, g + 1):
        ai = generator(alpha, alpha.index(f"a{i}"))
        bi = generator(alpha, alpha.index(f"b{i}"))
        rels.append(commutator(ai, h))
        rels.append(commutator(bi, h))
    rels.append(surface_relator(alpha, g) * h ** (-e))
    return Presentation(alpha, tuple(rels))


def circle_bundle_rank2g(g: int, e: int) -> Presentation:
    """Rank-2g presentation of the euler-number +-1 bundle group: the fiber
    is eliminated as the surface product, leaving 2g commutation relators.
    """
    if g < 1:
        raise ValueError("base genus must be >= 1")
    if e not in (1, -1):
        raise ValueError("rank-2g form only exists for euler number +-1")
    alpha = Alphabet(_symplectic_names(g))
    h_e = surface_relator(alpha, g) ** e
    rels = []
    for i in range(1, g + 1):
        ai = generator(alpha, alpha.index(f"a{i}"))
        bi = generator(alpha, alpha.index(f"b{i}"))
        rels.append(commutator(ai, h_e))
        rels.append(commutator(bi, h_e))
    return Presentation(alpha, tuple(rels))


def lens(p: int) -> Presentation:
    """Cyclic presentation <x | x^p> of a lens space group, p >= 2."""
    if p < 2:
        raise ValueError("lens parameter must be >= 2")
    alpha = Alphabet(("x",))
    return Presentation(alpha, (generator(alpha, 1) ** p,))


def free_product(p: Presentation, q: Presentation) -> Presentation:
    """Concatenate generators and relators; q's clashing names get numeric
    suffixes (x -> x_2, x_3, ...)."""
    used = set(p.alpha.names)
    q_names = []
    for nm in q.alpha.names:
        candidate = nm
        k = 2
        while candidate in used:
            candidate = f"{nm}_{k}"
            k += 1
        used.add(candidate)
        q_names.append(candidate)
    alpha = Alphabet(p.alpha.names + tuple(q_names))
    offset = p.rank
    rels = [Word(alpha, r.letters) for r in p.relators]
    for r in q.relators:
        letters = tuple(
            (abs(x) + offset) * (1 if x > 0 else -1) for x in r.letters
        )
        rels.append(Word(alpha, letters))
    return Presentation(alpha, tuple(rels))


def heegaard_presentation(
    genus: int,
    attaching_words,
    generators: tuple[str, ...] | None = None,
) -> Presentation:
    """One generator per handle of a genus-g handlebody, one relator per
    attaching word.  Words may be Word values or grammar strings (the
    latter need explicit generator names)."""
    if genus < 0:
        raise ValueError("genus must be >= 0")
    words = list(attaching_words)
    if generators is not None:
        if len(generators) != genus:
            raise ValueError("generator names must match the genus")
        alpha = Alphabet(tuple(generators))
        words = [parse_word(w, alpha) if isinstance(w, str) else w for w in words]
    else:
        if any(isinstance(w, str) for w in words):
            raise ValueError("string attaching words need explicit generator names")
        if not words:
            raise ValueError("cannot infer generators from no attaching words")
        alpha = words[0].alpha
        if alpha.rank != genus:
            raise ValueError("attaching-word alphabet rank must equal the genus")
    for w in words:
        if w.alpha != alpha:
            raise ValueError("attaching words over mixed alphabets")
    return Presentation(alpha, tuple(words))


# ---------------------------------------------------------------------------
# Text format:  gens: a, b, h ; rels: [a,h], [b,h], [a,b] h^-1

def _split_top_level(text: str, sep: str) -> list[str]:
    parts = []
    depth = 0
    current = []
    for ch in text:
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    parts.append("".join(current))
    return parts


def parse_presentation(text: str) -> Presentation:
    sections = [s.strip() for s in text.split(";")]
    if not sections or not sections[0].startswith("gens:"):
        raise ValueError("presentation must start with 'gens:'")
    if len(sections) > 2:
        raise ValueError("too many ';' sections in presentation")
    gens_part = sections[0][len("gens:"):].strip()
    names = tuple(nm.strip() for nm in gens_part.split(",") if nm.strip())
    alpha = Alphabet(names)
    relators: tuple[Word, ...] = ()
    if len(sections) == 2:
        rels_part = sections[1]
        if not rels_part.startswith("rels:"):
            raise ValueError("second section must start with 'rels:'")
        body = rels_part[len("rels:"):].strip()
        if body:
            relators = tuple(
                parse_word(chunk, alpha)
                for chunk in _split_top_level(body, ",")
                if chunk.strip()
            )
    return Presentation(alpha, relators)


def format_presentation(p: Presentation) -> str:
    gens = ", ".join(p.alpha.names)
    rels = ", ".join(format_word(r) for r in p.relators)
    return f"gens: {gens} ; rels: {rels}" if rels else f"gens: {gens} ; rels:"
