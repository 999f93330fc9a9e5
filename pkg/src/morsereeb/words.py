"""Free group words over a named alphabet.

Words are letter sequences: each letter is a nonzero int, +i for the i-th
generator (1-based), -i for its inverse.  Values are immutable and all
operations are pure, so they are safe to share across threads.
"""

from dataclasses import dataclass
import re

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Alphabet:
    """Ordered generator names.  Order is significant (it feeds the
    staircase invariant), names must be distinct identifiers."""

    names: tuple[str, ...]

    def __post_init__(self):
        for name in self.names:
            if not _NAME_RE.match(name):
                raise ValueError(f"bad generator name {name!r}")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate generator names")

    @property
    def rank(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        """1-based position of a generator name."""
        try:
            return self.names.index(name) + 1
        except ValueError:
            raise ValueError(f"unknown generator {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self.names

    def __str__(self) -> str:
        return ", ".join(self.names)


def alphabet(*names: str) -> Alphabet:
    return Alphabet(tuple(names))


def _reduce_letters(letters) -> tuple[int, ...]:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """A word over an alphabet, not necessarily freely reduced.

    Equality is literal letter-sequence equality; compare ``reduce()`` of
    two words to test equality as group elements.  The arithmetic
    operators (``*``, ``**``, ``inverse``) always return reduced words.
    """

    alpha: Alphabet
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        n = self.alpha.rank
        for x in self.letters:
            if x == 0 or abs(x) > n:
                raise ValueError(f"letter {x} outside alphabet of rank {n}")

    def __len__(self) -> int:
        return len(self.letters)

    def is_identity(self) -> bool:
        return not self.reduce().letters

    def is_reduced(self) -> bool:
        return _reduce_letters(self.letters) == self.letters

    def reduce(self) -> "Word":
        """Freely reduce: cancel adjacent x x^-1 pairs until none remain."""
        r = _reduce_letters(self.letters)
        return self if r == self.letters else Word(self.alpha, r)

    def cyclic_reduce(self) -> tuple["Word", "Word"]:
        """Split into (conjugator, core) with core cyclically reduced.

        The decomposition satisfies
        ``(conjugator * core * conjugator.inverse()) == reduce(self)``.
        A cyclically reduced word returns (identity, itself).
        """
        r = list(_reduce_letters(self.letters))
        conj: list[int] = []
        while len(r) >= 2 and r[0] == -r[-1]:
            conj.append(r[0])
            r = r[1:-1]
        return Word(self.alpha, tuple(conj)), Word(self.alpha, tuple(r))

    def support(self) -> frozenset[int]:
        """Generator indices (1-based) appearing in the reduced form."""
        return frozenset(abs(x) for x in _reduce_letters(self.letters))

    def support_names(self) -> frozenset[str]:
        return frozenset(self.alpha.names[i - 1] for i in self.support())

    def inverse(self) -> "Word":
        return Word(self.alpha, _reduce_letters(-x for x in reversed(self.letters)))

    def __invert__(self) -> "Word":
        return self.inverse()

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        if other.alpha != self.alpha:
            raise ValueError("alphabet mismatch")
        return Word(self.alpha, _reduce_letters(self.letters + other.letters))

    def __pow__(self, n: int) -> "Word":
        if not isinstance(n, int):
            return NotImplemented
        base = self.reduce() if n >= 0 else self.inverse()
        out = Word(self.alpha)
        for _ in range(abs(n)):
            out = out * base
        return out

    def max_support_position(self) -> int:
        """Largest generator index used, 0 for the identity."""
        s = self.support()
        return max(s) if s else 0

    def __str__(self) -> str:
        return format_word(self)


def word(alpha: Alphabet, *names: str) -> Word:
    """Build a word from generator names; a trailing ``'`` marks an inverse.

    Convenience for tests and builders: ``word(ab, "a", "b'", "a")``.
    """
    letters = []
    for nm in names:
        inv = nm.endswith("'")
        idx = alpha.index(nm.rstrip("'"))
        letters.append(-idx if inv else idx)
    return Word(alpha, tuple(letters))


def identity(alpha: Alphabet) -> Word:
    return Word(alpha)


def generator(alpha: Alphabet, i: int) -> Word:
    """The i-th generator (1-based) as a one-letter word."""
    if not 1 <= i <= alpha.rank:
        raise ValueError(f"generator index {i} out of range")
    return Word(alpha, (i,))


def concat(*parts: Word) -> Word:
    """Reduced product of any number of words over one alphabet."""
    if not parts:
        raise ValueError("empty product needs an alphabet; use identity()")
    out = parts[0].reduce()
    for p in parts[1:]:
        out = out * p
    return out


def commutator(u: Word, v: Word) -> Word:
    """[u, v] = u v u^-1 v^-1, reduced."""
    return u * v * u.inverse() * v.inverse()


def cyclic_rotations(w: Word):
    """All rotations of the cyclically reduced core (generator for tests)."""
    _, core = w.cyclic_reduce()
    ls = core.letters
    if not ls:
        yield core
        return
    for k in range(len(ls)):
        yield Word(w.alpha, ls[k:] + ls[:k])


def cyclically_equal(u: Word, v: Word) -> bool:
    """True when the cyclically reduced cores are rotations of each other."""
    if u.alpha != v.alpha:
        raise ValueError("alphabet mismatch")
    _, cu = u.cyclic_reduce()
    return any(cu == r for r in cyclic_rotations(v))


# ---------------------------------------------------------------------------
# Word expression grammar
#
#   word := term+
#   term := gen | gen "^" int | "[" word "," word "]" | "(" word ")" "^" int
#   gen  := [A-Za-z][A-Za-z0-9_]*
#
# Whitespace is insignificant, negative exponents denote inverses.  Two
# lenient extensions for round-tripping: an exponent may follow a commutator
# or parenthesized term without one, and a bare "1" denotes the identity.

_TOKEN_RE = re.compile(r"\s*([A-Za-z][A-Za-z0-9_]*|-?\d+|\^|\[|\]|\(|\)|,)")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError(f"bad character in word at offset {pos}: {text[pos:]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[str], alpha: Alphabet):
        self.tokens = tokens
        self.alpha = alpha
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None:
            raise ValueError("unexpected end of word expression")
        if expected is not None and tok != expected:
            raise ValueError(f"expected {expected!r}, found {tok!r}")
        self.pos += 1
        return tok

    def parse_word(self) -> Word:
        parts = []
        while True:
            tok = self.peek()
            if tok is None or tok in (",", "]", ")"):
                break
            parts.append(self.parse_term())
        out = identity(self.alpha)
        for p in parts:
            out = out * p
        return out

    def parse_term(self) -> Word:
        tok = self.take()
        if tok == "[":
            u = self.parse_word()
            self.take(",")
            v = self.parse_word()
            self.take("]")
            base = commutator(u, v)
        elif tok == "(":
            base = self.parse_word()
            self.take(")")
        elif _NAME_RE.match(tok):
            base = generator(self.alpha, self.alpha.index(tok))
        elif tok == "1":
            base = identity(self.alpha)
        else:
            raise ValueError(f"unexpected token {tok!r}")
        if self.peek() == "^":
            self.take()
            exp = self.take()
            try:
                n = int(exp)
            except ValueError:
                raise ValueError(f"bad exponent {exp!r}") from None
            return base ** n
        return base


def parse_word(text: str, alpha: Alphabet) -> Word:
    """Parse a word expression over the given alphabet."""
    parser = _Parser(_tokenize(text), alpha)
    w = parser.parse_word()
    if parser.peek() is not None:
        raise ValueError(f"trailing input in word expression: {parser.tokens[parser.pos:]}")
    return w


def format_word(w: Word) -> str:
    """Render with run grouping, e.g. ``a^2 b^-1``; the identity is ``1``.

    Output reparses to a word with the same reduced form.
    """
    if not w.letters:
        return "1"
    runs: list[list[int]] = []
    for x in w.letters:
        if runs and runs[-1][0] == x:
            runs[-1][1] += 1
        else:
            runs.append([x, 1])
    parts = []
    for letter, count in runs:
        name = w.alpha.names[abs(letter) - 1]
        exp = count if letter > 0 else -count
        parts.append(name if exp == 1 else f"{name}^{exp}")
    return " ".join(parts)
