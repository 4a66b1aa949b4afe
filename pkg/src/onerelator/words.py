"""Free-group words over generators x1, x2, ...

A letter is a nonzero integer: ``g`` stands for the generator x_g and
``-g`` for its inverse.  A :class:`Word` is a freely reduced tuple of
letters; the empty word is the identity.  All operations return new
values, so words are safe to share between threads.
"""

from __future__ import annotations

from typing import Iterable


class ParseError(ValueError):
    """Raised when word or presentation text does not match the grammar."""

    def __init__(self, message, position=None):
        if position is not None:
            message = "%s (at position %d)" % (message, position)
        super().__init__(message)
        self.position = position


def _reduce(letters: Iterable[int]) -> tuple[int, ...]:
    """Freely reduce a letter sequence with a stack scan."""
    stack: list[int] = []
    for letter in letters:
        letter = int(letter)
        if letter == 0:
            raise ValueError("0 is not a valid letter")
        if stack and stack[-1] == -letter:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


class Word(tuple):
    """A freely reduced word; ``Word([1, 1, -2])`` is x1^2 x2^-1.

    Construction reduces the input, so every Word is reduced by
    construction.  ``*`` is concatenation (with reduction), ``~`` is
    inversion, ``**`` is integer power.
    """

    def __new__(cls, letters: Iterable[int] = ()):
        return tuple.__new__(cls, _reduce(letters))

    def __mul__(self, other: "Word") -> "Word":
        return Word(tuple.__add__(self, other))

    __add__ = __mul__

    def __invert__(self) -> "Word":
        return tuple.__new__(Word, tuple(-letter for letter in reversed(self)))

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else ~self
        result = Word()
        for _ in range(abs(n)):
            result = result * base
        return result

    def __repr__(self) -> str:
        return format_word(self) or "1"

    def conjugated_by(self, u: "Word") -> "Word":
        """u * self * u^-1."""
        return u * self * ~u

    def exponent_sum(self, gen: int) -> int:
        """Signed number of occurrences of generator ``gen``."""
        return self.count(gen) - self.count(-gen)

    def occurrences(self, gen: int) -> int:
        """Unsigned count of ``gen`` and its inverse."""
        return self.count(gen) + self.count(-gen)

    def generators_used(self) -> set[int]:
        return {abs(letter) for letter in self}

    def max_generator(self) -> int:
        """Largest generator index appearing (0 for the empty word)."""
        return max((abs(letter) for letter in self), default=0)

    def rotated(self, k: int) -> "Word":
        """Cyclic rotation moving position ``k`` to the front.

        Only meaningful for cyclically reduced words, whose rotations
        stay reduced; no reduction is performed.
        """
        if not self:
            return self
        k %= len(self)
        return tuple.__new__(Word, tuple(self[k:]) + tuple(self[:k]))

    def cyclic_core(self) -> tuple["Word", "Word"]:
        """Split into (core, conjugator) with self == conjugator * core * ~conjugator.

        The core is cyclically reduced.
        """
        letters = tuple(self)
        lo, hi = 0, len(letters)
        while hi - lo >= 2 and letters[lo] == -letters[hi - 1]:
            lo += 1
            hi -= 1
        core = tuple.__new__(Word, letters[lo:hi])
        conjugator = tuple.__new__(Word, letters[:lo])
        return core, conjugator

    def is_cyclically_reduced(self) -> bool:
        return len(self) < 2 or self[0] != -self[-1]


# Functional aliases matching the operation vocabulary used throughout.

def reduce(letters: Iterable[int]) -> Word:
    """Freely reduce a raw letter sequence."""
    return Word(letters)


def concat(a: Word, b: Word) -> Word:
    return a * b


def invert(w: Word) -> Word:
    return ~w


def exponent_sum(w: Word, gen: int) -> int:
    return w.exponent_sum(gen)


def occurrence_count(w: Word, gen: int) -> int:
    return w.occurrences(gen)


def cyclically_reduce(w: Word) -> tuple[Word, Word]:
    return w.cyclic_core()


def _letter_key(letter: int) -> tuple[int, int]:
    # x1 < x1^-1 < x2 < x2^-1 < ...
    return (abs(letter), 0 if letter > 0 else 1)


def _word_key(letters) -> list[tuple[int, int]]:
    return [_letter_key(letter) for letter in letters]


class CyclicWord:
    """Canonical representative of a word up to conjugacy and inversion.

    Two words have equal CyclicWord iff one is conjugate to the other or
    to the other's inverse in the free group.  The representative is the
    lexicographically least rotation of the cyclic core or of its
    inverse, ordering letters by (generator index, sign) with x_i before
    x_i^-1.
    """

    __slots__ = ("word",)

    def __init__(self, w: Word):
        core, _ = w.cyclic_core()
        if not core:
            self.word = core
            return
        best = None
        best_key = None
        for candidate in (core, ~core):
            for k in range(len(candidate)):
                rotation = candidate.rotated(k)
                key = _word_key(rotation)
                if best_key is None or key < best_key:
                    best, best_key = rotation, key
        self.word = best

    def __eq__(self, other) -> bool:
        return isinstance(other, CyclicWord) and self.word == other.word

    def __hash__(self) -> int:
        return hash((CyclicWord, tuple(self.word)))

    def __len__(self) -> int:
        return len(self.word)

    def __repr__(self) -> str:
        return "CyclicWord(%r)" % (self.word,)


def canonical_cyclic(w: Word) -> CyclicWord:
    return CyclicWord(w)


def is_conjugate(a: Word, b: Word) -> bool:
    """True iff a and b are conjugate in the free group (no inversion)."""
    core_a, _ = a.cyclic_core()
    core_b, _ = b.cyclic_core()
    if len(core_a) != len(core_b):
        return False
    if not core_a:
        return True
    doubled = tuple(core_b) + tuple(core_b)
    target = tuple(core_a)
    return any(doubled[k:k + len(target)] == target for k in range(len(core_b)))


# ---------------------------------------------------------------------------
# Text grammar
#
#   word   := ws* (term ws*)*
#   term   := atom exponent?
#   atom   := "x" digit+          (1-based generator index)
#           | letter              (a-z generators 1-26, A-Z their inverses)
#           | "(" word ")"        (CLI extension, off by default)
#   exponent := "^" "-"? digit+
#
# "x" not followed by a digit is the compact letter x (generator 24).
# ---------------------------------------------------------------------------

def _parse_exponent(text: str, pos: int) -> tuple[int, int]:
    """Parse an optional ^-exponent at ``pos``; returns (exponent, new pos)."""
    if pos >= len(text) or text[pos] != "^":
        return 1, pos
    pos += 1
    sign = 1
    if pos < len(text) and text[pos] == "-":
        sign = -1
        pos += 1
    start = pos
    while pos < len(text) and text[pos].isdigit():
        pos += 1
    if pos == start:
        raise ParseError("expected digits after '^'", start)
    return sign * int(text[start:pos]), pos


def _parse_atoms(text: str, pos: int, parens: bool, depth: int) -> tuple[list[int], int]:
    letters: list[int] = []
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch == ")":
            if depth == 0:
                raise ParseError("unmatched ')'", pos)
            return letters, pos
        if ch == "(":
            if not parens:
                raise ParseError("'(' not allowed in this grammar", pos)
            inner, pos = _parse_atoms(text, pos + 1, parens, depth + 1)
            if pos >= len(text) or text[pos] != ")":
                raise ParseError("unclosed '('", pos)
            pos += 1
            exponent, pos = _parse_exponent(text, pos)
            if exponent < 0:
                inner = [-letter for letter in reversed(inner)]
            letters.extend(inner * abs(exponent))
            continue
        if ch == "x" and pos + 1 < len(text) and text[pos + 1].isdigit():
            pos += 1
            start = pos
            while pos < len(text) and text[pos].isdigit():
                pos += 1
            index = int(text[start:pos])
            if index < 1:
                raise ParseError("generator index must be >= 1", start)
        elif ch.isalpha() and ch.isascii():
            index = ord(ch.lower()) - ord("a") + 1
            if ch.isupper():
                index = -index
            pos += 1
        else:
            raise ParseError("unexpected character %r" % ch, pos)
        exponent, pos = _parse_exponent(text, pos)
        letter = index if exponent >= 0 else -index
        letters.extend([letter] * abs(exponent))
    return letters, pos


def parse_word(text: str, rank: int | None = None, parens: bool = False) -> Word:
    """Parse word text (exponent or compact form) into a Word.

    ``rank``, when given, bounds the generator indices.  ``parens``
    enables the extended grammar with parenthesized powers, e.g.
    ``(x1^3 x2 x1^2)^3``.
    """
    letters, pos = _parse_atoms(text, 0, parens, 0)
    if pos != len(text):
        raise ParseError("unexpected character %r" % text[pos], pos)
    if rank is not None:
        for letter in letters:
            if abs(letter) > rank:
                raise ParseError(
                    "generator x%d exceeds rank %d" % (abs(letter), rank))
    return Word(letters)


def format_word(w: Iterable[int]) -> str:
    """Render with run-length collapse, e.g. "x1^2 x2^-3"; empty word -> ""."""
    parts = []
    run_letter: int | None = None
    run_length = 0
    letters = list(w) + [0]
    for letter in letters:
        if letter == run_letter:
            run_length += 1
            continue
        if run_letter is not None:
            index = abs(run_letter)
            exponent = run_length if run_letter > 0 else -run_length
            parts.append("x%d" % index if exponent == 1 else "x%d^%d" % (index, exponent))
        run_letter, run_length = letter, 1
    return " ".join(parts)
