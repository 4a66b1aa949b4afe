"""One-relator presentations, Tietze moves, and abelianization certificates.

A :class:`OneRelatorPresentation` stores its relator cyclically reduced,
exactly as given (no conjugacy canonicalization), so that rewriting
output matches the input word letter for letter.  Use
:func:`relators_equivalent` for equality up to conjugacy and inversion,
which by Magnus's uniqueness theorem is equality of normal closures.

Multi-relator presentations exist only transiently, as the intermediate
results of stabilize/destabilize chains.
"""

from __future__ import annotations

import math
import re

from .automorphisms import Automorphism
from .words import CyclicWord, ParseError, Word, format_word, parse_word


class OneRelatorPresentation:
    """<x1, ..., x_rank | relator>; an empty relator means the free group."""

    __slots__ = ("rank", "relator", "label")

    def __init__(self, rank: int, relator: Word = Word(), label: str | None = None):
        if rank < 1:
            raise ValueError("rank must be >= 1")
        relator = Word(relator)
        if relator.max_generator() > rank:
            raise ValueError("relator %r uses generators beyond rank %d"
                             % (relator, rank))
        self.rank = rank
        self.relator, _ = relator.cyclic_core()
        self.label = label

    def exponent_vector(self) -> tuple[int, ...]:
        return tuple(self.relator.exponent_sum(g) for g in range(1, self.rank + 1))

    def text(self) -> str:
        gens = ", ".join("x%d" % i for i in range(1, self.rank + 1))
        return "< %s | %s >" % (gens, format_word(self.relator))

    def __eq__(self, other) -> bool:
        return (isinstance(other, OneRelatorPresentation)
                and self.rank == other.rank and self.relator == other.relator)

    def __hash__(self) -> int:
        return hash((OneRelatorPresentation, self.rank, self.relator))

    def __repr__(self) -> str:
        return self.text()


class Presentation:
    """A finite presentation with any number of relators (transient form)."""

    __slots__ = ("rank", "relators", "label")

    def __init__(self, rank: int, relators=(), label: str | None = None):
        if rank < 1:
            raise ValueError("rank must be >= 1")
        self.rank = rank
        self.relators = tuple(Word(r) for r in relators)
        for r in self.relators:
            if r.max_generator() > rank:
                raise ValueError("relator %r uses generators beyond rank %d"
                                 % (r, rank))
        self.label = label

    def one_relator(self) -> OneRelatorPresentation:
        nonempty = [r for r in self.relators if r]
        if len(nonempty) > 1:
            raise ValueError("presentation has %d relators; analyses need "
                             "the one-relator form" % len(nonempty))
        relator = nonempty[0] if nonempty else Word()
        return OneRelatorPresentation(self.rank, relator, label=self.label)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Presentation)
                and self.rank == other.rank and self.relators == other.relators)

    def __hash__(self) -> int:
        return hash((Presentation, self.rank, self.relators))

    def __repr__(self) -> str:
        gens = ", ".join("x%d" % i for i in range(1, self.rank + 1))
        rels = ", ".join(format_word(r) or "1" for r in self.relators)
        return "< %s | %s >" % (gens, rels)


def stabilize(p: OneRelatorPresentation) -> Presentation:
    """Add a fresh generator together with the relator killing it."""
    new_gen = p.rank + 1
    relators = ([p.relator] if p.relator else []) + [Word([new_gen])]
    return Presentation(new_gen, relators, label=p.label)


def _isolated_form(relator: Word, gen: int) -> Word | None:
    """Rotate/invert the cyclic core to gen^-1 * u with u omitting gen."""
    core, _ = relator.cyclic_core()
    if core.occurrences(gen) != 1:
        return None
    if core.count(gen) == 1:
        core = ~core
    position = core.index(-gen)
    return core.rotated(position)


def destabilize(p: Presentation, gen: int, relator_index: int) -> Presentation:
    """Remove ``gen``, eliminating it via relator ``relator_index`` (0-based).

    The relator must be, up to cyclic rotation and inversion, of the
    form gen^-1 * u with u not involving gen; every other occurrence of
    gen is replaced by u and the remaining generators are reindexed
    densely.
    """
    if not 1 <= gen <= p.rank:
        raise ValueError("no generator x%d" % gen)
    if not 0 <= relator_index < len(p.relators):
        raise ValueError("no relator at index %d" % relator_index)
    if p.rank == 1:
        raise ValueError("cannot destabilize a rank-1 presentation")
    rotated = _isolated_form(p.relators[relator_index], gen)
    if rotated is None:
        raise ValueError("relator %r does not isolate x%d"
                         % (p.relators[relator_index], gen))
    replacement = Word(rotated[1:])  # rotated == gen^-1 * replacement

    def substitute(w: Word) -> Word:
        letters: list[int] = []
        for letter in w:
            if letter == gen:
                letters.extend(replacement)
            elif letter == -gen:
                letters.extend(~replacement)
            else:
                letters.append(letter)
        return Word(letters)

    def reindex(w: Word) -> Word:
        return Word(letter - (1 if letter > gen else 0)
                    if letter > 0 else letter + (1 if letter < -gen else 0)
                    for letter in w)

    new_relators = [reindex(substitute(r))
                    for i, r in enumerate(p.relators) if i != relator_index]
    return Presentation(p.rank - 1, [r for r in new_relators if r], label=p.label)


def apply_automorphism(p: OneRelatorPresentation, theta: Automorphism) -> OneRelatorPresentation:
    """Replace the relator by its (cyclically reduced) image under theta."""
    if theta.rank != p.rank:
        raise ValueError("automorphism rank %d != presentation rank %d"
                         % (theta.rank, p.rank))
    return OneRelatorPresentation(p.rank, theta(p.relator), label=p.label)


def relators_equivalent(a: Word, b: Word) -> bool:
    """Same normal closure on a fixed basis: conjugate up to inversion."""
    return CyclicWord(a) == CyclicWord(b)


class AbelianInvariants:
    """H1 of a one-relator group: Z^free_rank x Z/torsion (torsion >= 2 or None)."""

    __slots__ = ("free_rank", "torsion")

    def __init__(self, free_rank: int, torsion: int | None = None):
        if torsion is not None and torsion < 2:
            raise ValueError("torsion coefficient must be >= 2")
        self.free_rank = free_rank
        self.torsion = torsion

    def describe(self) -> str:
        factors = ["Z"] * self.free_rank
        if self.torsion is not None:
            factors.append("Z/%d" % self.torsion)
        return " x ".join(factors) if factors else "trivial"

    def __eq__(self, other) -> bool:
        return (isinstance(other, AbelianInvariants)
                and self.free_rank == other.free_rank
                and self.torsion == other.torsion)

    def __hash__(self) -> int:
        return hash((AbelianInvariants, self.free_rank, self.torsion))

    def __repr__(self) -> str:
        return "AbelianInvariants(%s)" % self.describe()


def abelianization(p: OneRelatorPresentation) -> AbelianInvariants:
    """H1 = Z^rank / <exponent vector of the relator>."""
    e = p.exponent_vector()
    if all(v == 0 for v in e):
        return AbelianInvariants(p.rank)
    d = math.gcd(*e)
    return AbelianInvariants(p.rank - 1, d if d >= 2 else None)


def element_order_in_h1(p: OneRelatorPresentation, u: Word):
    """Order of the image of u in H1; math.inf for infinite order."""
    if u.max_generator() > p.rank:
        raise ValueError("word %r uses generators beyond rank %d" % (u, p.rank))
    e_w = p.exponent_vector()
    e_u = tuple(u.exponent_sum(g) for g in range(1, p.rank + 1))
    if all(v == 0 for v in e_u):
        return 1
    if all(v == 0 for v in e_w):
        return math.inf
    d = math.gcd(*e_w)
    primitive = tuple(v // d for v in e_w)
    pivot = next(i for i, v in enumerate(primitive) if v != 0)
    if e_u[pivot] % primitive[pivot] != 0:
        return math.inf
    k = e_u[pivot] // primitive[pivot]
    if any(e_u[i] != k * primitive[i] for i in range(p.rank)):
        return math.inf
    return d // math.gcd(k, d)


# ---------------------------------------------------------------------------
# Presentation text form:  < x1, x2 | WORD >  [; label=NAME]
# ---------------------------------------------------------------------------

_LABEL_RE = re.compile(r"^\s*label\s*=\s*([A-Za-z0-9_.:+-]+)\s*$")


def parse_presentation(text: str, parens: bool = False) -> OneRelatorPresentation:
    """Parse `< x1, x2 | WORD >` with an optional trailing `; label=NAME`.

    The generator list fixes the rank and must be x1..xn in order (or a
    prefix a, b, c, ... of the compact alphabet).
    """
    body = text
    label = None
    if ";" in text:
        body, _, tail = text.partition(";")
        match = _LABEL_RE.match(tail)
        if not match:
            raise ParseError("expected '; label=NAME' after presentation")
        label = match.group(1)
    body = body.strip()
    if not (body.startswith("<") and body.endswith(">")):
        raise ParseError("presentation must be enclosed in < ... >")
    inner = body[1:-1]
    if "|" not in inner:
        raise ParseError("presentation needs a '|' separating generators "
                         "from the relator")
    gen_part, _, word_part = inner.partition("|")
    if "|" in word_part:
        raise ParseError("only one-relator presentations are supported")
    names = [name.strip() for name in gen_part.split(",") if name.strip()]
    if not names:
        raise ParseError("empty generator list")
    for i, name in enumerate(names, start=1):
        if name not in ("x%d" % i, "abcdefghijklmnopqrstuvwxyz"[i - 1]):
            raise ParseError("generator #%d must be named x%d (or %r), got %r"
                             % (i, i, "abcdefghijklmnopqrstuvwxyz"[i - 1], name))
    rank = len(names)
    relator = parse_word(word_part, rank, parens=parens)
    return OneRelatorPresentation(rank, relator, label=label)


def format_presentation(p: OneRelatorPresentation) -> str:
    text = p.text()
    if p.label:
        text += " ; label=%s" % p.label
    return text
