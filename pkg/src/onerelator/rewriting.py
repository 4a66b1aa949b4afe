"""Kernel rewriting, Brown's fibering criterion, HNN splittings, mapping tori.

Given a surjection phi to Z that kills the relator, the kernel of phi is
generated by the conjugates y_{i,j} = t^i x_j t^-i of the non-stable
generators by powers of the stable letter t.  Rewriting the relator in
the y-alphabet exposes the level sequence (lambda_j) that drives
everything here:

* Brown's criterion: the kernel is finitely generated iff the rank is 2
  and the level sequence attains its minimum and maximum exactly once.
* When exactly one extremum is unique, the group is not the fundamental
  group of any compact orientable 3-manifold (exclusion certificate).
* The level window [0, m] carries an HNN splitting with one-relator
  vertex group and level-shift edge maps.
* In the finitely generated case the splitting is a mapping torus and
  the monodromy automorphism can be read off the rewritten relator.

Characters that are not coordinate functions are first normalized so
that the last generator becomes the stable letter.
"""

from __future__ import annotations

from .automorphisms import (
    Automorphism,
    Endomorphism,
    IntegralCharacter,
    normalize_character,
)
from .presentations import OneRelatorPresentation
from .words import Word

FG_KERNEL = "fg_kernel"
NOT_FG_KERNEL = "not_fg_kernel"
UNIQUE_MIN_REPEATED_MAX = "unique_min_repeated_max"
UNIQUE_MAX_REPEATED_MIN = "unique_max_repeated_min"


class YLetter:
    """One occurrence t^level x_slot^sign t^-level of a kernel generator."""

    __slots__ = ("level", "slot", "sign")

    def __init__(self, level: int, slot: int, sign: int):
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        self.level = level
        self.slot = slot
        self.sign = sign

    def inverse(self) -> "YLetter":
        return YLetter(self.level, self.slot, -self.sign)

    def __eq__(self, other) -> bool:
        return (isinstance(other, YLetter) and self.level == other.level
                and self.slot == other.slot and self.sign == other.sign)

    def __hash__(self) -> int:
        return hash((YLetter, self.level, self.slot, self.sign))

    def __repr__(self) -> str:
        return "y%d_%d%s" % (self.level, self.slot,
                             "" if self.sign > 0 else "^-1")


class YWord:
    """A relator rewritten over the kernel generators y_{i,j}.

    Levels are normalized so their minimum is 0; ``shift`` records the
    subtracted constant, so expanding reproduces the conjugate
    t^-shift w t^shift of the original word.
    """

    __slots__ = ("letters", "rank", "stable", "max_level", "shift")

    def __init__(self, letters, rank: int, stable: int, shift: int = 0):
        self.letters = tuple(letters)
        self.rank = rank
        self.stable = stable
        self.shift = shift
        self.max_level = max((l.level for l in self.letters), default=0)
        if self.letters and min(l.level for l in self.letters) != 0:
            raise ValueError("levels must be normalized to minimum 0")

    def lambda_sequence(self) -> tuple[int, ...]:
        return tuple(l.level for l in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __eq__(self, other) -> bool:
        return (isinstance(other, YWord) and self.letters == other.letters
                and self.rank == other.rank and self.stable == other.stable)

    def __repr__(self) -> str:
        return " ".join(repr(l) for l in self.letters) or "1"

    def slot_position(self, slot: int) -> int:
        """1-based position of a slot among the non-stable generators."""
        return slot if slot < self.stable else slot - 1

    def vertex_index(self, letter: YLetter) -> int:
        return letter.level * (self.rank - 1) + self.slot_position(letter.slot)

    def as_vertex_word(self) -> Word:
        """The relator as a word over the vertex generators, indexed
        level-major: y_{i,j} -> i*(rank-1) + position(j)."""
        return Word(letter.sign * self.vertex_index(letter)
                    for letter in self.letters)


def y_rewrite(w: Word, stable: int, rank: int | None = None) -> YWord:
    """Rewrite a cyclically reduced word with zero stable-exponent sum.

    Scans with a running power of the stable letter; each non-stable
    letter met at power p contributes a y-letter of level p.  Levels are
    then shifted so the minimum is 0.
    """
    if rank is None:
        rank = max(w.max_generator(), stable)
    if not w.is_cyclically_reduced():
        raise ValueError("word must be cyclically reduced")
    if w.exponent_sum(stable) != 0:
        raise ValueError("exponent sum of the stable letter x%d is %d, not 0"
                         % (stable, w.exponent_sum(stable)))
    letters = []
    power = 0
    for letter in w:
        g = abs(letter)
        if g == stable:
            power += 1 if letter > 0 else -1
        else:
            letters.append(YLetter(power, g, 1 if letter > 0 else -1))
    shift = min((l.level for l in letters), default=0)
    if shift:
        letters = [YLetter(l.level - shift, l.slot, l.sign) for l in letters]
    for first, second in zip(letters, letters[1:]):
        assert first != second.inverse(), "unreduced y-word from reduced input"
    return YWord(letters, rank, stable, shift)


def y_expand(yw: YWord) -> Word:
    """Substitute y_{i,j} -> t^i x_j t^-i and reduce."""
    letters: list[int] = []
    for l in yw.letters:
        letters.extend([yw.stable] * l.level)
        letters.append(l.sign * l.slot)
        letters.extend([-yw.stable] * l.level)
    return Word(letters)


class FiberingReport:
    """Outcome of Brown's criterion for one character."""

    __slots__ = ("lambda_sequence", "min_value", "max_value",
                 "min_multiplicity", "max_multiplicity", "rank_is_two",
                 "verdict", "exclusion")

    def __init__(self, lambda_sequence, rank_is_two: bool):
        self.lambda_sequence = tuple(lambda_sequence)
        if not self.lambda_sequence:
            raise ValueError("empty level sequence")
        self.min_value = min(self.lambda_sequence)
        self.max_value = max(self.lambda_sequence)
        self.min_multiplicity = self.lambda_sequence.count(self.min_value)
        self.max_multiplicity = self.lambda_sequence.count(self.max_value)
        self.rank_is_two = rank_is_two
        unique_min = self.min_multiplicity == 1
        unique_max = self.max_multiplicity == 1
        if rank_is_two and unique_min and unique_max:
            self.verdict = FG_KERNEL
        else:
            self.verdict = NOT_FG_KERNEL
        self.exclusion = None
        if rank_is_two and unique_min != unique_max:
            self.exclusion = (UNIQUE_MIN_REPEATED_MAX if unique_min
                              else UNIQUE_MAX_REPEATED_MIN)

    def __repr__(self) -> str:
        return ("FiberingReport(lambda=%r, verdict=%s, exclusion=%s)"
                % (self.lambda_sequence, self.verdict, self.exclusion))


def canonical_vanishing_character(p: OneRelatorPresentation) -> IntegralCharacter:
    """The deterministic surjective character killing the relator.

    If the exponent vector is zero, the dual of the highest-index
    generator occurring in the relator; if some coordinate vanishes, the
    dual of the first such generator; otherwise the primitive kernel
    vector supported on the first two coordinates, sign-normalized so
    its first nonzero entry is positive.
    """
    if not p.relator:
        raise ValueError("empty relator admits no canonical character")
    e = p.exponent_vector()
    values = [0] * p.rank
    if all(v == 0 for v in e):
        values[max(p.relator.generators_used()) - 1] = 1
        return IntegralCharacter(values)
    for j, v in enumerate(e):
        if v == 0:
            values[j] = 1
            return IntegralCharacter(values)
    if p.rank < 2:
        raise ValueError("no surjective character kills the relator "
                         "(rank 1, nonzero exponent sum)")
    from math import gcd
    g = gcd(e[0], e[1])
    values[0] = e[1] // g
    values[1] = -e[0] // g
    if values[0] < 0:
        values = [-v for v in values]
    return IntegralCharacter(values)


def _check_character(p: OneRelatorPresentation, phi: IntegralCharacter) -> None:
    if phi.rank != p.rank:
        raise ValueError("character rank %d != presentation rank %d"
                         % (phi.rank, p.rank))
    if not phi.is_surjective:
        raise ValueError("character %r is not surjective" % (phi,))
    if phi(p.relator) != 0:
        raise ValueError("character does not kill the relator: phi(w) = %d"
                         % phi(p.relator))


def normalized_relator(p: OneRelatorPresentation, phi: IntegralCharacter):
    """Move the character to the coordinate form dual to the last generator.

    Returns (w, theta) where theta = normalize_character(phi) and w is
    the cyclically reduced relator of the Nielsen-equivalent
    presentation on which phi becomes x -> exponent sum of x_rank; the
    last generator is then the stable letter and w has zero exponent
    sum on it.
    """
    if not p.relator:
        raise ValueError("relator must be nonempty")
    _check_character(p, phi)
    theta = normalize_character(phi)
    w, _ = theta.backward(p.relator).cyclic_core()
    assert w.exponent_sum(p.rank) == 0
    return w, theta


def brown_test(p: OneRelatorPresentation, phi: IntegralCharacter) -> FiberingReport:
    """Brown's criterion for the finite generation of ker(phi)."""
    w, _ = normalized_relator(p, phi)
    yw = y_rewrite(w, stable=p.rank, rank=p.rank)
    return FiberingReport(yw.lambda_sequence(), rank_is_two=(p.rank == 2))


def non_manifold_certificate(p: OneRelatorPresentation):
    """Exclusion certificate from the level sequence, or None.

    Runs Brown's test against the canonical vanishing character; a
    sequence with exactly one unique extremum certifies that the group
    is not the fundamental group of a compact orientable 3-manifold.
    """
    if p.rank != 2:
        raise ValueError("certificate search needs rank 2, got %d" % p.rank)
    if not p.relator:
        raise ValueError("relator must be nonempty")
    return brown_test(p, canonical_vanishing_character(p)).exclusion


class HnnSplitting:
    """HNN decomposition with one-relator vertex group and level-shift edges.

    Vertex generators are y_{i,j} for levels 0 <= i <= m, indexed
    level-major; the edge group is free on levels 0 <= i <= m-1, with
    inclusions i+ (identity) and i- (level shift by one).  ``theta`` is
    the character normalization that was applied to the input relator
    before rewriting.
    """

    __slots__ = ("vertex", "edge_rank", "stable_name", "inclusion_plus",
                 "inclusion_minus", "levels", "source_rank", "theta", "yword")

    def __init__(self, vertex, edge_rank, inclusion_plus, inclusion_minus,
                 levels, source_rank, theta, yword, stable_name="t"):
        self.vertex = vertex
        self.edge_rank = edge_rank
        self.inclusion_plus = inclusion_plus
        self.inclusion_minus = inclusion_minus
        self.levels = levels
        self.source_rank = source_rank
        self.theta = theta
        self.yword = yword
        self.stable_name = stable_name

    def __eq__(self, other) -> bool:
        return (isinstance(other, HnnSplitting)
                and self.vertex == other.vertex
                and self.edge_rank == other.edge_rank
                and self.inclusion_plus == other.inclusion_plus
                and self.inclusion_minus == other.inclusion_minus
                and self.levels == other.levels
                and self.source_rank == other.source_rank)

    def __hash__(self) -> int:
        return hash((HnnSplitting, self.vertex, self.edge_rank, self.levels))

    def vertex_name(self, index: int) -> str:
        level, position = divmod(index - 1, self.source_rank - 1)
        return "y%d_%d" % (level, position + 1)

    def expand_vertex_word(self, w: Word) -> Word:
        """Expand a word over vertex generators back into the normalized
        free group (stable letter = last generator)."""
        n = self.source_rank
        letters: list[int] = []
        for letter in w:
            level, position = divmod(abs(letter) - 1, n - 1)
            slot = position + 1  # slots are 1..n-1, stable letter is n
            letters.extend([n] * level)
            letters.append(slot if letter > 0 else -slot)
            letters.extend([-n] * level)
        return Word(letters)

    def __repr__(self) -> str:
        return ("HnnSplitting(vertex=%r, edge_rank=%d, m=%d)"
                % (self.vertex, self.edge_rank, self.levels))


def _splitting_from_yword(yw: YWord, theta: Automorphism) -> HnnSplitting:
    n = yw.rank
    m = yw.max_level
    vertex_rank = (m + 1) * (n - 1)
    edge_rank = m * (n - 1)
    vertex = OneRelatorPresentation(vertex_rank, yw.as_vertex_word())
    inclusion_plus = Endomorphism([Word([k]) for k in range(1, edge_rank + 1)],
                                  rank=edge_rank, target_rank=vertex_rank)
    inclusion_minus = Endomorphism(
        [Word([k + (n - 1)]) for k in range(1, edge_rank + 1)],
        rank=edge_rank, target_rank=vertex_rank)
    return HnnSplitting(vertex, edge_rank, inclusion_plus, inclusion_minus,
                        levels=m, source_rank=n, theta=theta, yword=yw)


def moldavansky_split(p: OneRelatorPresentation, phi: IntegralCharacter) -> HnnSplitting:
    """The HNN splitting of <x | w> over ker(phi)'s level window [0, m]."""
    w, theta = normalized_relator(p, phi)
    yw = y_rewrite(w, stable=p.rank, rank=p.rank)
    return _splitting_from_yword(yw, theta)


class MappingTorusData:
    """Monodromy data when the splitting is a mapping torus.

    ``psi`` is the free-group automorphism of the edge group (rank
    ``base_rank``) with psi(y_j) = y_{j+1} for j < m-1 and
    psi(y_{m-1}) = w3, the relator solved for the top-level generator.
    """

    __slots__ = ("base_rank", "psi", "w3", "splitting")

    def __init__(self, base_rank, psi, w3, splitting):
        self.base_rank = base_rank
        self.psi = psi
        self.w3 = w3
        self.splitting = splitting

    def __repr__(self) -> str:
        return "MappingTorusData(base_rank=%d, psi=%r)" % (self.base_rank, self.psi)


def mapping_torus(p: OneRelatorPresentation, phi: IntegralCharacter) -> MappingTorusData:
    """Extract the monodromy of the fibration detected by Brown's test.

    Requires rank 2 and a level sequence with both extrema unique; the
    rewritten relator is rotated and possibly inverted to the form
    y_m^-1 w3 with w3 omitting y_m, so the vertex relation reads
    y_m = w3(y_0, ..., y_{m-1}).
    """
    w, theta = normalized_relator(p, phi)
    if p.rank != 2:
        raise ValueError("mapping torus extraction needs rank 2, got %d" % p.rank)
    yw = y_rewrite(w, stable=p.rank, rank=p.rank)
    report = FiberingReport(yw.lambda_sequence(), rank_is_two=True)
    if report.verdict != FG_KERNEL:
        raise ValueError("kernel is not finitely generated; no mapping torus")
    m = yw.max_level
    if m == 0:
        raise ValueError("relator omits the stable letter: trivial-edge free "
                         "product, not a mapping torus")
    splitting = _splitting_from_yword(yw, theta)
    relator = splitting.vertex.relator  # over y_1 .. y_{m+1}, level-major
    top = m + 1
    if relator.count(top) == 1:
        relator = ~relator
    position = relator.index(-top)
    relator = relator.rotated(position)
    w3 = Word(relator[1:])
    if w3.occurrences(top):
        raise RuntimeError("top-level generator reappears in w3")

    forward = [Word([j + 1]) for j in range(1, m)] + [w3]
    # Invert: psi^-1(y_k) = y_{k-1} for k >= 1; solve w3 = a y_0^eps b
    # (y_0 occurs exactly once) for the image of y_0.
    if w3.occurrences(1) != 1:
        raise RuntimeError("bottom-level generator not isolated in w3")
    split_at = w3.index(1) if w3.count(1) else w3.index(-1)
    eps = 1 if w3.count(1) else -1
    before, after = Word(w3[:split_at]), Word(w3[split_at + 1:])

    def shift_down(u: Word) -> Word:
        return Word((abs(letter) - 1) * (1 if letter > 0 else -1) for letter in u)

    solved = ~shift_down(before) * Word([m]) * ~shift_down(after)
    backward = [solved if eps == 1 else ~solved]
    backward += [Word([k]) for k in range(1, m)]
    psi = Automorphism.from_images(forward, backward)
    return MappingTorusData(base_rank=m, psi=psi, w3=w3, splitting=splitting)
