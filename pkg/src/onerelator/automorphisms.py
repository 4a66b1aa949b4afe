"""Free-group endomorphisms, Nielsen moves, characters, Whitehead minimization.

Automorphisms are built from elementary moves so that every automorphism
carries an explicit, replayable inverse witness.  A move is a tuple:

    ("inv", i)       x_i -> x_i^-1
    ("swap", i, j)   exchange x_i and x_j
    ("rmul", r, s)   x_r -> x_r * x_s^sign(s)      (|s| != r)
    ("lmul", r, s)   x_r -> x_s^sign(s) * x_r      (|s| != r)

A move list is in application order: the first move is applied first.
"""

from __future__ import annotations

from collections import deque
from math import gcd

from .words import Word

Move = tuple


def _check_move(rank: int, move: Move) -> None:
    kind = move[0]
    if kind == "inv":
        (i,) = move[1:]
        if not 1 <= i <= rank:
            raise ValueError("generator index out of range: %d" % i)
    elif kind == "swap":
        i, j = move[1:]
        if not (1 <= i <= rank and 1 <= j <= rank):
            raise ValueError("generator index out of range")
        if i == j:
            raise ValueError("swap needs distinct generators")
    elif kind in ("rmul", "lmul"):
        r, s = move[1:]
        if not (1 <= r <= rank and 1 <= abs(s) <= rank):
            raise ValueError("generator index out of range")
        if r == abs(s):
            raise ValueError("multiplier must differ from target generator")
    else:
        raise ValueError("unknown move kind %r" % (kind,))


def move_inverse(move: Move) -> Move:
    kind = move[0]
    if kind in ("inv", "swap"):
        return move
    if kind in ("rmul", "lmul"):
        _, r, s = move
        return (kind, r, -s)
    raise ValueError("unknown move kind %r" % (kind,))


def move_apply(move: Move, w: Word) -> Word:
    """Apply one elementary move, as a substitution, to a word."""
    kind = move[0]
    out: list[int] = []
    if kind == "inv":
        _, i = move
        return Word(-letter if abs(letter) == i else letter for letter in w)
    if kind == "swap":
        _, i, j = move
        for letter in w:
            g = abs(letter)
            if g == i:
                out.append(j if letter > 0 else -j)
            elif g == j:
                out.append(i if letter > 0 else -i)
            else:
                out.append(letter)
        return Word(out)
    _, r, s = move
    for letter in w:
        if letter == r:
            out.extend((r, s) if kind == "rmul" else (s, r))
        elif letter == -r:
            out.extend((-s, -r) if kind == "rmul" else (-r, -s))
        else:
            out.append(letter)
    return Word(out)


class Endomorphism:
    """Generator-image map between free groups.

    ``rank`` is the source rank; ``target_rank`` (default: source rank)
    bounds the generator indices allowed in the images.
    """

    __slots__ = ("rank", "images", "target_rank")

    def __init__(self, images, rank=None, target_rank=None):
        images = tuple(Word(img) for img in images)
        self.rank = len(images) if rank is None else rank
        if len(images) != self.rank:
            raise ValueError("expected %d images, got %d" % (self.rank, len(images)))
        self.target_rank = self.rank if target_rank is None else target_rank
        self.images = images
        for img in images:
            if img.max_generator() > self.target_rank:
                raise ValueError("image %r exceeds target rank %d"
                                 % (img, self.target_rank))

    @classmethod
    def identity(cls, rank: int) -> "Endomorphism":
        return cls([Word([i]) for i in range(1, rank + 1)])

    def __call__(self, w: Word) -> Word:
        letters: list[int] = []
        for letter in w:
            g = abs(letter)
            if g > self.rank:
                raise ValueError("word uses x%d beyond rank %d" % (g, self.rank))
            image = self.images[g - 1]
            letters.extend(image if letter > 0 else ~image)
        return Word(letters)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Endomorphism)
                and self.rank == other.rank
                and self.target_rank == other.target_rank
                and self.images == other.images)

    def __hash__(self) -> int:
        return hash((Endomorphism, self.rank, self.target_rank, self.images))

    def __repr__(self) -> str:
        body = ", ".join("x%d -> %r" % (i + 1, img)
                         for i, img in enumerate(self.images))
        return "Endomorphism(%s)" % body

    def is_identity(self) -> bool:
        return all(img == Word([i + 1]) for i, img in enumerate(self.images))


def apply(e: Endomorphism, w: Word) -> Word:
    return e(w)


def _replay(rank: int, moves) -> Endomorphism:
    images = [Word([i]) for i in range(1, rank + 1)]
    for move in moves:
        images = [move_apply(move, img) for img in images]
    return Endomorphism(images, rank=rank)


class Automorphism:
    """Invertible endomorphism with an explicit inverse witness.

    Move-built automorphisms keep their move list (application order) so
    consumers can replay them; image-built ones (``from_images``) carry
    ``moves=None`` and are verified by applying both composites to every
    generator.
    """

    __slots__ = ("rank", "moves", "forward", "backward")

    def __init__(self, rank, forward, backward, moves=None):
        self.rank = rank
        self.forward = forward
        self.backward = backward
        self.moves = moves

    @classmethod
    def identity(cls, rank: int) -> "Automorphism":
        e = Endomorphism.identity(rank)
        return cls(rank, e, e, moves=())

    @classmethod
    def from_moves(cls, rank: int, moves) -> "Automorphism":
        moves = tuple(tuple(m) for m in moves)
        for move in moves:
            _check_move(rank, move)
        forward = _replay(rank, moves)
        backward = _replay(rank, [move_inverse(m) for m in reversed(moves)])
        return cls(rank, forward, backward, moves=moves)

    @classmethod
    def from_images(cls, images, backward_images) -> "Automorphism":
        forward = Endomorphism(images)
        backward = Endomorphism(backward_images)
        if forward.rank != backward.rank:
            raise ValueError("forward and backward ranks differ")
        rank = forward.rank
        for i in range(1, rank + 1):
            gen = Word([i])
            if forward(backward(gen)) != gen or backward(forward(gen)) != gen:
                raise ValueError("images do not define mutually inverse maps "
                                 "(fails on x%d)" % i)
        return cls(rank, forward, backward, moves=None)

    def __call__(self, w: Word) -> Word:
        return self.forward(w)

    def inverse(self) -> "Automorphism":
        moves = None
        if self.moves is not None:
            moves = tuple(move_inverse(m) for m in reversed(self.moves))
        return Automorphism(self.rank, self.backward, self.forward, moves=moves)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Automorphism)
                and self.rank == other.rank
                and self.forward == other.forward
                and self.backward == other.backward)

    def __hash__(self) -> int:
        return hash((Automorphism, self.forward, self.backward))

    def __repr__(self) -> str:
        return "Automorphism(%r)" % (self.forward,)

    def is_identity(self) -> bool:
        return self.forward.is_identity()


def compose(a: Automorphism, b: Automorphism) -> Automorphism:
    """The composition a after b: compose(a, b)(w) == a(b(w))."""
    if a.rank != b.rank:
        raise ValueError("rank mismatch: %d vs %d" % (a.rank, b.rank))
    forward = Endomorphism([a.forward(img) for img in b.forward.images],
                           rank=a.rank)
    backward = Endomorphism([b.backward(img) for img in a.backward.images],
                            rank=a.rank)
    moves = None
    if a.moves is not None and b.moves is not None:
        moves = b.moves + a.moves
    return Automorphism(a.rank, forward, backward, moves=moves)


def nielsen_multiply(rank: int, r: int, s: int) -> Automorphism:
    """The Nielsen transformation x_r -> x_r x_s, other generators fixed."""
    if r == s:
        raise ValueError("nielsen_multiply needs r != s")
    if not (1 <= r <= rank and 1 <= s <= rank):
        raise ValueError("generator index out of range")
    return Automorphism.from_moves(rank, [("rmul", r, s)])


def nielsen_invert(rank: int, i: int) -> Automorphism:
    """The Nielsen transformation x_i -> x_i^-1, other generators fixed."""
    if not 1 <= i <= rank:
        raise ValueError("generator index out of range")
    return Automorphism.from_moves(rank, [("inv", i)])


def conjugation_moves(rank: int, by: Word) -> list[Move]:
    """Moves for the inner automorphism z -> by^-1 * z * by."""
    moves: list[Move] = []
    for letter in by:
        for i in range(1, rank + 1):
            if i == abs(letter):
                continue
            moves.append(("lmul", i, -letter))
            moves.append(("rmul", i, letter))
    return moves


# ---------------------------------------------------------------------------
# Integral characters (homomorphisms to Z)
# ---------------------------------------------------------------------------

class IntegralCharacter:
    """Homomorphism to Z given by its integer value on each generator."""

    __slots__ = ("values",)

    def __init__(self, values):
        self.values = tuple(int(v) for v in values)

    @property
    def rank(self) -> int:
        return len(self.values)

    @property
    def is_surjective(self) -> bool:
        return gcd(*self.values) == 1 if self.values else False

    def __call__(self, w: Word) -> int:
        total = 0
        for letter in w:
            g = abs(letter)
            if g > len(self.values):
                raise ValueError("word uses x%d beyond rank %d" % (g, self.rank))
            total += self.values[g - 1] if letter > 0 else -self.values[g - 1]
        return total

    def __eq__(self, other) -> bool:
        return isinstance(other, IntegralCharacter) and self.values == other.values

    def __hash__(self) -> int:
        return hash((IntegralCharacter, self.values))

    def __repr__(self) -> str:
        return "IntegralCharacter(%r)" % (self.values,)


def character_apply(phi: IntegralCharacter, w: Word) -> int:
    return phi(w)


def pullback(phi: IntegralCharacter, e: Endomorphism) -> IntegralCharacter:
    """The character phi composed with e (value on x_j is phi(e(x_j)))."""
    return IntegralCharacter(phi(img) for img in e.images)


def normalize_character(phi: IntegralCharacter) -> Automorphism:
    """An automorphism theta with phi(theta(x_j)) = 0 for j < rank and = 1 at rank.

    Built from elementary moves by running the Euclidean algorithm on the
    character values, folding every coordinate into the last generator
    (which becomes the stable letter).  Coordinate characters only need a
    swap and possibly a sign flip.
    """
    rank = phi.rank
    if rank < 2:
        raise ValueError("normalize_character needs rank >= 2")
    if not phi.is_surjective:
        raise ValueError("character %r is not surjective" % (phi,))
    v = list(phi.values)
    last = rank - 1
    recorded: list[Move] = []  # reverse application order

    def emit(move: Move) -> None:
        # Track the composite character: recording m turns theta into
        # theta o m, so the value vector transforms by m's column action.
        recorded.append(move)
        kind = move[0]
        if kind == "inv":
            v[move[1] - 1] = -v[move[1] - 1]
        elif kind == "swap":
            i, j = move[1] - 1, move[2] - 1
            v[i], v[j] = v[j], v[i]
        else:
            _, r, s = move
            v[r - 1] += v[abs(s) - 1] if s > 0 else -v[abs(s) - 1]

    nonzero = [j for j, value in enumerate(v) if value != 0]
    if len(nonzero) == 1 and abs(v[nonzero[0]]) == 1:
        j = nonzero[0]
        if j != last:
            emit(("swap", j + 1, rank))
    else:
        for j in range(last):
            while v[j] != 0:
                if v[last] == 0:
                    emit(("rmul", rank, j + 1))
                    continue
                q = v[j] // v[last]
                for _ in range(abs(q)):
                    emit(("rmul", j + 1, -rank if q > 0 else rank))
                if v[j] == 0:
                    break
                q = v[last] // v[j]
                for _ in range(abs(q)):
                    emit(("rmul", rank, -(j + 1) if q > 0 else j + 1))
    if v[last] == -1:
        emit(("inv", rank))
    assert v == [0] * last + [1]
    return Automorphism.from_moves(rank, tuple(reversed(recorded)))


# ---------------------------------------------------------------------------
# Whitehead minimization
#
# A Whitehead move of the second kind is a pair (a, A) with a in A and
# -a not in A, acting on generators g with |g| != |a| by
#
#     g  ->  [a if -g not in A] g [a^-1 if g not in A].
#
# On a cyclically reduced word the length change equals (min cut between
# a and -a in the Whitehead graph) - (degree of a), so a first-found
# shortening move can be located with max-flow instead of enumerating
# the exponentially many cut sets.
# ---------------------------------------------------------------------------

def whitehead_graph(w: Word) -> dict[int, dict[int, int]]:
    """Adjacency/multiplicity map of the Whitehead graph of a cyclic word."""
    graph: dict[int, dict[int, int]] = {}

    def add_edge(u, v):
        graph.setdefault(u, {})[v] = graph.setdefault(u, {}).get(v, 0) + 1
        graph.setdefault(v, {})[u] = graph.setdefault(v, {}).get(u, 0) + 1

    n = len(w)
    for i in range(n):
        add_edge(w[i], -w[(i + 1) % n])
    return graph


def _min_cut(graph, source, sink, limit):
    """Edmonds-Karp max-flow, aborted once flow reaches ``limit``.

    Returns (flow, source_side) where source_side is the set of nodes
    reachable from source in the residual graph (only meaningful when
    flow < limit).
    """
    residual = {u: dict(nbrs) for u, nbrs in graph.items()}
    residual.setdefault(source, {})
    residual.setdefault(sink, {})
    flow = 0
    while flow < limit:
        parent = {source: None}
        queue = deque([source])
        while queue and sink not in parent:
            u = queue.popleft()
            for v, cap in residual[u].items():
                if cap > 0 and v not in parent:
                    parent[v] = u
                    queue.append(v)
        if sink not in parent:
            return flow, set(parent)
        bottleneck = limit - flow
        v = sink
        while parent[v] is not None:
            u = parent[v]
            bottleneck = min(bottleneck, residual[u][v])
            v = u
        v = sink
        while parent[v] is not None:
            u = parent[v]
            residual[u][v] -= bottleneck
            residual.setdefault(v, {})
            residual[v][u] = residual[v].get(u, 0) + bottleneck
            v = u
        flow += bottleneck
    return flow, set()


def find_reducing_move(w: Word, banned_multiplier: int | None = None):
    """First Whitehead move strictly shortening the cyclic word, or None.

    Multipliers are scanned in the order x1, x1^-1, x2, x2^-1, ...;
    only generators occurring in the word can shorten it.  Returns
    (a, cut_set, length_change).
    """
    if not w:
        return None
    graph = whitehead_graph(w)
    used = sorted(w.generators_used())
    for g in used:
        if g == banned_multiplier:
            continue
        for a in (g, -g):
            degree = sum(graph.get(a, {}).values())
            if degree == 0:
                continue
            flow, side = _min_cut(graph, a, -a, degree)
            if flow < degree:
                return a, side, flow - degree
    return None


def whitehead_move_moves(rank: int, a: int, cut_set) -> list[Move]:
    """Elementary-move decomposition of the Whitehead move (a, cut_set)."""
    moves: list[Move] = []
    for g in range(1, rank + 1):
        if g == abs(a):
            continue
        if -g not in cut_set:
            moves.append(("lmul", g, a))
        if g not in cut_set:
            moves.append(("rmul", g, -a))
    return moves


def apply_whitehead_move(w: Word, a: int, cut_set) -> Word:
    out: list[int] = []
    for letter in w:
        if abs(letter) == abs(a):
            out.append(letter)
            continue
        if -letter not in cut_set:
            out.append(a)
        out.append(letter)
        if letter not in cut_set:
            out.append(-a)
    return Word(out)


def _minimize(w: Word, rank: int | None, banned_multiplier: int | None):
    if rank is None:
        rank = w.max_generator()
    elif rank < w.max_generator():
        raise ValueError("word uses x%d beyond rank %d"
                         % (w.max_generator(), rank))
    current, _ = w.cyclic_core()
    moves: list[Move] = []
    while True:
        found = find_reducing_move(current, banned_multiplier)
        if found is None:
            break
        a, cut_set, change = found
        moves.extend(whitehead_move_moves(rank, a, cut_set))
        image = apply_whitehead_move(current, a, cut_set)
        previous_length = len(current)
        current, _ = image.cyclic_core()
        assert len(current) == previous_length + change < previous_length
    # Fix up the conjugation drift so that theta(w) is exactly minimal.
    theta = Automorphism.from_moves(rank, moves)
    core, conjugator = theta(w).cyclic_core()
    if conjugator:
        moves.extend(conjugation_moves(rank, conjugator))
        theta = Automorphism.from_moves(rank, moves)
    minimal = theta(w)
    assert len(minimal) == len(current)
    return minimal, theta


def whitehead_minimize(w: Word, rank: int | None = None):
    """Minimize |w| over the automorphism orbit by Whitehead peak reduction.

    Returns (minimal, theta) with theta(w) == minimal; no Whitehead move
    shortens the result, which by peak reduction realizes the orbit
    minimum of the cyclic length.
    """
    return _minimize(w, rank, banned_multiplier=None)


def whitehead_minimize_avoiding(w: Word, rank: int, banned_multiplier: int):
    """Peak reduction using only moves whose multiplier is not the given
    generator; such moves preserve the banned generator's exponent sum
    (a zero stable-letter sum survives the shortening)."""
    return _minimize(w, rank, banned_multiplier=banned_multiplier)


def is_primitive(w: Word, rank: int | None = None) -> bool:
    """True iff w belongs to some free basis (orbit-minimal length 1)."""
    if not w:
        return False
    minimal, _ = whitehead_minimize(w, rank)
    return len(minimal) == 1


def proper_free_factor(w: Word, rank: int | None = None):
    """Detect whether w lies in a proper free factor.

    Returns (theta, omitted) where theta(w) omits the generator
    ``omitted``, or None when the orbit-minimal form uses every
    generator up to ``rank``.
    """
    if rank is None:
        rank = w.max_generator()
    minimal, theta = whitehead_minimize(w, rank)
    used = minimal.generators_used()
    for g in range(1, rank + 1):
        if g not in used:
            return theta, g
    return None
