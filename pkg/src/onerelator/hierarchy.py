"""The 1-relator hierarchy: iterated splittings down to a cyclic group.

Each step first Whitehead-minimizes the relator.  If the minimal form
omits a generator, the group splits off a free factor and the rank
drops (free_factor step).  Otherwise the minimal relator involves every
generator; a surjective character killing it is chosen, normalized so
the last generator is the stable letter, and the relator is rewritten
over the kernel generators.  The child is the vertex group of the
resulting splitting (cyclic_cover step) and its relator, measured in
y-letters, is strictly shorter: the stable letter occurs at least twice
and every occurrence is absorbed into the levels.

The termination metric is the Whitehead-minimal relator length, with
rank as tie-breaker: cyclic_cover steps shrink the metric by at least
2, free_factor steps keep it and shrink the rank.
"""

from __future__ import annotations

from .automorphisms import (
    Automorphism,
    IntegralCharacter,
    compose,
    conjugation_moves,
    whitehead_minimize,
    whitehead_minimize_avoiding,
)
from .presentations import OneRelatorPresentation
from .rewriting import (
    _splitting_from_yword,
    normalized_relator,
    y_rewrite,
)
from .words import Word

FREE_FACTOR = "free_factor"
CYCLIC_COVER = "cyclic_cover"


class HierarchyStep:
    """One splitting: parent = HNN extension over the child.

    ``splitting`` is the HnnSplitting for cyclic_cover steps and None
    for free_factor steps (the trivial-edge marker: parent = child * Z).
    ``automorphism_used`` maps the parent relator exactly onto the word
    that was rewritten (cyclic_cover) or reindexed (free_factor).
    """

    __slots__ = ("case_tag", "automorphism_used", "character_used", "child",
                 "splitting", "metric_before", "metric_after", "omitted")

    def __init__(self, case_tag, automorphism_used, character_used, child,
                 splitting, metric_before, metric_after, omitted=None):
        self.case_tag = case_tag
        self.automorphism_used = automorphism_used
        self.character_used = character_used
        self.child = child
        self.splitting = splitting
        self.metric_before = metric_before
        self.metric_after = metric_after
        self.omitted = omitted

    def __eq__(self, other) -> bool:
        return (isinstance(other, HierarchyStep)
                and self.case_tag == other.case_tag
                and self.automorphism_used == other.automorphism_used
                and self.character_used == other.character_used
                and self.child == other.child
                and self.splitting == other.splitting
                and self.metric_before == other.metric_before
                and self.metric_after == other.metric_after
                and self.omitted == other.omitted)

    def __repr__(self) -> str:
        return ("HierarchyStep(%s, child=%r, metric %d -> %d)"
                % (self.case_tag, self.child, self.metric_before,
                   self.metric_after))


class Hierarchy:
    """A chain of splittings ending in the cyclic group <x | x^k>."""

    __slots__ = ("root", "steps", "terminal_exponent")

    def __init__(self, root, steps, terminal_exponent):
        self.root = root
        self.steps = tuple(steps)
        self.terminal_exponent = terminal_exponent

    @property
    def terminal(self) -> OneRelatorPresentation:
        return self.steps[-1].child if self.steps else self.root

    def terminal_description(self) -> str:
        k = self.terminal_exponent
        if k == 0:
            return "Z"
        if k == 1:
            return "trivial"
        return "Z/%d" % k

    def __repr__(self) -> str:
        return ("Hierarchy(%d steps, terminal %s)"
                % (len(self.steps), self.terminal_description()))


class BudgetExhausted(RuntimeError):
    """Raised when build_hierarchy runs out of steps; carries the partial
    hierarchy (termination is a theorem, so this indicates a bug)."""

    def __init__(self, message, partial: Hierarchy):
        super().__init__(message)
        self.partial = partial


def _drop_generator(w: Word, omitted: int) -> Word:
    return Word(letter - 1 if letter > omitted
                else letter + 1 if letter < -omitted
                else letter
                for letter in w)


def _free_factor_step(p, minimal, theta, omitted) -> HierarchyStep:
    child = OneRelatorPresentation(p.rank - 1, _drop_generator(minimal, omitted))
    return HierarchyStep(FREE_FACTOR, theta, None, child, None,
                         metric_before=len(minimal),
                         metric_after=len(child.relator), omitted=omitted)


def _candidate_characters(minimal: Word, rank: int):
    """Deterministic candidates for a surjective character killing ``minimal``.

    Duals of zero-sum generators come first (these provably give the
    metric drop); then the primitive kernel vector supported on each
    coordinate pair, in lexicographic pair order.
    """
    from math import gcd
    e = [minimal.exponent_sum(g) for g in range(1, rank + 1)]
    for j, value in enumerate(e):
        if value == 0:
            values = [0] * rank
            values[j] = 1
            yield IntegralCharacter(values)
    for j in range(rank):
        for k in range(j + 1, rank):
            if e[j] == 0 or e[k] == 0:
                continue
            g = gcd(e[j], e[k])
            values = [0] * rank
            values[j] = e[k] // g
            values[k] = -e[j] // g
            if values[j] < 0:
                values = [-v for v in values]
            if gcd(*values) == 1:
                yield IntegralCharacter(values)


def _rewrite_with(minimal: Word, rank: int, phi: IntegralCharacter):
    """Normalize phi on a minimal relator, reduce, rewrite.

    Returns (yword, automorphism, final_word) with
    automorphism(minimal) == final_word exactly.
    """
    p_min = OneRelatorPresentation(rank, minimal)
    w_norm, theta_norm = normalized_relator(p_min, phi)
    # Track the conjugation hidden in the cyclic reduction so the
    # automorphism maps the minimal word exactly onto the rewritten one.
    _, conjugator = theta_norm.backward(minimal).cyclic_core()
    gamma = Automorphism.from_moves(rank, conjugation_moves(rank, conjugator))
    # Shorten with moves that keep the stable letter's exponent sums intact.
    w_final, theta_red = whitehead_minimize_avoiding(w_norm, rank,
                                                     banned_multiplier=rank)
    total = compose(theta_red, compose(gamma, theta_norm.inverse()))
    assert total(minimal) == w_final
    return y_rewrite(w_final, stable=rank, rank=rank), total, w_final


_MAX_REMINIMIZE_ROUNDS = 25


def hierarchy_step(p: OneRelatorPresentation) -> HierarchyStep:
    """Split off one level of the hierarchy; rank >= 2, relator nonempty."""
    if p.rank < 2:
        raise ValueError("hierarchy step needs rank >= 2")
    if not p.relator:
        raise ValueError("hierarchy step needs a nonempty relator")
    minimal, theta = whitehead_minimize(p.relator, p.rank)
    used = minimal.generators_used()
    for g in range(1, p.rank + 1):
        if g not in used:
            return _free_factor_step(p, minimal, theta, g)

    # Case 2: the minimal relator involves every generator.  Scan the
    # character candidates for one whose rewriting drops the y-length to
    # at most |minimal| - 2; when none does, hop to another orbit-minimal
    # form (full re-minimization of the best rewrite) and rescan.  The
    # y-length only bounds the child metric from above, so a scan that
    # ends without reaching the target can still produce a valid step.
    metric_before = len(minimal)
    target = metric_before - 2
    seen = {tuple(minimal)}
    best = None  # (ylength, yword, phi, automorphism from p.relator)
    for _ in range(_MAX_REMINIMIZE_ROUNDS):
        found = None
        for phi in _candidate_characters(minimal, p.rank):
            yw, local, w_final = _rewrite_with(minimal, p.rank, phi)
            candidate = (len(yw), yw, phi, compose(local, theta), w_final)
            if best is None or candidate[0] < best[0]:
                best = candidate
            if len(yw) <= target:
                found = candidate
                break
        if found is not None:
            best = found
            break
        _, _, _, best_auto, best_final = best
        minimal, hop = whitehead_minimize(best_final, p.rank)
        if len(minimal) != metric_before or tuple(minimal) in seen:
            break
        seen.add(tuple(minimal))
        theta = compose(hop, best_auto)
        assert theta(p.relator) == minimal

    _, yw, phi, total, w_final = best
    if yw.max_level == 0:
        raise RuntimeError("stable letter vanished from a relator involving "
                           "every generator; Whitehead minimality violated")
    assert total(p.relator) == w_final
    splitting = _splitting_from_yword(yw, total)
    child = splitting.vertex
    child_minimal, _ = whitehead_minimize(child.relator, child.rank)
    metric_after = len(child_minimal)
    if metric_after > target:
        raise RuntimeError(
            "cyclic_cover step did not shrink the metric: %d -> %d"
            % (metric_before, metric_after))
    return HierarchyStep(CYCLIC_COVER, total, phi, child, splitting,
                         metric_before=metric_before, metric_after=metric_after)


def _expected_step(p: OneRelatorPresentation) -> HierarchyStep:
    if not p.relator and p.rank >= 2:
        # Free group: peel off trivial free factors until rank 1.
        return _free_factor_step(p, Word(), Automorphism.identity(p.rank), 1)
    return hierarchy_step(p)


def build_hierarchy(p: OneRelatorPresentation, max_steps: int = 64) -> Hierarchy:
    """Iterate hierarchy steps down to a rank-1 (cyclic) presentation."""
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    steps = []
    current = p
    while current.rank > 1:
        if len(steps) >= max_steps:
            raise BudgetExhausted(
                "no cyclic terminal after %d steps" % max_steps,
                Hierarchy(p, steps, None))
        step = _expected_step(current)
        steps.append(step)
        current = step.child
    terminal_exponent = abs(current.relator.exponent_sum(1))
    return Hierarchy(p, steps, terminal_exponent)


def find_hierarchy_discrepancy(h: Hierarchy):
    """Replay every step and report the first mismatch, or None.

    Re-applies the stored automorphisms, re-runs the minimization and
    rewriting, and checks the metric monotonicity contracts.
    """
    current = h.root
    for i, step in enumerate(h.steps):
        where = "step %d" % i
        if step.case_tag == FREE_FACTOR:
            if step.metric_after > step.metric_before:
                return "%s: free_factor metric increased" % where
            if step.child.rank != current.rank - 1:
                return "%s: free_factor child rank is not parent rank - 1" % where
        elif step.case_tag == CYCLIC_COVER:
            if step.metric_after > step.metric_before - 2:
                return "%s: cyclic_cover metric did not drop by 2" % where
        else:
            return "%s: unknown case tag %r" % (where, step.case_tag)
        theta = step.automorphism_used
        if theta.rank != current.rank:
            return "%s: automorphism rank mismatch" % where
        image = theta(current.relator)
        try:
            expected = _expected_step(current)
        except (ValueError, RuntimeError) as exc:
            return "%s: replay failed: %s" % (where, exc)
        if expected != step:
            return "%s: replayed step differs from stored step" % where
        if step.case_tag == FREE_FACTOR:
            if image.occurrences(step.omitted):
                return "%s: omitted generator occurs in the image" % where
            if _drop_generator(image, step.omitted) != step.child.relator:
                return "%s: child relator does not match the image" % where
        else:
            if not image.is_cyclically_reduced() or image.exponent_sum(current.rank):
                return "%s: image is not a rewritable normalized relator" % where
            yw = y_rewrite(image, stable=current.rank, rank=current.rank)
            if yw.as_vertex_word() != step.child.relator:
                return "%s: rewriting does not reproduce the child relator" % where
        current = step.child
    if current.rank != 1:
        return "terminal presentation has rank %d, not 1" % current.rank
    if h.terminal_exponent != abs(current.relator.exponent_sum(1)):
        return "terminal exponent does not match the final relator"
    return None


def verify_hierarchy(h: Hierarchy) -> bool:
    """True iff replaying every step reproduces the stored hierarchy."""
    return find_hierarchy_discrepancy(h) is None
