import random

import pytest

from onerelator.words import (
    ParseError,
    Word,
    canonical_cyclic,
    cyclically_reduce,
    format_word,
    is_conjugate,
    parse_word,
)


def random_word(rng, rank, length):
    return Word(rng.choice([1, -1]) * rng.randint(1, rank)
                for _ in range(length))


class TestParsing:
    def test_exponent_form(self):
        assert tuple(parse_word("x1^2 x2^-3", 2)) == (1, 1, -2, -2, -2)

    def test_empty(self):
        assert parse_word("", 2) == Word()

    def test_free_cancellation(self):
        assert parse_word("x1 x1^-1 x2", 2) == Word([2])

    def test_compact_alphabet(self):
        assert parse_word("aaBBB") == parse_word("x1^2 x2^-3")
        assert parse_word("aA") == Word()

    def test_adjacent_terms_without_spaces(self):
        assert parse_word("x1x2^-1") == Word([1, -2])

    def test_zero_exponent(self):
        assert parse_word("x1^0 x2", 2) == Word([2])

    def test_syntax_error_reports_position(self):
        with pytest.raises(ParseError) as exc:
            parse_word("x1 &x2", 2)
        assert exc.value.position == 3

    def test_rank_bound(self):
        with pytest.raises(ParseError):
            parse_word("x3", 2)

    def test_parens_only_in_extended_grammar(self):
        with pytest.raises(ParseError):
            parse_word("(x1 x2)^2", 2)
        expanded = parse_word("(x1^3 x2 x1^2)^3", 2, parens=True)
        assert expanded == parse_word("x1^3 x2 x1^2 " * 3, 2)
        inverse_power = parse_word("(x1 x2)^-2", 2, parens=True)
        assert inverse_power == parse_word("x2^-1 x1^-1 x2^-1 x1^-1", 2)

    def test_format_roundtrip(self):
        rng = random.Random(5)
        for _ in range(200):
            w = random_word(rng, 4, rng.randint(0, 15))
            assert parse_word(format_word(w)) == w

    def test_format_examples(self):
        assert format_word(Word([1, 1, -2, -2, -2])) == "x1^2 x2^-3"
        assert format_word(Word()) == ""


class TestReduction:
    def test_no_adjacent_inverses(self):
        rng = random.Random(1)
        for _ in range(1000):
            letters = [rng.choice([1, -1]) * rng.randint(1, 4)
                       for _ in range(rng.randint(0, 24))]
            w = Word(letters)
            assert all(w[i] != -w[i + 1] for i in range(len(w) - 1))

    def test_inner_pair(self):
        assert Word([1, 2, -2, 1]) == Word([1, 1])

    def test_full_cancellation(self):
        assert Word([1, 2, -1, 1, -2, -1]) == Word()
        assert Word([1, -1]) == Word()

    def test_equals_input_in_free_group(self):
        # stack-reduced result times inverse of raw sequence cancels
        rng = random.Random(2)
        for _ in range(300):
            letters = [rng.choice([1, -1]) * rng.randint(1, 3)
                       for _ in range(rng.randint(0, 16))]
            raw_inverse = [-l for l in reversed(letters)]
            assert Word(list(Word(letters)) + raw_inverse) == Word()

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            Word([1, 0])


class TestAlgebra:
    def test_concat_associative_and_inverse(self):
        rng = random.Random(3)
        for _ in range(300):
            a = random_word(rng, 4, rng.randint(0, 12))
            b = random_word(rng, 4, rng.randint(0, 12))
            c = random_word(rng, 4, rng.randint(0, 12))
            assert (a * b) * c == a * (b * c)
            assert a * ~a == Word()
            assert Word() * a == a

    def test_exponent_sum_homomorphism(self):
        rng = random.Random(4)
        for _ in range(300):
            a = random_word(rng, 4, rng.randint(0, 12))
            b = random_word(rng, 4, rng.randint(0, 12))
            for g in range(1, 5):
                assert (a * b).exponent_sum(g) == a.exponent_sum(g) + b.exponent_sum(g)
                assert abs(a.exponent_sum(g)) <= a.occurrences(g) <= len(a)

    def test_inversion_examples(self):
        assert ~parse_word("x1 x2") == parse_word("x2^-1 x1^-1")
        assert ~Word() == Word()
        assert ~parse_word("x1^2 x2^-3") == parse_word("x2^3 x1^-2")

    def test_concat_examples(self):
        assert Word([1]) * Word([-1]) == Word()
        assert parse_word("x1 x2") * parse_word("x2^-1 x3") == parse_word("x1 x3")
        assert Word() * parse_word("x1 x2") == parse_word("x1 x2")

    def test_counting_examples(self):
        w = parse_word("x1^2 x2^-3")
        assert w.exponent_sum(1) == 2
        assert w.exponent_sum(2) == -3
        assert w.occurrences(2) == 3
        assert Word().exponent_sum(1) == 0
        assert parse_word("x1 x2 x1^-1").occurrences(1) == 2
        # t occurs twice in y0 t y1^-1 t^-1 regardless of signs
        assert Word([1, 3, -2, -3]).occurrences(3) == 2

    def test_power(self):
        w = parse_word("x1 x2")
        assert w ** 3 == parse_word("x1 x2 x1 x2 x1 x2")
        assert w ** -1 == ~w
        assert w ** 0 == Word()


class TestCyclicReduction:
    def test_examples(self):
        core, conj = cyclically_reduce(Word([2, 1, -2]))
        assert core == Word([1]) and conj == Word([2])
        core, conj = cyclically_reduce(parse_word("x1^2 x2^-3"))
        assert core == parse_word("x1^2 x2^-3") and conj == Word()
        core, conj = cyclically_reduce(parse_word("x1^-1 x2 x1 x2 x1"))
        assert core == parse_word("x2 x1 x2") and conj == Word([-1])

    def test_reassembly_is_exact(self):
        rng = random.Random(6)
        for _ in range(500):
            w = random_word(rng, 4, rng.randint(0, 20))
            core, conj = cyclically_reduce(w)
            assert core.is_cyclically_reduced()
            assert conj * core * ~conj == w
            assert canonical_cyclic(core) == canonical_cyclic(w)


class TestCanonicalCyclic:
    def test_examples(self):
        assert canonical_cyclic(Word([2, 1, -2])) == canonical_cyclic(Word([1]))
        assert (canonical_cyclic(parse_word("x1^2 x2^-3"))
                == canonical_cyclic(parse_word("x2^3 x1^-2")))
        assert (canonical_cyclic(Word([1, 2]))
                != canonical_cyclic(Word([1, -2])))

    def test_length_two_enumeration(self):
        # brute-force: distinct classes among all length-2 words over rank 2
        words = [Word([a, b]) for a in (1, -1, 2, -2) for b in (1, -1, 2, -2)
                 if b != -a]
        for u in words:
            for v in words:
                expected = any(
                    tuple(candidate.rotated(k)) == tuple(v)
                    for candidate in (u, ~u) for k in range(2))
                assert (canonical_cyclic(u) == canonical_cyclic(v)) == expected

    def test_conjugation_and_inversion_invariance(self):
        rng = random.Random(7)
        for _ in range(1000):
            w = random_word(rng, 4, rng.randint(0, 20))
            u = random_word(rng, 4, rng.randint(0, 8))
            assert canonical_cyclic(u * w * ~u) == canonical_cyclic(w)
            assert canonical_cyclic(~w) == canonical_cyclic(w)

    def test_hashable(self):
        assert len({canonical_cyclic(Word([1, 2])),
                    canonical_cyclic(Word([2, 1]))}) == 1


class TestConjugacy:
    def test_rotation(self):
        assert is_conjugate(Word([1, 2]), Word([2, 1]))
        assert not is_conjugate(Word([1]), Word([2]))

    def test_commutator_not_conjugate_to_inverse(self):
        # conjugacy of cyclically reduced words is rotation: enumerate
        w = Word([1, 2, -1, -2])
        rotations = {tuple(w.rotated(k)) for k in range(4)}
        assert tuple(~w) not in rotations
        assert not is_conjugate(w, ~w)
        assert canonical_cyclic(w) == canonical_cyclic(~w)

    def test_conjugates_detected(self):
        rng = random.Random(8)
        for _ in range(300):
            w = random_word(rng, 3, rng.randint(0, 12))
            u = random_word(rng, 3, rng.randint(0, 6))
            assert is_conjugate(w, u * w * ~u)
