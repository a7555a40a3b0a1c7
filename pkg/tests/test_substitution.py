import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from odoshift import errors
from odoshift import substitution as sub

TAU = sub.grigorchuk_substitution()
ABC = sub.GRIGORCHUK_ALPHABET


def word(text):
    return sub.SymbolicPrefix(ABC, text)


class TestAlphabet:
    def test_rejects_duplicates(self):
        with pytest.raises(errors.InvalidInputError):
            sub.Alphabet("aba")

    def test_rejects_empty(self):
        with pytest.raises(errors.InvalidInputError):
            sub.Alphabet("")

    def test_index(self):
        assert ABC.index("c") == 2
        with pytest.raises(errors.InvalidInputError):
            ABC.index("z")


class TestSymbolicPrefix:
    def test_positions_are_one_based(self):
        p = word("acab")
        assert p.at(1) == "a"
        assert p.at(4) == "b"
        with pytest.raises(errors.InvalidInputError):
            p.at(0)
        with pytest.raises(errors.InvalidInputError):
            p.at(5)

    def test_rejects_foreign_letters(self):
        with pytest.raises(errors.InvalidInputError):
            word("acxb")

    def test_codes_round_trip(self):
        p = word("dcba")
        assert list(p.codes) == [3, 2, 1, 0]

    def test_shifted(self):
        p = word("acab")
        assert p.shifted(0).text == "acab"
        assert p.shifted(2).text == "ab"
        with pytest.raises(errors.InvalidInputError):
            p.shifted(4)


class TestProlongable:
    def test_seed_a(self):
        assert sub.validate_prolongable(TAU, "a") is True

    def test_seed_b_does_not_start_with_itself(self):
        assert sub.validate_prolongable(TAU, "b") is False

    def test_identity_rule_too_short(self):
        s = sub.Substitution(sub.Alphabet("x"), {"x": "x"})
        assert sub.validate_prolongable(s, "x") is False

    def test_unknown_seed(self):
        with pytest.raises(errors.InvalidInputError):
            sub.validate_prolongable(TAU, "z")


class TestIterate:
    def test_two_steps_from_a(self):
        assert sub.iterate(TAU, word("a"), 2).text == "acabaca"

    def test_single_letters(self):
        assert sub.iterate(TAU, word("b"), 1).text == "d"
        assert sub.iterate(TAU, word("c"), 1).text == "b"
        assert sub.iterate(TAU, word("d"), 1).text == "c"

    def test_zero_steps_is_identity(self):
        assert sub.iterate(TAU, word("bcd"), 0).text == "bcd"

    @given(
        left=st.text(alphabet="abcd", min_size=1, max_size=12),
        right=st.text(alphabet="abcd", min_size=1, max_size=12),
        steps=st.integers(min_value=0, max_value=4),
    )
    def test_homomorphism_over_splits(self, left, right, steps):
        joined = sub.iterate(TAU, word(left + right), steps).text
        assert joined == sub.iterate(TAU, word(left), steps).text + sub.iterate(
            TAU, word(right), steps
        ).text

    def test_resource_cap(self, monkeypatch):
        monkeypatch.setenv(sub.MAX_BYTES_ENV, "100")
        with pytest.raises(errors.ResourceLimitError) as exc:
            sub.iterate(TAU, word("a" * 50), 2)
        assert exc.value.required_bytes is not None

    def test_bad_cap_value(self, monkeypatch):
        monkeypatch.setenv(sub.MAX_BYTES_ENV, "soon")
        with pytest.raises(errors.InvalidInputError):
            sub.iterate(TAU, word("a"), 1)


class TestFixedPointPrefix:
    def test_short_prefixes(self):
        assert sub.fixed_point_prefix(TAU, "a", 1).text == "a"
        assert sub.fixed_point_prefix(TAU, "a", 2).text == "ac"
        assert sub.fixed_point_prefix(TAU, "a", 8).text == "acabacad"
        assert sub.fixed_point_prefix(TAU, "a", 16).text == "acabacadacabacac"

    def test_non_prolongable_seed_rejected(self):
        with pytest.raises(errors.InvalidInputError):
            sub.fixed_point_prefix(TAU, "b", 8)

    def test_extension_consistency(self):
        long = sub.fixed_point_prefix(TAU, "a", 500).text
        for length in (1, 7, 100, 499):
            assert sub.fixed_point_prefix(TAU, "a", length).text == long[:length]

    def test_substitution_invariance(self):
        p = sub.fixed_point_prefix(TAU, "a", 300)
        assert sub.iterate(TAU, p, 1).text.startswith(p.text)

    def test_length_over_cap(self, monkeypatch):
        monkeypatch.setenv(sub.MAX_BYTES_ENV, "64")
        with pytest.raises(errors.ResourceLimitError):
            sub.fixed_point_prefix(TAU, "a", 65)


class TestClosedForm:
    def test_valuation(self):
        assert sub.dyadic_valuation(1) == 0
        assert sub.dyadic_valuation(12) == 2
        assert sub.dyadic_valuation(1 << 20) == 20
        with pytest.raises(errors.InvalidInputError):
            sub.dyadic_valuation(0)

    def test_letter_examples(self):
        assert sub.grigorchuk_letter(1) == "a"
        assert sub.grigorchuk_letter(8) == "d"
        assert sub.grigorchuk_letter(12) == "b"

    def test_matches_generator(self):
        length = 1 << 16
        generated = sub.fixed_point_prefix(TAU, "a", length)
        assert all(
            generated.at(m) == sub.grigorchuk_letter(m) for m in range(1, length + 1)
        )

    def test_vectorized_oracle_matches_scalar(self):
        length = 4096
        codes = sub.grigorchuk_codes(length)
        for m in range(1, length + 1):
            assert ABC.letters[codes[m - 1]] == sub.grigorchuk_letter(m)

    def test_a_exactly_at_odd_positions(self):
        codes = sub.grigorchuk_codes(1 << 14)
        odd = np.arange(1, (1 << 14) + 1) % 2 == 1
        assert ((codes == ABC.index("a")) == odd).all()


class TestTextFormats:
    def test_substitution_round_trip(self):
        text = sub.format_substitution(TAU)
        again = sub.parse_substitution(text)
        assert again.rules == dict(TAU.rules)

    def test_substitution_comments_and_blanks(self):
        parsed = sub.parse_substitution("# rules\na -> aca\n\nb -> d # tail\nc -> b\nd -> c\n")
        assert parsed.rules["a"] == "aca"
        assert parsed.rules["b"] == "d"

    def test_substitution_malformed(self):
        with pytest.raises(errors.InvalidInputError):
            sub.parse_substitution("a = aca")
        with pytest.raises(errors.InvalidInputError):
            sub.parse_substitution("ab -> a")
        with pytest.raises(errors.InvalidInputError):
            sub.parse_substitution("a -> aca\na -> ac")

    def test_prefix_file_round_trip(self, tmp_path):
        p = sub.grigorchuk_prefix(64)
        path = tmp_path / "prefix.txt"
        sub.save_prefix(p, path)
        again = sub.load_prefix(path, ABC)
        assert again.text == p.text
