"""Canonical query serialization and parsing."""

import pytest

from meaningbound.errors import QuerySyntaxError
from meaningbound.query import (
    Query,
    TermPattern,
    canonical_query_string,
    parse_query,
)


def word(text):
    return TermPattern((text,))


class TestTermPattern:
    def test_parse_word(self):
        assert TermPattern.parse("Pet").tokens == ("pet",)
        assert not TermPattern.parse("Pet").is_phrase

    def test_parse_hyphenated_text_becomes_phrase(self):
        pattern = TermPattern.parse("Pet-Fish")
        assert pattern.tokens == ("pet", "fish")
        assert pattern.is_phrase
        assert pattern.canonical() == '"pet fish"'

    def test_rejects_empty(self):
        with pytest.raises(QuerySyntaxError):
            TermPattern.parse("...")

    def test_rejects_unnormalized_tokens(self):
        with pytest.raises(QuerySyntaxError):
            TermPattern(("Pet",))
        with pytest.raises(QuerySyntaxError):
            TermPattern(("pet fish",))


class TestCanonicalString:
    def test_word(self):
        assert canonical_query_string(Query(word("fish"))) == "fish"

    def test_phrase_and_word_conjunction(self):
        query = Query(TermPattern(("pet", "fish")), word("guppy"))
        assert canonical_query_string(query) == '"pet fish" guppy'

    def test_negated_conjunction(self):
        query = Query(word("pet"), word("world"), negated=True)
        assert canonical_query_string(query) == "pet -world"

    def test_negation_requires_second_pattern(self):
        with pytest.raises(QuerySyntaxError):
            Query(word("pet"), negated=True)


class TestParseQuery:
    @pytest.mark.parametrize(
        "text",
        [
            "fish",
            '"pet fish"',
            '"pet fish" guppy',
            "pet -world",
            "pet world",
            'pet -"new york"',
            '"pet fish" -"new york"',
        ],
    )
    def test_round_trips_canonical_forms(self, text):
        assert canonical_query_string(parse_query(text)) == text

    def test_normalizes_case_and_punctuation(self):
        assert canonical_query_string(parse_query("PET")) == "pet"
        assert canonical_query_string(parse_query('"Pet Fish!" Guppy')) == '"pet fish" guppy'

    def test_unquoted_hyphenation_reads_as_two_words(self):
        query = parse_query("pet-fish")
        assert query == Query(word("pet"), word("fish"))

    def test_quoted_single_word_collapses_to_word(self):
        assert canonical_query_string(parse_query('"pet"')) == "pet"

    @pytest.mark.parametrize(
        "bad",
        [
            "",
            "   ",
            '"pet fish',
            "-pet",
            "a b c",
            "pet - world",
            "pet -",
            '-"pet fish"x',
            "-pet-fish x",
        ],
    )
    def test_rejects_malformed(self, bad):
        with pytest.raises(QuerySyntaxError):
            parse_query(bad)

    def test_first_term_cannot_be_negated(self):
        with pytest.raises(QuerySyntaxError):
            parse_query('-"pet fish" guppy')
