"""Index construction and exact counting, checked against the scan oracle."""

import json
import random

import pytest

from bruteforce import scan_count
from meaningbound.corpus import (
    CorpusIndex,
    Document,
    load_corpus,
    read_jsonl_corpus,
    read_text_dir_corpus,
)
from meaningbound.errors import CorpusFormatError, DuplicateDocIdError
from meaningbound.query import Query, TermPattern, parse_query
from meaningbound.text import normalize
from randomgen import make_corpus, make_query


def docs(*texts):
    return [Document(f"d{i}", text) for i, text in enumerate(texts)]


class TestNormalize:
    def test_separators_and_case(self):
        assert normalize("Pet-Fish problem!") == ["pet", "fish", "problem"]

    def test_empty(self):
        assert normalize("") == []

    def test_case_folding(self):
        assert normalize("guppy GUPPY Guppy") == ["guppy"] * 3

    def test_underscore_and_digits(self):
        assert normalize("tank_2 fish2o") == ["tank", "2", "fish2o"]


class TestBuildIndex:
    def test_empty_corpus(self):
        index = CorpusIndex.build([])
        assert index.total_docs == 0
        assert index.count(parse_query("pet")) == 0
        assert index.count(parse_query('"pet fish"')) == 0

    def test_three_document_counts(self):
        corpus = docs("a b", "b c", "a c")
        index = CorpusIndex.build(corpus)
        for text, expected in [("a", 2), ("a c", 1), ("a -c", 1)]:
            query = parse_query(text)
            assert scan_count(corpus, query) == expected
            assert index.count(query) == expected

    def test_duplicate_doc_id(self):
        with pytest.raises(DuplicateDocIdError):
            CorpusIndex.build([Document("x", "a"), Document("x", "b")])

    def test_stats(self):
        index = CorpusIndex.build(docs("a b a", "c"))
        assert index.total_docs == 2
        assert index.vocabulary_size == 3
        assert index.total_tokens == 4


class TestCount:
    def test_phrase_vs_conjunction(self):
        corpus = docs("my pet fish", "pet store", "fish market")
        index = CorpusIndex.build(corpus)
        assert index.count(parse_query('"pet fish"')) == 1
        assert index.count(parse_query("pet fish")) == 1
        assert index.count(parse_query("pet")) == 2

    def test_self_negation_is_empty(self):
        index = CorpusIndex.build(docs("pet fish", "pet", "fish"))
        for text in ["pet -pet", '"pet fish" -"pet fish"']:
            assert index.count(parse_query(text)) == 0

    def test_hyphenated_text_matches_phrase(self):
        index = CorpusIndex.build(docs("my pet-fish guppy"))
        assert index.count(parse_query('"pet fish"')) == 1

    def test_phrase_adjacency_is_strict(self):
        index = CorpusIndex.build(docs("pet big fish", "fish pet"))
        assert index.count(parse_query('"pet fish"')) == 0

    def test_repeated_token_phrase(self):
        index = CorpusIndex.build(docs("fish fish", "fish"))
        assert index.count(parse_query('"fish fish"')) == 1

    def test_document_frequency_not_term_frequency(self):
        index = CorpusIndex.build(docs("pet pet pet"))
        assert index.count(parse_query("pet")) == 1

    def test_long_phrase(self):
        index = CorpusIndex.build(docs("a b c d", "a b d c"))
        assert index.count(parse_query('"a b c"')) == 1
        assert index.count(parse_query('"a b c d"')) == 1


class TestOracleEquivalence:
    def test_randomized_corpora_match_scanner(self, kernel_backend):
        rng = random.Random(1234)
        for _ in range(15):
            corpus = make_corpus(rng, max_docs=60, max_tokens=30)
            index = CorpusIndex.build(corpus)
            for _ in range(40):
                query = make_query(rng)
                assert index.count(query) == scan_count(corpus, query), str(query)

    def test_additivity(self):
        rng = random.Random(99)
        corpus = make_corpus(rng, max_docs=120)
        index = CorpusIndex.build(corpus)
        for _ in range(200):
            p = make_query(rng).pattern
            q = make_query(rng).pattern
            whole = index.count(Query(p))
            both = index.count(Query(p, q))
            only = index.count(Query(p, q, negated=True))
            assert whole == both + only

    def test_monotonicity(self):
        rng = random.Random(7)
        corpus = make_corpus(rng, max_docs=120)
        index = CorpusIndex.build(corpus)
        for _ in range(200):
            p = make_query(rng).pattern
            q = make_query(rng).pattern
            both = index.count(Query(p, q))
            assert both <= min(index.count(Query(p)), index.count(Query(q)))
        for _ in range(100):
            tokens = tuple(rng.choices(["pet", "fish", "tank"], k=rng.choice([2, 3])))
            phrase_count = index.count(Query(TermPattern(tokens)))
            word_min = min(
                index.count(Query(TermPattern((tok,)))) for tok in tokens
            )
            assert phrase_count <= word_min

    def test_idempotent_ingestion(self):
        rng = random.Random(5)
        corpus = make_corpus(rng, max_docs=80)
        first = CorpusIndex.build(corpus)
        second = CorpusIndex.build(corpus)
        check = random.Random(6)
        for _ in range(60):
            query = make_query(check)
            assert first.count(query) == second.count(query)

    def test_concurrent_readers_agree(self):
        import threading

        rng = random.Random(8)
        corpus = make_corpus(rng, max_docs=100)
        index = CorpusIndex.build(corpus)
        queries = [make_query(random.Random(9 + i)) for i in range(30)]
        expected = [index.count(q) for q in queries]
        failures = []

        def reader():
            for query, want in zip(queries, expected):
                if index.count(query) != want:
                    failures.append(query)

        threads = [threading.Thread(target=reader) for _ in range(8)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert not failures


class TestCorpusReaders:
    def test_jsonl_round_trip(self, tmp_path):
        path = tmp_path / "corpus.jsonl"
        records = [{"id": "a", "text": "pet fish"}, {"id": "b", "text": "guppy"}]
        path.write_text("\n".join(json.dumps(r) for r in records), encoding="utf-8")
        loaded = list(read_jsonl_corpus(path))
        assert loaded == [Document("a", "pet fish"), Document("b", "guppy")]

    def test_jsonl_bad_line_reports_position(self, tmp_path):
        path = tmp_path / "corpus.jsonl"
        path.write_text('{"id": "a", "text": "x"}\nnot json\n', encoding="utf-8")
        with pytest.raises(CorpusFormatError, match="2"):
            list(read_jsonl_corpus(path))

    def test_jsonl_requires_string_fields(self, tmp_path):
        path = tmp_path / "corpus.jsonl"
        path.write_text('{"id": 3, "text": "x"}\n', encoding="utf-8")
        with pytest.raises(CorpusFormatError):
            list(read_jsonl_corpus(path))

    def test_text_dir(self, tmp_path):
        (tmp_path / "sub").mkdir()
        (tmp_path / "a.txt").write_text("pet fish", encoding="utf-8")
        (tmp_path / "sub" / "b.txt").write_text("guppy", encoding="utf-8")
        loaded = list(read_text_dir_corpus(tmp_path))
        assert [d.doc_id for d in loaded] == ["a.txt", "sub/b.txt"]

    def test_load_corpus_auto_detects(self, tmp_path):
        jsonl = tmp_path / "c.jsonl"
        jsonl.write_text('{"id": "a", "text": "pet"}\n', encoding="utf-8")
        assert load_corpus(jsonl).total_docs == 1
        directory = tmp_path / "plain"
        directory.mkdir()
        (directory / "x").write_text("fish", encoding="utf-8")
        assert load_corpus(directory).total_docs == 1

    def test_load_corpus_missing_file(self, tmp_path):
        with pytest.raises(CorpusFormatError):
            load_corpus(tmp_path / "nope.jsonl")

    def test_binary_file_in_text_dir(self, tmp_path):
        (tmp_path / "bad.bin").write_bytes(b"\xff\xfe\x00junk")
        with pytest.raises(CorpusFormatError, match="UTF-8"):
            list(read_text_dir_corpus(tmp_path))
