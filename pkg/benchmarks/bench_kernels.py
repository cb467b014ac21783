#!/usr/bin/env python3
"""Benchmark the compiled posting kernels against the pure-Python fallback.

Builds one synthetic corpus, then times the same query mix under each built
backend (the index structures are shared; only the kernel dispatch changes),
plus the raw kernel functions on synthetic posting lists.

Usage: python benchmarks/bench_kernels.py [--docs 20000] [--tokens 120]
"""

import argparse
import random
import time
from array import array

from meaningbound import _kernels
from meaningbound.corpus import CorpusIndex, Document
from meaningbound.query import Query, TermPattern


def zipfy_vocabulary(size=800):
    words = [f"w{i}" for i in range(size)]
    weights = [1.0 / (rank + 1) for rank in range(size)]
    return words, weights


def build_corpus(rng, docs, tokens_per_doc):
    words, weights = zipfy_vocabulary()
    corpus = []
    for i in range(docs):
        k = rng.randint(tokens_per_doc // 2, tokens_per_doc)
        corpus.append(Document(f"doc{i}", " ".join(rng.choices(words, weights, k=k))))
    return corpus


def make_queries(rng, n=400):
    words, weights = zipfy_vocabulary()
    queries = []
    for _ in range(n):
        shape = rng.randrange(4)
        if shape == 0:
            queries.append(Query(TermPattern((rng.choices(words, weights)[0],))))
        elif shape == 1:
            a, b = rng.choices(words, weights, k=2)
            queries.append(Query(TermPattern((a,)), TermPattern((b,))))
        elif shape == 2:
            a, b = rng.choices(words, weights, k=2)
            queries.append(Query(TermPattern((a,)), TermPattern((b,)), negated=True))
        else:
            queries.append(Query(TermPattern(tuple(rng.choices(words, weights, k=2)))))
    return queries


def time_queries(index, queries, backend):
    _kernels.use(backend)
    start = time.perf_counter()
    checksum = 0
    for query in queries:
        checksum += index.count(query)
    elapsed = time.perf_counter() - start
    return elapsed, checksum


def time_raw_kernels(backend, rng, size=200_000, rounds=30):
    impl = _kernels._BACKENDS[backend]
    universe = size * 4
    a = array("q", sorted(rng.sample(range(universe), size)))
    b = array("q", sorted(rng.sample(range(universe), size)))
    start = time.perf_counter()
    checksum = 0
    for _ in range(rounds):
        checksum += impl.intersect_count(a, b)
        checksum += impl.difference_count(a, b)
        checksum += len(impl.intersect(a, b))
        checksum += len(impl.shifted_intersect(a, b, 1))
    return time.perf_counter() - start, checksum


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--docs", type=int, default=20_000)
    parser.add_argument("--tokens", type=int, default=120)
    parser.add_argument("--queries", type=int, default=400)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    backends = _kernels.available()
    if "native" not in backends:
        print("note: compiled kernels not built; timing the pure backend only")

    rng = random.Random(args.seed)
    print(f"building corpus: {args.docs} docs, ~{args.tokens} tokens each ...")
    corpus = build_corpus(rng, args.docs, args.tokens)
    start = time.perf_counter()
    index = CorpusIndex.build(corpus)
    print(f"  indexed in {time.perf_counter() - start:.2f}s "
          f"({index.total_tokens} tokens, {index.vocabulary_size} distinct)")
    queries = make_queries(random.Random(args.seed + 1), args.queries)

    original = _kernels.backend()
    results = {}
    try:
        for backend in backends:
            elapsed, checksum = time_queries(index, queries, backend)
            results[backend] = elapsed
            rate = len(queries) / elapsed
            print(f"  {backend:6s}: {len(queries)} queries in {elapsed:8.3f}s "
                  f"({rate:8.1f} q/s, checksum {checksum})")
        print("raw kernel functions (two 200k-element posting lists):")
        for backend in backends:
            elapsed, checksum = time_raw_kernels(backend, random.Random(7))
            results[f"raw:{backend}"] = elapsed
            print(f"  {backend:6s}: {elapsed:8.3f}s (checksum {checksum})")
    finally:
        _kernels.use(original)

    if "native" in backends:
        print(f"query speedup  native vs pure: {results['pure'] / results['native']:.2f}x")
        print(f"kernel speedup native vs pure: "
              f"{results['raw:pure'] / results['raw:native']:.2f}x")


if __name__ == "__main__":
    main()
