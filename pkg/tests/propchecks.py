"""Reusable invariant checks shared by the property suite and the
acceptance gate. Each check raises AssertionError on the first violation
and returns the number of cases it verified."""

from __future__ import annotations

import random
from fractions import Fraction

from jsstylo.corpus import (
    CodeSample,
    Corpus,
    deduplicate,
    normalize_source,
    stratified_split,
)
from jsstylo.jsfront.dataflow import dataflow_edges
from jsstylo.jsfront.jsast import preorder_kinds
from jsstylo.jsfront.lexer import tokenize
from jsstylo.jsfront.parser import parse
from jsstylo.jsfront.transform import mangle, minify


def _token_pairs(source: str):
    return [(t.kind, t.text) for t in tokenize(source)]


def check_minify_token_preservation(sources) -> int:
    for source in sources:
        assert _token_pairs(minify(source)) == _token_pairs(source)
    return len(sources)


def check_mangle_shape_preservation(sources) -> int:
    for source in sources:
        assert preorder_kinds(parse(mangle(source))) == preorder_kinds(parse(source))
    return len(sources)


def check_dataflow_mangle_invariance(sources) -> int:
    for source in sources:
        original = dataflow_edges(parse(source))
        mangled = dataflow_edges(parse(mangle(source)))
        assert original.edges == mangled.edges
        assert original.var_count == mangled.var_count
    return len(sources)


def check_split_determinism(n_cases: int, seed: int = 202) -> int:
    rng = random.Random(seed)
    for case in range(n_cases):
        n_labels = rng.randrange(2, 6)
        counts = [rng.randrange(2, 12) for _ in range(n_labels)]
        samples = tuple(
            CodeSample(f"c{case}-{label}-{i}", f"label{label}", 1, "original", f"let x{i} = {i};")
            for label, count in enumerate(counts)
            for i in range(count)
        )
        corpus = Corpus(samples)
        split_seed = rng.randrange(2**32)
        ratio = Fraction(rng.choice(["4/5", "3/4", "7/10"]))
        one = stratified_split(corpus, ratio, split_seed)
        two = stratified_split(corpus, ratio, split_seed)

        assert [s.id for s in one.train] == [s.id for s in two.train]
        assert [s.id for s in one.valid] == [s.id for s in two.valid]

        train_ids = {s.id for s in one.train}
        valid_ids = {s.id for s in one.valid}
        assert not train_ids & valid_ids
        assert train_ids | valid_ids == {s.id for s in corpus}

        for label, count in enumerate(counts):
            got = sum(1 for s in one.train if s.model_label == f"label{label}")
            assert abs(got - float(ratio) * count) < 1.0
    return n_cases


def check_dedup_idempotence(n_cases: int, seed: int = 303) -> int:
    rng = random.Random(seed)
    snippets = [
        "const a = 1;",
        "let b = a + 2;",
        "function f(x) { return x * 2; }",
        "export const k = 'v';",
        "console.log('hi');",
    ]
    for case in range(n_cases):
        samples = []
        for i in range(rng.randrange(2, 10)):
            base = rng.choice(snippets)
            style = rng.randrange(3)
            if style == 1:
                base = "// note\n" + base
            elif style == 2:
                base = base.replace(" ", "   ")
            samples.append(CodeSample(f"d{case}-{i}", "m", 1, "original", base))
        corpus = Corpus(tuple(samples))
        once = deduplicate(corpus)
        assert deduplicate(once).samples == once.samples
        keys = [normalize_source(s.source) for s in once]
        assert len(keys) == len(set(keys))
    return n_cases
