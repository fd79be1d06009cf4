"""Property suites over >= 1,000 cases each: minify token preservation,
mangle tree-shape preservation, dataflow mangle-invariance, split
determinism, and dedup idempotence. Corpus-sampled cases come from the
1,000-sample demo corpus; hypothesis additionally generates small random
programs to poke at grammar corners the corpus misses."""

import pytest
from hypothesis import given, settings, strategies as st

import propchecks

from jsstylo.jsfront.dataflow import dataflow_edges
from jsstylo.jsfront.jsast import preorder_kinds
from jsstylo.jsfront.lexer import tokenize
from jsstylo.jsfront.parser import parse
from jsstylo.jsfront.transform import mangle, minify


def token_pairs(source):
    return [(t.kind, t.text) for t in tokenize(source)]


# -- corpus-sampled suites (1,000 cases each) --


def test_minify_preserves_tokens_across_corpus(demo_sources):
    assert propchecks.check_minify_token_preservation(demo_sources) >= 1000


def test_minify_idempotent_across_corpus(demo_sources):
    for source in demo_sources:
        once = minify(source)
        assert minify(once) == once


def test_mangle_preserves_tree_shape_across_corpus(demo_sources):
    assert propchecks.check_mangle_shape_preservation(demo_sources) >= 1000


def test_dataflow_invariant_under_mangle_across_corpus(demo_sources):
    assert propchecks.check_dataflow_mangle_invariance(demo_sources) >= 1000


def test_split_properties_over_1000_cases():
    assert propchecks.check_split_determinism(1000) == 1000


def test_dedup_idempotent_over_1000_cases():
    assert propchecks.check_dedup_idempotence(1000) == 1000


# -- hypothesis-generated programs --


_IDENTS = ["a", "b", "cfg", "data", "val", "_tmp", "$x", "idx"]
_LITERALS = ["0", "1", "42", "3.14", ".5", "0x1f", "'s'", '"q"', "true", "null", "`t`"]


def _exprs(depth: int):
    base = st.sampled_from(_IDENTS + _LITERALS + ["/ab+c/g", "`v${a}w`"])
    if depth <= 0:
        return base
    sub = _exprs(depth - 1)
    return st.one_of(
        base,
        st.tuples(sub, st.sampled_from(["+", "-", "*", "/", "%", "===", "<", "&&", "||"]), sub).map(
            lambda t: f"({t[0]} {t[1]} {t[2]})"
        ),
        st.tuples(st.sampled_from(_IDENTS), st.lists(sub, max_size=2)).map(
            lambda t: f"{t[0]}({', '.join(t[1])})"
        ),
        st.tuples(sub, st.sampled_from(_IDENTS)).map(lambda t: f"({t[0]}).{t[1]}"),
        st.tuples(sub, sub).map(lambda t: f"({t[0]} ?? {t[1]})"),
        st.lists(sub, max_size=3).map(lambda es: "[" + ", ".join(es) + "]"),
        st.tuples(st.sampled_from(_IDENTS), sub).map(lambda t: f"({{{t[0]}: {t[1]}}})"),
        st.tuples(sub, sub, sub).map(lambda t: f"({t[0]} ? {t[1]} : {t[2]})"),
        sub.map(lambda e: f"(() => {e})"),
        sub.map(lambda e: f"(typeof {e})"),
        sub.map(lambda e: f"(-{e})"),
    )


def _statements():
    expr = _exprs(2)
    decl_name = st.sampled_from(["q1", "q2", "q3", "q4"])
    assign = st.tuples(st.sampled_from(_IDENTS), expr).map(lambda t: f"{t[0]} = {t[1]};")
    call = expr.map(lambda e: f"f({e});")
    if_stmt = st.tuples(expr, expr).map(lambda t: f"if ({t[0]}) {{ g({t[1]}); }}")
    loop = st.tuples(st.sampled_from(["xs", "ys"]), expr).map(
        lambda t: f"for (const it of {t[0]}) {{ h(it, {t[1]}); }}"
    )
    return st.one_of(assign, call, if_stmt, loop, st.tuples(decl_name, expr).map(
        lambda t: f"var {t[0]} = {t[1]};"
    ))


@st.composite
def small_programs(draw):
    statements = draw(st.lists(_statements(), min_size=1, max_size=6))
    params = draw(st.sampled_from(["", "p", "p, q"]))
    wrap = draw(st.booleans())
    body = "\n  ".join(statements)
    if wrap:
        return f"function main({params}) {{\n  {body}\n}}\nexport default main;\n"
    return "\n".join(statements) + "\n"


@settings(max_examples=300, deadline=None)
@given(small_programs())
def test_minify_token_preservation_on_random_programs(source):
    assert token_pairs(minify(source)) == token_pairs(source)


@settings(max_examples=300, deadline=None)
@given(small_programs())
def test_mangle_shape_preservation_on_random_programs(source):
    assert preorder_kinds(parse(mangle(source))) == preorder_kinds(parse(source))


@settings(max_examples=300, deadline=None)
@given(small_programs())
def test_dataflow_mangle_invariance_on_random_programs(source):
    assert dataflow_edges(parse(source)).edges == dataflow_edges(parse(mangle(source))).edges


@settings(max_examples=200, deadline=None)
@given(small_programs())
def test_tokenize_spans_partition_source(source):
    toks = list(tokenize(source))
    for prev, cur in zip(toks, toks[1:]):
        assert prev.end <= cur.start
    for tok in toks:
        assert source[tok.start : tok.end] == tok.text
