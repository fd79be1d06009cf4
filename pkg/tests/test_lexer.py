import pytest

from jsstylo.jsfront.lexer import LexError, tokenize


def kinds_texts(source):
    return [(t.kind, t.text) for t in tokenize(source)]


def test_simple_statement():
    assert kinds_texts("let x = 1;") == [
        ("Keyword", "let"),
        ("Identifier", "x"),
        ("Punctuator", "="),
        ("NumericLiteral", "1"),
        ("Punctuator", ";"),
    ]


def test_comments_dropped():
    assert kinds_texts("// note\nfoo()") == [
        ("Identifier", "foo"),
        ("Punctuator", "("),
        ("Punctuator", ")"),
    ]
    assert kinds_texts("/* a\nb */ x") == [("Identifier", "x")]


def test_template_one_token_per_quasi():
    toks = kinds_texts("`a${x}b${y}c`")
    assert toks == [
        ("TemplateLiteral", "`a${"),
        ("Identifier", "x"),
        ("TemplateLiteral", "}b${"),
        ("Identifier", "y"),
        ("TemplateLiteral", "}c`"),
    ]


def test_nested_template_and_object_in_hole():
    toks = tokenize("`x${ {a: `inner${b}end`} }y`")
    kinds = [t.kind for t in toks]
    assert kinds.count("TemplateLiteral") == 4
    assert toks[0].text == "`x${"
    assert toks[-1].text == "}y`"


def test_regex_vs_division():
    assert kinds_texts("a / b")[1] == ("Punctuator", "/")
    assert kinds_texts("x = /ab/g;")[2] == ("RegExpLiteral", "/ab/g")
    assert kinds_texts("typeof /re/")[1][0] == "RegExpLiteral"
    # after ) and identifiers, / is division
    assert ("Punctuator", "/") in kinds_texts("(a + b) / 2")
    assert kinds_texts("return /x/.test(s);")[1][0] == "RegExpLiteral"


def test_regex_char_class_slash():
    (kind, text) = kinds_texts("x = /[/]/;")[2]
    assert kind == "RegExpLiteral"
    assert text == "/[/]/"


def test_numeric_forms():
    for src, kind in [
        ("0x1F", "NumericLiteral"),
        ("0b101", "NumericLiteral"),
        ("0o17", "NumericLiteral"),
        ("1.5e-3", "NumericLiteral"),
        (".5", "NumericLiteral"),
        ("10n", "BigIntLiteral"),
        ("0xFFn", "BigIntLiteral"),
    ]:
        assert kinds_texts(f"x = {src};")[2] == (kind, src)


def test_keywords_are_reserved_words():
    toks = kinds_texts("if (true) { return null; } else { throw this; }")
    keywords = {text for kind, text in toks if kind == "Keyword"}
    assert keywords == {"if", "true", "return", "null", "else", "throw", "this"}
    # contextual names stay identifiers
    assert kinds_texts("async ()=>{}")[0][0] == "Identifier"
    assert kinds_texts("x.of")[2][0] == "Identifier"


def test_spans_strictly_increasing():
    toks = list(tokenize("const a = `t${q}` + 2; // end"))
    for prev, cur in zip(toks, toks[1:]):
        assert prev.end <= cur.start
    assert all(t.end > t.start for t in toks)


def test_optional_chaining_vs_ternary_decimal():
    assert kinds_texts("a?.b")[1] == ("Punctuator", "?.")
    toks = kinds_texts("a ? .5 : b")
    assert toks[1] == ("Punctuator", "?")
    assert toks[2] == ("NumericLiteral", ".5")


@pytest.mark.parametrize(
    "bad",
    ['"unterminated', "`unterminated ${x}", "/* never closed", "let x = 'a\nb'"],
)
def test_lex_errors_carry_offset(bad):
    with pytest.raises(LexError) as err:
        tokenize(bad)
    assert err.value.offset >= 0


def test_newline_before_flags():
    toks = list(tokenize("a\nb; c"))
    assert not toks[0].newline_before
    assert toks[1].newline_before
    assert not toks[3].newline_before
