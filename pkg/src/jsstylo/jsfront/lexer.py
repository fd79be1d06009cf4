"""ECMAScript 2020 tokenizer (module goal).

Comments and whitespace are dropped. Template literals produce one
TemplateLiteral token per quasi segment (delimiters included in the token
text), with the tokens of embedded ``${...}`` expressions in between.
The regex-vs-division ambiguity is resolved from the previous token:
a ``/`` starts a regular expression after a punctuator (other than the
expression-ending ``)``, ``]``, ``++``, ``--``), after a non-value keyword,
or at the start of input; otherwise it is a division operator.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

KEYWORD = "Keyword"
IDENTIFIER = "Identifier"
PUNCTUATOR = "Punctuator"
NUMERIC = "NumericLiteral"
STRING = "StringLiteral"
TEMPLATE = "TemplateLiteral"
REGEXP = "RegExpLiteral"
BIGINT = "BigIntLiteral"

# Reserved words of the module goal (strict mode), i.e. words that can
# never be binding identifiers.  `let`, `static`, `yield` and `await` are
# contextual in sloppy scripts but reserved in modules.
KEYWORDS = frozenset(
    """
    break case catch class const continue debugger default delete do else
    enum export extends false finally for function if import in instanceof
    new null return super switch this throw true try typeof var void while
    with let static yield await
    """.split()
)

# Value-like keywords after which `/` is a division, not a regex start.
_VALUE_KEYWORDS = frozenset({"this", "super", "true", "false", "null"})

# Punctuators after which `/` is a division (they end an expression).
_EXPR_END_PUNCT = frozenset({")", "]", "++", "--"})

# Longest-first so maximal munch falls out of the alternation order.
_PUNCTUATORS = [
    ">>>=",
    "...", "===", "!==", "**=", "<<=", ">>=", ">>>",
    "=>", "==", "!=", "<=", ">=", "&&", "||", "??", "?.", "++", "--",
    "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "**", "<<", ">>",
    "{", "}", "(", ")", "[", "]", ";", ",", "<", ">", "+", "-", "*", "/",
    "%", "&", "|", "^", "!", "~", "?", ":", "=", ".",
]
_PUNCT_RE = re.compile("|".join(re.escape(p) for p in _PUNCTUATORS))

_WS_RE = re.compile(r"[ \t\v\f ﻿\n\r  ]+")
_IDENT_TAIL_RE = re.compile(r"[$\w]+", re.UNICODE)
_NUMBER_RE = re.compile(
    r"0[xX][0-9a-fA-F]+n?|0[oO][0-7]+n?|0[bB][01]+n?|\d+n"
    r"|(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?"
)
_LINE_TERMINATORS = "\n\r  "


class LexError(ValueError):
    """Lexical error; `offset` is the character offset in the source."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    start: int
    end: int
    newline_before: bool = False

    @property
    def span(self) -> tuple[int, int]:
        """(offset, length) of the token in the source."""
        return (self.start, self.end - self.start)


@dataclass(frozen=True)
class TokenStream:
    tokens: tuple[Token, ...]
    source_len: int

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    def __getitem__(self, i):
        return self.tokens[i]

    def texts(self) -> list[str]:
        return [t.text for t in self.tokens]

    def kinds(self) -> list[str]:
        return [t.kind for t in self.tokens]


def _is_ident_start(ch: str) -> bool:
    return ch == "$" or ch == "_" or ch.isalpha()


def tokenize(source: str) -> TokenStream:
    """Lex `source` into a TokenStream, dropping comments and whitespace.

    Raises LexError on unterminated strings/templates/regexes/comments and
    on characters outside the lexical grammar.
    """
    tokens: list[Token] = []
    n = len(source)
    pos = 0
    newline_before = False
    # Each entry tracks the `{`-nesting depth of one open template hole.
    template_stack: list[int] = []

    def emit(kind: str, start: int, end: int) -> None:
        nonlocal newline_before
        tokens.append(Token(kind, source[start:end], start, end, newline_before))
        newline_before = False

    while pos < n:
        ch = source[pos]

        m = _WS_RE.match(source, pos)
        if m:
            if any(c in _LINE_TERMINATORS for c in m.group()):
                newline_before = True
            pos = m.end()
            continue

        if ch == "/" and pos + 1 < n and source[pos + 1] == "/":
            end = pos + 2
            while end < n and source[end] not in _LINE_TERMINATORS:
                end += 1
            pos = end
            continue

        if ch == "/" and pos + 1 < n and source[pos + 1] == "*":
            end = source.find("*/", pos + 2)
            if end < 0:
                raise LexError("unterminated block comment", pos)
            if any(c in _LINE_TERMINATORS for c in source[pos:end]):
                newline_before = True
            pos = end + 2
            continue

        if _is_ident_start(ch):
            m = _IDENT_TAIL_RE.match(source, pos)
            text = m.group()
            emit(KEYWORD if text in KEYWORDS else IDENTIFIER, pos, m.end())
            pos = m.end()
            continue

        if ch.isdigit() or (ch == "." and pos + 1 < n and source[pos + 1].isdigit()):
            m = _NUMBER_RE.match(source, pos)
            if not m:
                raise LexError("malformed numeric literal", pos)
            end = m.end()
            text = m.group()
            if text[0] == "0" and len(text) > 1 and text[1].isdigit():
                raise LexError("legacy octal literals are not allowed in modules", pos)
            if end < n and (_is_ident_start(source[end]) or source[end].isdigit()):
                raise LexError("identifier starts immediately after numeric literal", pos)
            emit(BIGINT if text.endswith("n") else NUMERIC, pos, end)
            pos = end
            continue

        if ch in "'\"":
            pos = _scan_string(source, pos, emit)
            continue

        if ch == "`":
            pos = _scan_template(source, pos, emit, template_stack)
            continue

        if ch == "}" and template_stack and template_stack[-1] == 0:
            template_stack.pop()
            pos = _scan_template(source, pos, emit, template_stack)
            continue

        if ch == "/" and _regex_allowed(tokens):
            pos = _scan_regex(source, pos, emit)
            continue

        m = _PUNCT_RE.match(source, pos)
        if m:
            text = m.group()
            # `?.` followed by a digit is `?` then `.5`, not optional chaining.
            if text == "?." and pos + 2 < n and source[pos + 2].isdigit():
                text = "?"
            if template_stack:
                if text == "{":
                    template_stack[-1] += 1
                elif text == "}":
                    template_stack[-1] -= 1
            emit(PUNCTUATOR, pos, pos + len(text))
            pos += len(text)
            continue

        raise LexError(f"unexpected character {ch!r}", pos)

    return TokenStream(tuple(tokens), n)


def _regex_allowed(tokens: list[Token]) -> bool:
    if not tokens:
        return True
    prev = tokens[-1]
    if prev.kind == PUNCTUATOR:
        return prev.text not in _EXPR_END_PUNCT
    if prev.kind == KEYWORD:
        return prev.text not in _VALUE_KEYWORDS
    if prev.kind == TEMPLATE:
        # A quasi opening a hole is followed by an expression position.
        return prev.text.endswith("${")
    return False


def _scan_string(source: str, pos: int, emit) -> int:
    quote = source[pos]
    i = pos + 1
    n = len(source)
    while i < n:
        ch = source[i]
        if ch == "\\":
            i += 2
            continue
        if ch == quote:
            emit(STRING, pos, i + 1)
            return i + 1
        if ch in "\n\r":
            # U+2028/U+2029 are legal inside string literals (JSON superset).
            break
        i += 1
    raise LexError("unterminated string literal", pos)


def _scan_template(source: str, pos: int, emit, template_stack: list[int]) -> int:
    # `pos` is at an opening backtick or at the `}` resuming a template.
    i = pos + 1
    n = len(source)
    while i < n:
        ch = source[i]
        if ch == "\\":
            i += 2
            continue
        if ch == "`":
            emit(TEMPLATE, pos, i + 1)
            return i + 1
        if ch == "$" and i + 1 < n and source[i + 1] == "{":
            emit(TEMPLATE, pos, i + 2)
            template_stack.append(0)
            return i + 2
        i += 1
    raise LexError("unterminated template literal", pos)


def _scan_regex(source: str, pos: int, emit) -> int:
    i = pos + 1
    n = len(source)
    in_class = False
    while i < n:
        ch = source[i]
        if ch == "\\":
            i += 2
            continue
        if ch in _LINE_TERMINATORS:
            break
        if ch == "[":
            in_class = True
        elif ch == "]":
            in_class = False
        elif ch == "/" and not in_class:
            i += 1
            m = _IDENT_TAIL_RE.match(source, i)
            if m:
                i = m.end()
            emit(REGEXP, pos, i)
            return i
        i += 1
    raise LexError("unterminated regular expression literal", pos)
