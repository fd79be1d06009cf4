"""Source transforms: whitespace/comment minification and identifier mangling.

Both transforms rebuild the program from its token stream, so minify
preserves the token sequence exactly (a separating space or newline is
inserted only where adjacent tokens would otherwise merge, or where a
line break carries an automatic-semicolon). Mangling renames lexically
scoped local declarations (parameters, var/let/const, local function
names) to the shortest unused names a, b, ..., z, aa, ... per scope;
property names, import/export surface names, and globals are untouched.
"""

from __future__ import annotations

from jsstylo.jsfront import lexer
from jsstylo.jsfront.jsast import preorder_kinds
from jsstylo.jsfront.lexer import Token, tokenize
from jsstylo.jsfront.parser import parse
from jsstylo.jsfront.scopes import analyze_scopes

_ID_CHARS = frozenset("$_abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789")
_MERGE_PAIRS = frozenset({("+", "+"), ("-", "-"), ("*", "*"), ("/", "/"), ("/", "*"), ("?", ".")})

# A line break after these keywords terminates the statement (ASI).
_ASI_KEYWORDS = frozenset({"return", "throw", "break", "continue", "yield"})

_NAME_ALPHABET = "abcdefghijklmnopqrstuvwxyz"


def _needs_space(prev_text: str, next_text: str, prev_kind: str) -> bool:
    a, b = prev_text[-1], next_text[0]
    if a in _ID_CHARS and b in _ID_CHARS:
        return True
    if (a, b) in _MERGE_PAIRS:
        return True
    if prev_kind in (lexer.NUMERIC, lexer.BIGINT) and b == ".":
        return True
    return False


def _join(tokens: list[Token], texts: list[str], keep_newlines: bool) -> str:
    parts: list[str] = []
    for i, (tok, text) in enumerate(zip(tokens, texts)):
        if i > 0:
            prev_tok, prev_text = tokens[i - 1], texts[i - 1]
            if tok.newline_before and (
                keep_newlines
                or (prev_tok.kind == lexer.KEYWORD and prev_tok.text in _ASI_KEYWORDS)
                or tok.text in ("++", "--")
            ):
                parts.append("\n")
            elif _needs_space(prev_text, text, prev_tok.kind):
                parts.append(" ")
        parts.append(text)
    return "".join(parts)


def _emit_verified(source: str, tokens: list[Token], texts: list[str], want_kinds: list[str]) -> str:
    out = _join(tokens, texts, keep_newlines=False)
    try:
        if preorder_kinds(parse(out)) == want_kinds:
            return out
    except ValueError:
        pass
    # Semicolon-free styles may rely on line breaks beyond the known
    # hazard pairs; fall back to keeping every original line break.
    out = _join(tokens, texts, keep_newlines=True)
    if preorder_kinds(parse(out)) != want_kinds:
        raise RuntimeError("transform verification failed: tree shape changed")
    return out


def minify(source: str) -> str:
    """Remove comments and non-semantic whitespace, preserving the token stream."""
    tree = parse(source)
    tokens = list(tokenize(source).tokens)
    return _emit_verified(source, tokens, [t.text for t in tokens], preorder_kinds(tree))


_RENAMEABLE_KINDS = frozenset({"param", "var", "let", "const", "function"})


def mangle(source: str) -> str:
    """Rename local declarations to short names; output is also minified.

    The node-kind preorder sequence of the result equals the input's.
    """
    tree = parse(source)
    analysis = analyze_scopes(tree)

    renameable = [
        b
        for b in analysis.bindings
        if b.kind in _RENAMEABLE_KINDS and not b.exported
    ]
    renamed_occurrence_ids = {
        id(occ) for b in renameable for occ in b.occurrences()
    }

    # Any identifier text not being renamed (globals, imports, property
    # names, exported names) must never be produced by the allocator.
    untouched: set[str] = set()
    for node in tree.walk():
        if node.kind == "Identifier" and id(node) not in renamed_occurrence_ids:
            untouched.add(node.name)

    renameable_ids = {id(b) for b in renameable}
    new_names: dict[int, str] = {}  # id(binding.node) -> new name

    def assign(scope, taken_above: frozenset[str]) -> None:
        local = [b for b in scope.bindings.values() if id(b) in renameable_ids]
        local.sort(key=lambda b: b.node.start)
        taken = set(taken_above)
        counter = 0
        for binding in local:
            while True:
                name = _short_name(counter)
                counter += 1
                if name in lexer.KEYWORDS or name in untouched or name in taken:
                    continue
                break
            new_names[id(binding.node)] = name
            taken.add(name)
        frozen = frozenset(taken)
        for child in scope.children:
            assign(child, frozen)

    assign(analysis.module_scope, frozenset())

    # Map every occurrence's source span to its replacement text.
    replacements: dict[int, str] = {}
    for binding in renameable:
        name = new_names[id(binding.node)]
        for occ in binding.occurrences():
            key = analysis.shorthand_values.get(id(occ))
            # Shorthand `{x}` expands to `{x:a}` so the property name survives.
            replacements[occ.start] = f"{key}:{name}" if key is not None else name

    tokens = list(tokenize(source).tokens)
    texts = [replacements.get(t.start, t.text) for t in tokens]
    return _emit_verified(source, tokens, texts, preorder_kinds(tree))


def _short_name(index: int) -> str:
    base = len(_NAME_ALPHABET)
    out = []
    index += 1
    while index > 0:
        index -= 1
        out.append(_NAME_ALPHABET[index % base])
        index //= base
    return "".join(reversed(out))
