import pytest

from jsstylo.jsfront.jsast import ast_to_json, preorder_kinds
from jsstylo.jsfront.parser import ParseError, parse


def kinds(source):
    return preorder_kinds(parse(source))


def test_minimal_assignment_shape():
    assert kinds("x = 1;") == [
        "Program",
        "ExpressionStatement",
        "AssignmentExpression",
        "Identifier",
        "NumericLiteral",
    ]


def test_import_declaration():
    assert kinds("import fs from 'fs';") == [
        "Program",
        "ImportDeclaration",
        "ImportDefaultSpecifier",
        "Identifier",
        "StringLiteral",
    ]


@pytest.mark.parametrize(
    "src",
    [
        "import { a, b as c } from 'm'; import * as ns from 'n'; import 'side';",
        "export default function () {}",
        "export const x = 1, y = 2;",
        "export { a as b }; const a = 1;",
        "export * from 'm'; export * as all from 'n';",
        "class A extends B { constructor() { super(); } static s() {} get g() { return 1; } set g(v) {} *gen() { yield 1; } async m() {} }",
        "const { a = 1, b: { c } = {}, ...rest } = obj;",
        "const [x, , y = 2, ...zs] = arr;",
        "async function f() { await g(); }",
        "function* g() { yield* inner(); }",
        "label: for (;;) { break label; }",
        "for (const k in obj) {}",
        "for (let i = 0, n = 10; i < n; i++) {}",
        "switch (x) { case 1: break; default: f(); }",
        "try { f(); } catch { g(); } finally { h(); }",
        "a?.b?.[c]?.(d);",
        "new Map(); new a.b.C(1); new C;",
        "x = a ?? b; y = (a && b) ?? c;",
        "tag`tpl ${x}`;",
        "({ a, b: 2, [k]: 3, m() {}, get p() { return 1; }, async am() {}, *gm() {}, ...rest });",
        "(x = { a } = y);",
        "do f(); while (cond);",
        "x = 2 ** 3 ** 2;",
        "const f = async (a, b = 1, ...cs) => a + b;",
        "import.meta.url; import('mod');",
        "f(...xs, 1);",
        "x = y, z = w;",
        "'use strict'; debugger;",
        "if (a) b(); else if (c) d(); else e();",
        "while (x) { continue; }",
        "throw new Error('boom');",
        "[a, b] = [b, a];",
        "(function named() {})();",
        "const o = { 'str': 1, 42: 2 };",
        "export function ef() {} export class EC {}",
        "const c = class Inner extends Base {};",
    ],
)
def test_feature_coverage_parses(src):
    assert kinds(src)[0] == "Program"


def test_precedence_and_associativity():
    # 2 ** 3 ** 2 groups right: BinaryExpression(2, BinaryExpression(3, 2))
    tree = parse("x = 2 ** 3 ** 2;")
    expr = tree.root.body[0].expression.right
    assert expr.kind == "BinaryExpression"
    assert expr.right.kind == "BinaryExpression"
    # a + b * c groups the multiplication first
    tree = parse("r = a + b * c;")
    plus = tree.root.body[0].expression.right
    assert plus.operator == "+"
    assert plus.right.operator == "*"


def test_chain_expression_wrapper():
    tree = parse("a?.b.c;")
    expr = tree.root.body[0].expression
    assert expr.kind == "ChainExpression"
    tree = parse("(a?.b).c;")
    expr = tree.root.body[0].expression
    assert expr.kind == "MemberExpression"
    assert expr.object.kind == "ChainExpression"


def test_asi_and_restricted_productions():
    assert kinds("a = 1\nb = 2") == kinds("a = 1; b = 2;")
    tree = parse("function f() { return\n1; }")
    ret = tree.root.body[0].body.body[0]
    assert ret.kind == "ReturnStatement"
    assert ret.get("argument") is None
    with pytest.raises(ParseError):
        parse("function f() { throw\nx; }")


def test_parse_error_reports_line_column():
    with pytest.raises(ParseError) as err:
        parse("const a = 1;\nlet = ;")
    assert err.value.line == 2
    assert "expected" in str(err.value) or err.value.expected


@pytest.mark.parametrize(
    "bad",
    [
        "let = ;",
        "const;",
        "if (a { }",
        "function () {}",
        "class { m() {} }",
        "a ?? b || c",
        "x = -a ** 2;",
        "class A { field = 1; }",  # class fields are past the pinned grammar
        "await x;",  # top-level await likewise
        "f(a,, b);",
    ],
)
def test_grammar_violations_raise(bad):
    with pytest.raises(ParseError):
        parse(bad)


def test_shorthand_property_key_value_both_present():
    tree = parse("({ x });")
    prop = tree.root.body[0].expression.properties[0]
    assert prop.key.kind == "Identifier" and prop.value.kind == "Identifier"
    assert prop.key.name == prop.value.name == "x"


def test_export_default_anonymous_function_is_declaration():
    tree = parse("export default function () {}")
    decl = tree.root.body[0].declaration
    assert decl.kind == "FunctionDeclaration"
    assert decl.get("id") is None


def test_ast_json_export_shape():
    data = ast_to_json(parse("let v = 1;"))
    assert data["kind"] == "Program"
    declarator = data["children"][0]["children"][0]
    assert declarator["kind"] == "VariableDeclarator"
    assert declarator["children"][0] == {"kind": "Identifier", "text": "v", "children": []}
    assert declarator["children"][1]["text"] == "1"


def test_node_spans_cover_identifiers():
    src = "const alpha = beta + 1;"
    tree = parse(src)
    idents = [n for n in tree.walk() if n.kind == "Identifier"]
    assert {src[n.start : n.end] for n in idents} == {"alpha", "beta"}


def test_ast_json_roundtrip_preserves_kinds_and_subtrees():
    from jsstylo.jsfront.jsast import ast_from_json
    from jsstylo.similarity import subtree_serials

    src = "export function dbl(n) { return n * 2; }"
    tree = parse(src)
    loaded = ast_from_json(ast_to_json(tree))
    assert preorder_kinds(loaded) == preorder_kinds(tree)
    assert subtree_serials(loaded) == subtree_serials(tree)
