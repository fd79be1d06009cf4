"""Kind-labeled syntax trees with ESTree-style node names.

Nodes are lightweight records: a kind string, a source span, and named
fields. Child order for traversal is fixed by VISITOR_KEYS, so preorder
kind sequences are stable and comparable across tools that share the
same key table. Identifier text lives in the `name` field, never in the
kind, so kind-level comparisons are renaming-blind.
"""

from __future__ import annotations

from typing import Any, Iterator

# Traversal order per node kind. Only fields listed here are walked;
# scalar fields (operator, name, value, flags) are ignored by traversal.
VISITOR_KEYS: dict[str, tuple[str, ...]] = {
    "Program": ("body",),
    "ExpressionStatement": ("expression",),
    "BlockStatement": ("body",),
    "EmptyStatement": (),
    "DebuggerStatement": (),
    "ReturnStatement": ("argument",),
    "IfStatement": ("test", "consequent", "alternate"),
    "SwitchStatement": ("discriminant", "cases"),
    "SwitchCase": ("test", "consequent"),
    "ThrowStatement": ("argument",),
    "TryStatement": ("block", "handler", "finalizer"),
    "CatchClause": ("param", "body"),
    "WhileStatement": ("test", "body"),
    "DoWhileStatement": ("body", "test"),
    "ForStatement": ("init", "test", "update", "body"),
    "ForInStatement": ("left", "right", "body"),
    "ForOfStatement": ("left", "right", "body"),
    "BreakStatement": ("label",),
    "ContinueStatement": ("label",),
    "LabeledStatement": ("label", "body"),
    "VariableDeclaration": ("declarations",),
    "VariableDeclarator": ("id", "init"),
    "FunctionDeclaration": ("id", "params", "body"),
    "FunctionExpression": ("id", "params", "body"),
    "ArrowFunctionExpression": ("id", "params", "body"),
    "ClassDeclaration": ("id", "superClass", "body"),
    "ClassExpression": ("id", "superClass", "body"),
    "ClassBody": ("body",),
    "MethodDefinition": ("key", "value"),
    "ImportDeclaration": ("specifiers", "source"),
    "ImportSpecifier": ("imported", "local"),
    "ImportDefaultSpecifier": ("local",),
    "ImportNamespaceSpecifier": ("local",),
    "ImportExpression": ("source",),
    "ExportNamedDeclaration": ("declaration", "specifiers", "source"),
    "ExportSpecifier": ("local", "exported"),
    "ExportDefaultDeclaration": ("declaration",),
    "ExportAllDeclaration": ("exported", "source"),
    "Identifier": (),
    "PrivateIdentifier": (),
    "NumericLiteral": (),
    "StringLiteral": (),
    "BooleanLiteral": (),
    "NullLiteral": (),
    "RegExpLiteral": (),
    "BigIntLiteral": (),
    "TemplateLiteral": ("quasis", "expressions"),
    "TemplateElement": (),
    "TaggedTemplateExpression": ("tag", "quasi"),
    "ArrayExpression": ("elements",),
    "ObjectExpression": ("properties",),
    "Property": ("key", "value"),
    "SpreadElement": ("argument",),
    "RestElement": ("argument",),
    "ArrayPattern": ("elements",),
    "ObjectPattern": ("properties",),
    "AssignmentPattern": ("left", "right"),
    "SequenceExpression": ("expressions",),
    "UnaryExpression": ("argument",),
    "UpdateExpression": ("argument",),
    "BinaryExpression": ("left", "right"),
    "LogicalExpression": ("left", "right"),
    "AssignmentExpression": ("left", "right"),
    "ConditionalExpression": ("test", "consequent", "alternate"),
    "CallExpression": ("callee", "arguments"),
    "NewExpression": ("callee", "arguments"),
    "MemberExpression": ("object", "property"),
    "ChainExpression": ("expression",),
    "AwaitExpression": ("argument",),
    "YieldExpression": ("argument",),
    "ThisExpression": (),
    "Super": (),
    "MetaProperty": ("meta", "property"),
}

LITERAL_KINDS = frozenset(
    {
        "NumericLiteral",
        "StringLiteral",
        "BooleanLiteral",
        "NullLiteral",
        "RegExpLiteral",
        "BigIntLiteral",
        "TemplateElement",
    }
)


class Node:
    """One syntax-tree node: ESTree-style kind, span, and named fields."""

    __slots__ = ("kind", "start", "end", "_fields")

    def __init__(self, kind: str, start: int, end: int, **fields: Any):
        if kind not in VISITOR_KEYS:
            raise ValueError(f"unknown node kind: {kind}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "end", end)
        object.__setattr__(self, "_fields", fields)

    def __getattr__(self, name: str) -> Any:
        try:
            return self._fields[name]
        except KeyError:
            raise AttributeError(f"{self.kind} node has no field {name!r}") from None

    def get(self, name: str, default: Any = None) -> Any:
        return self._fields.get(name, default)

    @property
    def span(self) -> tuple[int, int]:
        return (self.start, self.end - self.start)

    def children(self) -> Iterator["Node"]:
        """Child nodes in canonical visitor-key order, Nones skipped."""
        for key in VISITOR_KEYS[self.kind]:
            value = self._fields.get(key)
            if value is None:
                continue
            if isinstance(value, list):
                for item in value:
                    if item is not None:
                        yield item
            else:
                yield value

    def walk(self) -> Iterator["Node"]:
        """Preorder traversal of this subtree."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(list(node.children())))

    def __repr__(self) -> str:
        return f"Node({self.kind}, {self.start}:{self.end})"


class SyntaxTree:
    """A parsed program: root Program node plus the original source."""

    __slots__ = ("root", "source")

    def __init__(self, root: Node, source: str):
        self.root = root
        self.source = source

    def walk(self) -> Iterator[Node]:
        return self.root.walk()

    def __len__(self) -> int:
        return sum(1 for _ in self.walk())


def preorder_kinds(tree: SyntaxTree | Node) -> list[str]:
    root = tree.root if isinstance(tree, SyntaxTree) else tree
    return [node.kind for node in root.walk()]


def node_text(node: Node) -> str | None:
    """Display text for leaf nodes: identifier name or literal raw text."""
    if node.kind in ("Identifier", "PrivateIdentifier"):
        return node.name
    if node.kind in LITERAL_KINDS:
        return node.get("raw")
    return None


def ast_to_json(tree: SyntaxTree | Node) -> dict:
    """Export as nested {kind, children, text?} dicts.

    Matches the layout of dataset-provided AST variants so in-house and
    shipped trees are directly comparable.
    """
    root = tree.root if isinstance(tree, SyntaxTree) else tree

    def convert(node: Node) -> dict:
        out: dict[str, Any] = {"kind": node.kind}
        text = node_text(node)
        if text is not None:
            out["text"] = text
        out["children"] = [convert(child) for child in node.children()]
        return out

    return convert(root)


class JsonTreeNode:
    """Read-only tree node over {kind, children, text?} data, duck-typed
    to what kind-level tree consumers (preorder, subtree match) need."""

    __slots__ = ("kind", "_children", "text")

    def __init__(self, data: dict):
        self.kind = data["kind"]
        self.text = data.get("text")
        self._children = [JsonTreeNode(child) for child in data.get("children", ())]

    def children(self):
        return iter(self._children)

    def walk(self):
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node._children))


def ast_from_json(data: dict) -> JsonTreeNode:
    """Load an exported (or dataset-provided) {kind, children, text?} tree."""
    return JsonTreeNode(data)
