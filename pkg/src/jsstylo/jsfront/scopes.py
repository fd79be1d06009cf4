"""Lexical scope and binding resolution over parsed trees.

Two passes: the first builds the scope tree and declares bindings
(`var` hoists to the nearest function/module scope, everything else is
block-scoped as in strict-mode modules); the second resolves identifier
references through the scope chain. Property names, non-computed keys,
labels, and import/export external names are never treated as references.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from jsstylo.jsfront.jsast import Node, SyntaxTree

FUNCTION_KINDS = ("FunctionDeclaration", "FunctionExpression", "ArrowFunctionExpression")


class RedeclarationError(ValueError):
    """Duplicate declaration that strict-mode modules reject."""

    def __init__(self, name: str, node: "Node"):
        super().__init__(f"identifier {name!r} has already been declared")
        self.name = name
        self.node = node


@dataclass
class Binding:
    name: str
    kind: str  # var | let | const | param | function | class | catch | import
    node: Node  # declaring Identifier
    references: list[Node] = field(default_factory=list)
    exported: bool = False

    def occurrences(self) -> list[Node]:
        return [self.node, *self.references]


class Scope:
    __slots__ = ("kind", "node", "parent", "children", "bindings")

    def __init__(self, kind: str, node: Node, parent: "Scope | None"):
        self.kind = kind  # module | function | block
        self.node = node
        self.parent = parent
        self.children: list[Scope] = []
        self.bindings: dict[str, Binding] = {}
        if parent is not None:
            parent.children.append(self)

    def hoist_target(self) -> "Scope":
        scope = self
        while scope.kind == "block":
            assert scope.parent is not None
            scope = scope.parent
        return scope

    def declare(self, name: str, kind: str, node: Node) -> Binding:
        target = self.hoist_target() if kind == "var" else self
        existing = target.bindings.get(name)
        if existing is not None:
            if not _may_merge(existing.kind, kind, target.kind):
                raise RedeclarationError(name, node)
            return existing
        binding = Binding(name, kind, node)
        target.bindings[name] = binding
        return binding

    def lookup(self, name: str) -> Binding | None:
        scope: Scope | None = self
        while scope is not None:
            binding = scope.bindings.get(name)
            if binding is not None:
                return binding
            scope = scope.parent
        return None


def _may_merge(existing: str, new: str, scope_kind: str) -> bool:
    """Strict-mode redeclaration rules: var-likes merge, lexicals never do.

    Function declarations are var-like at function-body top level and
    lexical everywhere else (module and block scopes).
    """
    if existing == "param" and new == "param":
        return False  # strict mode: argument name clash
    var_like = {"var", "param"}
    if scope_kind == "function":
        var_like.add("function")
    return existing in var_like and new in var_like


@dataclass
class ScopeAnalysis:
    module_scope: Scope
    bindings: list[Binding]  # all bindings, in source declaration order
    references: dict[int, Binding]  # id(Identifier node) -> binding, reference occurrences
    declarations: dict[int, Binding]  # id(Identifier node) -> binding, declaring occurrences
    shorthand_values: dict[int, str]  # id(value Identifier) -> key text, shorthand Property


def analyze_scopes(tree: SyntaxTree) -> ScopeAnalysis:
    builder = _ScopeBuilder()
    builder.build(tree.root)
    resolver = _Resolver(builder)
    resolver.resolve(tree.root)
    bindings = sorted(builder.all_bindings, key=lambda b: b.node.start)
    return ScopeAnalysis(
        module_scope=builder.module_scope,
        bindings=bindings,
        references=resolver.references,
        declarations=builder.declarations,
        shorthand_values=resolver.shorthand_values,
    )


class _ScopeBuilder:
    """Pass 1: create scopes, declare bindings, record node->scope links."""

    def __init__(self):
        self.module_scope: Scope = None  # type: ignore[assignment]
        self.scope_of: dict[int, Scope] = {}
        self.all_bindings: list[Binding] = []
        self.declarations: dict[int, Binding] = {}

    def build(self, root: Node) -> None:
        self.module_scope = Scope("module", root, None)
        self.scope_of[id(root)] = self.module_scope
        for stmt in root.body:
            self._visit(stmt, self.module_scope)
        self._mark_exports(root)

    def _declare(self, ident: Node, kind: str, scope: Scope) -> None:
        binding = scope.declare(ident.name, kind, ident)
        if binding.node is ident:
            self.all_bindings.append(binding)
        self.declarations[id(ident)] = binding

    def _declare_pattern(self, pattern: Node | None, kind: str, scope: Scope) -> None:
        if pattern is None:
            return
        pk = pattern.kind
        if pk == "Identifier":
            self._declare(pattern, kind, scope)
        elif pk == "ObjectPattern":
            for prop in pattern.properties:
                if prop.kind == "RestElement":
                    self._declare_pattern(prop.argument, kind, scope)
                else:
                    if prop.get("computed"):
                        self._visit(prop.key, scope)
                    self._declare_pattern(prop.value, kind, scope)
        elif pk == "ArrayPattern":
            for element in pattern.elements:
                self._declare_pattern(element, kind, scope)
        elif pk == "AssignmentPattern":
            self._declare_pattern(pattern.left, kind, scope)
            self._visit(pattern.right, scope)
        elif pk == "RestElement":
            self._declare_pattern(pattern.argument, kind, scope)
        elif pk == "MemberExpression":
            self._visit(pattern, scope)

    def _enter_function(self, node: Node, scope: Scope, own_name: bool) -> None:
        fn_scope = Scope("function", node, scope)
        self.scope_of[id(node)] = fn_scope
        fn_id = node.get("id")
        if fn_id is not None and own_name:
            # Named function/class expressions bind their name internally.
            self._declare(fn_id, "function", fn_scope)
        for param in node.params:
            self._declare_pattern(param, "param", fn_scope)
        body = node.body
        if body.kind == "BlockStatement":
            for stmt in body.body:
                self._visit(stmt, fn_scope)
        else:
            self._visit(body, fn_scope)

    def _visit(self, node: Node | None, scope: Scope) -> None:
        if node is None:
            return
        kind = node.kind

        if kind == "VariableDeclaration":
            for decl in node.declarations:
                self._declare_pattern(decl.id, node.declKind, scope)
                self._visit(decl.get("init"), scope)
            return
        if kind == "FunctionDeclaration":
            if node.get("id") is not None:
                self._declare(node.id, "function", scope)
            self._enter_function(node, scope, own_name=False)
            return
        if kind == "FunctionExpression" or kind == "ArrowFunctionExpression":
            self._enter_function(node, scope, own_name=True)
            return
        if kind == "ClassDeclaration":
            if node.get("id") is not None:
                self._declare(node.id, "class", scope)
            self._visit(node.get("superClass"), scope)
            self._visit(node.body, scope)
            return
        if kind == "ClassExpression":
            cls_scope = Scope("block", node, scope)
            self.scope_of[id(node)] = cls_scope
            if node.get("id") is not None:
                self._declare(node.id, "class", cls_scope)
            self._visit(node.get("superClass"), cls_scope)
            self._visit(node.body, cls_scope)
            return
        if kind == "BlockStatement":
            block = Scope("block", node, scope)
            self.scope_of[id(node)] = block
            for stmt in node.body:
                self._visit(stmt, block)
            return
        if kind in ("ForStatement", "ForInStatement", "ForOfStatement"):
            head = Scope("block", node, scope)
            self.scope_of[id(node)] = head
            if kind == "ForStatement":
                self._visit(node.get("init"), head)
                self._visit(node.get("test"), head)
                self._visit(node.get("update"), head)
            else:
                left = node.left
                if left.kind == "VariableDeclaration":
                    self._visit(left, head)
                else:
                    self._visit_pattern_refs(left, head)
                self._visit(node.right, head)
            self._visit(node.body, head)
            return
        if kind == "SwitchStatement":
            self._visit(node.discriminant, scope)
            body = Scope("block", node, scope)
            for case in node.cases:
                # Registered per-case so the discriminant stays in the outer scope.
                self.scope_of[id(case)] = body
                self._visit(case, body)
            return
        if kind == "CatchClause":
            catch_scope = Scope("block", node, scope)
            self.scope_of[id(node)] = catch_scope
            if node.get("param") is not None:
                self._declare_pattern(node.param, "catch", catch_scope)
            for stmt in node.body.body:
                self._visit(stmt, catch_scope)
            return
        if kind == "ImportDeclaration":
            for spec in node.specifiers:
                self._declare(spec.local, "import", self.module_scope)
            return
        if kind in ("MethodDefinition", "Property"):
            if node.get("computed"):
                self._visit(node.key, scope)
            self._visit(node.value, scope)
            return
        if kind == "MemberExpression":
            self._visit(node.object, scope)
            if node.get("computed"):
                self._visit(node.property, scope)
            return
        if kind in ("LabeledStatement",):
            self._visit(node.body, scope)
            return
        if kind in ("BreakStatement", "ContinueStatement"):
            return
        if kind in ("ImportSpecifier", "ExportSpecifier", "MetaProperty"):
            return
        if kind == "AssignmentExpression" and node.left.kind in (
            "ObjectPattern",
            "ArrayPattern",
        ):
            self._visit_pattern_refs(node.left, scope)
            self._visit(node.right, scope)
            return

        for child in node.children():
            self._visit(child, scope)

    def _visit_pattern_refs(self, pattern: Node, scope: Scope) -> None:
        # Destructuring assignment targets: identifiers are references,
        # not declarations; still walk computed keys and defaults.
        if pattern.kind == "ObjectPattern":
            for prop in pattern.properties:
                if prop.kind == "RestElement":
                    self._visit_pattern_refs(prop.argument, scope)
                else:
                    if prop.get("computed"):
                        self._visit(prop.key, scope)
                    self._visit_pattern_refs(prop.value, scope)
        elif pattern.kind == "ArrayPattern":
            for element in pattern.elements:
                if element is not None:
                    self._visit_pattern_refs(element, scope)
        elif pattern.kind == "AssignmentPattern":
            self._visit_pattern_refs(pattern.left, scope)
            self._visit(pattern.right, scope)
        elif pattern.kind == "RestElement":
            self._visit_pattern_refs(pattern.argument, scope)
        else:
            self._visit(pattern, scope)

    def _mark_exports(self, root: Node) -> None:
        for stmt in root.body:
            if stmt.kind == "ExportNamedDeclaration":
                decl = stmt.get("declaration")
                if decl is not None:
                    for name_node in _declared_identifiers(decl):
                        binding = self.declarations.get(id(name_node))
                        if binding is not None:
                            binding.exported = True
            elif stmt.kind == "ExportDefaultDeclaration":
                decl = stmt.declaration
                if decl.kind in ("FunctionDeclaration", "ClassDeclaration") and decl.get("id"):
                    binding = self.declarations.get(id(decl.id))
                    if binding is not None:
                        binding.exported = True


def _declared_identifiers(decl: Node) -> list[Node]:
    if decl.kind == "VariableDeclaration":
        out: list[Node] = []
        for declarator in decl.declarations:
            out.extend(_pattern_identifiers(declarator.id))
        return out
    if decl.kind in ("FunctionDeclaration", "ClassDeclaration") and decl.get("id"):
        return [decl.id]
    return []


def _pattern_identifiers(pattern: Node | None) -> list[Node]:
    if pattern is None:
        return []
    kind = pattern.kind
    if kind == "Identifier":
        return [pattern]
    if kind == "ObjectPattern":
        out = []
        for prop in pattern.properties:
            if prop.kind == "RestElement":
                out.extend(_pattern_identifiers(prop.argument))
            else:
                out.extend(_pattern_identifiers(prop.value))
        return out
    if kind == "ArrayPattern":
        out = []
        for element in pattern.elements:
            out.extend(_pattern_identifiers(element))
        return out
    if kind == "AssignmentPattern":
        return _pattern_identifiers(pattern.left)
    if kind == "RestElement":
        return _pattern_identifiers(pattern.argument)
    return []


class _Resolver:
    """Pass 2: attach identifier references to bindings via the scope chain."""

    def __init__(self, builder: _ScopeBuilder):
        self.scope_of = builder.scope_of
        self.declarations = builder.declarations
        self.references: dict[int, Binding] = {}
        self.shorthand_values: dict[int, str] = {}

    def resolve(self, root: Node) -> None:
        self._visit(root, self.scope_of[id(root)])

    def _reference(self, ident: Node, scope: Scope) -> None:
        if id(ident) in self.declarations:
            return
        binding = scope.lookup(ident.name)
        if binding is not None:
            binding.references.append(ident)
            self.references[id(ident)] = binding

    def _visit(self, node: Node | None, scope: Scope) -> None:
        if node is None:
            return
        scope = self.scope_of.get(id(node), scope)
        kind = node.kind

        if kind == "Identifier":
            self._reference(node, scope)
            return
        if kind == "MemberExpression":
            self._visit(node.object, scope)
            if node.get("computed"):
                self._visit(node.property, scope)
            return
        if kind in ("Property",):
            if node.get("computed"):
                self._visit(node.key, scope)
            if node.get("shorthand"):
                value = node.value
                target = value.left if value.kind == "AssignmentPattern" else value
                if target.kind == "Identifier":
                    self.shorthand_values[id(target)] = node.key.name
            self._visit(node.value, scope)
            return
        if kind == "MethodDefinition":
            if node.get("computed"):
                self._visit(node.key, scope)
            self._visit(node.value, scope)
            return
        if kind in ("BreakStatement", "ContinueStatement", "MetaProperty"):
            return
        if kind == "LabeledStatement":
            self._visit(node.body, scope)
            return
        if kind == "ImportDeclaration":
            return
        if kind == "ExportNamedDeclaration":
            self._visit(node.get("declaration"), scope)
            for spec in node.specifiers:
                if node.get("source") is None:
                    self._reference(spec.local, scope)
                    binding = self.references.get(id(spec.local))
                    if binding is not None:
                        binding.exported = True
            return
        if kind == "ExportAllDeclaration":
            return
        if kind in FUNCTION_KINDS:
            for param in node.params:
                self._visit_pattern(param, scope)
            self._visit(node.body, scope)
            return
        if kind == "VariableDeclarator":
            self._visit_pattern(node.id, scope)
            self._visit(node.get("init"), scope)
            return
        if kind == "CatchClause":
            if node.get("param") is not None:
                self._visit_pattern(node.param, scope)
            self._visit(node.body, scope)
            return

        for child in node.children():
            self._visit(child, scope)

    def _visit_pattern(self, pattern: Node | None, scope: Scope) -> None:
        # Walk only the expression parts of a binding pattern: computed
        # keys and default values. Bound identifiers are declarations.
        if pattern is None:
            return
        kind = pattern.kind
        if kind == "Identifier":
            self._reference(pattern, scope)
            return
        if kind == "ObjectPattern":
            for prop in pattern.properties:
                if prop.kind == "RestElement":
                    self._visit_pattern(prop.argument, scope)
                else:
                    if prop.get("computed"):
                        self._visit(prop.key, scope)
                    if prop.get("shorthand"):
                        value = prop.value
                        target = value.left if value.kind == "AssignmentPattern" else value
                        if target.kind == "Identifier":
                            self.shorthand_values[id(target)] = prop.key.name
                    self._visit_pattern(prop.value, scope)
            return
        if kind == "ArrayPattern":
            for element in pattern.elements:
                self._visit_pattern(element, scope)
            return
        if kind == "AssignmentPattern":
            self._visit_pattern(pattern.left, scope)
            self._visit(pattern.right, scope)
            return
        if kind == "RestElement":
            self._visit_pattern(pattern.argument, scope)
            return
        self._visit(pattern, scope)
