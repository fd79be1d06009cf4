"""Def-use edge extraction: which variables are computed from which.

An edge (d, computedFrom, r) is emitted when the expression that defines
or assigns variable d reads variable r. Reads are free variables of the
defining expression: identifiers resolving to a local binding declared
outside that expression (so a closure's own parameters do not count).
Reads of unresolved globals and imported bindings are skipped, and
self-edges are not emitted.

Variables are numbered consecutively in first-definition order, which
makes edge sets invariant under identifier renaming.
"""

from __future__ import annotations

from dataclasses import dataclass

from jsstylo.jsfront.jsast import Node, SyntaxTree
from jsstylo.jsfront.scopes import Binding, analyze_scopes, _pattern_identifiers

COMPUTED_FROM = "computedFrom"


@dataclass(frozen=True)
class DataflowEdgeSet:
    edges: frozenset[tuple[int, str, int]]
    var_count: int

    def pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset((src, dst) for src, _, dst in self.edges)


def dataflow_edges(tree: SyntaxTree) -> DataflowEdgeSet:
    analysis = analyze_scopes(tree)

    numbered = [b for b in analysis.bindings if b.kind != "import"]
    var_ids = {id(b.node): i for i, b in enumerate(numbered)}

    def binding_id(binding: Binding) -> int | None:
        return var_ids.get(id(binding.node))

    def free_reads(expr: Node) -> set[int]:
        ids: set[int] = set()
        for node in expr.walk():
            if node.kind != "Identifier":
                continue
            binding = analysis.references.get(id(node))
            if binding is None or binding.kind == "import":
                continue
            if expr.start <= binding.node.start < expr.end:
                continue  # bound inside the expression itself
            vid = binding_id(binding)
            if vid is not None:
                ids.add(vid)
        return ids

    def defined_ids(pattern: Node) -> list[int]:
        out = []
        for ident in _pattern_identifiers(pattern):
            binding = analysis.declarations.get(id(ident))
            if binding is None:
                # Destructuring assignment target: identifiers are references.
                binding = analysis.references.get(id(ident))
            if binding is None or binding.kind == "import":
                continue
            vid = binding_id(binding)
            if vid is not None:
                out.append(vid)
        return out

    edges: set[tuple[int, str, int]] = set()

    def connect(targets: list[int], source_expr: Node | None) -> None:
        if source_expr is None or not targets:
            return
        reads = free_reads(source_expr)
        for d in targets:
            for r in reads:
                if r != d:
                    edges.add((d, COMPUTED_FROM, r))

    for node in tree.walk():
        kind = node.kind
        if kind == "VariableDeclarator":
            connect(defined_ids(node.id), node.get("init"))
        elif kind == "AssignmentExpression":
            left = node.left
            if left.kind in ("Identifier", "ObjectPattern", "ArrayPattern"):
                connect(defined_ids(left), node.right)
        elif kind in ("ForOfStatement", "ForInStatement"):
            left = node.left
            if left.kind == "VariableDeclaration":
                targets = []
                for decl in left.declarations:
                    targets.extend(defined_ids(decl.id))
            else:
                targets = defined_ids(left)
            connect(targets, node.right)
        elif kind == "AssignmentPattern":
            connect(defined_ids(node.left), node.right)

    return DataflowEdgeSet(edges=frozenset(edges), var_count=len(numbered))
