"""Recursive-descent parser for ECMAScript 2020 (module goal).

Produces SyntaxTree nodes with ESTree-style kinds. Coverage: import/export,
async/await, generators, classes, destructuring, template literals, arrow
functions, optional chaining, nullish coalescing, spread/rest, BigInt.
Later additions (class fields, logical assignment, numeric separators)
are rejected with a parse error rather than skipped, so syntax checking
stays honest about the pinned grammar level.
"""

from __future__ import annotations

from jsstylo.jsfront import lexer
from jsstylo.jsfront.jsast import Node, SyntaxTree
from jsstylo.jsfront.lexer import LexError, Token, TokenStream, tokenize
from jsstylo.jsfront.scopes import RedeclarationError, _ScopeBuilder

_EOF = "EOF"

# Binary operator precedence; `**` is right-associative, everything else left.
_BINOP_PREC = {
    "??": 1,
    "||": 2,
    "&&": 3,
    "|": 4,
    "^": 5,
    "&": 6,
    "==": 7, "!=": 7, "===": 7, "!==": 7,
    "<": 8, ">": 8, "<=": 8, ">=": 8, "in": 8, "instanceof": 8,
    "<<": 9, ">>": 9, ">>>": 9,
    "+": 10, "-": 10,
    "*": 11, "/": 11, "%": 11,
    "**": 12,
}

_ASSIGN_OPS = frozenset(
    {"=", "+=", "-=", "*=", "/=", "%=", "**=", "<<=", ">>=", ">>>=", "&=", "|=", "^="}
)

_UNARY_OPS = frozenset({"!", "~", "+", "-", "typeof", "void", "delete"})


class ParseError(ValueError):
    """Syntax error with 1-based line/column and an expectation hint."""

    def __init__(self, message: str, line: int, column: int, expected: str | None = None):
        loc = f"line {line}, column {column}"
        hint = f" (expected {expected})" if expected else ""
        super().__init__(f"{message} at {loc}{hint}")
        self.line = line
        self.column = column
        self.expected = expected


def parse(source: str) -> SyntaxTree:
    """Parse `source` as an ES2020 module and return its SyntaxTree.

    Raises ParseError for grammar violations and for the redeclaration
    early errors strict-mode modules reject.
    """
    try:
        stream = tokenize(source)
    except LexError as err:
        raise ParseError(str(err), *_line_col(source, err.offset)) from None
    tree = _Parser(source, stream).parse_program()
    try:
        _ScopeBuilder().build(tree.root)
    except RedeclarationError as err:
        raise ParseError(str(err), *_line_col(source, err.node.start)) from None
    return tree


def _line_col(source: str, offset: int) -> tuple[int, int]:
    line = source.count("\n", 0, offset) + 1
    column = offset - source.rfind("\n", 0, offset)
    return line, column


class _Parser:
    def __init__(self, source: str, stream: TokenStream):
        self.source = source
        self.tokens = list(stream.tokens)
        self.tokens.append(Token(_EOF, "", stream.source_len, stream.source_len, True))
        self.pos = 0
        self.prev_end = 0
        self.in_async = False
        self.in_generator = False

    # -- token plumbing --

    def peek(self, offset: int = 0) -> Token:
        i = min(self.pos + offset, len(self.tokens) - 1)
        return self.tokens[i]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != _EOF:
            self.pos += 1
            self.prev_end = tok.end
        return tok

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok.text == text and tok.kind in (lexer.PUNCTUATOR, lexer.KEYWORD)

    def at_kind(self, kind: str) -> bool:
        return self.peek().kind == kind

    def at_contextual(self, word: str) -> bool:
        tok = self.peek()
        return tok.kind == lexer.IDENTIFIER and tok.text == word

    def at_template_start(self) -> bool:
        tok = self.peek()
        return tok.kind == lexer.TEMPLATE and tok.text.startswith("`")

    def eat(self, text: str) -> bool:
        if self.at(text):
            self.next()
            return True
        return False

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(f"unexpected token {self.peek().text or '<eof>'!r}", expected=repr(text))
        return self.next()

    def fail(self, message: str, expected: str | None = None):
        tok = self.peek()
        line = self.source.count("\n", 0, tok.start) + 1
        column = tok.start - self.source.rfind("\n", 0, tok.start)
        raise ParseError(message, line, column, expected)

    def semicolon(self) -> None:
        if self.eat(";"):
            return
        tok = self.peek()
        if tok.kind == _EOF or tok.text == "}" or tok.newline_before:
            return
        self.fail(f"unexpected token {tok.text!r}", expected="';'")

    def node(self, kind: str, start: int, **fields) -> Node:
        return Node(kind, start, self.prev_end, **fields)

    # -- program / statements --

    def parse_program(self) -> SyntaxTree:
        body = []
        while not self.at_kind(_EOF):
            body.append(self.parse_module_item())
        root = Node("Program", 0, len(self.source), body=body, sourceType="module")
        return SyntaxTree(root, self.source)

    def parse_module_item(self) -> Node:
        if self.at("import") and self.peek(1).text not in ("(", "."):
            return self.parse_import_declaration()
        if self.at("export"):
            return self.parse_export_declaration()
        return self.parse_statement()

    def parse_statement(self) -> Node:
        tok = self.peek()
        if tok.kind == lexer.KEYWORD:
            handler = {
                "var": self.parse_variable_statement,
                "let": self.parse_variable_statement,
                "const": self.parse_variable_statement,
                "function": self.parse_function_declaration,
                "class": self.parse_class_declaration,
                "if": self.parse_if,
                "for": self.parse_for,
                "while": self.parse_while,
                "do": self.parse_do_while,
                "switch": self.parse_switch,
                "try": self.parse_try,
                "throw": self.parse_throw,
                "return": self.parse_return,
                "break": self.parse_break_continue,
                "continue": self.parse_break_continue,
                "debugger": self.parse_debugger,
            }.get(tok.text)
            if handler:
                return handler()
        if tok.text == "{" and tok.kind == lexer.PUNCTUATOR:
            return self.parse_block()
        if tok.text == ";" and tok.kind == lexer.PUNCTUATOR:
            start = self.next().start
            return self.node("EmptyStatement", start)
        if (
            tok.kind == lexer.IDENTIFIER
            and tok.text == "async"
            and self.peek(1).text == "function"
            and not self.peek(1).newline_before
        ):
            return self.parse_function_declaration()
        if (
            tok.kind == lexer.IDENTIFIER
            and self.peek(1).text == ":"
            and self.peek(1).kind == lexer.PUNCTUATOR
        ):
            start = tok.start
            label = self.parse_identifier()
            self.expect(":")
            body = self.parse_statement()
            return self.node("LabeledStatement", start, label=label, body=body)
        return self.parse_expression_statement()

    def parse_expression_statement(self) -> Node:
        start = self.peek().start
        expr = self.parse_expression()
        self.semicolon()
        return self.node("ExpressionStatement", start, expression=expr)

    def parse_block(self) -> Node:
        start = self.expect("{").start
        body = []
        while not self.at("}") and not self.at_kind(_EOF):
            body.append(self.parse_statement())
        self.expect("}")
        return self.node("BlockStatement", start, body=body)

    def parse_variable_statement(self) -> Node:
        decl = self.parse_variable_declaration(no_in=False)
        self.semicolon()
        return decl

    def parse_variable_declaration(self, no_in: bool) -> Node:
        start = self.peek().start
        decl_kind = self.next().text
        declarations = [self.parse_variable_declarator(no_in)]
        while self.eat(","):
            declarations.append(self.parse_variable_declarator(no_in))
        return self.node(
            "VariableDeclaration", start, declarations=declarations, declKind=decl_kind
        )

    def parse_variable_declarator(self, no_in: bool) -> Node:
        start = self.peek().start
        target = self.parse_binding_target()
        init = None
        if self.eat("="):
            init = self.parse_assignment(no_in=no_in)
        return self.node("VariableDeclarator", start, id=target, init=init)

    def parse_if(self) -> Node:
        start = self.expect("if").start
        self.expect("(")
        test = self.parse_expression()
        self.expect(")")
        consequent = self.parse_statement()
        alternate = self.parse_statement() if self.eat("else") else None
        return self.node(
            "IfStatement", start, test=test, consequent=consequent, alternate=alternate
        )

    def parse_for(self) -> Node:
        start = self.expect("for").start
        is_await = False
        if self.at("await"):
            if not self.in_async:
                self.fail("'for await' is only allowed inside async functions")
            self.next()
            is_await = True
        self.expect("(")
        init = None
        left = None
        if self.at(";"):
            pass
        elif self.peek().text in ("var", "let", "const") and self.peek().kind == lexer.KEYWORD:
            left = self.parse_variable_declaration(no_in=True)
        else:
            left = self.parse_expression(no_in=True)
        if left is not None and (self.at("in") or self.at_contextual("of")):
            of = self.next().text == "of"
            if is_await and not of:
                self.fail("'for await' requires an of-loop")
            if left.kind not in ("VariableDeclaration",):
                left = self.to_pattern(left)
            right = self.parse_assignment() if of else self.parse_expression()
            self.expect(")")
            body = self.parse_statement()
            kind = "ForOfStatement" if of else "ForInStatement"
            return self.node(kind, start, left=left, right=right, body=body, isAwait=is_await)
        if is_await:
            self.fail("'for await' requires an of-loop")
        init = left
        self.expect(";")
        test = None if self.at(";") else self.parse_expression()
        self.expect(";")
        update = None if self.at(")") else self.parse_expression()
        self.expect(")")
        body = self.parse_statement()
        return self.node(
            "ForStatement", start, init=init, test=test, update=update, body=body
        )

    def parse_while(self) -> Node:
        start = self.expect("while").start
        self.expect("(")
        test = self.parse_expression()
        self.expect(")")
        body = self.parse_statement()
        return self.node("WhileStatement", start, test=test, body=body)

    def parse_do_while(self) -> Node:
        start = self.expect("do").start
        body = self.parse_statement()
        self.expect("while")
        self.expect("(")
        test = self.parse_expression()
        self.expect(")")
        self.eat(";")
        return self.node("DoWhileStatement", start, body=body, test=test)

    def parse_switch(self) -> Node:
        start = self.expect("switch").start
        self.expect("(")
        discriminant = self.parse_expression()
        self.expect(")")
        self.expect("{")
        cases = []
        while not self.at("}") and not self.at_kind(_EOF):
            case_start = self.peek().start
            if self.eat("case"):
                test = self.parse_expression()
            else:
                self.expect("default")
                test = None
            self.expect(":")
            consequent = []
            while not self.at("case") and not self.at("default") and not self.at("}"):
                consequent.append(self.parse_statement())
            cases.append(self.node("SwitchCase", case_start, test=test, consequent=consequent))
        self.expect("}")
        return self.node("SwitchStatement", start, discriminant=discriminant, cases=cases)

    def parse_try(self) -> Node:
        start = self.expect("try").start
        block = self.parse_block()
        handler = None
        finalizer = None
        if self.at("catch"):
            catch_start = self.next().start
            param = None
            if self.eat("("):
                param = self.parse_binding_target()
                self.expect(")")
            body = self.parse_block()
            handler = self.node("CatchClause", catch_start, param=param, body=body)
        if self.eat("finally"):
            finalizer = self.parse_block()
        if handler is None and finalizer is None:
            self.fail("missing catch or finally after try")
        return self.node(
            "TryStatement", start, block=block, handler=handler, finalizer=finalizer
        )

    def parse_throw(self) -> Node:
        start = self.expect("throw").start
        if self.peek().newline_before:
            self.fail("illegal newline after throw")
        argument = self.parse_expression()
        self.semicolon()
        return self.node("ThrowStatement", start, argument=argument)

    def parse_return(self) -> Node:
        start = self.expect("return").start
        argument = None
        tok = self.peek()
        if not (tok.text in (";", "}") or tok.kind == _EOF or tok.newline_before):
            argument = self.parse_expression()
        self.semicolon()
        return self.node("ReturnStatement", start, argument=argument)

    def parse_break_continue(self) -> Node:
        tok = self.next()
        kind = "BreakStatement" if tok.text == "break" else "ContinueStatement"
        label = None
        nxt = self.peek()
        if nxt.kind == lexer.IDENTIFIER and not nxt.newline_before:
            label = self.parse_identifier()
        self.semicolon()
        return self.node(kind, tok.start, label=label)

    def parse_debugger(self) -> Node:
        start = self.expect("debugger").start
        self.semicolon()
        return self.node("DebuggerStatement", start)

    # -- functions and classes --

    def parse_function_declaration(self, default_export: bool = False) -> Node:
        start = self.peek().start
        is_async = False
        if self.at_contextual("async"):
            self.next()
            is_async = True
        self.expect("function")
        generator = self.eat("*")
        func_id = None
        if self.at_kind(lexer.IDENTIFIER):
            func_id = self.parse_identifier()
        elif not default_export:
            self.fail("function declaration requires a name")
        params = self.parse_params()
        body = self.parse_function_body(is_async, generator)
        return self.node(
            "FunctionDeclaration",
            start,
            id=func_id,
            params=params,
            body=body,
            isAsync=is_async,
            generator=generator,
        )

    def parse_function_expression(self) -> Node:
        start = self.peek().start
        is_async = False
        if self.at_contextual("async"):
            self.next()
            is_async = True
        self.expect("function")
        generator = self.eat("*")
        func_id = self.parse_identifier() if self.at_kind(lexer.IDENTIFIER) else None
        params = self.parse_params()
        body = self.parse_function_body(is_async, generator)
        return self.node(
            "FunctionExpression",
            start,
            id=func_id,
            params=params,
            body=body,
            isAsync=is_async,
            generator=generator,
        )

    def parse_params(self) -> list[Node]:
        self.expect("(")
        params: list[Node] = []
        while not self.at(")"):
            if self.at("..."):
                rest_start = self.next().start
                arg = self.parse_binding_target()
                params.append(self.node("RestElement", rest_start, argument=arg))
                break
            params.append(self.parse_binding_element())
            if not self.eat(","):
                break
        self.expect(")")
        return params

    def parse_binding_element(self) -> Node:
        start = self.peek().start
        target = self.parse_binding_target()
        if self.eat("="):
            default = self.parse_assignment()
            return self.node("AssignmentPattern", start, left=target, right=default)
        return target

    def parse_binding_target(self) -> Node:
        if self.at("["):
            return self.parse_array_pattern()
        if self.at("{"):
            return self.parse_object_pattern()
        return self.parse_identifier()

    def parse_array_pattern(self) -> Node:
        start = self.expect("[").start
        elements: list[Node | None] = []
        while not self.at("]"):
            if self.at(","):
                self.next()
                elements.append(None)
                continue
            if self.at("..."):
                rest_start = self.next().start
                arg = self.parse_binding_target()
                elements.append(self.node("RestElement", rest_start, argument=arg))
            else:
                elements.append(self.parse_binding_element())
            if not self.at("]"):
                self.expect(",")
        self.expect("]")
        return self.node("ArrayPattern", start, elements=elements)

    def parse_object_pattern(self) -> Node:
        start = self.expect("{").start
        properties: list[Node] = []
        while not self.at("}"):
            if self.at("..."):
                rest_start = self.next().start
                arg = self.parse_binding_target()
                properties.append(self.node("RestElement", rest_start, argument=arg))
            else:
                prop_start = self.peek().start
                computed = False
                if self.at("["):
                    self.next()
                    key = self.parse_assignment()
                    self.expect("]")
                    computed = True
                else:
                    key = self.parse_property_name()
                if computed or self.at(":"):
                    self.expect(":")
                    value = self.parse_binding_element()
                    shorthand = False
                else:
                    value = Node("Identifier", key.start, key.end, name=key.name)
                    if self.eat("="):
                        default = self.parse_assignment()
                        value = self.node(
                            "AssignmentPattern", key.start, left=value, right=default
                        )
                    shorthand = True
                properties.append(
                    self.node(
                        "Property",
                        prop_start,
                        key=key,
                        value=value,
                        computed=computed,
                        shorthand=shorthand,
                        propKind="init",
                    )
                )
            if not self.at("}"):
                self.expect(",")
        self.expect("}")
        return self.node("ObjectPattern", start, properties=properties)

    def parse_function_body(self, is_async: bool, generator: bool) -> Node:
        saved = (self.in_async, self.in_generator)
        self.in_async, self.in_generator = is_async, generator
        try:
            return self.parse_block()
        finally:
            self.in_async, self.in_generator = saved

    def parse_class_declaration(self, default_export: bool = False) -> Node:
        node = self.parse_class_common("ClassDeclaration", require_name=not default_export)
        return node

    def parse_class_common(self, kind: str, require_name: bool) -> Node:
        start = self.expect("class").start
        class_id = None
        if self.at_kind(lexer.IDENTIFIER):
            class_id = self.parse_identifier()
        elif require_name:
            self.fail("class declaration requires a name")
        super_class = None
        if self.eat("extends"):
            super_class = self.parse_lhs_expression()
        body = self.parse_class_body()
        return self.node(kind, start, id=class_id, superClass=super_class, body=body)

    def parse_class_body(self) -> Node:
        start = self.expect("{").start
        body = []
        while not self.at("}") and not self.at_kind(_EOF):
            if self.eat(";"):
                continue
            body.append(self.parse_method_definition())
        self.expect("}")
        return self.node("ClassBody", start, body=body)

    def parse_method_definition(self) -> Node:
        start = self.peek().start
        is_static = False
        if self.at("static") and self.peek(1).text != "(":
            self.next()
            is_static = True
        is_async = False
        generator = False
        kind = "method"
        if self.at_contextual("async") and self.peek(1).text not in ("(", "=") and not self.peek(1).newline_before:
            self.next()
            is_async = True
        if self.at("*"):
            self.next()
            generator = True
        if (
            not is_async
            and not generator
            and (self.at_contextual("get") or self.at_contextual("set"))
            and self.peek(1).text != "("
        ):
            kind = self.next().text
        computed = False
        if self.at("["):
            self.next()
            key = self.parse_assignment()
            self.expect("]")
            computed = True
        else:
            key = self.parse_property_name()
        if not self.at("("):
            self.fail("class fields require a later ECMAScript edition")
        if kind == "method" and not computed and key.kind == "Identifier" and key.name == "constructor":
            kind = "constructor"
        value = self.parse_method_function(is_async, generator, key.start)
        return self.node(
            "MethodDefinition",
            start,
            key=key,
            value=value,
            methodKind=kind,
            static=is_static,
            computed=computed,
        )

    def parse_method_function(self, is_async: bool, generator: bool, start: int) -> Node:
        params = self.parse_params()
        body = self.parse_function_body(is_async, generator)
        return self.node(
            "FunctionExpression",
            start,
            id=None,
            params=params,
            body=body,
            isAsync=is_async,
            generator=generator,
        )

    def parse_property_name(self) -> Node:
        tok = self.peek()
        if tok.kind in (lexer.IDENTIFIER, lexer.KEYWORD):
            self.next()
            return self.node("Identifier", tok.start, name=tok.text)
        if tok.kind == lexer.STRING:
            return self.parse_primary()
        if tok.kind in (lexer.NUMERIC, lexer.BIGINT):
            return self.parse_primary()
        self.fail(f"unexpected token {tok.text!r}", expected="property name")

    # -- imports / exports --

    def parse_import_declaration(self) -> Node:
        start = self.expect("import").start
        specifiers: list[Node] = []
        if self.at_kind(lexer.STRING):
            source = self.parse_string_literal()
            self.semicolon()
            return self.node("ImportDeclaration", start, specifiers=specifiers, source=source)
        if self.at_kind(lexer.IDENTIFIER):
            local = self.parse_identifier()
            specifiers.append(
                Node("ImportDefaultSpecifier", local.start, local.end, local=local)
            )
            if self.eat(","):
                self._parse_import_rest(specifiers)
        else:
            self._parse_import_rest(specifiers)
        if not self.at_contextual("from"):
            self.fail(f"unexpected token {self.peek().text!r}", expected="'from'")
        self.next()
        source = self.parse_string_literal()
        self.semicolon()
        return self.node("ImportDeclaration", start, specifiers=specifiers, source=source)

    def _parse_import_rest(self, specifiers: list[Node]) -> None:
        if self.at("*"):
            star_start = self.next().start
            if not self.at_contextual("as"):
                self.fail("expected 'as' after '*' in import")
            self.next()
            local = self.parse_identifier()
            specifiers.append(self.node("ImportNamespaceSpecifier", star_start, local=local))
            return
        self.expect("{")
        while not self.at("}"):
            imported = self.parse_module_export_name()
            if self.at_contextual("as"):
                self.next()
                local = self.parse_identifier()
            else:
                local = Node("Identifier", imported.start, imported.end, name=imported.name)
            specifiers.append(
                self.node("ImportSpecifier", imported.start, imported=imported, local=local)
            )
            if not self.at("}"):
                self.expect(",")
        self.expect("}")

    def parse_module_export_name(self) -> Node:
        tok = self.peek()
        if tok.kind in (lexer.IDENTIFIER, lexer.KEYWORD):
            self.next()
            return self.node("Identifier", tok.start, name=tok.text)
        self.fail(f"unexpected token {tok.text!r}", expected="import/export name")

    def parse_export_declaration(self) -> Node:
        start = self.expect("export").start
        if self.eat("default"):
            if self.at("function") or (
                self.at_contextual("async") and self.peek(1).text == "function"
            ):
                declaration = self.parse_function_declaration(default_export=True)
            elif self.at("class"):
                declaration = self.parse_class_declaration(default_export=True)
            else:
                declaration = self.parse_assignment()
                self.semicolon()
            return self.node("ExportDefaultDeclaration", start, declaration=declaration)
        if self.at("*"):
            self.next()
            exported = None
            if self.at_contextual("as"):
                self.next()
                exported = self.parse_identifier()
            if not self.at_contextual("from"):
                self.fail("expected 'from' in export * declaration")
            self.next()
            source = self.parse_string_literal()
            self.semicolon()
            return self.node("ExportAllDeclaration", start, exported=exported, source=source)
        if self.at("{"):
            self.next()
            specifiers = []
            while not self.at("}"):
                local = self.parse_module_export_name()
                exported = local
                if self.at_contextual("as"):
                    self.next()
                    exported = self.parse_module_export_name()
                else:
                    exported = Node("Identifier", local.start, local.end, name=local.name)
                specifiers.append(
                    self.node("ExportSpecifier", local.start, local=local, exported=exported)
                )
                if not self.at("}"):
                    self.expect(",")
            self.expect("}")
            source = None
            if self.at_contextual("from"):
                self.next()
                source = self.parse_string_literal()
            self.semicolon()
            return self.node(
                "ExportNamedDeclaration",
                start,
                declaration=None,
                specifiers=specifiers,
                source=source,
            )
        if (
            self.peek().text in ("var", "let", "const", "function", "class")
            and self.peek().kind == lexer.KEYWORD
        ) or (self.at_contextual("async") and self.peek(1).text == "function"):
            declaration = self.parse_statement()
            return self.node(
                "ExportNamedDeclaration",
                start,
                declaration=declaration,
                specifiers=[],
                source=None,
            )
        self.fail(f"unexpected token {self.peek().text!r} in export declaration")

    # -- expressions --

    def parse_expression(self, no_in: bool = False) -> Node:
        start = self.peek().start
        expr = self.parse_assignment(no_in=no_in)
        if self.at(","):
            expressions = [expr]
            while self.eat(","):
                expressions.append(self.parse_assignment(no_in=no_in))
            return self.node("SequenceExpression", start, expressions=expressions)
        return expr

    def parse_assignment(self, no_in: bool = False) -> Node:
        start = self.peek().start
        arrow = self.try_parse_arrow()
        if arrow is not None:
            return arrow
        if self.at("yield") and self.in_generator:
            return self.parse_yield()
        expr = self.parse_conditional(no_in)
        tok = self.peek()
        if tok.kind == lexer.PUNCTUATOR and tok.text in _ASSIGN_OPS:
            op = self.next().text
            left = self.to_pattern(expr) if op == "=" else self.check_assign_target(expr)
            right = self.parse_assignment(no_in=no_in)
            return self.node(
                "AssignmentExpression", start, left=left, right=right, operator=op
            )
        return expr

    def check_assign_target(self, expr: Node) -> Node:
        if expr.kind not in ("Identifier", "MemberExpression"):
            self.fail(f"invalid assignment target: {expr.kind}")
        return expr

    def parse_yield(self) -> Node:
        start = self.expect("yield").start
        delegate = self.eat("*")
        argument = None
        tok = self.peek()
        if not tok.newline_before and tok.text not in (")", "]", "}", ",", ";", ":") and tok.kind != _EOF:
            argument = self.parse_assignment()
        return self.node("YieldExpression", start, argument=argument, delegate=delegate)

    def parse_conditional(self, no_in: bool = False) -> Node:
        start = self.peek().start
        test = self.parse_binary(0, no_in)
        if self.at("?") and not self.at("?."):
            self.next()
            consequent = self.parse_assignment()
            self.expect(":")
            alternate = self.parse_assignment(no_in=no_in)
            return self.node(
                "ConditionalExpression",
                start,
                test=test,
                consequent=consequent,
                alternate=alternate,
            )
        return test

    def parse_binary(self, min_prec: int, no_in: bool) -> Node:
        start = self.peek().start
        left = self.parse_unary()
        while True:
            tok = self.peek()
            op = tok.text
            if op == "in" and no_in:
                break
            if tok.kind == lexer.PUNCTUATOR or (
                tok.kind == lexer.KEYWORD and op in ("in", "instanceof")
            ):
                prec = _BINOP_PREC.get(op)
            else:
                prec = None
            if prec is None or prec <= min_prec:
                break
            if op == "**" and left.kind in ("UnaryExpression", "AwaitExpression") and not left.get("parenthesized"):
                self.fail("unparenthesized unary expression cannot be left of '**'")
            self.next()
            # `**` is right-associative: allow equal precedence on the right.
            right = self.parse_binary(prec - 1 if op == "**" else prec, no_in)
            if op in ("&&", "||", "??"):
                self._check_nullish_mixing(op, left, right)
                left = self.node(
                    "LogicalExpression", start, left=left, right=right, operator=op
                )
            else:
                left = self.node(
                    "BinaryExpression", start, left=left, right=right, operator=op
                )
        return left

    def _check_nullish_mixing(self, op: str, left: Node, right: Node) -> None:
        for side in (left, right):
            if side.kind == "LogicalExpression" and not side.get("parenthesized"):
                if (op == "??") != (side.operator == "??") and {op, side.operator} & {"??"}:
                    self.fail("cannot mix '??' with '&&'/'||' without parentheses")

    def parse_unary(self) -> Node:
        tok = self.peek()
        if tok.text in _UNARY_OPS and tok.kind in (lexer.PUNCTUATOR, lexer.KEYWORD):
            start = self.next().start
            argument = self.parse_unary()
            return self.node(
                "UnaryExpression", start, argument=argument, operator=tok.text, prefix=True
            )
        if tok.text in ("++", "--") and tok.kind == lexer.PUNCTUATOR:
            start = self.next().start
            argument = self.parse_unary()
            self.check_assign_target(argument)
            return self.node(
                "UpdateExpression", start, argument=argument, operator=tok.text, prefix=True
            )
        if tok.text == "await" and tok.kind == lexer.KEYWORD:
            if not self.in_async:
                self.fail("'await' is only allowed inside async functions")
            start = self.next().start
            argument = self.parse_unary()
            return self.node("AwaitExpression", start, argument=argument)
        return self.parse_postfix()

    def parse_postfix(self) -> Node:
        start = self.peek().start
        expr = self.parse_lhs_expression()
        tok = self.peek()
        if tok.text in ("++", "--") and tok.kind == lexer.PUNCTUATOR and not tok.newline_before:
            self.next()
            self.check_assign_target(expr)
            return self.node(
                "UpdateExpression", start, argument=expr, operator=tok.text, prefix=False
            )
        return expr

    # -- left-hand-side expressions --

    def parse_lhs_expression(self) -> Node:
        start = self.peek().start
        if self.at("new"):
            expr = self.parse_new()
        else:
            expr = self.parse_primary()
        return self.parse_call_tail(expr, start, allow_call=True)

    def parse_new(self) -> Node:
        start = self.expect("new").start
        if self.at("."):
            self.next()
            meta = Node("Identifier", start, start + 3, name="new")
            prop = self.parse_identifier()
            return self.node("MetaProperty", start, meta=meta, property=prop)
        if self.at("new"):
            callee = self.parse_new()
        else:
            callee = self.parse_primary()
        callee = self.parse_member_tail(callee, start)
        arguments = self.parse_arguments() if self.at("(") else []
        result = self.node("NewExpression", start, callee=callee, arguments=arguments)
        return result

    def parse_member_tail(self, expr: Node, start: int) -> Node:
        # Member accesses only (no calls): the callee of `new`.
        while True:
            if self.at("."):
                self.next()
                prop = self.parse_property_identifier()
                expr = self.node(
                    "MemberExpression", start, object=expr, property=prop,
                    computed=False, optional=False,
                )
            elif self.at("["):
                self.next()
                prop = self.parse_expression()
                self.expect("]")
                expr = self.node(
                    "MemberExpression", start, object=expr, property=prop,
                    computed=True, optional=False,
                )
            elif self.at_template_start():
                quasi = self.parse_template_literal()
                expr = self.node("TaggedTemplateExpression", start, tag=expr, quasi=quasi)
            else:
                return expr

    def parse_call_tail(self, expr: Node, start: int, allow_call: bool) -> Node:
        chain = False
        while True:
            if self.at("?."):
                self.next()
                chain = True
                if self.at("("):
                    arguments = self.parse_arguments()
                    expr = self.node(
                        "CallExpression", start, callee=expr, arguments=arguments, optional=True
                    )
                elif self.at("["):
                    self.next()
                    prop = self.parse_expression()
                    self.expect("]")
                    expr = self.node(
                        "MemberExpression", start, object=expr, property=prop,
                        computed=True, optional=True,
                    )
                else:
                    prop = self.parse_property_identifier()
                    expr = self.node(
                        "MemberExpression", start, object=expr, property=prop,
                        computed=False, optional=True,
                    )
            elif self.at("."):
                self.next()
                prop = self.parse_property_identifier()
                expr = self.node(
                    "MemberExpression", start, object=expr, property=prop,
                    computed=False, optional=False,
                )
            elif self.at("["):
                self.next()
                prop = self.parse_expression()
                self.expect("]")
                expr = self.node(
                    "MemberExpression", start, object=expr, property=prop,
                    computed=True, optional=False,
                )
            elif allow_call and self.at("("):
                arguments = self.parse_arguments()
                expr = self.node(
                    "CallExpression", start, callee=expr, arguments=arguments, optional=False
                )
            elif self.at_template_start():
                quasi = self.parse_template_literal()
                expr = self.node("TaggedTemplateExpression", start, tag=expr, quasi=quasi)
            else:
                break
        if chain:
            expr = self.node("ChainExpression", start, expression=expr)
        return expr

    def parse_property_identifier(self) -> Node:
        tok = self.peek()
        if tok.kind in (lexer.IDENTIFIER, lexer.KEYWORD):
            self.next()
            return self.node("Identifier", tok.start, name=tok.text)
        self.fail(f"unexpected token {tok.text!r}", expected="property name")

    def parse_arguments(self) -> list[Node]:
        self.expect("(")
        args: list[Node] = []
        while not self.at(")"):
            if self.at("..."):
                spread_start = self.next().start
                arg = self.parse_assignment()
                args.append(self.node("SpreadElement", spread_start, argument=arg))
            else:
                args.append(self.parse_assignment())
            if not self.at(")"):
                self.expect(",")
        self.expect(")")
        return args

    # -- arrows --

    def try_parse_arrow(self) -> Node | None:
        tok = self.peek()
        if tok.kind == lexer.IDENTIFIER and tok.text == "async" and not self.peek(1).newline_before:
            nxt = self.peek(1)
            if nxt.kind == lexer.IDENTIFIER and self.peek(2).text == "=>":
                return self.parse_arrow(is_async=True)
            if nxt.text == "(" and self._paren_followed_by_arrow(self.pos + 1):
                return self.parse_arrow(is_async=True)
            return None
        if tok.kind == lexer.IDENTIFIER and self.peek(1).text == "=>":
            return self.parse_arrow(is_async=False)
        if tok.text == "(" and tok.kind == lexer.PUNCTUATOR and self._paren_followed_by_arrow(self.pos):
            return self.parse_arrow(is_async=False)
        return None

    def _paren_followed_by_arrow(self, open_pos: int) -> bool:
        depth = 0
        i = open_pos
        while i < len(self.tokens):
            tok = self.tokens[i]
            if tok.kind == lexer.PUNCTUATOR:
                if tok.text in ("(", "[", "{"):
                    depth += 1
                elif tok.text in (")", "]", "}"):
                    depth -= 1
                    if depth == 0:
                        nxt = self.tokens[i + 1] if i + 1 < len(self.tokens) else None
                        return nxt is not None and nxt.text == "=>"
            elif tok.kind == _EOF:
                return False
            i += 1
        return False

    def parse_arrow(self, is_async: bool) -> Node:
        start = self.peek().start
        if is_async:
            self.next()
        if self.at("("):
            params = self.parse_params()
        else:
            params = [self.parse_identifier()]
        self.expect("=>")
        saved = (self.in_async, self.in_generator)
        self.in_async, self.in_generator = is_async, False
        try:
            if self.at("{"):
                body = self.parse_block()
                expression = False
            else:
                body = self.parse_assignment()
                expression = True
        finally:
            self.in_async, self.in_generator = saved
        return self.node(
            "ArrowFunctionExpression",
            start,
            id=None,
            params=params,
            body=body,
            isAsync=is_async,
            expression=expression,
            generator=False,
        )

    # -- primaries --

    def parse_primary(self) -> Node:
        tok = self.peek()
        if tok.kind == lexer.IDENTIFIER:
            return self.parse_identifier()
        if tok.kind == lexer.NUMERIC:
            self.next()
            return self.node(
                "NumericLiteral", tok.start, raw=tok.text, value=_numeric_value(tok.text)
            )
        if tok.kind == lexer.BIGINT:
            self.next()
            return self.node(
                "BigIntLiteral", tok.start, raw=tok.text, value=int(tok.text[:-1], 0)
            )
        if tok.kind == lexer.STRING:
            return self.parse_string_literal()
        if tok.kind == lexer.REGEXP:
            self.next()
            body, _, flags = tok.text.rpartition("/")
            return self.node(
                "RegExpLiteral", tok.start, raw=tok.text, pattern=body[1:], flags=flags
            )
        if tok.kind == lexer.TEMPLATE:
            return self.parse_template_literal()
        if tok.kind == lexer.KEYWORD:
            if tok.text == "this":
                self.next()
                return self.node("ThisExpression", tok.start)
            if tok.text == "super":
                self.next()
                return self.node("Super", tok.start)
            if tok.text in ("true", "false"):
                self.next()
                return self.node(
                    "BooleanLiteral", tok.start, raw=tok.text, value=tok.text == "true"
                )
            if tok.text == "null":
                self.next()
                return self.node("NullLiteral", tok.start, raw="null", value=None)
            if tok.text == "function":
                return self.parse_function_expression()
            if tok.text == "class":
                return self.parse_class_common("ClassExpression", require_name=False)
            if tok.text == "new":
                return self.parse_new()
            if tok.text == "import":
                return self.parse_import_expression()
        if tok.text == "(" and tok.kind == lexer.PUNCTUATOR:
            self.next()
            expr = self.parse_expression()
            self.expect(")")
            expr._fields["parenthesized"] = True
            return expr
        if tok.text == "[" and tok.kind == lexer.PUNCTUATOR:
            return self.parse_array_literal()
        if tok.text == "{" and tok.kind == lexer.PUNCTUATOR:
            return self.parse_object_literal()
        if self.at_contextual("async") and self.peek(1).text == "function":
            return self.parse_function_expression()
        self.fail(f"unexpected token {tok.text or '<eof>'!r}", expected="an expression")

    def parse_identifier(self) -> Node:
        tok = self.peek()
        if tok.kind != lexer.IDENTIFIER:
            self.fail(f"unexpected token {tok.text or '<eof>'!r}", expected="an identifier")
        self.next()
        return self.node("Identifier", tok.start, name=tok.text)

    def parse_string_literal(self) -> Node:
        tok = self.peek()
        if tok.kind != lexer.STRING:
            self.fail(f"unexpected token {tok.text!r}", expected="a string literal")
        self.next()
        return self.node("StringLiteral", tok.start, raw=tok.text, value=tok.text[1:-1])

    def parse_template_literal(self) -> Node:
        start = self.peek().start
        quasis: list[Node] = []
        expressions: list[Node] = []
        tok = self.next()
        while True:
            has_hole = tok.text.endswith("${")
            raw = tok.text[1 : -2 if has_hole else -1]
            quasis.append(
                Node("TemplateElement", tok.start, tok.end, raw=raw, tail=not has_hole)
            )
            if not has_hole:
                break
            expressions.append(self.parse_expression())
            if not self.at_kind(lexer.TEMPLATE):
                self.fail("unterminated template literal")
            tok = self.next()
        return self.node("TemplateLiteral", start, quasis=quasis, expressions=expressions)

    def parse_import_expression(self) -> Node:
        start = self.expect("import").start
        if self.at("."):
            self.next()
            meta = Node("Identifier", start, start + 6, name="import")
            prop = self.parse_identifier()
            if prop.name != "meta":
                self.fail("expected 'meta' after 'import.'")
            return self.node("MetaProperty", start, meta=meta, property=prop)
        self.expect("(")
        source = self.parse_assignment()
        self.expect(")")
        return self.node("ImportExpression", start, source=source)

    def parse_array_literal(self) -> Node:
        start = self.expect("[").start
        elements: list[Node | None] = []
        while not self.at("]"):
            if self.at(","):
                self.next()
                elements.append(None)
                continue
            if self.at("..."):
                spread_start = self.next().start
                arg = self.parse_assignment()
                elements.append(self.node("SpreadElement", spread_start, argument=arg))
            else:
                elements.append(self.parse_assignment())
            if not self.at("]"):
                self.expect(",")
        self.expect("]")
        return self.node("ArrayExpression", start, elements=elements)

    def parse_object_literal(self) -> Node:
        start = self.expect("{").start
        properties: list[Node] = []
        while not self.at("}"):
            properties.append(self.parse_object_property())
            if not self.at("}"):
                self.expect(",")
        self.expect("}")
        return self.node("ObjectExpression", start, properties=properties)

    def parse_object_property(self) -> Node:
        start = self.peek().start
        if self.at("..."):
            self.next()
            arg = self.parse_assignment()
            return self.node("SpreadElement", start, argument=arg)
        is_async = False
        generator = False
        if (
            self.at_contextual("async")
            and self.peek(1).text not in (":", ",", "}", "(", "=")
            and not self.peek(1).newline_before
        ):
            self.next()
            is_async = True
        if self.at("*"):
            self.next()
            generator = True
        if (
            not is_async
            and not generator
            and (self.at_contextual("get") or self.at_contextual("set"))
            and self.peek(1).text not in (":", ",", "}", "(", "=")
        ):
            accessor = self.next().text
            key, computed = self.parse_property_key()
            value = self.parse_method_function(False, False, key.start)
            return self.node(
                "Property", start, key=key, value=value,
                computed=computed, shorthand=False, propKind=accessor, method=False,
            )
        key, computed = self.parse_property_key()
        if self.at("("):
            value = self.parse_method_function(is_async, generator, key.start)
            return self.node(
                "Property", start, key=key, value=value,
                computed=computed, shorthand=False, propKind="init", method=True,
            )
        if is_async or generator:
            self.fail("expected method after 'async'/'*' in object literal")
        if self.eat(":"):
            value = self.parse_assignment()
            return self.node(
                "Property", start, key=key, value=value,
                computed=computed, shorthand=False, propKind="init", method=False,
            )
        if computed:
            self.fail("computed property requires a value")
        if key.kind != "Identifier":
            self.fail("shorthand property requires an identifier")
        value = Node("Identifier", key.start, key.end, name=key.name)
        if self.eat("="):
            # Only valid if this object is later converted to a pattern.
            default = self.parse_assignment()
            value = self.node("AssignmentPattern", key.start, left=value, right=default)
        return self.node(
            "Property", start, key=key, value=value,
            computed=False, shorthand=True, propKind="init", method=False,
        )

    def parse_property_key(self) -> tuple[Node, bool]:
        if self.at("["):
            self.next()
            key = self.parse_assignment()
            self.expect("]")
            return key, True
        return self.parse_property_name(), False

    # -- expression-to-pattern conversion (destructuring assignment) --

    def to_pattern(self, expr: Node) -> Node:
        kind = expr.kind
        if kind in (
            "Identifier",
            "MemberExpression",
            "ObjectPattern",
            "ArrayPattern",
            "AssignmentPattern",
            "RestElement",
        ):
            return expr
        if kind == "ArrayExpression":
            elements = [
                None if el is None else self.to_pattern(el) for el in expr.elements
            ]
            return Node("ArrayPattern", expr.start, expr.end, elements=elements)
        if kind == "ObjectExpression":
            properties = []
            for prop in expr.properties:
                if prop.kind == "SpreadElement":
                    properties.append(
                        Node(
                            "RestElement", prop.start, prop.end,
                            argument=self.to_pattern(prop.argument),
                        )
                    )
                else:
                    converted = self.to_pattern(prop.value)
                    fields = dict(prop._fields)
                    fields["value"] = converted
                    properties.append(Node("Property", prop.start, prop.end, **fields))
            return Node("ObjectPattern", expr.start, expr.end, properties=properties)
        if kind == "SpreadElement":
            return Node(
                "RestElement", expr.start, expr.end, argument=self.to_pattern(expr.argument)
            )
        if kind == "AssignmentExpression" and expr.operator == "=":
            return Node(
                "AssignmentPattern", expr.start, expr.end,
                left=self.to_pattern(expr.left), right=expr.right,
            )
        self.fail(f"invalid assignment target: {kind}")


def _numeric_value(raw: str):
    if len(raw) > 1 and raw[0] == "0" and raw[1] in "xXoObB":
        return int(raw, 0)
    return float(raw)
