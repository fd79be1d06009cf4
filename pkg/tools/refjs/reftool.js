// Reference token/AST dumper backed by acorn (ES2020, module goal).
// Usage: node reftool.js <file.js>
// Prints JSON: {"tokens": [[kind, text], ...], "kinds": [nodeKind, ...]}
// or {"error": "..."} when acorn rejects the input.
//
// Token kinds and node kinds are normalized to the taxonomy used by the
// Python front-end so sequences compare 1:1:
//  - contextual words let/await/yield/static count as keywords,
//  - acorn's template token runs (` quasi ${ / } quasi `) collapse into
//    one TemplateLiteral token per quasi segment,
//  - Literal nodes split into Numeric/String/Boolean/Null/RegExp/BigInt.

"use strict";
const fs = require("fs");
const acorn = require("acorn");

const CONTEXTUAL_KEYWORDS = new Set(["let", "await", "yield", "static"]);

const VISITOR_KEYS = {
  Program: ["body"],
  ExpressionStatement: ["expression"],
  BlockStatement: ["body"],
  EmptyStatement: [],
  DebuggerStatement: [],
  ReturnStatement: ["argument"],
  IfStatement: ["test", "consequent", "alternate"],
  SwitchStatement: ["discriminant", "cases"],
  SwitchCase: ["test", "consequent"],
  ThrowStatement: ["argument"],
  TryStatement: ["block", "handler", "finalizer"],
  CatchClause: ["param", "body"],
  WhileStatement: ["test", "body"],
  DoWhileStatement: ["body", "test"],
  ForStatement: ["init", "test", "update", "body"],
  ForInStatement: ["left", "right", "body"],
  ForOfStatement: ["left", "right", "body"],
  BreakStatement: ["label"],
  ContinueStatement: ["label"],
  LabeledStatement: ["label", "body"],
  VariableDeclaration: ["declarations"],
  VariableDeclarator: ["id", "init"],
  FunctionDeclaration: ["id", "params", "body"],
  FunctionExpression: ["id", "params", "body"],
  ArrowFunctionExpression: ["id", "params", "body"],
  ClassDeclaration: ["id", "superClass", "body"],
  ClassExpression: ["id", "superClass", "body"],
  ClassBody: ["body"],
  MethodDefinition: ["key", "value"],
  ImportDeclaration: ["specifiers", "source"],
  ImportSpecifier: ["imported", "local"],
  ImportDefaultSpecifier: ["local"],
  ImportNamespaceSpecifier: ["local"],
  ImportExpression: ["source"],
  ExportNamedDeclaration: ["declaration", "specifiers", "source"],
  ExportSpecifier: ["local", "exported"],
  ExportDefaultDeclaration: ["declaration"],
  ExportAllDeclaration: ["exported", "source"],
  Identifier: [],
  PrivateIdentifier: [],
  Literal: [],
  TemplateLiteral: ["quasis", "expressions"],
  TemplateElement: [],
  TaggedTemplateExpression: ["tag", "quasi"],
  ArrayExpression: ["elements"],
  ObjectExpression: ["properties"],
  Property: ["key", "value"],
  SpreadElement: ["argument"],
  RestElement: ["argument"],
  ArrayPattern: ["elements"],
  ObjectPattern: ["properties"],
  AssignmentPattern: ["left", "right"],
  SequenceExpression: ["expressions"],
  UnaryExpression: ["argument"],
  UpdateExpression: ["argument"],
  BinaryExpression: ["left", "right"],
  LogicalExpression: ["left", "right"],
  AssignmentExpression: ["left", "right"],
  ConditionalExpression: ["test", "consequent", "alternate"],
  CallExpression: ["callee", "arguments"],
  NewExpression: ["callee", "arguments"],
  MemberExpression: ["object", "property"],
  ChainExpression: ["expression"],
  AwaitExpression: ["argument"],
  YieldExpression: ["argument"],
  ThisExpression: [],
  Super: [],
  MetaProperty: ["meta", "property"],
};

function literalKind(node) {
  if (node.regex) return "RegExpLiteral";
  if (node.bigint !== undefined) return "BigIntLiteral";
  const v = node.value;
  if (typeof v === "number") return "NumericLiteral";
  if (typeof v === "string") return "StringLiteral";
  if (typeof v === "boolean") return "BooleanLiteral";
  if (v === null) return "NullLiteral";
  return "Literal";
}

function walkKinds(node, out) {
  const kind = node.type === "Literal" ? literalKind(node) : node.type;
  out.push(kind);
  const keys = VISITOR_KEYS[node.type];
  if (keys === undefined) throw new Error("unhandled node type " + node.type);
  for (const key of keys) {
    const value = node[key];
    if (value == null) continue;
    if (Array.isArray(value)) {
      for (const item of value) {
        if (item != null) walkKinds(item, out);
      }
    } else {
      walkKinds(value, out);
    }
  }
}

function rawTokens(src) {
  const out = [];
  const tokenizer = acorn.tokenizer(src, { ecmaVersion: 2020, sourceType: "module" });
  while (true) {
    const tok = tokenizer.getToken();
    if (tok.type.label === "eof") break;
    out.push(tok);
  }
  return out;
}

function mapTokens(src, toks) {
  const out = [];
  const holes = []; // brace depth per open template hole
  let i = 0;
  while (i < toks.length) {
    const tok = toks[i];
    const label = tok.type.label;
    const text = src.slice(tok.start, tok.end);

    if (label === "`" || (label === "}" && holes.length && holes[holes.length - 1] === 0)) {
      // Collapse (` | }) [quasi] (${ | `) into one TemplateLiteral token.
      if (label === "}") holes.pop();
      const start = tok.start;
      i += 1;
      if (i < toks.length && toks[i].type.label === "template") i += 1;
      if (i >= toks.length) throw new Error("truncated template token run");
      const closer = toks[i];
      if (closer.type.label === "${") holes.push(0);
      else if (closer.type.label !== "`") throw new Error("unexpected template closer");
      out.push(["TemplateLiteral", src.slice(start, closer.end)]);
      i += 1;
      continue;
    }

    let kind;
    if (tok.type.keyword !== undefined && tok.type.keyword !== null) {
      kind = "Keyword";
    } else if (label === "name") {
      kind = CONTEXTUAL_KEYWORDS.has(text) ? "Keyword" : "Identifier";
    } else if (label === "num") {
      kind = text.endsWith("n") ? "BigIntLiteral" : "NumericLiteral";
    } else if (label === "string") {
      kind = "StringLiteral";
    } else if (label === "regexp") {
      kind = "RegExpLiteral";
    } else if (label === "privateId") {
      kind = "Identifier";
    } else {
      kind = "Punctuator";
      if (holes.length) {
        if (text === "{") holes[holes.length - 1] += 1;
        else if (text === "}") holes[holes.length - 1] -= 1;
      }
    }
    out.push([kind, text]);
    i += 1;
  }
  return out;
}

function analyze(src) {
  try {
    const tokens = mapTokens(src, rawTokens(src));
    const ast = acorn.parse(src, { ecmaVersion: 2020, sourceType: "module" });
    const kinds = [];
    walkKinds(ast, kinds);
    return { tokens: tokens, kinds: kinds };
  } catch (err) {
    return { error: String(err.message || err) };
  }
}

function main() {
  const arg = process.argv[2];
  if (arg === "--manifest") {
    // One result line per path listed in the manifest file.
    const manifest = fs.readFileSync(process.argv[3], "utf8");
    for (const line of manifest.split("\n")) {
      const path = line.trim();
      if (!path) continue;
      const src = fs.readFileSync(path, "utf8");
      process.stdout.write(JSON.stringify(analyze(src)) + "\n");
    }
    return;
  }
  const src = fs.readFileSync(arg === "-" ? 0 : arg, "utf8");
  process.stdout.write(JSON.stringify(analyze(src)) + "\n");
}

main();
