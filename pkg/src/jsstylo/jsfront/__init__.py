"""ECMAScript 2020 front-end: lexer, parser, dataflow extraction, transforms."""

from jsstylo.jsfront.lexer import LexError, Token, TokenStream, tokenize
from jsstylo.jsfront.jsast import Node, SyntaxTree, ast_from_json, ast_to_json, preorder_kinds
from jsstylo.jsfront.parser import ParseError, parse
from jsstylo.jsfront.dataflow import DataflowEdgeSet, dataflow_edges
from jsstylo.jsfront.transform import mangle, minify

__all__ = [
    "DataflowEdgeSet",
    "LexError",
    "Node",
    "ParseError",
    "SyntaxTree",
    "Token",
    "TokenStream",
    "ast_from_json",
    "ast_to_json",
    "dataflow_edges",
    "mangle",
    "minify",
    "parse",
    "preorder_kinds",
    "tokenize",
]
