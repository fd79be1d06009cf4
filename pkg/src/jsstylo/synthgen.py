"""Deterministic generator of style-controlled JavaScript demo corpora.

Each model label gets a stable style profile (naming convention,
declaration and function habits, loop/async/error idioms, quote and
semicolon choices, small signature quirks) derived from the label text.
Each task id selects a bundle of code fragments over rotating domain
nouns, and repeats re-render the same bundle with within-profile noise,
so repeated generations are similar but not identical, and different
models solve the same task in systematically different styles.

Every generated program is a valid ES2020 module (parse-checked).
The generator exists so the pipeline, the property suites, and the
desk-scale experiments can run without downloading the full dataset;
it makes no claim of reproducing real model fingerprints.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from jsstylo.corpus import CodeSample, Corpus
from jsstylo.jsfront.parser import parse

DEFAULT_MODELS = (
    "claude-3.5-haiku",
    "codestral-2501",
    "deepseek-v3.1",
    "gemini-2.5-flash-lite",
    "gemini-2.5-pro",
    "gpt-4.1",
    "gpt-4o",
    "gpt-4o-mini",
    "gpt-5-mini",
    "gpt-5-nano",
    "gpt-oss-120b",
    "grok-3-mini",
    "kimi-k2",
    "llama-3.3-70b",
    "llama-4-scout",
    "ministral-8b",
    "mistral-small-3.2",
    "phi-4",
    "qwen-2.5-coder-32b",
    "qwen-3-32b",
)

_NOUNS = [
    ("user", "users"), ("order", "orders"), ("item", "items"), ("event", "events"),
    ("post", "posts"), ("job", "jobs"), ("session", "sessions"), ("product", "products"),
    ("message", "messages"), ("ticket", "tickets"), ("invoice", "invoices"),
    ("report", "reports"), ("account", "accounts"), ("task", "tasks"), ("record", "records"),
]

_VERBS = ["handle", "process", "run", "build", "compute", "resolve", "prepare", "apply"]


@dataclass(frozen=True)
class Preference:
    """A model's soft preference over style options."""

    options: tuple
    weights: tuple[float, ...]

    def draw(self, rng: random.Random):
        return rng.choices(self.options, weights=self.weights)[0]


def _pref(rng: random.Random, options, lo: float = 0.4, hi: float = 0.75) -> Preference:
    main = rng.randrange(len(options))
    p = rng.uniform(lo, hi)
    rest = (1.0 - p) / (len(options) - 1)
    return Preference(tuple(options), tuple(p if i == main else rest for i in range(len(options))))


@dataclass(frozen=True)
class StyleProfile:
    """Soft stylistic preferences; every render samples from these, so a
    model's outputs vary around its habits instead of repeating them."""

    model: str
    naming: Preference  # camel | snake | short | verbose
    decl: Preference  # const | let
    fn_style: Preference  # arrow | function
    quote: Preference
    semicolons: Preference
    awaiting: Preference  # await | then
    loop: Preference  # of | each | classic | fn
    template: Preference
    nullish: Preference
    log_style: Preference  # log | info | none
    error_style: Preference  # try | throw
    verbs: Preference
    export_default: Preference
    early_return: Preference
    comment_mean: float


def profile_for(model: str) -> StyleProfile:
    """Stable style profile derived from the model label."""
    rng = random.Random(f"profile:{model}")
    return StyleProfile(
        model=model,
        naming=_pref(rng, ["camel", "snake", "short", "verbose"], 0.55, 0.9),
        decl=_pref(rng, ["const", "let"], 0.55, 0.9),
        fn_style=_pref(rng, ["arrow", "function"], 0.5, 0.85),
        quote=_pref(rng, ["'", '"'], 0.7, 0.95),
        semicolons=_pref(rng, [True, False], 0.75, 0.97),
        awaiting=_pref(rng, ["await", "then"], 0.55, 0.9),
        loop=_pref(rng, ["of", "each", "classic", "fn"], 0.45, 0.8),
        template=_pref(rng, [True, False], 0.5, 0.85),
        nullish=_pref(rng, [True, False], 0.5, 0.85),
        log_style=_pref(rng, ["log", "info", "none"], 0.5, 0.85),
        error_style=_pref(rng, ["try", "throw"], 0.55, 0.85),
        verbs=_pref(rng, _VERBS, 0.4, 0.7),
        export_default=_pref(rng, [True, False], 0.55, 0.85),
        early_return=_pref(rng, [True, False], 0.5, 0.85),
        comment_mean=rng.uniform(0.0, 0.35),
    )


class _Writer:
    """Renders style-dependent surface forms for one program.

    Program-level habits (naming, quotes, semicolons) are drawn once per
    program; statement-level habits are drawn per use.
    """

    def __init__(self, profile: StyleProfile, rng: random.Random):
        self.p = profile
        self.rng = rng
        self.naming = profile.naming.draw(rng)
        self.quote = profile.quote.draw(rng)
        self.semicolons = profile.semicolons.draw(rng)
        self.helper_verb = profile.verbs.draw(rng)
        self.comment_p = max(0.0, rng.gauss(profile.comment_mean, 0.1))
        self._module_names: set[str] = set()

    def unique(self, name: str) -> str:
        """Deduplicate module-level names (short naming collapses words)."""
        if name not in self._module_names:
            self._module_names.add(name)
            return name
        n = 2
        while f"{name}{n}" in self._module_names:
            n += 1
        self._module_names.add(f"{name}{n}")
        return f"{name}{n}"

    def name(self, *words: str) -> str:
        words = tuple(w.lower() for w in words)
        style = self.naming
        if style == "snake":
            return "_".join(words)
        if style == "short":
            if len(words) == 1:
                return words[0][:4] if len(words[0]) > 4 else words[0]
            return words[0][:3] + "".join(w[0].upper() for w in words[1:])
        if style == "verbose":
            words = words + ("value",) if len(words) == 1 else words
        return words[0] + "".join(w.capitalize() for w in words[1:])

    def decl(self) -> str:
        return self.p.decl.draw(self.rng)

    def semi(self) -> str:
        return ";" if self.semicolons else ""

    def str_lit(self, text: str) -> str:
        return f"{self.quote}{text}{self.quote}"

    def tmpl(self, prefix: str, expr: str, suffix: str = "") -> str:
        if self.p.template.draw(self.rng):
            return f"`{prefix}${{{expr}}}{suffix}`"
        parts = [self.str_lit(prefix), expr]
        if suffix:
            parts.append(self.str_lit(suffix))
        return " + ".join(parts)

    def log(self, expr: str) -> list[str]:
        style = self.p.log_style.draw(self.rng)
        if style == "none":
            return []
        return [f"console.{style}({expr}){self.semi()}"]

    def comment(self, text: str) -> list[str]:
        return [f"// {text}"] if self.rng.random() < self.comment_p else []

    def fn(self, name: str, params: list[str], body: list[str], is_async: bool = False) -> list[str]:
        param_list = ", ".join(params)
        indented = ["  " + line for line in body]
        if self.p.fn_style.draw(self.rng) == "arrow":
            head = f"{self.decl()} {name} = "
            head += "async " if is_async else ""
            head += f"({param_list}) => {{"
            return [head, *indented, "}" + self.semi()]
        head = ("async " if is_async else "") + f"function {name}({param_list}) {{"
        return [head, *indented, "}"]

    def loop(self, var: str, iterable: str, body: list[str]) -> list[str]:
        kind = self.p.loop.draw(self.rng)
        indented = ["  " + line for line in body]
        if kind == "of":
            return [f"for (const {var} of {iterable}) {{", *indented, "}"]
        if kind == "each":
            return [f"{iterable}.forEach(({var}) => {{", *indented, "})" + self.semi()]
        if kind == "classic":
            i = self.name("i")
            return [
                f"for (let {i} = 0; {i} < {iterable}.length; {i}++) {{",
                f"  const {var} = {iterable}[{i}]{self.semi()}",
                *indented,
                "}",
            ]
        return [f"{iterable}.map(({var}) => {{", *indented, f"  return {var}{self.semi()}", "})" + self.semi()]

    def fallback(self, expr: str, default: str) -> str:
        if self.p.nullish.draw(self.rng):
            return f"{expr} ?? {default}"
        return f"{expr} === undefined ? {default} : {expr}"


@dataclass(frozen=True)
class _TaskContext:
    noun: str
    nouns: str
    fields: tuple[str, ...]
    limit: int
    fragments: tuple[str, ...]


def _task_context(task_id: int) -> _TaskContext:
    rng = random.Random(f"task:{task_id}")
    noun, nouns = _NOUNS[task_id % len(_NOUNS)]
    pool = ["validate", "transform", "aggregate", "format", "cache", "retry",
            "parse", "paginate", "stats", "service", "idgen", "filter"]
    count = rng.choice([3, 4, 4, 5])
    fragments = tuple(rng.sample(pool, count))
    fields = tuple(rng.sample(["name", "status", "amount", "count", "kind", "score", "owner"], 3))
    return _TaskContext(noun, nouns, ("id",) + fields, rng.randrange(5, 60), fragments)


def _frag_validate(w: _Writer, ctx: _TaskContext) -> tuple[str, list[str]]:
    fn_name = w.unique(w.name(w.helper_verb, "valid", ctx.noun) if w.rng.random() < 0.4 else w.name("is", "valid", ctx.noun))
    arg = w.name(ctx.noun)
    body = [*w.comment(f"reject malformed {ctx.noun} records")]
    if w.p.early_return.draw(w.rng):
        body += [
            f"if (!{arg} || typeof {arg}.id !== {w.str_lit('string')}) {{",
            f"  return false{w.semi()}",
            "}",
        ]
        checks = " && ".join(f"{arg}.{f} !== undefined" for f in ctx.fields[1:])
        body.append(f"return {checks}{w.semi()}")
    else:
        checks = " && ".join(
            [f"Boolean({arg})", f"typeof {arg}.id === {w.str_lit('string')}"]
            + [f"{arg}.{f} !== undefined" for f in ctx.fields[1:]]
        )
        body.append(f"return {checks}{w.semi()}")
    return fn_name, w.fn(fn_name, [arg], body)


def _frag_transform(w: _Writer, ctx: _TaskContext) -> tuple[str, list[str]]:
    fn_name = w.unique(w.name(w.helper_verb, ctx.noun))
    arg = w.name("raw")
    f1, f2 = ctx.fields[1], ctx.fields[2]
    out = w.name("shaped", ctx.noun) if w.rng.random() < 0.5 else w.name("result")
    body = [
        f"{w.decl()} {out} = {{",
        f"  id: {arg}.id,",
        f"  {f1}: {w.fallback(f'{arg}.{f1}', w.str_lit('unknown'))},",
        f"  {f2}: Number({w.fallback(f'{arg}.{f2}', '0')}),",
        f"  label: {w.tmpl(ctx.noun + '-', arg + '.id')},",
        "}" + w.semi(),
        f"return {out}{w.semi()}",
    ]
    return fn_name, w.fn(fn_name, [arg], body)


def _frag_aggregate(w: _Writer, ctx: _TaskContext) -> tuple[str, list[str]]:
    fn_name = w.unique(w.name("total", ctx.nouns) if w.rng.random() < 0.5 else w.name("sum", "by", ctx.fields[2]))
    arg = w.name(ctx.nouns)
    field = ctx.fields[2]
    total = w.name("total")
    var = w.name(ctx.noun)
    if w.rng.random() < 0.35:
        body = [
            f"return {arg}.reduce(({total}, {var}) => {total} + ({w.fallback(f'{var}.{field}', '0')}), 0){w.semi()}"
        ]
    else:
        body = [
            f"let {total} = 0{w.semi()}",
            *w.loop(var, arg, [f"{total} += {w.fallback(f'{var}.{field}', '0')}{w.semi()}"]),
            f"return {total}{w.semi()}",
        ]
    return fn_name, w.fn(fn_name, [arg], body)


def _frag_format(w: _Writer, ctx: _TaskContext) -> tuple[str, list[str]]:
    fn_name = w.unique(w.name("format", ctx.noun))
    arg = w.name(ctx.noun)
    f1 = ctx.fields[1]
    body = [
        *w.comment("human readable one-liner"),
        f"return {w.tmpl('', arg + '.id', ' [')} + String({arg}.{f1}) + {w.str_lit(']')}{w.semi()}",
    ]
    return fn_name, w.fn(fn_name, [arg], body)


def _frag_cache(w: _Writer, ctx: _TaskContext) -> tuple[str, list[str]]:
    store = w.unique(w.name(ctx.noun, "cache"))
    fn_name = w.unique(w.name("remember", ctx.noun))
    key, value, ttl = w.name("key"), w.name("value"), w.name("ttl", "ms")
    entry = w.name("entry")
    lines = [
        f"{w.decl()} {store} = new Map(){w.semi()}",
        *w.fn(
            fn_name,
            [key, value, ttl],
            [
                f"{w.decl()} {entry} = {{ {value}, expires: Date.now() + {ttl} }}{w.semi()}",
                f"{store}.set({key}, {entry}){w.semi()}",
                f"return {entry}{w.semi()}",
            ],
        ),
    ]
    return fn_name, lines


def _frag_retry(w: _Writer, ctx: _TaskContext) -> tuple[str, list[str]]:
    fn_name = w.unique(w.name("with", "retries"))
    op, attempts, limit = w.name("op"), w.name("attempt"), w.name("max", "tries")
    err = w.name("err")
    if w.p.awaiting.draw(w.rng) == "await":
        body = [
            f"for (let {attempts} = 0; {attempts} < {limit}; {attempts}++) {{",
            "  try {",
            f"    return await {op}(){w.semi()}",
            f"  }} catch ({err}) {{",
            *[f"    {line}" for line in w.log(w.tmpl("retry ", attempts))],
            "  }",
            "}",
            f"throw new Error({w.str_lit('all retries failed')}){w.semi()}",
        ]
        return fn_name, w.fn(fn_name, [op, limit], body, is_async=True)
    body = [
        f"return {op}().catch(({err}) => {{",
        f"  if ({limit} <= 1) {{",
        f"    throw {err}{w.semi()}",
        "  }",
        f"  return {fn_name}({op}, {limit} - 1){w.semi()}",
        "})" + w.semi(),
    ]
    return fn_name, w.fn(fn_name, [op, limit], body)


def _frag_parse(w: _Writer, ctx: _TaskContext) -> tuple[str, list[str]]:
    fn_name = w.unique(w.name("parse", ctx.nouns))
    text, line, parts = w.name("text"), w.name("line"), w.name("parts")
    out = w.name("parsed")
    body = [
        f"{w.decl()} {out} = []{w.semi()}",
        *w.loop(
            line,
            f"{text}.split({w.str_lit(chr(92) + 'n')})",
            [
                f"{w.decl()} {parts} = {line}.split({w.str_lit(',')}){w.semi()}",
                f"if ({parts}.length >= 2) {{",
                f"  {out}.push({{ id: {parts}[0], {ctx.fields[1]}: {parts}[1] }}){w.semi()}",
                "}",
            ],
        ),
        f"return {out}{w.semi()}",
    ]
    return fn_name, w.fn(fn_name, [text], body)


def _frag_paginate(w: _Writer, ctx: _TaskContext) -> tuple[str, list[str]]:
    fn_name = w.unique(w.name("paginate", ctx.nouns))
    arg, page, size = w.name(ctx.nouns), w.name("page"), w.name("size")
    start = w.name("start")
    body = [
        f"{w.decl()} {start} = ({page} - 1) * {size}{w.semi()}",
        f"return {{",
        f"  rows: {arg}.slice({start}, {start} + {size}),",
        f"  page: {page},",
        f"  total: {arg}.length,",
        "}" + w.semi(),
    ]
    return fn_name, w.fn(fn_name, [arg, page, size], body)


def _frag_stats(w: _Writer, ctx: _TaskContext) -> tuple[str, list[str]]:
    fn_name = w.unique(w.name(ctx.noun, "stats"))
    arg = w.name("values")
    lo, hi = w.name("low"), w.name("high")
    v = w.name("v")
    body = [
        f"if ({arg}.length === 0) {{",
        f"  return {{ {lo}: 0, {hi}: 0 }}{w.semi()}",
        "}",
        f"let {lo} = {arg}[0]{w.semi()}",
        f"let {hi} = {arg}[0]{w.semi()}",
        *w.loop(
            v,
            arg,
            [
                f"if ({v} < {lo}) {{ {lo} = {v}{w.semi()} }}",
                f"if ({v} > {hi}) {{ {hi} = {v}{w.semi()} }}",
            ],
        ),
        f"return {{ {lo}, {hi}, span: {hi} - {lo} }}{w.semi()}",
    ]
    return fn_name, w.fn(fn_name, [arg], body)


def _frag_service(w: _Writer, ctx: _TaskContext) -> tuple[str, list[str]]:
    cls = w.unique(ctx.noun.capitalize() + "Store")
    store, item = w.name("entries"), w.name(ctx.noun)
    key = w.name("key")
    lines = [
        f"class {cls} {{",
        "  constructor() {",
        f"    this.{store} = new Map(){w.semi()}",
        "  }",
        f"  add({item}) {{",
        f"    this.{store}.set({item}.id, {item}){w.semi()}",
        f"    return this.{store}.size{w.semi()}",
        "  }",
        f"  find({key}) {{",
        f"    return {w.fallback(f'this.{store}.get({key})', 'null')}{w.semi()}",
        "  }",
        "}",
    ]
    return cls, lines


def _frag_idgen(w: _Writer, ctx: _TaskContext) -> tuple[str, list[str]]:
    counter = w.unique(w.name("next", "id"))
    fn_name = w.unique(w.name("make", ctx.noun, "id"))
    lines = [
        f"let {counter} = {w.rng.randrange(1, 5000)}{w.semi()}",
        *w.fn(
            fn_name,
            [],
            [
                f"{counter} += 1{w.semi()}",
                f"return {w.tmpl(ctx.noun + '-', counter)}{w.semi()}",
            ],
        ),
    ]
    return fn_name, lines


def _frag_filter(w: _Writer, ctx: _TaskContext) -> tuple[str, list[str]]:
    fn_name = w.unique(w.name("active", ctx.nouns) if w.rng.random() < 0.5 else w.name("keep", "valid"))
    arg = w.name(ctx.nouns)
    var = w.name(ctx.noun)
    field = ctx.fields[1]
    if w.rng.random() < 0.5:
        body = [f"return {arg}.filter(({var}) => {var}.{field} !== {w.str_lit('closed')}){w.semi()}"]
    else:
        out = w.name("kept")
        body = [
            f"{w.decl()} {out} = []{w.semi()}",
            *w.loop(
                var,
                arg,
                [
                    f"if ({var}.{field} !== {w.str_lit('closed')}) {{",
                    f"  {out}.push({var}){w.semi()}",
                    "}",
                ],
            ),
            f"return {out}{w.semi()}",
        ]
    return fn_name, w.fn(fn_name, [arg], body)


_FRAGMENTS = {
    "validate": _frag_validate,
    "transform": _frag_transform,
    "aggregate": _frag_aggregate,
    "format": _frag_format,
    "cache": _frag_cache,
    "retry": _frag_retry,
    "parse": _frag_parse,
    "paginate": _frag_paginate,
    "stats": _frag_stats,
    "service": _frag_service,
    "idgen": _frag_idgen,
    "filter": _frag_filter,
}


def generate_program(model: str, task_id: int, repeat: int, seed: int = 42) -> str:
    """One deterministic program for (model, task, repeat)."""
    profile = profile_for(model)
    rng = random.Random(f"{seed}:{model}:{task_id}:{repeat}")
    w = _Writer(profile, rng)
    ctx = _task_context(task_id)

    chunks: list[str] = []
    if rng.random() < 0.35:
        w.unique("createHash")
        chunks.append(f"import {{ createHash }} from {w.str_lit('node:crypto')}{w.semi()}")
        chunks.append("")

    exported: list[str] = []
    for frag_key in ctx.fragments:
        name, lines = _FRAGMENTS[frag_key](w, ctx)
        exported.append(name)
        chunks.extend(lines)
        chunks.append("")

    entry = w.unique(w.name(w.helper_verb, ctx.nouns))
    arg = w.name("input")
    entry_body = [
        *w.log(w.str_lit(f"{ctx.nouns} start")),
        f"{w.decl()} {w.name('size')} = Array.isArray({arg}) ? {arg}.length : 0{w.semi()}",
        f"return {{ ok: {w.name('size')} <= {ctx.limit}, used: [{', '.join(exported)}].length }}{w.semi()}",
    ]
    if profile.error_style.draw(rng) == "try" and rng.random() < 0.55:
        entry_body = [
            "try {",
            *["  " + line for line in entry_body],
            f"}} catch ({w.name('err')}) {{",
            f"  return {{ ok: false }}{w.semi()}",
            "}",
        ]
    chunks.extend(w.fn(entry, [arg], entry_body))
    chunks.append("")
    if profile.export_default.draw(rng):
        chunks.append(f"export default {entry}{w.semi()}")
    else:
        chunks.append(f"export {{ {entry} }}{w.semi()}")

    return "\n".join(chunks) + "\n"


def make_corpus(
    models: list[str] | tuple[str, ...] = DEFAULT_MODELS[:5],
    n_tasks: int = 25,
    repeats: int = 10,
    seed: int = 42,
    variant: str = "original",
) -> Corpus:
    """Deterministic labeled corpus; every sample parse-checked."""
    samples = []
    for model in models:
        for task_id in range(1, n_tasks + 1):
            for repeat in range(repeats):
                source = generate_program(model, task_id, repeat, seed)
                parse(source)  # generator bug guard: never ship invalid JS
                samples.append(
                    CodeSample(
                        id=f"{model}/t{task_id:03d}/r{repeat:02d}",
                        model_label=model,
                        task_id=task_id,
                        variant=variant,
                        source=source,
                    )
                )
    return Corpus(tuple(samples))
