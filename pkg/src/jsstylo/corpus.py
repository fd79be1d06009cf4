"""Labeled JavaScript corpora: loading, validation, dedup, splitting.

On-disk format is JSON Lines, one record per line:
``{"id": str, "model": str, "task_id": int, "variant": str, "source": str}``.
Unknown extra fields are preserved on the sample but otherwise ignored.
A plain JSON array of such records is also accepted (the cross-check
dataset ships that way).
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, Mapping

from jsstylo.jsfront.lexer import LexError, tokenize
from jsstylo.jsfront.parser import ParseError, parse

VARIANTS = ("original", "minified", "mangled", "obfuscated", "deobfuscated", "ast", "jsir")

_WS_RE = re.compile(r"\s+")


class CorpusError(ValueError):
    """Malformed corpus data; carries the offending record index and field."""

    def __init__(self, message: str, record_index: int | None = None, field_name: str | None = None):
        where = []
        if record_index is not None:
            where.append(f"record {record_index}")
        if field_name is not None:
            where.append(f"field {field_name!r}")
        suffix = f" ({', '.join(where)})" if where else ""
        super().__init__(message + suffix)
        self.record_index = record_index
        self.field_name = field_name


@dataclass(frozen=True)
class CodeSample:
    id: str
    model_label: str
    task_id: int
    variant: str
    source: str
    extra: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if not self.source.strip():
            raise CorpusError("sample source is empty", field_name="source")
        if self.variant not in VARIANTS:
            raise CorpusError(f"unknown variant {self.variant!r}", field_name="variant")
        if self.task_id < 1:
            raise CorpusError(f"task_id must be >= 1, got {self.task_id}", field_name="task_id")


@dataclass(frozen=True)
class Corpus:
    samples: tuple[CodeSample, ...]

    @property
    def label_set(self) -> tuple[str, ...]:
        return tuple(sorted({s.model_label for s in self.samples}))

    def __len__(self) -> int:
        return len(self.samples)

    def __iter__(self) -> Iterator[CodeSample]:
        return iter(self.samples)

    def filter(self, labels: Iterable[str] | None = None, variant: str | None = None) -> "Corpus":
        wanted = set(labels) if labels is not None else None
        kept = tuple(
            s
            for s in self.samples
            if (wanted is None or s.model_label in wanted)
            and (variant is None or s.variant == variant)
        )
        return Corpus(kept)

    def by_label(self) -> dict[str, list[CodeSample]]:
        groups: dict[str, list[CodeSample]] = {}
        for sample in self.samples:
            groups.setdefault(sample.model_label, []).append(sample)
        return groups


@dataclass(frozen=True)
class SplitPair:
    train: Corpus
    valid: Corpus
    seed: int
    ratio: Fraction


_REQUIRED_FIELDS = (("id", str), ("model", str), ("task_id", int), ("variant", str), ("source", str))


def _record_to_sample(record: dict, index: int) -> CodeSample:
    for name, typ in _REQUIRED_FIELDS:
        if name not in record:
            raise CorpusError(f"missing field {name!r}", record_index=index, field_name=name)
        if not isinstance(record[name], typ) or (typ is int and isinstance(record[name], bool)):
            raise CorpusError(
                f"field {name!r} must be {typ.__name__}, got {type(record[name]).__name__}",
                record_index=index,
                field_name=name,
            )
    extra = {k: v for k, v in record.items() if k not in dict(_REQUIRED_FIELDS)}
    try:
        return CodeSample(
            id=record["id"],
            model_label=record["model"],
            task_id=record["task_id"],
            variant=record["variant"],
            source=record["source"],
            extra=extra,
        )
    except CorpusError as err:
        raise CorpusError(str(err), record_index=index) from None


def _iter_records(path: Path) -> Iterator[dict]:
    text = path.read_text(encoding="utf-8")
    stripped = text.lstrip()
    if stripped.startswith("["):
        data = json.loads(text)
        if not isinstance(data, list):
            raise CorpusError(f"{path}: expected a JSON array of records")
        yield from data
        return
    for lineno, line in enumerate(text.splitlines()):
        if not line.strip():
            continue
        try:
            yield json.loads(line)
        except json.JSONDecodeError as err:
            raise CorpusError(f"{path}: invalid JSON on line {lineno + 1}: {err}") from None


def _corpus_files(path: Path) -> list[Path]:
    if path.is_file():
        return [path]
    files = sorted(p for p in path.iterdir() if p.suffix in (".jsonl", ".json"))
    if not files:
        raise CorpusError(f"no .jsonl/.json files under {path}")
    return files


def load_corpus(path: str | Path, variant: str) -> Corpus:
    """Load all records of `variant` from a file or directory, in input order."""
    path = Path(path)
    if not path.exists():
        raise CorpusError(f"corpus path does not exist: {path}")
    if variant not in VARIANTS:
        raise CorpusError(f"unknown variant {variant!r}", field_name="variant")
    samples: list[CodeSample] = []
    for file in _corpus_files(path):
        for index, record in enumerate(_iter_records(file)):
            if not isinstance(record, dict):
                raise CorpusError("record is not a JSON object", record_index=index)
            if "variant" not in record:
                raise CorpusError("missing field 'variant'", record_index=index, field_name="variant")
            if record["variant"] != variant:
                continue
            samples.append(_record_to_sample(record, index))
    return Corpus(tuple(samples))


def save_corpus(corpus: Corpus, path: str | Path) -> None:
    """Write JSON Lines; source text round-trips byte-identically."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as fh:
        for sample in corpus:
            record = {
                "id": sample.id,
                "model": sample.model_label,
                "task_id": sample.task_id,
                "variant": sample.variant,
                "source": sample.source,
                **sample.extra,
            }
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")


def normalize_source(source: str) -> str:
    """Comment-blind, whitespace-collapsed normal form used for dedup.

    Token-based when the text lexes as JavaScript; raw whitespace collapse
    otherwise (ast/jsir variants are consumed as opaque text).
    """
    try:
        return " ".join(tok.text for tok in tokenize(source))
    except LexError:
        return _WS_RE.sub(" ", source.strip())


def deduplicate(corpus: Corpus) -> Corpus:
    """Keep the first occurrence of each normalized source."""
    seen: set[str] = set()
    kept: list[CodeSample] = []
    for sample in corpus:
        key = normalize_source(sample.source)
        if key in seen:
            continue
        seen.add(key)
        kept.append(sample)
    return Corpus(tuple(kept))


def syntax_check(sample: CodeSample) -> bool:
    """True iff the sample's source parses as an ES2020 module."""
    try:
        parse(sample.source)
        return True
    except ParseError:
        return False


def stratified_split(corpus: Corpus, ratio: Fraction | float | str = Fraction(4, 5), seed: int = 42) -> SplitPair:
    """Per-label seeded shuffle, then split; train gets round(ratio * n) per label.

    Deterministic for a fixed (corpus order, seed): labels are processed in
    lexicographic order against a single Mersenne-Twister stream seeded with
    `seed`, and rounding is half-up. Sample order within each part follows
    the input corpus order.
    """
    ratio = Fraction(str(ratio)) if not isinstance(ratio, Fraction) else ratio
    if not 0 < ratio < 1:
        raise ValueError(f"split ratio must be in (0, 1), got {ratio}")
    if not len(corpus):
        raise ValueError("cannot split an empty corpus")
    ids = [s.id for s in corpus]
    if len(set(ids)) != len(ids):
        raise ValueError("corpus has duplicate sample ids; split membership would be ambiguous")
    groups = corpus.by_label()
    for label in sorted(groups):
        if len(groups[label]) < 2:
            raise ValueError(f"label {label!r} has fewer than 2 samples")

    rng = random.Random(seed)
    train_ids: set[str] = set()
    for label in sorted(groups):
        samples = groups[label]
        order = list(range(len(samples)))
        rng.shuffle(order)
        n_train = int(ratio * len(samples) + Fraction(1, 2))  # round half-up
        for i in order[:n_train]:
            train_ids.add(samples[i].id)

    train = tuple(s for s in corpus if s.id in train_ids)
    valid = tuple(s for s in corpus if s.id not in train_ids)
    return SplitPair(Corpus(train), Corpus(valid), seed, ratio)
