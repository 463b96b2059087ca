"""The shipped corpus: named algebra files and construction descriptors with checked tags."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

from .algebra import AlgebraError, FiniteAlgebra, find_identity, is_commutative, is_square_dense
from .constructions import AmalgamResult
from .io import ParseError, load_instance
from .structure import characters, is_semisimple

CORPUS_ENV = "AMALGAM_CORPUS"
TAG_NAMES = ("commutative", "unital", "square-dense", "semisimple", "split")


class TagMismatch(AlgebraError):
    pass


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    algebra_file: Path
    tags: tuple


@dataclass(frozen=True)
class LoadedEntry:
    entry: CorpusEntry
    instance: object  # FiniteAlgebra or AmalgamResult

    @property
    def algebra(self) -> FiniteAlgebra:
        return self.instance.algebra if isinstance(self.instance, AmalgamResult) else self.instance


def corpus_dir() -> Path:
    env = os.environ.get(CORPUS_ENV)
    return Path(env) if env else Path(__file__).parent / "corpus"


def computed_tags(a: FiniteAlgebra) -> tuple:
    flags = {
        "commutative": bool(is_commutative(a)),
        "unital": find_identity(a) is not None,
        "square-dense": is_square_dense(a),
        "semisimple": is_semisimple(a),
        "split": characters(a).complete,
    }
    return tuple(t for t in TAG_NAMES if flags[t])


def read_manifest(directory: Path | None = None) -> list:
    """Entries listed in ``manifest.json``; an absent manifest means every ``*.json`` file, untagged."""
    directory = corpus_dir() if directory is None else Path(directory)
    manifest = directory / "manifest.json"
    if not manifest.exists():
        if not directory.is_dir():
            return []
        return [CorpusEntry(p.stem, p, ()) for p in sorted(directory.glob("*.json"))]
    try:
        doc = json.loads(manifest.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno, str(manifest)) from None
    return [
        CorpusEntry(item["name"], directory / item["file"], tuple(item.get("tags", ())))
        for item in doc.get("entries", [])
    ]


def load_entry(entry: CorpusEntry, check_tags: bool = True) -> LoadedEntry:
    inst = load_instance(entry.algebra_file)
    loaded = LoadedEntry(entry, inst)
    if check_tags and entry.tags is not None:
        unknown = set(entry.tags) - set(TAG_NAMES)
        if unknown:
            raise TagMismatch(f"{entry.name}: unknown tags {sorted(unknown)}")
        actual = computed_tags(loaded.algebra)
        if set(actual) != set(entry.tags):
            raise TagMismatch(f"{entry.name}: declared tags {sorted(entry.tags)}, computed {sorted(actual)}")
    return loaded


def load_corpus(directory: Path | None = None, check_tags: bool = True) -> tuple:
    """Returns (loaded entries, errors) where errors is a list of (name, message)."""
    loaded, errors = [], []
    for entry in read_manifest(directory):
        try:
            loaded.append(load_entry(entry, check_tags))
        except (AlgebraError, ParseError) as e:
            errors.append((entry.name, f"{type(e).__name__}: {e}"))
    return loaded, errors
