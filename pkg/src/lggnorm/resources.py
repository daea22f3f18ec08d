"""Access to the bundled dictionaries, grammars and sample corpora.

The asset root defaults to the data shipped inside the package and can
be overridden with the ``LGGNORM_ASSETS`` environment variable.  When a
grammar directory is loaded, graphs referenced as subgraphs by other
graphs are treated as helpers: only the remaining root graphs are
applied to text, in (file name, in-file) order — which is also the
default grammar priority.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from importlib import resources as importlib_resources
from pathlib import Path

from .classify import Resources, Thresholds
from .fst import DEFAULT_MAX_STATES, Fst, compile_graph
from .grammar import GraphIR, load_grammar_file
from .lexicon import DictEntry, Lexicon, load_dictionary_file

ASSETS_ENV = "LGGNORM_ASSETS"


def asset_root() -> Path:
    override = os.environ.get(ASSETS_ENV)
    if override:
        return Path(override)
    return Path(importlib_resources.files("lggnorm") / "assets")


def dictionary_path(name: str) -> Path:
    return asset_root() / "dict" / name


def corpus_path(name: str) -> Path:
    return asset_root() / "corpora" / name


def grammar_dir() -> Path:
    return asset_root() / "grammars"


@dataclass
class GrammarLibrary:
    """All graphs from a directory plus the compiled root transducers."""

    graphs: list[GraphIR]
    fsts: list[Fst]

    @property
    def priority(self) -> tuple[str, ...]:
        return tuple(f.name for f in self.fsts)


def load_grammar_library(directory: Path | str | None = None,
                         max_states: int = DEFAULT_MAX_STATES) -> GrammarLibrary:
    directory = Path(directory) if directory is not None else grammar_dir()
    graphs: list[GraphIR] = []
    for path in sorted(directory.glob("*.lgg")):
        graphs.extend(load_grammar_file(path))
    called = {name for g in graphs for name in g.subgraph_names()}
    fsts = [
        compile_graph(g, graphs, max_states=max_states)
        for g in graphs if g.name not in called
    ]
    return GrammarLibrary(graphs, fsts)


def load_lexicon(paths=None) -> Lexicon:
    """Analyzability dictionary; defaults to core + loanword standards."""
    if not paths:
        paths = [dictionary_path("core.dic"), dictionary_path("loan.dic")]
    entries: list[DictEntry] = []
    for p in paths:
        entries.extend(load_dictionary_file(p).entries)
    return Lexicon(entries)


def load_classifier_resources(lexicon: Lexicon | None = None,
                              library: GrammarLibrary | None = None,
                              abbr_path=None, neo_path=None, loan_path=None,
                              thresholds: Thresholds | None = None) -> Resources:
    if lexicon is None:
        lexicon = load_lexicon()
    if library is None:
        library = load_grammar_library()
    abbr = load_dictionary_file(abbr_path or dictionary_path("abbr.dic")).entries
    neo = load_dictionary_file(neo_path or dictionary_path("neo.dic")).entries
    loan = load_dictionary_file(loan_path or dictionary_path("loan.dic")).entries
    return Resources(
        lexicon=lexicon,
        fsts=library.fsts,
        abbr_entries=abbr,
        neo_entries=neo,
        loan_entries=loan,
        thresholds=thresholds or Thresholds(),
    )
