"""Structure corpora: the bundled one and directories of ``.sr`` files."""
from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Union

from .core import FiniteSemiring
from .errors import UnknownBase
from .fileformat import parse_structures
from .ideals import all_ideals
from .semimodule import FiniteSemimodule, ideal_as_module, module_over_itself

Structure = Union[FiniteSemiring, FiniteSemimodule]


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    kind: str  # "semiring" | "semimodule"
    source: str
    structure: Structure


class Corpus:
    def __init__(self, entries: Iterable[CorpusEntry] = ()):
        self.entries: list[CorpusEntry] = []
        self._by_name: dict[str, CorpusEntry] = {}
        for e in entries:
            self.add(e)

    def add(self, entry: CorpusEntry) -> None:
        if entry.name in self._by_name:
            raise ValueError(f"duplicate corpus name {entry.name!r}")
        self._by_name[entry.name] = entry
        self.entries.append(entry)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def get(self, name: str) -> Structure:
        return self._by_name[name].structure

    @property
    def semirings(self) -> list[FiniteSemiring]:
        return [e.structure for e in self.entries if e.kind == "semiring"]

    @property
    def semimodules(self) -> list[FiniteSemimodule]:
        return [e.structure for e in self.entries if e.kind == "semimodule"]

    @property
    def structures(self) -> list[Structure]:
        return [e.structure for e in self.entries]


def _entry(X: Structure, source: str) -> CorpusEntry:
    kind = "semiring" if isinstance(X, FiniteSemiring) else "semimodule"
    return CorpusEntry(X.name, kind, source, X)


def derived_modules(S: FiniteSemiring) -> list[FiniteSemimodule]:
    """S over itself followed by every proper ideal of S as an S-semimodule."""
    mods = [module_over_itself(S)]
    mods += [ideal_as_module(S, I) for I in all_ideals(S) if I.bits != S.full.bits]
    return mods


def builtin_text() -> str:
    return resources.files("semiring_lab").joinpath("data/builtin.sr").read_text()


_BUILTIN: Corpus | None = None


def built_in_corpus() -> Corpus:
    """The bundled semirings and modules plus each semiring's derived modules."""
    global _BUILTIN
    if _BUILTIN is None:
        parsed = parse_structures(builtin_text())
        corpus = Corpus()
        for X in parsed:
            if isinstance(X, FiniteSemiring):
                corpus.add(_entry(X, "builtin"))
        for S in list(corpus.semirings):
            for M in derived_modules(S):
                corpus.add(_entry(M, "builtin:derived"))
        for X in parsed:
            if isinstance(X, FiniteSemimodule):
                corpus.add(_entry(X, "builtin"))
        _BUILTIN = corpus
    return _BUILTIN


def load_corpus_dir(path: str | Path) -> Corpus:
    """Load every ``*.sr`` file in ``path``; semimodules may name bases from any file."""
    files = sorted(Path(path).glob("*.sr"))
    bases: dict[str, FiniteSemiring] = {}
    pending = list(files)
    loaded: dict[Path, list] = {}
    while pending:
        retry = []
        for f in pending:
            try:
                found = parse_structures(f.read_text(), bases)
            except UnknownBase:
                retry.append(f)
                continue
            loaded[f] = found
            bases.update((X.name, X) for X in found if isinstance(X, FiniteSemiring))
        if len(retry) == len(pending):
            parse_structures(retry[0].read_text(), bases)  # re-raise with position
        pending = retry
    corpus = Corpus()
    for f in files:
        for X in loaded[f]:
            corpus.add(_entry(X, str(f)))
    return corpus


def load_corpus(spec: str) -> Corpus:
    return built_in_corpus() if spec == "builtin" else load_corpus_dir(spec)
