"""Corpus files: one ``name ; notation`` record per line, ``#`` starts a comment."""
from dataclasses import dataclass
from importlib import resources

from .diagram import parse
from .errors import RepknotError


@dataclass
class Diagnostic:
    line: int
    text: str
    message: str


def bundled_path():
    return resources.files("repknot") / "data" / "corpus.txt"


def parse_corpus(text):
    """Return ``(entries, diagnostics)``; bad lines are reported and skipped."""
    entries, diagnostics = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, sep, notation = line.partition(";")
        if not sep or not name.strip():
            diagnostics.append(Diagnostic(lineno, raw, "expected 'name ; notation'"))
            continue
        try:
            entries.append((name.strip(), parse(notation.strip())))
        except RepknotError as exc:
            diagnostics.append(Diagnostic(lineno, raw, f"{type(exc).__name__}: {exc}"))
    return entries, diagnostics


def load_corpus(path=None):
    """Parse a corpus file (the bundled one by default).

    Raises FileNotFoundError for a missing path.
    """
    if path is None:
        text = bundled_path().read_text(encoding="utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return parse_corpus(text)
