"""Text instance grammar and JSON certificate files.

Instance file::

    leontief-lp v1
    m <int> n <int>
    b <m rationals>
    c <n rationals>
    A <nnz>
    <i> <j> <rational>      (nnz lines, 1-based indices)
    end

Lines starting with ``#`` and blank lines are ignored anywhere.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Iterator, Optional

from .certify import OUTCOME_TYPES, Optimal, Outcome, objective
from .model import Instance
from .numerics import format_rational, parse_rational

HEADER = "leontief-lp v1"
_INT = re.compile(r"[0-9]+\Z")


class ParseError(ValueError):
    """Malformed input, located at a 1-based line and column."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message = message
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


def _tokens(line: str) -> list[tuple[str, int]]:
    return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]


class _Lines:
    def __init__(self, text: str):
        self._it: Iterator[tuple[int, str]] = (
            (no, raw) for no, raw in enumerate(text.splitlines(), 1) if raw.strip() and not raw.lstrip().startswith("#")
        )
        self.last = 0

    def next(self, expecting: str) -> tuple[int, list[tuple[str, int]]]:
        for no, raw in self._it:
            self.last = no
            return no, _tokens(raw)
        raise ParseError(f"unexpected end of file, expected {expecting}", self.last + 1, 1)

    def rest(self):
        return list(self._it)


def _int(tok: tuple[str, int], line: int) -> int:
    text, col = tok
    if not _INT.match(text):
        raise ParseError(f"expected a nonnegative integer, got {text!r}", line, col)
    return int(text)


def _rational(tok: tuple[str, int], line: int) -> Fraction:
    text, col = tok
    try:
        return parse_rational(text)
    except ValueError:
        raise ParseError(f"malformed rational {text!r}", line, col) from None


def _keyword(toks, word: str, line: int) -> None:
    if not toks or toks[0][0] != word:
        got = toks[0] if toks else ("", 1)
        raise ParseError(f"expected {word!r}, got {got[0]!r}", line, got[1])


def _vector(toks, word: str, size: int, line: int) -> tuple[Fraction, ...]:
    _keyword(toks, word, line)
    values = toks[1:]
    if len(values) != size:
        col = values[size][1] if len(values) > size else (toks[-1][1] + len(toks[-1][0]))
        raise ParseError(f"{word} needs {size} entries, got {len(values)}", line, col)
    return tuple(_rational(t, line) for t in values)


def parse_instance(text: str) -> Instance:
    lines = _Lines(text)
    no, toks = lines.next("header")
    if " ".join(t for t, _ in toks) != HEADER:
        raise ParseError(f"expected header {HEADER!r}", no, 1)

    no, toks = lines.next("dimensions")
    if len(toks) != 4 or toks[0][0] != "m" or toks[2][0] != "n":
        raise ParseError("expected 'm <int> n <int>'", no, 1)
    m, n = _int(toks[1], no), _int(toks[3], no)

    no, toks = lines.next("b")
    b = _vector(toks, "b", m, no)
    no, toks = lines.next("c")
    c = _vector(toks, "c", n, no)

    no, toks = lines.next("A")
    _keyword(toks, "A", no)
    if len(toks) != 2:
        raise ParseError("expected 'A <nnz>'", no, 1)
    nnz = _int(toks[1], no)

    entries: dict[tuple[int, int], Fraction] = {}
    for _ in range(nnz):
        no, toks = lines.next("matrix entry")
        if len(toks) != 3:
            raise ParseError(f"expected '<i> <j> <rational>', got {len(toks)} fields", no, 1)
        i, j = _int(toks[0], no), _int(toks[1], no)
        if not 1 <= i <= m:
            raise ParseError(f"row index {i} outside 1..{m}", no, toks[0][1])
        if not 1 <= j <= n:
            raise ParseError(f"column index {j} outside 1..{n}", no, toks[1][1])
        if (i - 1, j - 1) in entries:
            raise ParseError(f"duplicate entry ({i}, {j})", no, 1)
        entries[(i - 1, j - 1)] = _rational(toks[2], no)

    no, toks = lines.next("end")
    if [t for t, _ in toks] != ["end"]:
        raise ParseError(f"expected 'end', got {toks[0][0]!r}", no, toks[0][1])
    trailing = lines.rest()
    if trailing:
        raise ParseError("content after 'end'", trailing[0][0], 1)
    return Instance(m, n, entries, b, c)


def emit_instance(inst: Instance, comment: Optional[str] = None) -> str:
    out = []
    if comment:
        out += [f"# {line}" for line in comment.splitlines()]
    out.append(HEADER)
    out.append(f"m {inst.m} n {inst.n}")
    out.append(" ".join(["b"] + [format_rational(v) for v in inst.b]))
    out.append(" ".join(["c"] + [format_rational(v) for v in inst.c]))
    # canonical order: column-major, then row
    items = sorted(inst.entries.items(), key=lambda kv: (kv[0][1], kv[0][0]))
    out.append(f"A {len(items)}")
    out += [f"{i + 1} {j + 1} {format_rational(v)}" for (i, j), v in items]
    out.append("end")
    return "\n".join(out) + "\n"


def read_instance(path) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


# certificates


def certificate_dict(outcome: Outcome, inst: Optional[Instance] = None) -> dict:
    data: dict = {"outcome": outcome.tag}
    for name in outcome.fields:
        data[name] = [format_rational(v) for v in getattr(outcome, name)]
    if inst is not None and isinstance(outcome, Optimal):
        data["objective"] = format_rational(objective(inst, outcome))
    return data


def emit_certificate(outcome: Outcome, inst: Optional[Instance] = None) -> str:
    return json.dumps(certificate_dict(outcome, inst), indent=2) + "\n"


def parse_certificate(text: str, inst: Optional[Instance] = None) -> Outcome:
    """Inverse of :func:`emit_certificate`.

    With ``inst`` given, vector lengths are checked against its dimensions.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(data, dict):
        raise ParseError("certificate must be a JSON object")
    tag = data.get("outcome")
    cls = OUTCOME_TYPES.get(tag)
    if cls is None:
        raise ParseError(f"unknown outcome {tag!r}")
    sizes = {"x": inst.n, "r": inst.n, "y": inst.m, "z": inst.m} if inst is not None else {}
    vectors = {}
    for name in cls.fields:
        raw = data.get(name)
        if not isinstance(raw, list) or not all(isinstance(v, str) for v in raw):
            raise ParseError(f"field {name!r} must be an array of rational strings")
        try:
            vec = tuple(parse_rational(v) for v in raw)
        except ValueError as exc:
            raise ParseError(f"field {name!r}: {exc}") from None
        if name in sizes and len(vec) != sizes[name]:
            raise ParseError(f"field {name!r} has length {len(vec)}, expected {sizes[name]}")
        vectors[name] = vec
    extra = set(data) - {"outcome", "objective", *cls.fields}
    if extra:
        raise ParseError(f"unexpected fields for {tag}: {', '.join(sorted(extra))}")
    return cls(**vectors)


def read_certificate(path, inst: Optional[Instance] = None) -> Outcome:
    with open(path, encoding="utf-8") as fh:
        return parse_certificate(fh.read(), inst)
