"""Line-oriented text format for semirings and semimodules.

::

    semiring <name>
    order <n>
    one <index>
    add-table          # n rows, row i column j = i + j
    mul-table          # n rows, row i column j = i * j
    end

    semimodule <name> over <semiring-name>
    order <m>
    add-table          # m rows
    action-table       # one row per scalar, m columns: s·x
    end

``#`` starts a comment. Element 0 is always the additive zero.
"""
from __future__ import annotations

from typing import Mapping, Union

from .bits import MAX_ORDER
from .core import FiniteSemiring, validate_semiring
from .errors import AxiomViolation, MalformedTable, ParseError, UnknownBase
from .semimodule import FiniteSemimodule, validate_semimodule

Structure = Union[FiniteSemiring, FiniteSemimodule]


def _format_table(table) -> list[str]:
    width = max(len(str(v)) for row in table for v in row)
    return [" ".join(str(v).rjust(width) for v in row) for row in table]


def format_semiring(S: FiniteSemiring) -> str:
    lines = [f"semiring {S.name}", f"order {S.order}", f"one {S.one}", "add-table"]
    lines += _format_table(S.add)
    lines.append("mul-table")
    lines += _format_table(S.mul)
    lines.append("end")
    return "\n".join(lines) + "\n"


def format_semimodule(M: FiniteSemimodule) -> str:
    lines = [f"semimodule {M.name} over {M.base.name}", f"order {M.order}", "add-table"]
    lines += _format_table(M.add)
    lines.append("action-table")
    lines += _format_table(M.action)
    lines.append("end")
    return "\n".join(lines) + "\n"


def format_structure(X: Structure) -> str:
    if isinstance(X, FiniteSemiring):
        return format_semiring(X)
    return format_semimodule(X)


class _Lines:
    def __init__(self, text: str):
        self.items = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            body = raw.split("#", 1)[0]
            if not body.strip():
                continue
            tokens, col = [], 0
            for part in body.split():
                col = body.index(part, col)
                tokens.append((part, col + 1))
                col += len(part)
            self.items.append((lineno, tokens))
        self.pos = 0
        self.last_line = len(text.splitlines())

    def done(self) -> bool:
        return self.pos >= len(self.items)

    def next(self, expected: str):
        if self.done():
            raise ParseError(f"unexpected end of input, expected {expected}", self.last_line + 1, 1)
        item = self.items[self.pos]
        self.pos += 1
        return item

    def keyword(self, word: str, nargs: int):
        lineno, tokens = self.next(f"'{word}'")
        if tokens[0][0] != word:
            raise ParseError(f"expected '{word}', found '{tokens[0][0]}'", lineno, tokens[0][1])
        if len(tokens) != nargs + 1:
            raise ParseError(f"'{word}' takes {nargs} argument(s)", lineno, tokens[0][1])
        return lineno, [t for t, _ in tokens[1:]], [c for _, c in tokens[1:]]

    def integer(self, word: str) -> int:
        lineno, args, cols = self.keyword(word, 1)
        try:
            return int(args[0])
        except ValueError:
            raise ParseError(f"'{word}' needs an integer, found '{args[0]}'", lineno, cols[0]) from None

    def table(self, word: str, rows: int, cols: int, bound: int):
        self.keyword(word, 0)
        out = []
        for r in range(rows):
            if self.done():
                raise ParseError(f"{word}: expected {rows} rows, found {r}", self.last_line + 1, 1)
            lineno, tokens = self.items[self.pos]
            if not tokens[0][0].lstrip("-").isdigit():
                raise ParseError(f"{word}: expected {rows} rows, found {r}", lineno, tokens[0][1])
            self.pos += 1
            if len(tokens) != cols:
                raise ParseError(f"{word}: row has {len(tokens)} entries, expected {cols}", lineno, 1)
            row = []
            for tok, col in tokens:
                try:
                    v = int(tok)
                except ValueError:
                    raise ParseError(f"non-integer entry '{tok}'", lineno, col) from None
                if not 0 <= v < bound:
                    raise ParseError(f"entry {v} out of range 0..{bound - 1}", lineno, col)
                row.append(v)
            out.append(row)
        return out


def _check_order(n: int, lineno: int, minimum: int) -> None:
    if not minimum <= n <= MAX_ORDER:
        raise ParseError(f"order {n} outside {minimum}..{MAX_ORDER}", lineno, 1)


def _validated(build, lineno: int):
    try:
        return build()
    except AxiomViolation as exc:
        exc.line = lineno
        raise
    except MalformedTable as exc:
        raise ParseError(str(exc), lineno, 1) from None


def parse_structures(text: str, bases: Mapping[str, FiniteSemiring] | None = None) -> list[Structure]:
    """Parse every block in ``text``; semimodules resolve their base among
    earlier semirings in the text or in ``bases``."""
    known = dict(bases or {})
    lines = _Lines(text)
    out: list[Structure] = []
    while not lines.done():
        lineno, tokens = lines.items[lines.pos]
        head = tokens[0][0]
        if head == "semiring":
            _, (name,), _ = lines.keyword("semiring", 1)
            n = lines.integer("order")
            _check_order(n, lineno, 2)
            one = lines.integer("one")
            add = lines.table("add-table", n, n, n)
            mul = lines.table("mul-table", n, n, n)
            lines.keyword("end", 0)
            S = _validated(lambda: validate_semiring(add, mul, one, name), lineno)
            known[name] = S
            out.append(S)
        elif head == "semimodule":
            _, (name, over, base_name), cols = lines.keyword("semimodule", 3)
            if over != "over":
                raise ParseError(f"expected 'over', found '{over}'", lineno, cols[1])
            if base_name not in known:
                raise UnknownBase(f"line {lineno}: unknown base semiring '{base_name}'")
            S = known[base_name]
            m = lines.integer("order")
            _check_order(m, lineno, 1)
            add = lines.table("add-table", m, m, m)
            action = lines.table("action-table", S.order, m, m)
            lines.keyword("end", 0)
            out.append(_validated(lambda: validate_semimodule(S, add, action, name), lineno))
        else:
            raise ParseError(f"expected 'semiring' or 'semimodule', found '{head}'", lineno, tokens[0][1])
    return out


def parse_structure(text: str, bases: Mapping[str, FiniteSemiring] | None = None) -> Structure:
    found = parse_structures(text, bases)
    if len(found) != 1:
        raise ParseError(f"expected exactly one structure, found {len(found)}", 1, 1)
    return found[0]
