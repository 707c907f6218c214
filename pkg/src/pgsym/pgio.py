"""PGSolver .gm game file format: parser and canonical writer.

Grammar (UTF-8, whitespace-insensitive, statements end with ';'):

    [ "parity" <max-id> ";" ]
    ( <id> <priority> <owner> <succ> ("," <succ>)* [ "name in quotes" ] ";" )*

The header line is optional on input.  Owner encoding is 0 = Even,
1 = Odd.  Vertex ids found in the file are compacted to 0..n-1 in
declaration order; optional names are retained so files round-trip.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .game import ParityGame, Player


class ParseError(ValueError):
    """Rejected input, with position and an error class for tests."""

    def __init__(self, message: str, line: int, col: int, kind: str = "syntax"):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col
        self.kind = kind


@dataclass
class _Token:
    text: str
    line: int
    col: int
    quoted: bool = False


def _tokenize(text: str) -> list[list[_Token]]:
    """Split input into ';'-terminated statements of raw tokens.

    Quoted names may contain any character except an unescaped quote, so
    splitting happens with quote awareness rather than a plain split.
    """
    statements: list[list[_Token]] = []
    current: list[_Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch == ";":
            statements.append(current)
            current = []
            col += 1
            i += 1
            continue
        if ch == '"':
            start_line, start_col = line, col
            j = i + 1
            while j < n and text[j] != '"':
                if text[j] == "\n":
                    raise ParseError("unterminated name", start_line, start_col)
                j += 1
            if j >= n:
                raise ParseError("unterminated name", start_line, start_col)
            current.append(_Token(text[i + 1 : j], start_line, start_col, quoted=True))
            col += j - i + 1
            i = j + 1
            continue
        start_line, start_col = line, col
        j = i
        while j < n and not text[j].isspace() and text[j] not in ';",':
            j += 1
        if j == i:  # a bare comma separator
            current.append(_Token(",", line, col))
            j = i + 1
        else:
            current.append(_Token(text[i:j], start_line, start_col))
        col += j - i
        i = j
    if current:
        t = current[0]
        raise ParseError("missing ';' before end of input", t.line, t.col)
    return statements


def _int_token(tok: _Token, what: str) -> int:
    try:
        return int(tok.text)
    except ValueError:
        raise ParseError(f"expected {what}, got {tok.text!r}", tok.line, tok.col) from None


def parse_pgsolver(text: Union[str, bytes]) -> ParityGame:
    """Parse PGSolver text into a validated :class:`ParityGame`."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    statements = [s for s in _tokenize(text) if s]
    if not statements:
        raise ParseError("empty input", 1, 1)

    if statements[0][0].text == "parity":
        header = statements[0]
        if len(header) != 2:
            raise ParseError("malformed header", header[0].line, header[0].col)
        _int_token(header[1], "max vertex id")
        statements = statements[1:]
    if not statements:
        raise ParseError("no vertex declarations", 1, 1)

    compact: dict[int, int] = {}
    owners: list[int] = []
    priorities: list[int] = []
    names: list[Optional[str]] = []
    raw_succs: list[list[tuple[int, _Token]]] = []
    for stmt in statements:
        it = iter(stmt)
        id_tok = next(it)
        vid = _int_token(id_tok, "vertex id")
        if vid < 0:
            raise ParseError(f"vertex id {vid} negative", id_tok.line, id_tok.col)
        if vid in compact:
            raise ParseError(f"duplicate vertex id {vid}", id_tok.line, id_tok.col,
                             kind="duplicate_vertex")
        try:
            prio_tok = next(it)
            owner_tok = next(it)
        except StopIteration:
            raise ParseError("truncated vertex declaration", id_tok.line, id_tok.col) from None
        prio = _int_token(prio_tok, "priority")
        if prio < 0:
            raise ParseError(f"priority {prio} < 0", prio_tok.line, prio_tok.col,
                             kind="negative_priority")
        owner = _int_token(owner_tok, "owner")
        if owner not in (0, 1):
            raise ParseError(f"owner must be 0 or 1, got {owner}", owner_tok.line, owner_tok.col)

        succs: list[tuple[int, _Token]] = []
        name: Optional[str] = None
        expect_succ = True
        for tok in it:
            if tok.quoted:
                name = tok.text
                for extra in it:
                    raise ParseError("tokens after name", extra.line, extra.col)
                break
            if tok.text == ",":
                if expect_succ:
                    raise ParseError("empty successor entry", tok.line, tok.col)
                expect_succ = True
                continue
            if not expect_succ:
                raise ParseError("missing ',' between successors", tok.line, tok.col)
            succs.append((_int_token(tok, "successor id"), tok))
            expect_succ = False
        if not succs:
            raise ParseError(f"vertex {vid} has no successors", id_tok.line, id_tok.col,
                             kind="no_successors")
        if expect_succ:
            last = stmt[-1]
            raise ParseError("dangling ',' in successor list", last.line, last.col)
        compact[vid] = len(owners)
        owners.append(owner)
        priorities.append(prio)
        names.append(name)
        raw_succs.append(succs)

    successors: list[list[int]] = []
    for succs in raw_succs:
        row = []
        for sid, tok in succs:
            if sid not in compact:
                raise ParseError(f"successor {sid} is not a declared vertex", tok.line, tok.col,
                                 kind="dangling_successor")
            row.append(compact[sid])
        successors.append(row)
    return ParityGame.build(owners, priorities, successors, names)


def write_pgsolver(game: ParityGame) -> str:
    """Serialize in canonical form: header, ascending ids, sorted successors."""
    lines = [f"parity {game.n - 1};"]
    for v in range(game.n):
        succs = ",".join(str(w) for w in game.succ[v])
        name = game.names[v]
        suffix = f' "{name}"' if name else ""
        lines.append(f"{v} {game.priority[v]} {int(game.owner[v])} {succs}{suffix};")
    return "\n".join(lines) + "\n"
