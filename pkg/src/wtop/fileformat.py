"""Text formats for monoids and M-sets.

Monoid::

    elements: 1 0 s
    identity: 1
    table:
    1 0 s
    0 0 0
    s 0 0

Row ``i``, column ``k`` is ``element_i * element_k``.  ``order: n`` may
replace ``elements:`` (names become ``0..n-1``); a one-element monoid may
omit the identity and the table.

M-set::

    monoid: m3.mon
    carrier: x y
    action:
    x x y
    y y y

Rows follow the carrier, columns the monoid elements in declared order.
``#`` starts a comment everywhere.
"""

from __future__ import annotations

from pathlib import Path

from .errors import ParseError
from .monoid import Monoid
from .mset import MSet


def _lines(text: str):
    """Yield ``(line_no, line, [(column, token), ...])`` for non-blank lines."""
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = []
        col = 0
        for part in line.split():
            col = line.index(part, col)
            tokens.append((col + 1, part))
            col += len(part)
        if tokens:
            yield no, line, tokens


def _sections(text: str, keys: tuple[str, ...], block: str):
    """Split into ``key: tokens`` headers and the rows following ``block:``."""
    headers: dict[str, tuple[int, list]] = {}
    rows: list[tuple[int, list]] = []
    in_block = False
    for no, line, tokens in _lines(text):
        first_col, first = tokens[0]
        if ":" in first:
            key, _, rest = first.partition(":")
            key = key.strip().lower()
            if key not in keys and key != block:
                raise ParseError(f"unknown header {key!r}", no, first_col)
            if key in headers or (key == block and in_block):
                raise ParseError(f"duplicate header {key!r}", no, first_col)
            values = tokens[1:]
            if rest:
                values = [(first_col + len(key) + 1, rest)] + values
            if key == block:
                in_block = True
                if values:
                    raise ParseError(f"rows must start on the line after '{block}:'", no, values[0][0])
            else:
                if in_block:
                    raise ParseError(f"header {key!r} after the {block} block", no, first_col)
                headers[key] = (no, values)
        elif in_block:
            rows.append((no, tokens))
        else:
            raise ParseError("expected a header of the form 'key: value'", no, first_col)
    return headers, rows, in_block


def _names(values, no, what):
    names = [tok for _, tok in values]
    seen = set()
    for col, tok in values:
        if tok in seen:
            raise ParseError(f"duplicate {what} name {tok!r}", no, col)
        seen.add(tok)
    return names


def _table(rows, n_rows, n_cols, lookup, what):
    if len(rows) != n_rows:
        line = rows[-1][0] if rows else None
        raise ParseError(f"{what} has {len(rows)} rows, expected {n_rows}", line)
    out = []
    for no, tokens in rows:
        if len(tokens) != n_cols:
            raise ParseError(f"row has {len(tokens)} entries, expected {n_cols}", no, tokens[0][0])
        row = []
        for col, tok in tokens:
            if tok not in lookup:
                raise ParseError(f"unknown element {tok!r}", no, col)
            row.append(lookup[tok])
        out.append(row)
    return out


def parse_monoid_file(text: str) -> Monoid:
    headers, rows, has_table = _sections(text, ("elements", "identity", "order"), "table")
    names = None
    if "elements" in headers:
        no, values = headers["elements"]
        if not values:
            raise ParseError("no elements listed", no)
        names = _names(values, no, "element")
    if "order" in headers:
        no, values = headers["order"]
        if len(values) != 1 or not values[0][1].isdigit() or int(values[0][1]) < 1:
            raise ParseError("order must be a positive integer", no, values[0][0] if values else None)
        order = int(values[0][1])
        if names is None:
            names = [str(i) for i in range(order)]
        elif len(names) != order:
            raise ParseError(f"order {order} does not match {len(names)} listed elements", no)
    if names is None:
        raise ParseError("missing 'elements:' header")
    index = {name: i for i, name in enumerate(names)}
    if "identity" in headers:
        no, values = headers["identity"]
        if len(values) != 1:
            raise ParseError("identity takes exactly one element", no)
        col, tok = values[0]
        if tok not in index:
            raise ParseError(f"identity {tok!r} is not an element", no, col)
        identity = index[tok]
    elif len(names) == 1:
        identity = 0
    else:
        raise ParseError("missing 'identity:' header")
    if not has_table:
        if len(names) != 1:
            raise ParseError("missing 'table:' block")
        mult = [[0]]
    else:
        mult = _table(rows, len(names), len(names), index, "table")
    return Monoid(tuple(map(tuple, mult)), identity, tuple(names))


def parse_mset_file(text: str, monoid: Monoid) -> MSet:
    headers, rows, has_action = _sections(text, ("monoid", "carrier"), "action")
    if "carrier" not in headers:
        raise ParseError("missing 'carrier:' header")
    no, values = headers["carrier"]
    names = _names(values, no, "carrier")
    if not has_action and names:
        raise ParseError("missing 'action:' block")
    index = {name: i for i, name in enumerate(names)}
    act = _table(rows, len(names), monoid.order, index, "action")
    return MSet(monoid, act, names or None)


def mset_monoid_reference(text: str) -> str | None:
    headers, _, _ = _sections(text, ("monoid", "carrier"), "action")
    if "monoid" not in headers:
        return None
    no, values = headers["monoid"]
    if len(values) != 1:
        raise ParseError("monoid takes exactly one path", no)
    return values[0][1]


def load_monoid(path: str | Path) -> Monoid:
    return parse_monoid_file(Path(path).read_text())


def load_mset(path: str | Path, monoid: Monoid | None = None) -> MSet:
    """Read an M-set file.  Its ``monoid:`` line is resolved relative to the
    file; when ``monoid`` is also given the two must agree."""
    path = Path(path)
    text = path.read_text()
    ref = mset_monoid_reference(text)
    if ref is not None:
        declared = load_monoid(path.parent / ref)
        if monoid is not None and declared != monoid:
            raise ParseError(f"M-set file refers to {ref}, which differs from the given monoid")
        monoid = declared
    if monoid is None:
        raise ParseError("M-set file has no 'monoid:' line and no monoid was given")
    return parse_mset_file(text, monoid)


def format_monoid(M: Monoid) -> str:
    lines = ["elements: " + " ".join(M.names), "identity: " + M.names[M.identity], "table:"]
    lines += [" ".join(M.names[v] for v in row) for row in M.mult]
    return "\n".join(lines) + "\n"


def format_mset(E: MSet, monoid_path: str | None = None) -> str:
    lines = []
    if monoid_path:
        lines.append(f"monoid: {monoid_path}")
    lines.append("carrier: " + " ".join(E.names) if E.size else "carrier:")
    lines.append("action:")
    lines += [" ".join(E.names[v] for v in row) for row in E.act]
    return "\n".join(lines) + "\n"
