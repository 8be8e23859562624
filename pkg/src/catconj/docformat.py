"""Syntax of definition documents: tokenizer, parser and canonical printer.

A document is a sequence of blocks::

    # optional comment lines
    kind name {
      key: value
      statement tokens ...
    }

Values are atoms (``x``, ``S_01``, ``C^op``), double-quoted strings for
identifiers with other characters (``"x<=y"``), lists ``[a, b]``, tuples
``(a, b)`` and calls ``f(a, b)`` (no space before the parenthesis).
Statements may also contain the symbols ``:``, ``=``, ``->`` and ``=>``.

This module knows nothing about categories; ``loader`` gives meaning to
the blocks.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

KIND_ORDER = ("builtin", "category", "functor", "nattrans", "adjunction", "extranat", "twovar",
              "closed", "monfunctor", "signature", "interp", "term", "equation")

_SAFE = re.compile(r"[A-Za-z0-9_.^'*+!~/|$%&?@]+")
_SYMS = ("->", "=>", ":", "=")
_OPEN = {"[": "]", "(": ")"}


class ParseError(Exception):
    def __init__(self, line, col, msg, name=None):
        self.line, self.col, self.msg, self.name = line, col, msg, name
        where = f"line {line}, column {col}"
        super().__init__(f"{where}: {msg}" + (f" (at {name!r})" if name else ""))


@dataclass(frozen=True)
class Sym:
    s: str

    def __str__(self):
        return self.s


@dataclass(frozen=True)
class Call:
    fn: str
    args: tuple

    def __str__(self):
        return f"{atom(self.fn)}({', '.join(show(a) for a in self.args)})"


@dataclass
class Entry:
    key: str | None  # set for ``key: value`` lines
    items: list  # value for kv lines is items[0]
    line: int = 0
    comments: list = field(default_factory=list)

    @property
    def value(self):
        return self.items[0]


@dataclass
class Decl:
    kind: str
    name: str
    entries: list
    line: int = 0
    comments: list = field(default_factory=list)

    def get(self, key, default=None):
        for e in self.entries:
            if e.key == key:
                return e.value
        return default

    def has(self, key) -> bool:
        return any(e.key == key for e in self.entries)

    def statements(self, head=None):
        return [e for e in self.entries if e.key is None and (head is None or e.items[0] == head)]


@dataclass
class Document:
    decls: list = field(default_factory=list)

    def names(self):
        return [d.name for d in self.decls]

    def find(self, name):
        for d in self.decls:
            if d.name == name:
                return d
        return None


# ---------------------------------------------------------------------------
# lexing


def _tokens(line: str, lineno: int):
    i, n = 0, len(line)
    while i < n:
        ch = line[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "#":
            return
        if ch == '"':
            m = re.compile(r'"(?:[^"\\]|\\.)*"').match(line, i)
            if not m:
                raise ParseError(lineno, i + 1, "unterminated string")
            yield ("atom", json.loads(m.group()), i + 1, True)
            i = m.end()
            continue
        if line.startswith("->", i) or line.startswith("=>", i):
            yield ("sym", line[i:i + 2], i + 1, False)
            i += 2
            continue
        if ch in "[](),{}:=":
            yield ("punct", ch, i + 1, False)
            i += 1
            continue
        m = _SAFE.match(line, i)
        if not m:
            raise ParseError(lineno, i + 1, f"unexpected character {ch!r}")
        yield ("atom", m.group(), i + 1, False)
        i = m.end()


class _Stream:
    def __init__(self, toks, lineno, line):
        self.toks, self.k, self.lineno, self.line = toks, 0, lineno, line

    def peek(self):
        return self.toks[self.k] if self.k < len(self.toks) else None

    def next(self):
        t = self.peek()
        if t is None:
            raise ParseError(self.lineno, len(self.line) + 1, "unexpected end of line")
        self.k += 1
        return t

    def done(self):
        return self.k >= len(self.toks)


def _value(s: _Stream):
    kind, text, col, quoted = s.next()
    if kind == "atom":
        nxt = s.peek()
        if not quoted and nxt and nxt[0] == "punct" and nxt[1] == "(" and nxt[2] == col + len(text):
            s.next()
            return Call(text, tuple(_seq(s, ")")))
        return text
    if kind == "punct" and text in _OPEN:
        items = _seq(s, _OPEN[text])
        return items if text == "[" else tuple(items)
    raise ParseError(s.lineno, col, f"expected a value, found {text!r}")


def _seq(s: _Stream, close):
    items = []
    t = s.peek()
    if t and t[0] == "punct" and t[1] == close:
        s.next()
        return items
    while True:
        items.append(_value(s))
        kind, text, col, _ = s.next()
        if kind == "punct" and text == close:
            return items
        if not (kind == "punct" and text == ","):
            raise ParseError(s.lineno, col, f"expected ',' or {close!r}, found {text!r}")


def _statement(s: _Stream):
    out = []
    while not s.done():
        kind, text, col, _ = s.peek()
        if kind == "sym" or (kind == "punct" and text in ":="):
            s.next()
            out.append(Sym(text))
        else:
            out.append(_value(s))
    return out


# ---------------------------------------------------------------------------
# parsing


def parse(text: str) -> Document:
    doc = Document()
    cur: Decl | None = None
    pending: list = []
    seen: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = raw.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            pending.append(stripped[1:].strip())
            continue
        toks = list(_tokens(raw, lineno))
        if cur is None:
            if len(toks) < 3 or toks[0][0] != "atom" or toks[1][0] != "atom" or toks[-1][1] != "{" \
                    or toks[-1][0] != "punct":
                raise ParseError(lineno, toks[0][2] if toks else 1, "expected 'kind name {'")
            kind, name = toks[0][1], toks[1][1]
            if kind not in KIND_ORDER:
                raise ParseError(lineno, toks[0][2], f"unknown declaration kind {kind!r}", name)
            if name in seen:
                raise ParseError(lineno, toks[1][2], f"duplicate name (first declared on line {seen[name]})", name)
            seen[name] = lineno
            cur = Decl(kind, name, [], lineno, pending)
            pending = []
            rest = toks[2:-1]
            if rest:
                raise ParseError(lineno, rest[0][2], "unexpected tokens after the name", name)
            continue
        if len(toks) == 1 and toks[0][:2] == ("punct", "}"):
            doc.decls.append(cur)
            cur = None
            continue
        if toks and toks[-1][:2] == ("punct", "}"):
            raise ParseError(lineno, toks[-1][2], "'}' must be on its own line", cur.name)
        s = _Stream(toks, lineno, raw)
        if len(toks) >= 2 and toks[0][0] == "atom" and toks[1][:2] == ("punct", ":"):
            key = toks[0][1]
            s.k = 2
            value = _value(s)
            if not s.done():
                raise ParseError(lineno, s.peek()[2], f"trailing tokens after the value of {key!r}", cur.name)
            if cur.has(key):
                raise ParseError(lineno, toks[0][2], f"duplicate key {key!r}", cur.name)
            cur.entries.append(Entry(key, [value], lineno, pending))
        else:
            cur.entries.append(Entry(None, _statement(s), lineno, pending))
        pending = []
    if cur is not None:
        raise ParseError(cur.line, 1, "block is never closed", cur.name)
    return doc


# ---------------------------------------------------------------------------
# printing


def atom(x: str) -> str:
    if _SAFE.fullmatch(x) and x not in _SYMS:
        return x
    return json.dumps(x, ensure_ascii=False)


def show(v) -> str:
    if isinstance(v, str):
        return atom(v)
    if isinstance(v, Sym):
        return v.s
    if isinstance(v, Call):
        return str(v)
    if isinstance(v, list):
        return "[" + ", ".join(show(x) for x in v) + "]"
    if isinstance(v, tuple):
        return "(" + ", ".join(show(x) for x in v) + ")"
    if isinstance(v, (int,)):
        return str(v)
    raise TypeError(f"cannot print {v!r}")


def _show_statement(items) -> str:
    out = ""
    for it in items:
        piece = show(it)
        if out and not (isinstance(it, Sym) and it.s == ":"):
            out += " "
        out += piece
    return out


def sort_key(d: Decl):
    return (KIND_ORDER.index(d.kind), d.name)


def serialize(doc: Document) -> str:
    blocks = []
    for d in sorted(doc.decls, key=sort_key):
        lines = [f"# {c}".rstrip() for c in d.comments]
        lines.append(f"{d.kind} {atom(d.name)} {{")
        for e in d.entries:
            lines += [f"  # {c}".rstrip() for c in e.comments]
            body = f"{atom(e.key)}: {show(e.value)}" if e.key is not None else _show_statement(e.items)
            lines.append("  " + body)
        lines.append("}")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + ("\n" if blocks else "")


def kv(key, value) -> Entry:
    return Entry(key, [value])


def stmt(*items) -> Entry:
    return Entry(None, [Sym(x[1:]) if isinstance(x, str) and x.startswith("\0") else x for x in items])


# symbol helpers for building statements programmatically
ARROW, DARROW, COLON, EQ = "\0->", "\0=>", "\0:", "\0="
