"""Command line: ``catconj check|compute|export-ek``.

Exit status is 0 when every check passes, 1 when some check fails and 2 for
parse, resolution or usage errors.  Reports go to standard output as one JSON
object per line.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import ekgraph as ek
from .docformat import ParseError, parse, serialize
from .fincat import StructuralError
from .loader import Loader, compute, run_checks


def _read(path):
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def _emit(obj, out):
    out.write(json.dumps(obj, sort_keys=True, ensure_ascii=False) + "\n")


def cmd_check(a, out) -> int:
    recs = run_checks(_read(a.file), a.select)
    for r in recs:
        _emit(r, out)
    counts = {s: sum(r["status"] == s for r in recs) for s in ("pass", "fail", "error")}
    _emit({"summary": counts}, out)
    if counts["error"]:
        return 2
    return 1 if counts["fail"] else 0


def cmd_compute(a, out) -> int:
    doc, name = compute(_read(a.file), a.op, a.args, name=a.name)
    text = serialize(doc)
    if a.out:
        with open(a.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        _emit({"computed": name, "op": a.op, "out": a.out}, out)
    else:
        out.write(text)
    return 0


def cmd_export(a, out) -> int:
    loader = Loader(_read(a.file))
    t = loader.value(a.term)
    if not isinstance(t, ek.CellTerm):
        raise StructuralError(f"{a.term!r} is not a diagram term")
    out.write(ek.export_ek(t))
    return 0


def cmd_format(a, out) -> int:
    out.write(serialize(_read(a.file)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="catconj", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)
    c = sub.add_parser("check", help="run checks on a definition document")
    c.add_argument("file")
    c.add_argument("--select", default="all", help="'all', a check name or a declaration name")
    c.set_defaults(fn=cmd_check)
    m = sub.add_parser("compute", help="compute a declaration and append it to the document")
    m.add_argument("file")
    m.add_argument("--op", required=True)
    m.add_argument("--args", required=True, nargs="+")
    m.add_argument("--name", default=None, help="name of the emitted declaration")
    m.add_argument("--out", default=None)
    m.set_defaults(fn=cmd_compute)
    e = sub.add_parser("export-ek", help="print the Eilenberg-Kelly arc list of a term")
    e.add_argument("file")
    e.add_argument("--term", required=True)
    e.set_defaults(fn=cmd_export)
    f = sub.add_parser("format", help="print the document in canonical form")
    f.add_argument("file")
    f.set_defaults(fn=cmd_format)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    p = build_parser()
    try:
        a = p.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        return a.fn(a, out)
    except ParseError as e:
        _emit({"error": "parse", "line": e.line, "column": e.col, "name": e.name, "message": e.msg}, out)
    except (StructuralError, ValueError, OSError) as e:
        _emit({"error": type(e).__name__, "message": str(e)}, out)
    return 2


if __name__ == "__main__":
    sys.exit(main())
