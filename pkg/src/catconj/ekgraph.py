"""Surface-diagram terms, their Eilenberg-Kelly graphs, and evaluation.

Words are tuples of ``(label, op)`` letters.  A cell term has a domain and
a codomain functor term; its EK graph joins the positions of the two source
words ("bottom" ``b0, b1, ...`` and "top" ``t0, t1, ...``) by arcs.  A cap
joins two bottom positions, a cup two top positions, and a through arc joins
a bottom position to a top one.  Gluing two graphs along a shared word can
close an arc into a loop, which is exactly when the vertical composite of
extranatural transformations is undefined.

Terms are built with the helper functions at the bottom (``gen``, ``cell``,
``vcomp`` ...) and are checked as they are built.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .extranat import ExtranatTrans
from .fincat import (
    TERMINAL_ID,
    TERMINAL_OBJECT,
    Category,
    Functor,
    NatTrans,
    StructuralError,
    functor_from,
    opposite,
    product,
    same_category,
)


class InterfaceError(StructuralError):
    pass


Letter = tuple  # (label, op: bool)


def word(*letters) -> tuple:
    """``word("C", "C^op", "A")`` -> ``(("C", False), ("C", True), ("A", False))``."""
    out = []
    for x in letters:
        if isinstance(x, tuple):
            out.append((x[0], bool(x[1])))
        elif x.endswith("^op"):
            out.append((x[:-3], True))
        else:
            out.append((x, False))
    return tuple(out)


def flip(w) -> tuple:
    return tuple((lab, not op) for lab, op in w)


def show_word(w) -> str:
    return "(" + ", ".join(lab + ("^op" if op else "") for lab, op in w) + ")"


# ---------------------------------------------------------------------------
# signature


@dataclass
class CellSig:
    dom: "FunctorTerm"
    cod: "FunctorTerm"
    arcs: tuple  # canonical ((ep, ep), ...)
    kind: str


@dataclass
class Signature:
    categories: list = field(default_factory=list)
    functors: dict = field(default_factory=dict)  # name -> (src word, tgt word)
    cells: dict = field(default_factory=dict)  # name -> CellSig

    def category(self, *labels):
        for lab in labels:
            if lab not in self.categories:
                self.categories.append(lab)

    def _check_word(self, w):
        for lab, _ in w:
            if lab not in self.categories:
                raise StructuralError(f"unknown category label {lab!r}")

    def functor(self, name, src, tgt):
        src, tgt = word(*src), word(*tgt)
        self._check_word(src)
        self._check_word(tgt)
        self.functors[name] = (src, tgt)
        return FGen(name, src, tgt)

    def cell(self, name, dom: "FunctorTerm", cod: "FunctorTerm", arcs=None):
        """Declare a cell generator.  ``arcs=None`` declares a natural cell
        (through arcs ``b_i - t_i``); otherwise ``arcs`` lists endpoint pairs
        such as ``("b0", "b1")``."""
        if dom.tgt != cod.tgt:
            raise InterfaceError(f"cell {name}: targets {show_word(dom.tgt)} and {show_word(cod.tgt)} differ")
        if arcs is None:
            if dom.src != cod.src:
                raise InterfaceError(f"natural cell {name}: sources {show_word(dom.src)} and {show_word(cod.src)} differ")
            arcs = [(f"b{i}", f"t{i}") for i in range(len(dom.src))]
            kind = "natural"
        else:
            kind = "extranatural"
        parsed = [(_ep(a), _ep(b)) for a, b in arcs]
        _validate_profile(name, parsed, dom.src, cod.src)
        canon, _ = _canonical(parsed, len(dom.src), len(cod.src))
        if kind == "extranatural" and all(a[0] != b[0] for a, b in canon):
            kind = "natural" if dom.src == cod.src and all(a[1] == b[1] for a, b in canon) else kind
        self.cells[name] = CellSig(dom, cod, tuple(canon), kind)
        return Cell(name, self.cells[name])

    def gen(self, name) -> "FGen":
        src, tgt = self.functors[name]
        return FGen(name, src, tgt)

    def get_cell(self, name) -> "Cell":
        return Cell(name, self.cells[name])


def _ep(s):
    if isinstance(s, tuple):
        return s
    if s[0] not in "bt" or not s[1:].isdigit():
        raise StructuralError(f"bad endpoint {s!r}; expected b<i> or t<i>")
    return (s[0], int(s[1:]))


def _ep_name(e) -> str:
    return f"{e[0]}{e[1]}"


def _letter(e, bottom, top):
    return bottom[e[1]] if e[0] == "b" else top[e[1]]


def _validate_profile(name, arcs, bottom, top):
    seen = []
    for a, b in arcs:
        for e in (a, b):
            n = len(bottom) if e[0] == "b" else len(top)
            if not 0 <= e[1] < n:
                raise StructuralError(f"cell {name}: endpoint {_ep_name(e)} out of range")
            seen.append(e)
        la, lb = _letter(a, bottom, top), _letter(b, bottom, top)
        if la[0] != lb[0]:
            raise StructuralError(f"cell {name}: arc {_ep_name(a)}-{_ep_name(b)} joins {la[0]} to {lb[0]}")
        same_side = a[0] == b[0]
        if same_side == (la[1] == lb[1]):
            what = "a cap/cup must pair an op letter with a plain one" if same_side else \
                "a through arc must keep its variance"
            raise StructuralError(f"cell {name}: arc {_ep_name(a)}-{_ep_name(b)}: {what}")
    want = [("b", i) for i in range(len(bottom))] + [("t", j) for j in range(len(top))]
    if sorted(seen) != sorted(want):
        raise StructuralError(f"cell {name}: every endpoint must lie on exactly one arc")


def _order(e, nb):
    return e[1] if e[0] == "b" else nb + e[1]


def _canonical(arcs, nb, nt):
    """Orient each arc and sort by first appearance (bottom, then top).

    Returns ``(arcs, perm)`` with ``perm[new] = old``."""
    oriented = [tuple(sorted(a, key=lambda e: _order(e, nb))) for a in arcs]
    perm = sorted(range(len(oriented)), key=lambda k: _order(oriented[k][0], nb))
    return [oriented[k] for k in perm], perm


# ---------------------------------------------------------------------------
# functor terms


class FunctorTerm:
    src: tuple
    tgt: tuple


@dataclass(frozen=True)
class FGen(FunctorTerm):
    name: str
    src: tuple
    tgt: tuple

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class FId(FunctorTerm):
    w: tuple

    @property
    def src(self):
        return self.w

    @property
    def tgt(self):
        return self.w

    def __str__(self):
        return "idw(" + ", ".join(lab + ("^op" if op else "") for lab, op in self.w) + ")"


@dataclass(frozen=True)
class FJuxt(FunctorTerm):
    parts: tuple

    @property
    def src(self):
        return tuple(x for p in self.parts for x in p.src)

    @property
    def tgt(self):
        return tuple(x for p in self.parts for x in p.tgt)

    def __str__(self):
        return "fjuxt(" + ", ".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class FComp(FunctorTerm):
    outer: FunctorTerm
    inner: FunctorTerm

    def __post_init__(self):
        if self.inner.tgt != self.outer.src:
            raise InterfaceError(f"cannot compose {self.outer} after {self.inner}: "
                                 f"{show_word(self.inner.tgt)} vs {show_word(self.outer.src)}")

    @property
    def src(self):
        return self.inner.src

    @property
    def tgt(self):
        return self.outer.tgt

    def __str__(self):
        return f"comp({self.outer}, {self.inner})"


@dataclass(frozen=True)
class FOp(FunctorTerm):
    t: FunctorTerm

    @property
    def src(self):
        return flip(self.t.src)

    @property
    def tgt(self):
        return flip(self.t.tgt)

    def __str__(self):
        return f"op({self.t})"


# ---------------------------------------------------------------------------
# EK graphs


@dataclass(frozen=True)
class EKGraph:
    bottom: tuple
    top: tuple
    arcs: tuple  # canonical ((ep, ep), ...)
    loops: tuple = ()  # each loop: tuple of arc descriptions

    def label(self, k) -> str:
        return _letter(self.arcs[k][0], self.bottom, self.top)[0]

    @property
    def has_loops(self) -> bool:
        return bool(self.loops)

    def kinds(self):
        out = []
        for a, b in self.arcs:
            out.append("cap" if a[0] == b[0] == "b" else "cup" if a[0] == b[0] == "t" else "through")
        return out

    def export(self) -> str:
        """One ``arc <endpoint> <endpoint> <label>`` line per arc, sorted;
        loops follow as ``loop <arc> <arc> ...`` lines."""
        lines = sorted(f"arc {_ep_name(a)} {_ep_name(b)} {self.label(k)}" for k, (a, b) in enumerate(self.arcs))
        lines += sorted("loop " + " ".join(lp) for lp in self.loops)
        return "\n".join(lines) + ("\n" if lines else "")


def _arc_desc(tag, a, b):
    return f"{tag}:{_ep_name(a)}-{_ep_name(b)}"


def glue(lower: EKGraph, upper: EKGraph):
    """Stack ``upper`` on ``lower``.

    Returns ``(graph, lower_map, upper_map)`` where the maps send each arc of
    the pieces to its arc in the result (or ``None`` if it lies on a loop).
    """
    if lower.top != upper.bottom:
        raise InterfaceError(f"interface mismatch: lower top {show_word(lower.top)} vs upper bottom {show_word(upper.bottom)}")
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def node(side, e):
        if side == "L":
            return ("ext", "b", e[1]) if e[0] == "b" else ("mid", e[1])
        return ("mid", e[1]) if e[0] == "b" else ("ext", "t", e[1])

    edges = [("L", k, a, b) for k, (a, b) in enumerate(lower.arcs)] + \
            [("U", k, a, b) for k, (a, b) in enumerate(upper.arcs)]
    for side, _, a, b in edges:
        ra, rb = find(node(side, a)), find(node(side, b))
        if ra != rb:
            parent[ra] = rb
    comps: dict = {}
    for side, k, a, b in edges:
        comps.setdefault(find(node(side, a)), []).append((side, k, a, b))
    new_arcs, loops, arc_of_root = [], [], {}
    for root, es in comps.items():
        ext = sorted({n for side, _, a, b in es for n in (node(side, a), node(side, b)) if n[0] == "ext"})
        if not ext:
            loops.append(tuple(_arc_desc("lower" if s == "L" else "upper", a, b) for s, _, a, b in es))
            continue
        assert len(ext) == 2, ext
        arc_of_root[root] = len(new_arcs)
        new_arcs.append(tuple((n[1], n[2]) for n in ext))
    canon, perm = _canonical(new_arcs, len(lower.bottom), len(upper.top))
    inv = {old: new for new, old in enumerate(perm)}
    lmap = [None] * len(lower.arcs)
    umap = [None] * len(upper.arcs)
    for side, k, a, b in edges:
        root = find(node(side, a))
        tgt = inv[arc_of_root[root]] if root in arc_of_root else None
        (lmap if side == "L" else umap)[k] = tgt
    g = EKGraph(lower.bottom, upper.top, tuple(canon), lower.loops + upper.loops + tuple(loops))
    return g, lmap, umap


# ---------------------------------------------------------------------------
# cell terms


class CellTerm:
    dom: FunctorTerm
    cod: FunctorTerm
    graph: EKGraph


class Cell(CellTerm):
    def __init__(self, name, sig: CellSig):
        self.name, self.sig = name, sig
        self.dom, self.cod = sig.dom, sig.cod
        self.graph = EKGraph(sig.dom.src, sig.cod.src, sig.arcs)

    def __str__(self):
        return self.name


class IdCell(CellTerm):
    def __init__(self, F: FunctorTerm):
        self.F = F
        self.dom = self.cod = F
        n = len(F.src)
        self.graph = EKGraph(F.src, F.src, tuple((("b", i), ("t", i)) for i in range(n)))

    def __str__(self):
        return f"id({self.F})"


class Vcomp(CellTerm):
    def __init__(self, lower: CellTerm, upper: CellTerm):
        if lower.cod.src != upper.dom.src or lower.cod.tgt != upper.dom.tgt:
            raise InterfaceError(
                f"interface mismatch: {lower} has codomain {show_word(lower.cod.src)} -> {show_word(lower.cod.tgt)}, "
                f"{upper} has domain {show_word(upper.dom.src)} -> {show_word(upper.dom.tgt)}")
        self.lower, self.upper = lower, upper
        self.dom, self.cod = lower.dom, upper.cod
        self.graph, self.lmap, self.umap = glue(lower.graph, upper.graph)

    def __str__(self):
        return f"vcomp({self.lower}, {self.upper})"


class CellJuxt(CellTerm):
    def __init__(self, parts: Sequence[CellTerm]):
        self.parts = tuple(parts)
        self.dom = FJuxt(tuple(p.dom for p in self.parts))
        self.cod = FJuxt(tuple(p.cod for p in self.parts))
        arcs, loops, ob, ot = [], [], 0, 0
        for p in self.parts:
            for a, b in p.graph.arcs:
                arcs.append(tuple((e[0], e[1] + (ob if e[0] == "b" else ot)) for e in (a, b)))
            loops.extend(p.graph.loops)
            ob += len(p.graph.bottom)
            ot += len(p.graph.top)
        canon, self.perm = _canonical(arcs, ob, ot)
        self.graph = EKGraph(self.dom.src, self.cod.src, tuple(canon), tuple(loops))

    def __str__(self):
        return "juxt(" + ", ".join(map(str, self.parts)) + ")"


class LWhisk(CellTerm):
    """``K`` applied after a cell (acts on the target side; arcs unchanged)."""

    def __init__(self, K: FunctorTerm, c: CellTerm):
        self.K, self.c = K, c
        self.dom, self.cod = FComp(K, c.dom), FComp(K, c.cod)
        self.graph = c.graph

    def __str__(self):
        return f"lwhisk({self.K}, {self.c})"


class RWhisk(CellTerm):
    """Precompose a cell with one functor term per arc.

    The term for an arc has the arc's (plain) label as its target; endpoints
    of op variance receive its opposite.
    """

    def __init__(self, c: CellTerm, per_arc: Sequence[FunctorTerm]):
        g = c.graph
        if len(per_arc) != len(g.arcs):
            raise InterfaceError(f"rwhisk: {len(per_arc)} functor terms for {len(g.arcs)} arcs of {c}")
        for k, G in enumerate(per_arc):
            if G.tgt != ((g.label(k), False),):
                raise InterfaceError(f"rwhisk: arc {k} of {c} is labelled {g.label(k)}, "
                                     f"but {G} lands in {show_word(G.tgt)}")
        self.c, self.per_arc = c, tuple(per_arc)
        arc_of = {}
        for k, (a, b) in enumerate(g.arcs):
            arc_of[a] = k
            arc_of[b] = k

        def expand(side, w):
            terms, offs, pos = [], {}, 0
            for i, (lab, op) in enumerate(w):
                G = self.per_arc[arc_of[(side, i)]]
                terms.append(FOp(G) if op else G)
                offs[i] = pos
                pos += len(G.src)
            return terms, offs, pos

        bt, boff, nb = expand("b", g.bottom)
        tt, toff, nt = expand("t", g.top)
        self.dom = FComp(c.dom, FJuxt(tuple(bt)))
        self.cod = FComp(c.cod, FJuxt(tuple(tt)))
        arcs, self.origin = [], []
        for k, (a, b) in enumerate(g.arcs):
            for l in range(len(self.per_arc[k].src)):
                ends = tuple((e[0], (boff if e[0] == "b" else toff)[e[1]] + l) for e in (a, b))
                arcs.append(ends)
                self.origin.append((k, l))
        canon, perm = _canonical(arcs, nb, nt)
        self.origin = [self.origin[p] for p in perm]
        self.graph = EKGraph(self.dom.src, self.cod.src, tuple(canon), g.loops)

    def __str__(self):
        return f"rwhisk({self.c}, [" + ", ".join(map(str, self.per_arc)) + "])"


# builders ------------------------------------------------------------------


def idw(*letters) -> FId:
    return FId(word(*letters))


def fjuxt(*parts) -> FJuxt:
    return FJuxt(tuple(parts))


def comp(outer, inner) -> FComp:
    return FComp(outer, inner)


def fop(t) -> FOp:
    return FOp(t)


def vcomp(*cells) -> CellTerm:
    """``vcomp(c1, c2, c3)`` stacks ``c1`` at the bottom."""
    out = cells[0]
    for c in cells[1:]:
        out = Vcomp(out, c)
    return out


def juxt(*cells) -> CellJuxt:
    return CellJuxt(cells)


def lwhisk(K, c) -> LWhisk:
    return LWhisk(K, c)


def rwhisk(c, per_arc) -> RWhisk:
    return RWhisk(c, per_arc)


def idcell(F) -> IdCell:
    return IdCell(F)


# ---------------------------------------------------------------------------
# EK operations


def ek_graph(t: CellTerm) -> EKGraph:
    return t.graph


@dataclass(frozen=True)
class Composability:
    ok: bool
    loops: tuple = ()

    def __bool__(self):
        return self.ok


def composable(lower: CellTerm, upper: CellTerm) -> Composability:
    """Whether ``upper`` can be stacked on ``lower`` without closing a loop."""
    g, _, _ = glue(ek_graph(lower), ek_graph(upper))
    fresh = g.loops[len(lower.graph.loops) + len(upper.graph.loops):]
    return Composability(not fresh, fresh)


def export_ek(t: CellTerm) -> str:
    return ek_graph(t).export()


# ---------------------------------------------------------------------------
# evaluation


@dataclass
class Interpretation:
    categories: Mapping  # label -> Category
    functors: Mapping  # name -> Functor
    cells: Mapping  # name -> NatTrans | ExtranatTrans
    _words: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def word_category(self, w) -> Category:
        if w in self._words:
            return self._words[w]
        cats = []
        for lab, op in w:
            if lab not in self.categories:
                raise StructuralError(f"no category assigned to label {lab!r}")
            c = self.categories[lab]
            cats.append(opposite(c) if op else c)
        self._words[w] = product(*cats)
        return self._words[w]

    def validate(self, sig: Signature) -> "Interpretation":
        """Check every assignment against the signature (all at once rather
        than when a generator is first evaluated)."""
        for lab in sig.categories:
            if lab not in self.categories:
                raise StructuralError(f"no category assigned to label {lab!r}")
        for name in sig.functors:
            eval_functor(sig.gen(name), self)
        for name in sig.cells:
            evaluate(sig.get_cell(name), self)
        return self


def _join(parts, n):
    if n == 0:
        return TERMINAL_OBJECT
    if n == 1:
        return parts[0]
    return tuple(parts)


def _join_m(parts, n):
    return TERMINAL_ID if n == 0 else _join(parts, n)


def _split(value, n):
    if n == 0:
        return ()
    if n == 1:
        return (value,)
    return tuple(value)


class FunctorValue:
    """A functor between word categories, evaluated lazily."""

    def __init__(self, source, target, obj, mor, name):
        self.source, self.target, self.name = source, target, name
        self._obj, self._mor = obj, mor
        self._oc, self._mc = {}, {}

    def obj(self, x):
        if x not in self._oc:
            self._oc[x] = self._obj(x)
        return self._oc[x]

    def mor(self, m):
        if m not in self._mc:
            self._mc[m] = self._mor(m)
        return self._mc[m]

    def materialize(self) -> Functor:
        return functor_from(self.source, self.target, self.obj, self.mor, name=self.name)

    def agrees_with(self, other: "FunctorValue") -> bool:
        """Equality on all objects and on morphisms that are identities in
        all factors but one (enough for functors out of a product)."""
        if not (same_category(self.source, other.source) and same_category(self.target, other.target)):
            return False
        if any(self.obj(x) != other.obj(x) for x in self.source.objects):
            return False
        return all(self.mor(m) == other.mor(m) for m in _generators(self.source))


@functools.lru_cache(maxsize=256)
def _generators(cat: Category):
    from .fincat import ProductCategory
    if not isinstance(cat, ProductCategory):
        return cat.morphisms
    out = []
    for i, fac in enumerate(cat.factors):
        for x in itertools.product(*[f.objects for j, f in enumerate(cat.factors) if j != i]):
            for m in fac.morphisms:
                ids = [cat.factors[j].identity(xj) for j, xj in zip([j for j in range(len(cat.factors)) if j != i], x)]
                ids.insert(i, m)
                out.append(tuple(ids))
    return tuple(out)


def eval_functor(t: FunctorTerm, interp: Interpretation) -> FunctorValue:
    src, tgt = interp.word_category(t.src), interp.word_category(t.tgt)
    if isinstance(t, FGen):
        F = interp.functors.get(t.name)
        if F is None:
            raise StructuralError(f"no functor assigned to generator {t.name!r}")
        if not (same_category(F.source, src) and same_category(F.target, tgt)):
            raise StructuralError(f"functor {t.name}: expected {src.name} -> {tgt.name}, "
                                  f"got {F.source.name} -> {F.target.name}")
        return FunctorValue(src, tgt, F.obj, F.mor, t.name)
    if isinstance(t, FId):
        return FunctorValue(src, tgt, lambda x: x, lambda m: m, str(t))
    if isinstance(t, FOp):
        inner = eval_functor(t.t, interp)
        return FunctorValue(src, tgt, inner.obj, inner.mor, str(t))
    if isinstance(t, FComp):
        o, i = eval_functor(t.outer, interp), eval_functor(t.inner, interp)
        return FunctorValue(src, tgt, lambda x: o.obj(i.obj(x)), lambda m: o.mor(i.mor(m)), str(t))
    if isinstance(t, FJuxt):
        parts = [eval_functor(p, interp) for p in t.parts]
        sa = [len(p.src) for p in t.parts]
        ta = [len(p.tgt) for p in t.parts]
        ns, nt = len(t.src), len(t.tgt)

        def go(value, fn, n_out, join):
            flat, out, i = _split(value, ns), [], 0
            for p, k, kt in zip(parts, sa, ta):
                piece = _join(flat[i:i + k], k) if k else (TERMINAL_ID if join is _join_m else TERMINAL_OBJECT)
                i += k
                out.extend(_split(fn(p)(piece), kt))
            return join(out, n_out)

        return FunctorValue(src, tgt, lambda x: go(x, lambda p: p.obj, nt, _join),
                            lambda m: go(m, lambda p: p.mor, nt, _join_m), str(t))
    raise TypeError(f"not a functor term: {t!r}")


class CellValue:
    """Semantics of a loop-free cell term.

    ``component(objs)`` takes one object per arc (canonical arc order) and
    returns a morphism ``dom(x_bottom) -> cod(x_top)`` of the target category.
    """

    def __init__(self, dom: FunctorValue, cod: FunctorValue, graph: EKGraph, arc_cats, fn):
        self.dom, self.cod, self.graph = dom, cod, graph
        self.arc_cats = tuple(arc_cats)
        self._fn, self._memo = fn, {}
        self.bottom = [None] * len(graph.bottom)
        self.top = [None] * len(graph.top)
        for k, (a, b) in enumerate(graph.arcs):
            for e in (a, b):
                (self.bottom if e[0] == "b" else self.top)[e[1]] = k

    @property
    def target(self) -> Category:
        return self.dom.target

    def component(self, objs):
        objs = tuple(objs)
        if objs not in self._memo:
            self._memo[objs] = self._fn(objs)
        return self._memo[objs]

    def at(self, objs):
        """Source and target objects for the component at ``objs``."""
        xb = _join([objs[k] for k in self.bottom], len(self.bottom))
        xt = _join([objs[k] for k in self.top], len(self.top))
        return self.dom.obj(xb), self.cod.obj(xt)

    def table(self) -> dict:
        return {objs: self.component(objs) for objs in itertools.product(*(c.objects for c in self.arc_cats))}

    @property
    def is_natural(self) -> bool:
        return len(self.bottom) == len(self.top) and all(
            a == ("b", i) and b == ("t", i) for i, (a, b) in enumerate(self.graph.arcs))

    def as_nat_trans(self, name="value") -> NatTrans:
        if not self.is_natural:
            raise StructuralError("evaluated cell is not a natural transformation (it has caps or cups)")
        n = len(self.bottom)
        F, G = self.dom.materialize(), self.cod.materialize()
        return NatTrans(F, G, {x: self.component(_split(x, n)) for x in F.source.objects}, name=name)

    def same_as(self, other: "CellValue") -> bool:
        return self.graph.arcs == other.graph.arcs and self.table() == other.table()


class LoopError(StructuralError):
    def __init__(self, loops):
        self.loops = loops
        super().__init__("composite has a closed loop in its Eilenberg-Kelly graph "
                         f"({'; '.join(' '.join(l) for l in loops)}); it is a 2-cell between profunctors, "
                         "not an extranatural transformation, and is not evaluated")


def evaluate(t, interp: Interpretation) -> CellValue:
    """Value of a diagram term; a bare functor term gives its identity."""
    if isinstance(t, FunctorTerm):
        t = IdCell(t)
    if t.graph.loops:
        raise LoopError(t.graph.loops)
    dom, cod = eval_functor(t.dom, interp), eval_functor(t.cod, interp)
    g = t.graph
    arc_cats = [interp.categories[g.label(k)] for k in range(len(g.arcs))]
    D = dom.target

    if isinstance(t, Cell):
        val = interp.cells.get(t.name)
        if val is None:
            raise StructuralError(f"no transformation assigned to cell {t.name!r}")
        fn = _generator_fn(t, val, dom, cod, interp)
    elif isinstance(t, IdCell):
        n = len(g.bottom)
        fn = lambda objs: D.identity(dom.obj(_join(list(objs), n)))
    elif isinstance(t, Vcomp):
        lo, up = evaluate(t.lower, interp), evaluate(t.upper, interp)
        if not lo.cod.agrees_with(up.dom):
            raise StructuralError(f"vertical composite: codomain of {t.lower} and domain of {t.upper} "
                                  f"are different functors")

        def fn(objs, lo=lo, up=up, lmap=t.lmap, umap=t.umap):
            return D.compose(up.component([objs[k] for k in umap]), lo.component([objs[k] for k in lmap]))
    elif isinstance(t, CellJuxt):
        vals = [evaluate(p, interp) for p in t.parts]
        inv = {old: new for new, old in enumerate(t.perm)}
        counts = [len(p.graph.arcs) for p in t.parts]
        tarities = [len(p.dom.tgt) for p in t.parts]
        ntgt = len(t.dom.tgt)

        def fn(objs, vals=vals):
            flat, start = [], 0
            for v, k, ta in zip(vals, counts, tarities):
                piece = [objs[inv[start + j]] for j in range(k)]
                start += k
                flat.extend(_split(v.component(piece), ta))
            return _join_m(flat, ntgt)
    elif isinstance(t, LWhisk):
        inner = evaluate(t.c, interp)
        K = eval_functor(t.K, interp)
        fn = lambda objs: K.mor(inner.component(objs))
    elif isinstance(t, RWhisk):
        inner = evaluate(t.c, interp)
        Gs = [eval_functor(G, interp) for G in t.per_arc]
        sizes = [len(G.src) for G in t.per_arc]
        slots = {}
        for new, (k, l) in enumerate(t.origin):
            slots[(k, l)] = new

        def fn(objs):
            xs = [Gs[k].obj(_join([objs[slots[(k, l)]] for l in range(sizes[k])], sizes[k]))
                  for k in range(len(Gs))]
            return inner.component(xs)
    else:
        raise TypeError(f"not a cell term: {t!r}")
    return CellValue(dom, cod, g, arc_cats, fn)


def _generator_fn(t: Cell, val, dom, cod, interp) -> Callable:
    g = t.graph
    if isinstance(val, NatTrans):
        if not g.arcs or any(a[0] == b[0] for a, b in g.arcs) or len(g.bottom) != len(g.top):
            raise StructuralError(f"cell {t.name} is declared with caps or cups but is interpreted by a natural transformation")
        F, G = eval_functor(t.dom, interp), eval_functor(t.cod, interp)
        Fm = FunctorValue(val.source_functor.source, val.source_functor.target, val.source_functor.obj,
                          val.source_functor.mor, val.source_functor.name)
        Gm = FunctorValue(val.target_functor.source, val.target_functor.target, val.target_functor.obj,
                          val.target_functor.mor, val.target_functor.name)
        if not (F.agrees_with(Fm) and G.agrees_with(Gm)):
            raise StructuralError(f"cell {t.name}: interpretation does not run between the interpreted functors")
        n = len(g.bottom)
        return lambda objs: val[_join(list(objs), n)]
    if isinstance(val, ExtranatTrans):
        fr = val.frame
        # arcs implied by the frame layout
        expect, role_of = [], []
        pr, qr = fr.p.roles, fr.q.roles
        pos = {r: [i for i, x in enumerate(pr) if x == r] for r in ("c", "cop", "a")}
        qpos = {r: [i for i, x in enumerate(qr) if x == r] for r in ("a", "bop", "b")}
        for k, (i, j) in enumerate(zip(pos["c"], pos["cop"])):
            expect.append((("b", i), ("b", j)))
            role_of.append(("c", k))
        for k, (i, j) in enumerate(zip(pos["a"], qpos["a"])):
            expect.append((("b", i), ("t", j)))
            role_of.append(("a", k))
        for k, (i, j) in enumerate(zip(qpos["b"], qpos["bop"])):
            expect.append((("t", i), ("t", j)))
            role_of.append(("b", k))
        canon, perm = _canonical(expect, len(pr), len(qr))
        if tuple(canon) != g.arcs:
            raise StructuralError(f"cell {t.name}: declared arcs {export_arcs(g.arcs)} do not match "
                                  f"the frame layout {export_arcs(canon)}")
        roles = [role_of[p] for p in perm]
        P = FunctorValue(fr.P.source, fr.P.target, fr.P.obj, fr.P.mor, fr.P.name)
        Q = FunctorValue(fr.Q.source, fr.Q.target, fr.Q.obj, fr.Q.mor, fr.Q.name)
        if not (dom.agrees_with(P) and cod.agrees_with(Q)):
            raise StructuralError(f"cell {t.name}: frame functors differ from the interpreted domain/codomain")
        nc, na, nb = len(pos["c"]), len(pos["a"]), len(qpos["b"])

        def fn(objs):
            groups = {"c": [None] * nc, "a": [None] * na, "b": [None] * nb}
            for (r, k), x in zip(roles, objs):
                groups[r][k] = x
            return val[(_join(groups["c"], nc), _join(groups["a"], na), _join(groups["b"], nb))]
        return fn
    raise StructuralError(f"cell {t.name}: cannot interpret {type(val).__name__}")


def export_arcs(arcs) -> str:
    return "[" + ", ".join(f"{_ep_name(a)}-{_ep_name(b)}" for a, b in arcs) + "]"


# ---------------------------------------------------------------------------
# standard diagrams


def conjugate_diagram(theta: NatTrans, adj, adjp):
    """String diagram for ``j_l(theta)`` with ``theta: F => F'`` and
    ``F -| U``, ``F' -| U'`` (both ``C -> D``): ``eta U'``, then ``U theta U'``,
    then ``U eps'``.  Returns ``(term, interpretation)``."""
    s = Signature()
    s.category("C", "D")
    F, U = s.functor("F", ["C"], ["D"]), s.functor("U", ["D"], ["C"])
    Fp, Up = s.functor("F'", ["C"], ["D"]), s.functor("U'", ["D"], ["C"])
    eta = s.cell("eta", idw("C"), comp(U, F))
    th = s.cell("theta", F, Fp)
    epsp = s.cell("eps'", comp(Fp, Up), idw("D"))
    term = vcomp(rwhisk(eta, [Up]), lwhisk(U, rwhisk(th, [Up])), lwhisk(U, epsp))
    interp = Interpretation({"C": adj.C, "D": adj.D},
                            {"F": adj.F, "U": adj.U, "F'": adjp.F, "U'": adjp.U},
                            {"eta": adj.unit, "theta": theta, "eps'": adjp.counit})
    return term, interp


def zigzag_diagram(adj):
    """``eps F`` after ``F eta``; evaluates to the identity on ``F``."""
    s = Signature()
    s.category("C", "D")
    F, U = s.functor("F", ["C"], ["D"]), s.functor("U", ["D"], ["C"])
    eta = s.cell("eta", idw("C"), comp(U, F))
    eps = s.cell("eps", comp(F, U), idw("D"))
    term = vcomp(lwhisk(F, eta), rwhisk(eps, [F]))
    return term, Interpretation({"C": adj.C, "D": adj.D}, {"F": adj.F, "U": adj.U},
                                {"eta": adj.unit, "eps": adj.counit})


def conjugate2_diagram(theta: NatTrans, adj, adjp):
    """String diagram for the left conjugate of ``theta: T => T'`` between
    left-sided two-variable adjunctions ``T -| H`` and ``T' -| H'``.

    The unit is a cup on ``(A^op, A)`` and the primed counit a cap on
    ``(A, A^op)``; the two meet along the ``A`` wire so the composite has
    no loop.
    """
    if adj.side != "L" or adjp.side != "L":
        raise StructuralError("conjugate2_diagram expects left-sided adjunctions")
    s = Signature()
    s.category("A", "B", "C")
    T, H = s.functor("T", ["A", "B"], ["C"]), s.functor("H", ["A^op", "C"], ["B"])
    Tp, Hp = s.functor("T'", ["A", "B"], ["C"]), s.functor("H'", ["A^op", "C"], ["B"])
    eta = s.cell("eta", idw("B"), comp(H, fjuxt(idw("A^op"), T)), [("b0", "t2"), ("t0", "t1")])
    th = s.cell("theta", T, Tp)
    epsp = s.cell("eps'", comp(Tp, fjuxt(idw("A"), Hp)), idw("C"), [("b0", "b1"), ("b2", "t0")])
    term = vcomp(
        rwhisk(eta, [Hp, idw("A")]),
        lwhisk(H, juxt(idcell(idw("A^op")), rwhisk(th, [idw("A"), Hp]))),
        lwhisk(H, juxt(idcell(idw("A^op")), epsp)),
    )
    interp = Interpretation({"A": adj.A, "B": adj.B, "C": adj.C},
                            {"T": adj.T, "H": adj.H, "T'": adjp.T, "H'": adjp.H},
                            {"eta": adj.unit, "theta": theta, "eps'": adjp.counit})
    return term, interp


def stacking_signature():
    """``P: C x C^op x A -> D``, ``R: A x A^op x A -> D``, ``Q: A x B x B^op -> D``
    with ``beta: P => R`` (cap on ``C``, cup on the last two letters of ``R``)
    and two candidates ``R => Q``: one capping the first two letters of ``R``
    and one capping the last two."""
    s = Signature()
    s.category("C", "A", "B", "D")
    P = s.functor("P", ["C", "C^op", "A"], ["D"])
    R = s.functor("R", ["A", "A^op", "A"], ["D"])
    Q = s.functor("Q", ["A", "B", "B^op"], ["D"])
    beta = s.cell("beta", P, R, [("b0", "b1"), ("b2", "t0"), ("t1", "t2")])
    first = s.cell("beta_first", R, Q, [("b0", "b1"), ("b2", "t0"), ("t1", "t2")])
    last = s.cell("beta_last", R, Q, [("b1", "b2"), ("b0", "t0"), ("t1", "t2")])
    return s, beta, first, last
