"""Finite categories as explicit lookup tables.

A :class:`FinCategory` stores its objects, morphisms, identities and a full
composition table.  Products are stored by their factors and compose
componentwise, so ``P(3) x P(3)^op x P(3)`` (19683 morphisms) never needs a
19683^2 table.  Opposites reuse the morphism identifiers of the original
category, which makes ``opposite`` an involution on the nose.

Law checkers return a :class:`Report`; identifiers that do not exist raise
:class:`StructuralError` instead.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Hashable, Iterable, Mapping, Sequence

import numpy as np

from . import _kernels

TERMINAL_OBJECT = "*"
TERMINAL_ID = "id*"


class StructuralError(ValueError):
    """Raised when data references identifiers that do not exist, or when
    two pieces of data cannot even be lined up for a law check."""


@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple
    detail: str = ""

    def __str__(self):
        w = ", ".join(map(str, self.witness))
        return f"{self.law}[{w}]" + (f": {self.detail}" if self.detail else "")


@dataclass
class Report:
    subject: str
    violations: list = field(default_factory=list)
    # checks run, in order; used by the CLI to print one record per check
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def add(self, law, witness, detail=""):
        self.violations.append(Violation(law, tuple(witness), detail))

    def merge(self, other: "Report", prefix: str = ""):
        for v in other.violations:
            self.violations.append(Violation(prefix + v.law, v.witness, v.detail))
        self.checks.extend(prefix + c for c in other.checks)
        return self

    def __str__(self):
        if self.ok:
            return f"{self.subject}: ok"
        head = f"{self.subject}: {len(self.violations)} violation(s)"
        return "\n  ".join([head] + [str(v) for v in self.violations[:10]])


# ---------------------------------------------------------------------------
# categories


class Category:
    """Common interface of table-backed and product categories."""

    name: str
    objects: tuple
    morphisms: tuple

    @cached_property
    def _oidx(self) -> dict:
        return {x: i for i, x in enumerate(self.objects)}

    @cached_property
    def _midx(self) -> dict:
        return {m: i for i, m in enumerate(self.morphisms)}

    def has_object(self, x) -> bool:
        return x in self._oidx

    def has_morphism(self, m) -> bool:
        return m in self._midx

    def oindex(self, x) -> int:
        try:
            return self._oidx[x]
        except (KeyError, TypeError):
            raise StructuralError(f"{self.name}: unknown object {x!r}") from None

    def mindex(self, m) -> int:
        try:
            return self._midx[m]
        except (KeyError, TypeError):
            raise StructuralError(f"{self.name}: unknown morphism {m!r}") from None

    def source(self, m):
        return self.objects[self.src[self.mindex(m)]]

    def target(self, m):
        return self.objects[self.tgt[self.mindex(m)]]

    def identity(self, x):
        return self.morphisms[self.ident[self.oindex(x)]]

    def compose(self, g, f):
        """``g o f``; raises when the pair is not composable."""
        h = self.compose_idx(np.array([self.mindex(g)]), np.array([self.mindex(f)]))[0]
        if h < 0:
            raise StructuralError(f"{self.name}: {g!r} o {f!r} is not composable")
        return self.morphisms[h]

    def compose_path(self, *ms):
        """Compose a path written right to left: ``compose_path(h, g, f) = h o g o f``."""
        out = ms[-1]
        for m in reversed(ms[:-1]):
            out = self.compose(m, out)
        return out

    @cached_property
    def _homs(self) -> dict:
        homs: dict = {}
        for i, m in enumerate(self.morphisms):
            homs.setdefault((self.src[i], self.tgt[i]), []).append(m)
        return {k: tuple(v) for k, v in homs.items()}

    def hom(self, x, y) -> tuple:
        return self._homs.get((self.oindex(x), self.oindex(y)), ())

    def inverse(self, m):
        """The two-sided inverse of ``m`` or ``None``."""
        x, y = self.source(m), self.target(m)
        for g in self.hom(y, x):
            if self.compose(g, m) == self.identity(x) and self.compose(m, g) == self.identity(y):
                return g
        return None

    @property
    def is_posetal(self) -> bool:
        return all(len(v) <= 1 for v in self._homs.values())

    @property
    def is_discrete(self) -> bool:
        return len(self.morphisms) == len(self.objects)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}: {len(self.objects)} objects, {len(self.morphisms)} morphisms>"


class FinCategory(Category):
    """Explicit finite category.

    ``morphisms`` is an iterable of ``(id, source, target)``; ``identities``
    maps each object to its identity morphism; ``compose`` maps ``(g, f)`` to
    ``g o f``.  Composites with identities that are left out of ``compose``
    are filled in from the unit laws.
    """

    def __init__(
        self,
        objects: Iterable[Hashable],
        morphisms: Iterable[tuple],
        identities: Mapping,
        compose: Mapping,
        name: str = "C",
        fill_units: bool = True,
    ):
        self.name = name
        self.objects = tuple(objects)
        if len(set(self.objects)) != len(self.objects):
            raise StructuralError(f"{name}: duplicate object identifiers")
        morphisms = list(morphisms)
        self.morphisms = tuple(m for m, _, _ in morphisms)
        if len(set(self.morphisms)) != len(self.morphisms):
            raise StructuralError(f"{name}: duplicate morphism identifiers")
        self.src = np.array([self.oindex(s) for _, s, _ in morphisms], dtype=np.int64)
        self.tgt = np.array([self.oindex(t) for _, _, t in morphisms], dtype=np.int64)
        missing = [x for x in self.objects if x not in identities]
        if missing:
            raise StructuralError(f"{name}: no identity declared for {missing[0]!r}")
        self.ident = np.array([self.mindex(identities[x]) for x in self.objects], dtype=np.int64)
        n = len(self.morphisms)
        table = np.full((n, n), -1, dtype=np.int64)
        for (g, f), h in compose.items():
            table[self.mindex(g), self.mindex(f)] = self.mindex(h)
        if fill_units:
            for f in range(n):
                i_t, i_s = self.ident[self.tgt[f]], self.ident[self.src[f]]
                if table[i_t, f] < 0:
                    table[i_t, f] = f
                if table[f, i_s] < 0:
                    table[f, i_s] = f
        table.setflags(write=False)
        self.table = table

    @classmethod
    def _from_arrays(cls, name, objects, morphisms, src, tgt, ident, table):
        c = cls.__new__(cls)
        c.name, c.objects, c.morphisms = name, tuple(objects), tuple(morphisms)
        c.src, c.tgt, c.ident = src, tgt, ident
        table = np.ascontiguousarray(table)
        table.setflags(write=False)
        c.table = table
        return c

    def compose_idx(self, g, f):
        return self.table[g, f]

    def composable_pairs(self):
        g, f = np.nonzero(self.table >= 0)
        return g, f, self.table[g, f]

    def composition_entries(self):
        """``((g, f), h)`` for every defined composite, in index order."""
        g, f, h = self.composable_pairs()
        ms = self.morphisms
        return [((ms[a], ms[b]), ms[c]) for a, b, c in zip(g, f, h)]

    def with_composite(self, g, f, h) -> "FinCategory":
        """Copy with a single composition entry replaced (used to build
        counterexamples)."""
        t = self.table.copy()
        t[self.mindex(g), self.mindex(f)] = self.mindex(h)
        return FinCategory._from_arrays(self.name, self.objects, self.morphisms,
                                        self.src, self.tgt, self.ident, t)

    @cached_property
    def _key(self):
        return (self.objects, self.morphisms, self.src.tobytes(), self.tgt.tobytes(),
                self.ident.tobytes(), self.table.tobytes())

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, FinCategory) and self._key == other._key

    def __hash__(self):
        return hash(self._key)


class ProductCategory(Category):
    """Cartesian product of two or more categories.

    Objects and morphisms are tuples of component identifiers.  Composition
    is computed componentwise from the factor tables.
    """

    def __init__(self, factors: Sequence[Category]):
        if len(factors) < 2:
            raise ValueError("ProductCategory needs at least two factors")
        self.factors = tuple(factors)
        self.name = " x ".join(_paren(f.name) for f in self.factors)
        self.objects = tuple(itertools.product(*(f.objects for f in self.factors)))
        self.morphisms = tuple(itertools.product(*(f.morphisms for f in self.factors)))
        self._mdims = np.array([len(f.morphisms) for f in self.factors], dtype=np.int64)
        self._odims = np.array([len(f.objects) for f in self.factors], dtype=np.int64)
        self._mstride = _strides(self._mdims)
        self._ostride = _strides(self._odims)
        comps = self._decode(np.arange(len(self.morphisms)))
        self.src = sum(f.src[c] * s for f, c, s in zip(self.factors, comps, self._ostride))
        self.tgt = sum(f.tgt[c] * s for f, c, s in zip(self.factors, comps, self._ostride))
        ocomps = [(np.arange(len(self.objects)) // s) % d for s, d in zip(self._ostride, self._odims)]
        self.ident = sum(f.ident[c] * s for f, c, s in zip(self.factors, ocomps, self._mstride))

    def _decode(self, idx):
        return [(idx // s) % d for s, d in zip(self._mstride, self._mdims)]

    def compose_idx(self, g, f):
        g = np.asarray(g)
        f = np.asarray(f)
        out = np.zeros(g.shape, dtype=np.int64)
        bad = np.zeros(g.shape, dtype=bool)
        for fac, gc, fc, s in zip(self.factors, self._decode(g), self._decode(f), self._mstride):
            h = fac.compose_idx(gc, fc)
            bad |= h < 0
            out += np.where(h < 0, 0, h) * s
        return np.where(bad, -1, out)

    def composable_pairs(self):
        parts = [fac.composable_pairs() for fac in self.factors]
        sizes = [len(p[0]) for p in parts]
        grids = np.meshgrid(*[np.arange(n) for n in sizes], indexing="ij")
        g = np.zeros(grids[0].size if grids else 0, dtype=np.int64)
        f = np.zeros_like(g)
        h = np.zeros_like(g)
        for (pg, pf, ph), grid, s in zip(parts, grids, self._mstride):
            sel = grid.ravel()
            g += pg[sel] * s
            f += pf[sel] * s
            h += ph[sel] * s
        return g, f, h

    @cached_property
    def _key(self):
        return ("product",) + tuple(f._key for f in self.factors)

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, ProductCategory) and self.factors == other.factors

    def __hash__(self):
        return hash(self._key)


def _paren(name):
    return f"({name})" if " x " in name else name


def _strides(dims):
    strides = np.ones(len(dims), dtype=np.int64)
    for i in range(len(dims) - 2, -1, -1):
        strides[i] = strides[i + 1] * dims[i + 1]
    return strides


def terminal() -> FinCategory:
    return FinCategory([TERMINAL_OBJECT], [(TERMINAL_ID, TERMINAL_OBJECT, TERMINAL_OBJECT)],
                       {TERMINAL_OBJECT: TERMINAL_ID}, {}, name="1")


def opposite(c: Category) -> Category:
    if isinstance(c, ProductCategory):
        return ProductCategory([opposite(f) for f in c.factors])
    name = c.name[:-3] if c.name.endswith("^op") else f"{_paren(c.name)}^op"
    return FinCategory._from_arrays(name, c.objects, c.morphisms, c.tgt, c.src, c.ident, c.table.T)


def product(*cats: Category) -> Category:
    """n-ary product; zero factors give the terminal category and a single
    factor is returned unchanged."""
    if not cats:
        return terminal()
    if len(cats) == 1:
        return cats[0]
    return ProductCategory(cats)


def discrete(objects, name="Disc") -> FinCategory:
    objects = list(objects)
    return FinCategory(objects, [(f"id_{x}", x, x) for x in objects],
                       {x: f"id_{x}" for x in objects}, {}, name=name)


def poset_category(elements, leq: Callable[[Any, Any], bool], name="Pos",
                   mor_name: Callable | None = None) -> FinCategory:
    """Thin category with a morphism ``x -> y`` exactly when ``leq(x, y)``."""
    elements = list(elements)
    mor_name = mor_name or (lambda x, y: f"{x}<={y}")
    arrows = {(x, y): mor_name(x, y) for x in elements for y in elements if leq(x, y)}
    comp = {}
    for (x, y), f in arrows.items():
        for z in elements:
            if (y, z) in arrows:
                if (x, z) not in arrows:
                    raise StructuralError(f"{name}: order is not transitive at {x}, {y}, {z}")
                comp[(arrows[(y, z)], f)] = arrows[(x, z)]
    for x in elements:
        if (x, x) not in arrows:
            raise StructuralError(f"{name}: order is not reflexive at {x}")
    return FinCategory(elements, [(m, x, y) for (x, y), m in arrows.items()],
                       {x: arrows[(x, x)] for x in elements}, comp, name=name)


def one_object_category(elements, mul, unit, name="M", obj="*") -> FinCategory:
    """Delooping of a finite monoid: one object, morphisms = elements."""
    elements = list(elements)
    return FinCategory([obj], [(e, obj, obj) for e in elements], {obj: unit},
                       {(g, f): mul(g, f) for g in elements for f in elements}, name=name)


def relabel(c: FinCategory, omap: Mapping, mmap: Mapping, name=None) -> FinCategory:
    return FinCategory._from_arrays(
        name or c.name,
        [omap[x] for x in c.objects],
        [mmap[m] for m in c.morphisms],
        c.src, c.tgt, c.ident, c.table,
    )


def random_poset_category(rng, n: int, p: float = 0.4, name="R") -> FinCategory:
    """Random partial order on ``n`` points: transitive closure of a random DAG."""
    rel = np.eye(n, dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            rel[i, j] = rng.random() < p
    for k in range(n):
        rel |= rel[:, [k]] & rel[[k], :]
    perm = rng.permutation(n)
    els = [f"o{perm[i]}" for i in range(n)]
    pos = {e: i for i, e in enumerate(els)}
    return poset_category(sorted(els), lambda x, y: bool(rel[pos[x], pos[y]]), name=name)


def validate_category(c: Category) -> Report:
    """Exhaustive check of the category laws."""
    rep = Report(f"category {c.name}")
    if isinstance(c, ProductCategory):
        for i, fac in enumerate(c.factors):
            rep.merge(validate_category(fac), prefix=f"factor{i}.")
        rep.checks.append("product")
        return rep
    ms, obs = c.morphisms, c.objects
    rep.checks += ["identity", "definedness", "endpoints", "unit", "associativity"]
    for i, x in enumerate(obs):
        m = c.ident[i]
        if c.src[m] != i or c.tgt[m] != i:
            rep.add("identity", (x, ms[m]), "identity does not go x -> x")
    bad_def, bad_ends = _kernels.table_scan(c.src, c.tgt, c.table)
    for g, f in bad_def:
        rep.add("definedness", (ms[g], ms[f]), "composite defined iff target(f) = source(g)")
    for g, f in bad_ends:
        rep.add("endpoints", (ms[g], ms[f]), f"composite {ms[c.table[g, f]]} has wrong endpoints")
    if bad_def.size:
        return rep  # unit/associativity scans assume a well-shaped table
    for f in _kernels.unit_scan(c.src, c.tgt, c.ident, c.table):
        rep.add("unit", (ms[f],), "id o f = f = f o id fails")
    for h, g, f in _kernels.assoc_scan(c.table):
        rep.add("associativity", (ms[h], ms[g], ms[f]))
    return rep


def same_category(a: Category, b: Category) -> bool:
    return a is b or a == b


# ---------------------------------------------------------------------------
# functors


class Functor:
    def __init__(self, source: Category, target: Category, object_map: Mapping,
                 morphism_map: Mapping, name: str = "F"):
        self.source, self.target, self.name = source, target, name
        try:
            self._omap = np.array([target.oindex(object_map[x]) for x in source.objects], dtype=np.int64)
            self._mmap = np.array([target.mindex(morphism_map[m]) for m in source.morphisms], dtype=np.int64)
        except KeyError as e:
            raise StructuralError(f"functor {name}: no image for {e.args[0]!r}") from None
        extra = set(object_map) - set(source.objects) if len(object_map) != len(source.objects) else ()
        if extra:
            raise StructuralError(f"functor {name}: unknown source object {next(iter(extra))!r}")
        if len(morphism_map) != len(source.morphisms):
            extra = [m for m in morphism_map if not source.has_morphism(m)]
            if extra:
                raise StructuralError(f"functor {name}: unknown source morphism {extra[0]!r}")

    @classmethod
    def _from_arrays(cls, source, target, omap, mmap, name):
        f = cls.__new__(cls)
        f.source, f.target, f.name = source, target, name
        f._omap, f._mmap = omap, mmap
        return f

    def obj(self, x):
        return self.target.objects[self._omap[self.source.oindex(x)]]

    def mor(self, m):
        return self.target.morphisms[self._mmap[self.source.mindex(m)]]

    __call__ = obj

    @property
    def object_map(self) -> dict:
        return {x: self.target.objects[i] for x, i in zip(self.source.objects, self._omap)}

    @property
    def morphism_map(self) -> dict:
        return {m: self.target.morphisms[i] for m, i in zip(self.source.morphisms, self._mmap)}

    def same_as(self, other: "Functor") -> bool:
        return (same_category(self.source, other.source) and same_category(self.target, other.target)
                and np.array_equal(self._omap, other._omap) and np.array_equal(self._mmap, other._mmap))

    def __repr__(self):
        return f"<Functor {self.name}: {self.source.name} -> {self.target.name}>"


def functor_from(source, target, obj_fn, mor_fn, name="F") -> Functor:
    return Functor(source, target, {x: obj_fn(x) for x in source.objects},
                   {m: mor_fn(m) for m in source.morphisms}, name=name)


def posetal_functor(source, target, obj_fn, name="F") -> Functor:
    """Functor into a thin category, determined by its object map."""
    def mor_fn(m):
        x, y = obj_fn(source.source(m)), obj_fn(source.target(m))
        hs = target.hom(x, y)
        if not hs:
            raise StructuralError(f"functor {name}: no morphism {x!r} -> {y!r} for image of {m!r}")
        return hs[0]
    return functor_from(source, target, obj_fn, mor_fn, name=name)


def identity_functor(c: Category) -> Functor:
    n = np.arange(len(c.objects), dtype=np.int64)
    m = np.arange(len(c.morphisms), dtype=np.int64)
    return Functor._from_arrays(c, c, n, m, f"id_{c.name}")


def compose_functors(g: Functor, f: Functor, name=None) -> Functor:
    """``g o f``."""
    if not same_category(f.target, g.source):
        raise StructuralError(f"cannot compose {g.name} o {f.name}: "
                              f"{f.target.name} != {g.source.name}")
    return Functor._from_arrays(f.source, g.target, g._omap[f._omap], g._mmap[f._mmap],
                                name or f"{g.name}.{f.name}")


def opposite_functor(f: Functor) -> Functor:
    return Functor._from_arrays(opposite(f.source), opposite(f.target), f._omap, f._mmap,
                                f"{f.name}^op")


def _flat_parts(cat: Category, arity: int) -> list:
    if arity == 1:
        return [cat]
    if arity == 0:
        return []
    assert isinstance(cat, ProductCategory) and len(cat.factors) == arity
    return list(cat.factors)


def _split(value, arities):
    """Split a flat product identifier into per-block identifiers."""
    if sum(arities) == 1:
        value = (value,)
    elif sum(arities) == 0:
        value = ()
    out, i = [], 0
    for k in arities:
        if k == 0:
            out.append(TERMINAL_OBJECT)
        elif k == 1:
            out.append(value[i])
        else:
            out.append(tuple(value[i:i + k]))
        i += k
    return out


def _join(parts, arities):
    flat = []
    for p, k in zip(parts, arities):
        if k == 1:
            flat.append(p)
        elif k > 1:
            flat.extend(p)
    if len(flat) == 1:
        return flat[0]
    return tuple(flat) if flat else None


def juxtapose(functors: Sequence[Functor], src_arities: Sequence[int],
              tgt_arities: Sequence[int], name=None) -> Functor:
    """Flat product functor.

    Block ``i`` of the source has ``src_arities[i]`` factors (1 = the
    category itself, 0 = terminal) and likewise for targets; the result acts
    between the flattened products.
    """
    src = product(*[p for f, k in zip(functors, src_arities) for p in _flat_parts(f.source, k)])
    tgt = product(*[p for f, k in zip(functors, tgt_arities) for p in _flat_parts(f.target, k)])

    def join_t(parts, kind):
        v = _join(parts, tgt_arities)
        if v is None:
            return TERMINAL_OBJECT if kind == "o" else TERMINAL_ID
        return v

    def obj_fn(x):
        parts = _split(x, src_arities)
        return join_t([f.obj(p) if k else f.obj(TERMINAL_OBJECT) for f, p, k in zip(functors, parts, src_arities)], "o")

    def mor_fn(m):
        parts = _split(m, src_arities)
        return join_t([f.mor(p if k else TERMINAL_ID) for f, p, k in zip(functors, parts, src_arities)], "m")

    return functor_from(src, tgt, obj_fn, mor_fn,
                        name=name or " x ".join(f.name for f in functors))


def product_functor(*functors: Functor, name=None) -> Functor:
    """``F1 x ... x Fn`` between the (unflattened) products."""
    if len(functors) == 1:
        return functors[0]
    src = product(*[f.source for f in functors])
    tgt = product(*[f.target for f in functors])
    return functor_from(src, tgt,
                        lambda x: tuple(f.obj(a) for f, a in zip(functors, x)),
                        lambda m: tuple(f.mor(a) for f, a in zip(functors, m)),
                        name=name or " x ".join(f.name for f in functors))


def projection(c: ProductCategory, i: int) -> Functor:
    fac = c.factors[i]
    return functor_from(c, fac, lambda x: x[i], lambda m: m[i], name=f"pi{i}")


def constant_functor(source: Category, target: Category, x, name=None) -> Functor:
    idx = target.identity(x)
    return functor_from(source, target, lambda _: x, lambda _: idx, name=name or f"const_{x}")


def check_functor(f: Functor) -> Report:
    s, t = f.source, f.target
    rep = Report(f"functor {f.name}")
    rep.checks += ["endpoints", "identities", "composition"]
    bad = np.nonzero((t.src[f._mmap] != f._omap[s.src]) | (t.tgt[f._mmap] != f._omap[s.tgt]))[0]
    for i in bad:
        rep.add("endpoints", (s.morphisms[i],), f"image {t.morphisms[f._mmap[i]]} has wrong endpoints")
    bad = np.nonzero(f._mmap[s.ident] != t.ident[f._omap])[0]
    for i in bad:
        rep.add("identities", (s.objects[i],))
    if rep.violations:
        return rep
    g_, f_, gf = s.composable_pairs()
    if isinstance(t, FinCategory):
        rows = _kernels.pair_scan(f._mmap[gf], f._mmap[g_], f._mmap[f_], t.table)
    else:
        rows = np.nonzero(t.compose_idx(f._mmap[g_], f._mmap[f_]) != f._mmap[gf])[0]
    for r in rows[:50]:
        rep.add("composition", (s.morphisms[g_[r]], s.morphisms[f_[r]]))
    return rep


# ---------------------------------------------------------------------------
# natural transformations


class NatTrans:
    """Family of components ``F(x) -> G(x)`` indexed by source objects."""

    def __init__(self, source: Functor, target: Functor, components: Mapping, name="theta"):
        if not (same_category(source.source, target.source) and same_category(source.target, target.target)):
            raise StructuralError(f"{name}: {source.name} and {target.name} are not parallel")
        self.source_functor, self.target_functor, self.name = source, target, name
        dom = source.source
        unknown = [x for x in components if not dom.has_object(x)]
        if unknown:
            raise StructuralError(f"{name}: component indexed by unknown object {unknown[0]!r}")
        try:
            self._comp = np.array([source.target.mindex(components[x]) for x in dom.objects], dtype=np.int64)
        except KeyError as e:
            raise StructuralError(f"{name}: missing component at {e.args[0]!r}") from None

    @classmethod
    def _from_array(cls, source, target, comp, name):
        t = cls.__new__(cls)
        t.source_functor, t.target_functor, t.name = source, target, name
        t._comp = np.asarray(comp, dtype=np.int64)
        return t

    @property
    def category(self) -> Category:
        return self.source_functor.target

    @property
    def index_category(self) -> Category:
        return self.source_functor.source

    def __getitem__(self, x):
        return self.category.morphisms[self._comp[self.index_category.oindex(x)]]

    @property
    def components(self) -> dict:
        ms = self.category.morphisms
        return {x: ms[i] for x, i in zip(self.index_category.objects, self._comp)}

    def same_as(self, other: "NatTrans") -> bool:
        return (self.source_functor.same_as(other.source_functor)
                and self.target_functor.same_as(other.target_functor)
                and np.array_equal(self._comp, other._comp))

    def differences(self, other: "NatTrans") -> list:
        ms = self.category.morphisms
        return [(x, ms[a], other.category.morphisms[b])
                for x, a, b in zip(self.index_category.objects, self._comp, other._comp) if a != b]

    def __repr__(self):
        return f"<NatTrans {self.name}: {self.source_functor.name} => {self.target_functor.name}>"


def check_nat_trans(t: NatTrans) -> Report:
    F, G = t.source_functor, t.target_functor
    C, D = F.source, F.target
    rep = Report(f"natural transformation {t.name}")
    rep.checks += ["component endpoints", "naturality"]
    bad = np.nonzero((D.src[t._comp] != F._omap) | (D.tgt[t._comp] != G._omap))[0]
    for i in bad:
        rep.add("component endpoints", (C.objects[i], D.morphisms[t._comp[i]]),
                f"expected {F.target.objects[F._omap[i]]} -> {D.objects[G._omap[i]]}")
    if rep.violations:
        return rep
    # G(u) o t_x == t_y o F(u) for every u: x -> y
    top = t._comp[C.src]
    right = G._mmap
    left = F._mmap
    bottom = t._comp[C.tgt]
    if isinstance(D, FinCategory):
        rows = _kernels.square_scan(top, left, right, bottom, D.table)
    else:
        a = D.compose_idx(right, top)
        b = D.compose_idx(bottom, left)
        rows = np.nonzero((a != b) | (a < 0))[0]
    for r in rows[:50]:
        rep.add("naturality", (C.morphisms[r],),
                f"{D.morphisms[D.compose_idx(right[r], top[r])]} != {D.morphisms[D.compose_idx(bottom[r], left[r])]}")
    return rep


def identity_nat(f: Functor) -> NatTrans:
    return NatTrans._from_array(f, f, f.target.ident[f._omap], f"id_{f.name}")


def vertical(t2: NatTrans, t1: NatTrans, name=None) -> NatTrans:
    """``t2 . t1`` (first t1, then t2)."""
    if not t1.target_functor.same_as(t2.source_functor):
        raise StructuralError(f"cannot stack {t2.name} on {t1.name}: "
                              f"{t1.target_functor.name} != {t2.source_functor.name}")
    comp = t1.category.compose_idx(t2._comp, t1._comp)
    return NatTrans._from_array(t1.source_functor, t2.target_functor, comp, name or f"{t2.name}.{t1.name}")


def whisker_left(k: Functor, t: NatTrans, name=None) -> NatTrans:
    """``K t``: components ``K(t_x)``."""
    return NatTrans._from_array(compose_functors(k, t.source_functor), compose_functors(k, t.target_functor),
                                k._mmap[t._comp], name or f"{k.name}{t.name}")


def whisker_right(t: NatTrans, l: Functor, name=None) -> NatTrans:
    """``t L``: components ``t_{L(x)}``."""
    return NatTrans._from_array(compose_functors(t.source_functor, l), compose_functors(t.target_functor, l),
                                t._comp[l._omap], name or f"{t.name}{l.name}")


def horizontal(s: NatTrans, t: NatTrans, name=None) -> NatTrans:
    """``s * t`` for ``t: F => F'`` and ``s: G => G'``: ``G'(t) . s F``."""
    return vertical(whisker_left(s.target_functor, t), whisker_right(s, t.source_functor), name=name)


def nat_from(source: Functor, target: Functor, fn, name="theta") -> NatTrans:
    return NatTrans(source, target, {x: fn(x) for x in source.source.objects}, name=name)


def posetal_nat(source: Functor, target: Functor, name="theta") -> NatTrans:
    """The unique transformation between functors into a thin category."""
    D = source.target

    def comp(x):
        hs = D.hom(source.obj(x), target.obj(x))
        if not hs:
            raise StructuralError(f"{name}: no morphism {source.obj(x)!r} -> {target.obj(x)!r}")
        return hs[0]
    return nat_from(source, target, comp, name=name)


def is_invertible(t: NatTrans) -> bool:
    return all(t.category.inverse(m) is not None for m in t.components.values())


def inverse_nat(t: NatTrans, name=None) -> NatTrans:
    comps = {}
    for x, m in t.components.items():
        inv = t.category.inverse(m)
        if inv is None:
            raise StructuralError(f"{t.name}: component at {x!r} is not invertible")
        comps[x] = inv
    return NatTrans(t.target_functor, t.source_functor, comps, name=name or f"{t.name}^-1")


def all_nat_trans(F: Functor, G: Functor, limit: int = 10_000) -> list:
    """Every natural transformation ``F => G`` (backtracking; small inputs)."""
    C, D = F.source, F.target
    objs = list(C.objects)
    cands = [D.hom(F.obj(x), G.obj(x)) for x in objs]
    pos = {x: i for i, x in enumerate(objs)}
    constraints = [[] for _ in objs]
    for u in C.morphisms:
        i, j = pos[C.source(u)], pos[C.target(u)]
        constraints[max(i, j)].append((u, i, j))
    out, chosen = [], [None] * len(objs)

    def rec(k):
        if len(out) >= limit:
            return
        if k == len(objs):
            out.append(NatTrans(F, G, dict(zip(objs, chosen)), name=f"{F.name}=>{G.name}"))
            return
        for m in cands[k]:
            chosen[k] = m
            if all(D.compose(G.mor(u), chosen[i]) == D.compose(chosen[j], F.mor(u))
                   for u, i, j in constraints[k]):
                rec(k + 1)
        chosen[k] = None

    rec(0)
    return out


# ---------------------------------------------------------------------------
# profunctors


class Profunctor:
    """``M: source -|-> target``, i.e. a functor ``source^op x target -> Set``.

    ``left(u, y, e)`` acts by ``u: x' -> x`` in the source on ``e in M(x, y)``;
    ``right(v, x, e)`` acts by ``v: y -> y'`` in the target.
    """

    def __init__(self, source: Category, target: Category, value_set, left, right,
                 name="M", kind=None):
        self.source, self.target, self.name = source, target, name
        self._value_set, self._left, self._right = value_set, left, right
        self.kind = kind

    def value_set(self, x, y) -> tuple:
        return self._value_set(x, y)

    def left(self, u, y, e):
        return self._left(u, y, e)

    def right(self, v, x, e):
        return self._right(v, x, e)

    @property
    def value_sets(self) -> dict:
        return {(x, y): tuple(self.value_set(x, y)) for x in self.source.objects for y in self.target.objects}

    def __repr__(self):
        return f"<Profunctor {self.name}: {self.source.name} -|-> {self.target.name}>"


def hom_profunctor(c: Category) -> Profunctor:
    return Profunctor(c, c, c.hom,
                      lambda u, y, e: c.compose(e, u),
                      lambda v, x, e: c.compose(v, e),
                      name=f"Hom_{c.name}", kind=("hom", c))


def companion(f: Functor) -> Profunctor:
    """``(a, b) |-> B(F a, b)``."""
    B = f.target
    return Profunctor(f.source, B, lambda a, b: B.hom(f.obj(a), b),
                      lambda u, b, e: B.compose(e, f.mor(u)),
                      lambda v, a, e: B.compose(v, e),
                      name=f"{f.name}_*")


def conjoint(f: Functor) -> Profunctor:
    """``(b, a) |-> B(b, F a)``."""
    B = f.target
    return Profunctor(B, f.source, lambda b, a: B.hom(b, f.obj(a)),
                      lambda u, a, e: B.compose(e, u),
                      lambda h, b, e: B.compose(f.mor(h), e),
                      name=f"{f.name}^*")


def validate_profunctor(m: Profunctor) -> Report:
    """Functoriality of both actions and their commutation (exhaustive)."""
    A, B = m.source, m.target
    rep = Report(f"profunctor {m.name}")
    rep.checks += ["left identity", "right identity", "left composition", "right composition", "interchange"]
    vs = m.value_sets
    for (x, y), es in vs.items():
        for e in es:
            if m.left(A.identity(x), y, e) != e:
                rep.add("left identity", (x, y, e))
            if m.right(B.identity(y), x, e) != e:
                rep.add("right identity", (x, y, e))
    ag, af, agf = A.composable_pairs()
    for g, f, gf in zip(ag, af, agf):
        g, f, gf = A.morphisms[g], A.morphisms[f], A.morphisms[gf]
        x = A.target(g)
        for y in B.objects:
            for e in vs[(x, y)]:
                if m.left(gf, y, e) != m.left(f, y, m.left(g, y, e)):
                    rep.add("left composition", (g, f, y, e))
    bg, bf, bgf = B.composable_pairs()
    for g, f, gf in zip(bg, bf, bgf):
        g, f, gf = B.morphisms[g], B.morphisms[f], B.morphisms[gf]
        y = B.source(f)
        for x in A.objects:
            for e in vs[(x, y)]:
                if m.right(gf, x, e) != m.right(g, x, m.right(f, x, e)):
                    rep.add("right composition", (g, f, x, e))
    for u in A.morphisms:
        x = A.target(u)
        for v in B.morphisms:
            y = B.source(v)
            for e in vs[(x, y)]:
                if m.right(v, A.source(u), m.left(u, y, e)) != m.left(u, B.target(v), m.right(v, x, e)):
                    rep.add("interchange", (u, v, e))
    return rep


def same_profunctor(m: Profunctor, n: Profunctor) -> bool:
    if not (same_category(m.source, n.source) and same_category(m.target, n.target)):
        return False
    vm, vn = m.value_sets, n.value_sets
    if {k: set(v) for k, v in vm.items()} != {k: set(v) for k, v in vn.items()}:
        return False
    for u in m.source.morphisms:
        x = m.source.target(u)
        for y in m.target.objects:
            for e in vm[(x, y)]:
                if m.left(u, y, e) != n.left(u, y, e):
                    return False
    for v in m.target.morphisms:
        y = m.target.source(v)
        for x in m.source.objects:
            for e in vm[(x, y)]:
                if m.right(v, x, e) != n.right(v, x, e):
                    return False
    return True
