"""Built-in closed monoidal categories, set-map adjunction strings, and the
search for a meet-preserving map that does not preserve implication."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .adjoint import Adjunction, galois_connection
from .closedmon import (
    AdjunctionString,
    ClosedMonoidalCategory,
    MonoidalCategory,
    MonoidalFunctorData,
    closed_structure_operator,
)
from .fincat import (
    FinCategory,
    StructuralError,
    compose_functors,
    functor_from,
    identity_functor,
    one_object_category,
    opposite,
    poset_category,
    posetal_functor,
    posetal_nat,
    product,
    product_functor,
)
from .twovar import TwoVarAdjunctionR


def posetal_closed(P: FinCategory, tensor, unit, hom, name=None) -> ClosedMonoidalCategory:
    """Closed structure on a thin category from object-level operations."""
    name = name or P.name
    T = posetal_functor(product(P, P), P, lambda x: tensor(*x), name="(x)")
    H = posetal_functor(product(opposite(P), P), P, lambda x: hom(*x), name="-o")
    mon = MonoidalCategory(P, T, unit, name=name)

    def only(x, y, what):
        hs = P.hom(x, y)
        if not hs:
            raise StructuralError(f"{name}: no {what} morphism {x!r} -> {y!r}")
        return hs[0]

    ev = {(c, a): only(tensor(c, hom(c, a)), a, "ev") for c in P.objects for a in P.objects}
    coev = {(c, a): only(a, hom(c, tensor(c, a)), "coev") for c in P.objects for a in P.objects}
    return ClosedMonoidalCategory(mon, H, ev, coev, name=name)


# ---------------------------------------------------------------------------
# powersets


def subset_name(s) -> str:
    return "S_" + "".join(sorted(s))


def _labels(xs):
    xs = [str(x) for x in xs]
    if any(len(x) != 1 for x in xs) or len(set(xs)) != len(xs):
        raise StructuralError(f"set elements must be distinct single characters, got {xs}")
    return sorted(xs)


def powerset_category(xs, name=None) -> FinCategory:
    xs = _labels(xs)
    subs = [subset_name(c) for k in range(len(xs) + 1) for c in itertools.combinations(xs, k)]
    return poset_category(subs, lambda a, b: set(a[2:]) <= set(b[2:]), name=name or f"P({''.join(xs)})")


def powerset(xs, name=None) -> ClosedMonoidalCategory:
    """Heyting structure on subsets: meet, top, ``c => a = (X - c) | a``.

    ``xs`` is an int ``n`` (elements ``0..n-1``) or an iterable of
    single-character labels.
    """
    if isinstance(xs, int):
        xs = [str(i) for i in range(xs)]
    xs = _labels(xs)
    P = powerset_category(xs, name=name)
    full = set(xs)
    el = lambda s: set(s[2:])
    return posetal_closed(P, lambda c, a: subset_name(el(c) & el(a)), subset_name(full),
                          lambda c, a: subset_name((full - el(c)) | el(a)), name=P.name)


@dataclass
class SetMapData:
    """Everything attached to a map of finite sets ``f: X -> Y``.

    ``inverse = f^{-1}: P(Y) -> P(X)``, ``lower = f_!`` (direct image),
    ``upper = f_*`` (universal image), with ``f_! -| f^{-1} -| f_*``.
    """

    X: ClosedMonoidalCategory
    Y: ClosedMonoidalCategory
    inverse: object
    lower: object
    upper: object
    adj_lower: Adjunction
    adj_upper: Adjunction
    omega: object
    mon: MonoidalFunctorData

    def string(self) -> AdjunctionString:
        """``f_! -| f* -| f_*`` with ``f* = f^{-1}``."""
        return AdjunctionString(self.X, self.Y, self.inverse, lower=self.adj_lower, upper=self.adj_upper)

    def shriek_string(self) -> AdjunctionString:
        """``f* -| f_* -| f^!`` realised as ``f_! -| f^{-1} -| f_*``.

        Universal image has no right adjoint in general, so the string is
        shifted: the distinguished functor is the direct image ``P(X) -> P(Y)``.
        """
        return AdjunctionString(self.Y, self.X, self.lower, upper=self.adj_lower, shriek=self.adj_upper)


def set_map_adjunctions(f: dict, xs=None, ys=None) -> SetMapData:
    xs = _labels(xs if xs is not None else f.keys())
    ys = _labels(ys if ys is not None else set(f.values()))
    f = {str(k): str(v) for k, v in f.items()}
    if set(f) != set(xs) or not set(f.values()) <= set(ys):
        raise StructuralError(f"map {f} is not a function {xs} -> {ys}")
    PX, PY = powerset(xs), powerset(ys)
    el = lambda s: set(s[2:])
    inv = posetal_functor(PY.C, PX.C, lambda s: subset_name({x for x in xs if f[x] in el(s)}), name="f*")
    low = posetal_functor(PX.C, PY.C, lambda s: subset_name({f[x] for x in el(s)}), name="f_!")
    up = posetal_functor(PX.C, PY.C, lambda s: subset_name({y for y in ys if all(x in el(s) for x in xs if f[x] == y)}),
                         name="f_*")
    adj_lower = galois_connection(low, inv, name="f_! -| f*")
    adj_upper = galois_connection(inv, up, name="f* -| f_*")
    omega = posetal_nat(compose_functors(PX.tensor, product_functor(inv, inv)), compose_functors(inv, PY.tensor),
                        name="omega")
    mon = MonoidalFunctorData(PX, PY, inv, omega, name="f*")
    return SetMapData(PX, PY, inv, low, up, adj_lower, adj_upper, omega, mon)


# ---------------------------------------------------------------------------
# chains, groups, deloopings


def chain(N: int) -> ClosedMonoidalCategory:
    """``{0..N}`` with a morphism ``x -> y`` iff ``x >= y``; truncated addition
    ``min(a+b, N)``, unit ``0`` and ``[a, b] = max(b - a, 0)``."""
    els = [str(i) for i in range(N + 1)]
    P = poset_category(els, lambda x, y: int(x) >= int(y), name=f"chain({N})", mor_name=lambda x, y: f"{x}>={y}")
    return posetal_closed(P, lambda a, b: str(min(int(a) + int(b), N)), "0",
                          lambda a, b: str(max(int(b) - int(a), 0)), name=f"chain({N})")


def cyclic_group(n: int):
    els = [str(i) for i in range(n)]
    return els, lambda g, h: str((int(g) + int(h)) % n)


def symmetric_group(n: int):
    """Permutations of ``1..n`` written as strings of images; ``g h`` is ``g`` after ``h``."""
    perms = ["".join(map(str, p)) for p in itertools.permutations(range(1, n + 1))]
    return perms, lambda g, h: "".join(g[int(h[i]) - 1] for i in range(n))


def _group_structure(elements, mul, name):
    els = list(elements)
    for g, h in itertools.product(els, els):
        if mul(g, h) not in els:
            raise StructuralError(f"{name}: {g}*{h} = {mul(g, h)!r} is not an element")
    for g, h, k in itertools.product(els, els, els):
        if mul(mul(g, h), k) != mul(g, mul(h, k)):
            raise StructuralError(f"{name}: table is not associative at ({g}, {h}, {k})")
    units = [e for e in els if all(mul(e, g) == g == mul(g, e) for g in els)]
    if not units:
        raise StructuralError(f"{name}: no identity element")
    e = units[0]
    inv = {}
    for g in els:
        cands = [h for h in els if mul(g, h) == e == mul(h, g)]
        if not cands:
            raise StructuralError(f"{name}: {g} has no inverse")
        inv[g] = cands[0]
    return e, inv


def group_category(elements, mul, name="C_G") -> ClosedMonoidalCategory:
    """Discrete category on a finite group with ``[g, h]_l = g^-1 h``; the
    right-sided structure ``[g, h]_r = h g^-1`` is attached as ``.right``."""
    els = list(elements)
    e, inv = _group_structure(els, mul, name)
    C = FinCategory(els, [(f"id_{g}", g, g) for g in els], {g: f"id_{g}" for g in els}, {}, name=name)
    idm = lambda g: f"id_{g}"
    obj = lambda m: m[3:]
    T = functor_from(product(C, C), C, lambda x: mul(*x), lambda m: idm(mul(obj(m[0]), obj(m[1]))), name="(x)")
    H = functor_from(product(opposite(C), C), C, lambda x: mul(inv[x[0]], x[1]),
                     lambda m: idm(mul(inv[obj(m[0])], obj(m[1]))), name="[-,-]_l")
    Hr = functor_from(product(C, opposite(C)), C, lambda x: mul(x[0], inv[x[1]]),
                      lambda m: idm(mul(obj(m[0]), inv[obj(m[1])])), name="[-,-]_r")
    right = TwoVarAdjunctionR(T, Hr, lambda b, c: idm(c), lambda b, a: idm(a), name=f"{name}.right")
    mon = MonoidalCategory(C, T, e, name=name)
    ev = {(c, a): idm(a) for c in els for a in els}
    coev = {(c, a): idm(a) for c in els for a in els}
    return ClosedMonoidalCategory(mon, H, ev, coev, name=name, right=right)


def delooping(n: int) -> ClosedMonoidalCategory:
    """One object ``*`` with morphisms ``Z/n``; ``f (x) g = f + g``,
    ``[f, g] = f + g``, ``ev`` and ``coev`` trivial.  Not thin, so every
    square is a genuine equation."""
    els = [str(i) for i in range(n)]
    add = lambda g, f: str((int(g) + int(f)) % n)
    C = one_object_category(els, add, "0", name=f"B(Z/{n})")
    T = functor_from(product(C, C), C, lambda x: "*", lambda m: add(*m), name="(x)")
    H = functor_from(product(opposite(C), C), C, lambda x: "*", lambda m: add(*m), name="[-,-]")
    mon = MonoidalCategory(C, T, "*", name=C.name)
    return ClosedMonoidalCategory(mon, H, {("*", "*"): "0"}, {("*", "*"): "0"}, name=C.name)


def parallel_arrows() -> FinCategory:
    """Objects ``0, 1``; ``s: 1 -> 1`` with ``s s = id``; ``u, su: 0 -> 1``.

    Small non-thin category used to build law violations."""
    mors = [("id0", "0", "0"), ("id1", "1", "1"), ("s", "1", "1"), ("u", "0", "1"), ("su", "0", "1")]
    comp = {("s", "s"): "id1", ("s", "u"): "su", ("s", "su"): "u"}
    return FinCategory(["0", "1"], mors, {"0": "id0", "1": "id1"}, comp, name="Par")


# ---------------------------------------------------------------------------
# Heyting algebras and the implication search


def _posets(n: int):
    """Every partial order on ``0..n-1`` in which ``i <= j`` implies ``i <= j`` as integers."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for bits in range(1 << len(pairs)):
        leq = np.eye(n, dtype=bool)
        for k, (i, j) in enumerate(pairs):
            if bits >> k & 1:
                leq[i, j] = True
        if np.array_equal(leq, (leq.astype(int) @ leq.astype(int)) > 0):
            yield leq


def _meet_table(leq):
    n = len(leq)
    meet = np.full((n, n), -1)
    for a in range(n):
        for b in range(n):
            lower = [x for x in range(n) if leq[x, a] and leq[x, b]]
            top = [x for x in lower if all(leq[y, x] for y in lower)]
            if len(top) != 1:
                return None
            meet[a, b] = top[0]
    return meet


def _join_table(leq):
    return _meet_table(leq.T.copy())


def _canonical(leq):
    n = len(leq)
    return min(tuple(leq[np.ix_(p, p)].ravel()) for p in map(list, itertools.permutations(range(n))))


def distributive_lattices(max_size: int):
    """All distributive lattices with at most ``max_size`` elements, up to
    isomorphism, as ``(leq, meet, join)`` matrices.  Found by enumerating
    partial orders, not from a list."""
    out = []
    for n in range(1, max_size + 1):
        seen = set()
        for leq in _posets(n):
            meet, join = _meet_table(leq), _join_table(leq)
            if meet is None or join is None:
                continue
            if any(meet[a, join[b, c]] != join[meet[a, b], meet[a, c]]
                   for a in range(n) for b in range(n) for c in range(n)):
                continue
            key = _canonical(leq)
            if key in seen:
                continue
            seen.add(key)
            out.append((leq, meet, join))
    return out


def heyting_closed(leq, meet, name="L") -> ClosedMonoidalCategory:
    """A finite distributive lattice as a closed monoidal category; the
    implication is found by search: ``a => b = max{x : x & a <= b}``."""
    n = len(leq)
    els = [f"h{i}" for i in range(n)]
    idx = {e: i for i, e in enumerate(els)}
    top = next(i for i in range(n) if all(leq[j, i] for j in range(n)))

    def imp(a, b):
        cands = [x for x in range(n) if leq[meet[x, a], b]]
        best = [x for x in cands if all(leq[y, x] for y in cands)]
        return best[0]

    P = poset_category(els, lambda x, y: bool(leq[idx[x], idx[y]]), name=name)
    return posetal_closed(P, lambda a, b: els[meet[idx[a], idx[b]]], els[top],
                          lambda a, b: els[imp(idx[a], idx[b])], name=name)


@dataclass
class HeytingSearch:
    """Outcome of the search; ``found`` is ``None`` when nothing turned up."""

    bound: int
    lattices: int
    maps_tested: int
    counterexamples: int
    found: "HeytingCounterexample | None"


@dataclass
class HeytingCounterexample:
    X: ClosedMonoidalCategory
    Y: ClosedMonoidalCategory
    f_star: object
    f_lower: object
    adj: Adjunction
    mon: MonoidalFunctorData
    witness: tuple  # (y, y') with f*(y => y') != f*y => f*y'


def search_nonclosed_map(max_size: int = 5) -> HeytingSearch:
    """Exhaustive scan of maps ``f*: Y -> X`` between Heyting algebras of at
    most ``max_size`` elements that preserve order, binary meets and top.

    Such a map has a left adjoint (finite lattices) and its ``omega`` is an
    identity, so it is strong monoidal; the scan looks for one with
    ``f*(y => y') != f*y => f*y'``.  The first hit (smallest total size,
    then lexicographic) is returned together with the count of all hits.
    """
    lats = distributive_lattices(max_size)
    imps = []
    for leq, meet, _ in lats:
        n = len(leq)
        imp = np.zeros((n, n), dtype=int)
        for a in range(n):
            for b in range(n):
                cands = [x for x in range(n) if leq[meet[x, a], b]]
                imp[a, b] = next(x for x in cands if all(leq[y, x] for y in cands))
        imps.append(imp)
    order = sorted(itertools.product(range(len(lats)), repeat=2), key=lambda p: (len(lats[p[0]][0]) + len(lats[p[1]][0]), p))
    tested = hits = 0
    first = None
    for iy, ix in order:
        ly, lx = lats[iy], lats[ix]
        ny, nx = len(ly[0]), len(lx[0])
        topy = next(i for i in range(ny) if all(ly[0][j, i] for j in range(ny)))
        topx = next(i for i in range(nx) if all(lx[0][j, i] for j in range(nx)))
        for fm in itertools.product(range(nx), repeat=ny):
            if fm[topy] != topx:
                continue
            if any(lx[1][fm[a], fm[b]] != fm[ly[1][a, b]] for a in range(ny) for b in range(ny)):
                continue  # meet preservation (implies monotone)
            tested += 1
            bad = [(a, b) for a in range(ny) for b in range(ny) if fm[imps[iy][a, b]] != imps[ix][fm[a], fm[b]]]
            if bad:
                hits += 1
                if first is None:
                    first = (iy, ix, fm, bad[0])
    found = _realise(lats, first) if first else None
    return HeytingSearch(max_size, len(lats), tested, hits, found)


def _realise(lats, first) -> HeytingCounterexample:
    iy, ix, fm, (a, b) = first
    ly, lx = lats[iy], lats[ix]
    Y = heyting_closed(ly[0], ly[1], name=f"L{len(ly[0])}_{iy}")
    X = heyting_closed(lx[0], lx[1], name=f"L{len(lx[0])}_{ix}'")
    ymap = {f"h{i}": f"h{fm[i]}" for i in range(len(fm))}
    fs = posetal_functor(Y.C, X.C, lambda y: ymap[y], name="f*")

    def lower(x):
        # least y with x <= f*(y)
        cands = [y for y in Y.C.objects if X.C.hom(x, fs.obj(y))]
        return next(y for y in cands if all(Y.C.hom(y, z) for z in cands))

    fl = posetal_functor(X.C, Y.C, lower, name="f_!")
    adj = galois_connection(fl, fs, name="f_! -| f*")
    omega = posetal_nat(compose_functors(X.tensor, product_functor(fs, fs)), compose_functors(fs, Y.tensor),
                        name="omega")
    mon = MonoidalFunctorData(X, Y, fs, omega, name="f*")
    return HeytingCounterexample(X, Y, fs, fl, adj, mon, (f"h{a}", f"h{b}"))
