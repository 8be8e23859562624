"""Brute-force reference implementations used as independent oracles.

Nothing here touches the vectorised scans; every law is a plain loop over
the explicit tables.
"""

import itertools


def category_violations(c):
    """Set of ``(law, witness)`` pairs by direct enumeration."""
    ms = c.morphisms
    src = {m: c.objects[c.src[i]] for i, m in enumerate(ms)}
    tgt = {m: c.objects[c.tgt[i]] for i, m in enumerate(ms)}
    comp = {}
    out = set()
    for i, g in enumerate(ms):
        for j, f in enumerate(ms):
            h = c.table[i, j]
            composable = tgt[f] == src[g]
            if (h >= 0) != composable:
                out.add(("definedness", (g, f)))
            elif h >= 0:
                comp[(g, f)] = ms[h]
                if src[ms[h]] != src[f] or tgt[ms[h]] != tgt[g]:
                    out.add(("endpoints", (g, f)))
    if any(law == "definedness" for law, _ in out):
        return out
    ident = {x: ms[c.ident[k]] for k, x in enumerate(c.objects)}
    for f in ms:
        if comp.get((ident[tgt[f]], f)) != f or comp.get((f, ident[src[f]])) != f:
            out.add(("unit", (f,)))
    for h, g, f in itertools.product(ms, repeat=3):
        if (g, f) in comp and (h, g) in comp:
            if comp.get((h, comp[(g, f)])) != comp.get((comp[(h, g)], f)):
                out.add(("associativity", (h, g, f)))
    return out


def is_functor(F):
    C, D = F.source, F.target
    for m in C.morphisms:
        if D.source(F.mor(m)) != F.obj(C.source(m)) or D.target(F.mor(m)) != F.obj(C.target(m)):
            return False
    for x in C.objects:
        if F.mor(C.identity(x)) != D.identity(F.obj(x)):
            return False
    for g in C.morphisms:
        for f in C.morphisms:
            if C.target(f) == C.source(g):
                if F.mor(C.compose(g, f)) != D.compose(F.mor(g), F.mor(f)):
                    return False
    return True


def is_natural(t):
    F, G = t.source_functor, t.target_functor
    C, D = F.source, F.target
    for u in C.morphisms:
        x, y = C.source(u), C.target(u)
        if D.compose(t[y], F.mor(u)) != D.compose(G.mor(u), t[x]):
            return False
    return True


def subsets(labels):
    return [frozenset(s) for r in range(len(labels) + 1) for s in itertools.combinations(labels, r)]


def subset_name(s):
    return "S_" + "".join(sorted(s))


def galois_pairs(P, Q):
    """All monotone pairs ``(L, R)`` between two posets (given as objects and
    ``leq`` functions) with ``L x <= y  iff  x <= R y``."""
    (ps, pleq), (qs, qleq) = P, Q
    mono = lambda xs, ys, lx, ly: [dict(zip(xs, img)) for img in itertools.product(ys, repeat=len(xs))
                                   if all(ly(img[i], img[j]) for i in range(len(xs)) for j in range(len(xs))
                                          if lx(xs[i], xs[j]))]
    out = []
    for L in mono(ps, qs, pleq, qleq):
        for R in mono(qs, ps, qleq, pleq):
            if all(qleq(L[x], y) == pleq(x, R[y]) for x in ps for y in qs):
                out.append((L, R))
    return out


def extranatural_ok(e):
    """Outer square of the extranaturality hexagon for every triple of
    morphisms (not only generators): the route through ``beta_{c'}`` with
    ``h`` and ``g`` applied after must equal the route through ``beta_c``
    with ``f`` on the contravariant slot and ``h``, ``g`` applied before."""
    fr = e.frame
    C, A, B, D = fr.C, fr.A, fr.B, fr.D
    for f in C.morphisms:
        c, c2 = C.source(f), C.target(f)
        for h in A.morphisms:
            a, a2 = A.source(h), A.target(h)
            for g in B.morphisms:
                b, b2 = B.source(g), B.target(g)
                one = D.compose(fr.q_mor(h, B.identity(b), g),
                                D.compose(e[(c2, a, b)], fr.p_mor(f, C.identity(c2), A.identity(a))))
                two = D.compose(fr.q_mor(A.identity(a2), g, B.identity(b2)),
                                D.compose(e[(c, a2, b2)], fr.p_mor(C.identity(c), f, h)))
                if one != two:
                    return False
    return True
