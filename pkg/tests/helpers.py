"""Small non-thin fixtures shared by several test modules."""

from catconj.adjoint import Adjunction
from catconj.fincat import functor_from, identity_functor, nat_from, one_object_category, opposite, product
from catconj.twovar import TwoVarAdjunctionL


def zn(n):
    return one_object_category([str(i) for i in range(n)], lambda g, f: str((int(g) + int(f)) % n), "0",
                               name=f"Z{n}")


def twisted(C, n, k):
    """Identity functors on Z/n with unit k and counit -k."""
    I = identity_functor(C)
    return Adjunction(I, I, nat_from(I, I, lambda x: str(k % n)), nat_from(I, I, lambda x: str(-k % n)),
                      name=f"tw{k}")


def twisted2(C, n, k):
    """The delooping structure of Z/n, counit k and unit -k.

    Contravariance in the first slot means ``H(f, g) = f + g`` on morphisms.
    """
    add = lambda *xs: str(sum(map(int, xs)) % n)
    T = functor_from(product(C, C), C, lambda x: "*", lambda m: add(*m), name="+")
    H = functor_from(product(opposite(C), C), C, lambda x: "*", lambda m: add(*m), name="[-,-]")
    return TwoVarAdjunctionL(T, H, lambda a, c: str(k % n), lambda a, b: str(-k % n), name=f"tw2_{k}")


def random_right_adjoint(rng, P, Q, tries=50):
    """A random monotone ``R: Q -> P`` that has a left adjoint, or ``None``.

    ``R`` is built along a linear extension of ``Q`` (each image is drawn
    from the common upper bounds of earlier images), then kept only if every
    ``{q : p <= R q}`` has a least element.
    """
    le_p = lambda x, y: bool(P.hom(x, y))
    le_q = lambda x, y: bool(Q.hom(x, y))
    order = sorted(Q.objects, key=lambda q: sum(le_q(r, q) for r in Q.objects))
    for _ in range(tries):
        R = {}
        for q in order:
            ok = [p for p in P.objects if all(le_p(R[r], p) for r in R if le_q(r, q))]
            if not ok:
                break
            R[q] = ok[int(rng.integers(len(ok)))]
        else:
            L = {}
            for p in P.objects:
                up = [q for q in Q.objects if le_p(p, R[q])]
                least = [q for q in up if all(le_q(q, r) for r in up)]
                if not least:
                    break
                L[p] = least[0]
            else:
                return L, R
    return None


def random_adjunction_pair(seed, max_objects=6, tries=8):
    """Two Galois connections between the same random posets (``seed`` fixes
    everything).  Poset pairs admitting no adjunction are redrawn."""
    import numpy as np

    from catconj.adjoint import galois_connection
    from catconj.fincat import posetal_functor, random_poset_category

    r = np.random.default_rng(seed)
    while True:
        P = random_poset_category(r, int(r.integers(1, max_objects + 1)), name="P")
        Q = random_poset_category(r, int(r.integers(1, max_objects + 1)), name="Q")
        a = random_right_adjoint(r, P, Q, tries)
        b = a and random_right_adjoint(r, P, Q, tries)
        if a and b:
            return P, Q, [galois_connection(posetal_functor(P, Q, L.__getitem__, name=f"L{i}"),
                                            posetal_functor(Q, P, R.__getitem__, name=f"R{i}"), name=f"adj{i}")
                          for i, (L, R) in enumerate((a, b))]
