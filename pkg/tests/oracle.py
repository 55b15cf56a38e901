"""Brute-force reference for prime q.

Subspaces are frozensets of vectors (tuples mod p), built by spanning every
tuple of vectors.  Nothing here touches RREF, the field tables or the point
incidence used by the package.
"""

import itertools
from functools import lru_cache


def span(vectors, p):
    n = len(vectors[0]) if vectors else 0
    out = set()
    for coeffs in itertools.product(range(p), repeat=len(vectors)):
        out.add(tuple(sum(c * v[t] for c, v in zip(coeffs, vectors)) % p for t in range(n)))
    return frozenset(out)


@lru_cache(maxsize=None)
def all_subspaces(n, k, p):
    vecs = list(itertools.product(range(p), repeat=n))
    found = set()
    zero = tuple([0] * n)
    if k == 0:
        return [frozenset([zero])]
    for combo in itertools.combinations(vecs[1:], k):
        s = span(list(combo), p)
        if len(s) == p**k:
            found.add(s)
    return sorted(found, key=lambda s: sorted(s))


def dim(space, p):
    d, size = 0, len(space)
    while size > 1:
        size //= p
        d += 1
    return d


def meet_dim(a, b, p):
    return dim(a & b, p)


def unit_span(n, m, p):
    return span([tuple(int(t == i) for t in range(n)) for i in range(m)] or [tuple([0] * n)], p)


def count_matrices_of_full_rank(rows, cols, p):
    """Number of rows x cols matrices over F_p with independent rows."""
    total = 0
    for entries in itertools.product(range(p), repeat=rows * cols):
        vs = [entries[r * cols:(r + 1) * cols] for r in range(rows)]
        if len(span(vs, p)) == p**rows:
            total += 1
    return total


def gl_order(k, p):
    out = 1
    for i in range(k):
        out *= p**k - p**i
    return out
