"""Independent reference implementations used by the tests.

Nothing here imports the library's group code: generators are written out as
raw image tuples, products are plain dict lookups, and lengths / rho values
come from breadth-first search.
"""
from collections import deque
from functools import lru_cache
from itertools import permutations, product


def tokens(family, n):
    return ((0,) if family == "B" else ("u",)) + tuple(range(1, n))


def gen_images(family, n, t):
    img = list(range(1, n + 1))
    if t == "u":
        img[0], img[1] = -2, -1
    elif t == 0:
        img[0] = -1
    else:
        img[t - 1], img[t] = img[t], img[t - 1]
    return tuple(img)


def compose(a, b):
    """(a*b)(i) = a(b(i)) on image tuples."""
    return tuple(a[j - 1] if j > 0 else -a[-j - 1] for j in b)


def identity(n):
    return tuple(range(1, n + 1))


def brute_elements(family, n):
    out = set()
    for signs in product((1, -1), repeat=n):
        if family == "D" and signs.count(-1) % 2:
            continue
        for p in permutations(range(1, n + 1)):
            out.add(tuple(s * x for s, x in zip(signs, p)))
    return out


@lru_cache(maxsize=None)
def cayley_lengths(family, n):
    """Word length of every element by BFS on the Cayley graph."""
    gens = [gen_images(family, n, t) for t in tokens(family, n)]
    dist = {identity(n): 0}
    q = deque([identity(n)])
    while q:
        w = q.popleft()
        for g in gens:
            x = compose(w, g)
            if x not in dist:
                dist[x] = dist[w] + 1
                q.append(x)
    return dist


def twisted(family, n, t, w):
    g = gen_images(family, n, t)
    sw, ws = compose(g, w), compose(w, g)
    return sw if sw == ws else compose(sw, g)


@lru_cache(maxsize=None)
def rho_bfs(family, n):
    """rho as BFS distance from the identity in the graph of twisted steps."""
    dist = {identity(n): 0}
    q = deque([identity(n)])
    while q:
        w = q.popleft()
        for t in tokens(family, n):
            x = twisted(family, n, t, w)
            if x not in dist:
                dist[x] = dist[w] + 1
                q.append(x)
    return dist


def fold(family, n, word):
    w = identity(n)
    for t in reversed(word):
        w = twisted(family, n, t, w)
    return w


def brute_reduced_iexprs(family, n, w):
    """All words of length rho(w) folding to w (such words are automatically reduced)."""
    k = rho_bfs(family, n)[tuple(w)]
    toks = tokens(family, n)
    return {word for word in product(toks, repeat=k) if fold(family, n, word) == tuple(w)}
