"""Simple undirected graphs, their matrices, and a brute-force clique oracle."""

from collections import deque
from dataclasses import dataclass
from itertools import combinations
import random as _random

from .errors import FormatError, OrderOutOfRange
from .exact_linalg import RationalMatrix


@dataclass(frozen=True)
class Graph:
    """Graph on vertices ``0..n-1``; ``edges`` is sorted lexicographically with ``u < v``."""

    n: int
    edges: tuple

    def __init__(self, n, edges=()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        norm = set()
        for e in edges:
            u, v = e
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            e = (min(u, v), max(u, v))
            if e in norm:
                raise ValueError(f"duplicate edge {e}")
            norm.add(e)
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @property
    def m(self):
        return len(self.edges)

    def has_edge(self, u, v):
        return (min(u, v), max(u, v)) in self._edge_set()

    def _edge_set(self):
        return frozenset(self.edges)

    def neighbours(self):
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def without_edge(self, u, v):
        e = (min(u, v), max(u, v))
        return Graph(self.n, [f for f in self.edges if f != e])

    def with_edges(self, extra, n=None):
        return Graph(self.n if n is None else n, list(self.edges) + list(extra))

    def disjoint_union(self, other):
        shift = self.n
        return Graph(self.n + other.n, list(self.edges) + [(u + shift, v + shift) for u, v in other.edges])

    def to_text(self):
        lines = [f"{self.n} {self.m}"]
        lines += [f"{u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"


def complete_graph(n):
    return Graph(n, combinations(range(n), 2))


def path_graph(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def empty_graph(n):
    return Graph(n, ())


def petersen_graph():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def random_graph(n, p, rng=None):
    """Erdos-Renyi G(n, p); ``rng`` is a :class:`random.Random` or a seed."""
    if not isinstance(rng, _random.Random):
        rng = _random.Random(rng)
    return Graph(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def parse_graph(text, source=None):
    """Read ``n m`` followed by ``m`` lines ``u v``; ``#`` starts a comment."""
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        toks = []
        col = 0
        for tok in line.split():
            col = line.index(tok, col)
            toks.append((tok, col + 1))
            col += len(tok)
        entries.append((lineno, toks))
    if not entries:
        raise FormatError("empty graph file", source=source)

    def as_int(tok, lineno, col):
        try:
            v = int(tok)
        except ValueError:
            raise FormatError(f"expected an integer, got {tok!r}", lineno, col, source) from None
        if v < 0:
            raise FormatError(f"negative value {v}", lineno, col, source)
        return v

    lineno, header = entries[0]
    if len(header) != 2:
        raise FormatError("header must be 'n m'", lineno, 1, source)
    n = as_int(header[0][0], lineno, header[0][1])
    m = as_int(header[1][0], lineno, header[1][1])
    body = entries[1:]
    if len(body) != m:
        where = body[-1][0] if body else lineno
        raise FormatError(f"header announces {m} edges, found {len(body)}", where, 1, source)
    edges = []
    seen = set()
    for lineno, toks in body:
        if len(toks) != 2:
            raise FormatError("edge line must be 'u v'", lineno, 1, source)
        u = as_int(toks[0][0], lineno, toks[0][1])
        v = as_int(toks[1][0], lineno, toks[1][1])
        for val, (_, col) in ((u, toks[0]), (v, toks[1])):
            if val >= n:
                raise FormatError(f"vertex {val} out of range 0..{n - 1}", lineno, col, source)
        if u == v:
            raise FormatError(f"self-loop at vertex {u}", lineno, toks[0][1], source)
        e = (min(u, v), max(u, v))
        if e in seen:
            raise FormatError(f"duplicate edge {e}", lineno, toks[0][1], source)
        seen.add(e)
        edges.append(e)
    return Graph(n, edges)


def incidence_matrix(g):
    """``n x m`` vertex-edge incidence matrix, columns in lexicographic edge order."""
    cols = []
    for u, v in g.edges:
        col = [0] * g.n
        col[u] = 1
        col[v] = 1
        cols.append(col)
    return RationalMatrix.from_columns(cols, m=g.n)


def adjacency_matrix(g):
    a = [[0] * g.n for _ in range(g.n)]
    for u, v in g.edges:
        a[u][v] = 1
        a[v][u] = 1
    return RationalMatrix(a, n=g.n)


def has_clique(g, k):
    """Return ``(found, witness)``; the witness is the lexicographically first k-clique."""
    if not 1 <= k <= g.n:
        raise OrderOutOfRange(f"clique size {k} outside 1..{g.n}")
    adj = g.neighbours()
    for subset in combinations(range(g.n), k):
        if all(v in adj[u] for u, v in combinations(subset, 2)):
            return True, subset
    return False, None


def components(g):
    """Connected components as ``(sorted vertex tuple, is_bipartite)`` by BFS 2-colouring."""
    adj = g.neighbours()
    colour = [-1] * g.n
    out = []
    for s in range(g.n):
        if colour[s] != -1:
            continue
        colour[s] = 0
        comp = [s]
        bip = True
        q = deque([s])
        while q:
            u = q.popleft()
            for w in adj[u]:
                if colour[w] == -1:
                    colour[w] = 1 - colour[u]
                    comp.append(w)
                    q.append(w)
                elif colour[w] == colour[u]:
                    bip = False
        out.append((tuple(sorted(comp)), bip))
    return out


def incidence_rank_formula(g):
    """``N - B - Q`` with isolated vertices counted in Q only, not in B."""
    comps = components(g)
    q = sum(1 for verts, _ in comps if len(verts) == 1)
    b = sum(1 for verts, bip in comps if bip and len(verts) > 1)
    return g.n - b - q
