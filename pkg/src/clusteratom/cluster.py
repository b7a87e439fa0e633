"""Seeds, matrix and quiver mutation, exchange graphs and finite-type detection.

Vertices and mutation directions are 0-based inside the library; the JSON
and CLI layers translate to the 1-based labels users write.
"""

from __future__ import annotations

import itertools
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .laurent import LaurentPoly, lp_div_exact

__all__ = [
    "Matrix",
    "Quiver",
    "Seed",
    "ExchangeGraph",
    "CapExceeded",
    "QuiverError",
    "DEFAULT_CAP",
    "check_skew",
    "quiver_to_matrix",
    "matrix_to_quiver",
    "matrix_mutate",
    "initial_seed",
    "seed_mutate",
    "mutate_along",
    "expand_along_walk",
    "enumerate_exchange_graph",
    "is_finite_type",
    "dynkin_type",
    "positive_root_count",
    "reroot_expansions",
]

Matrix = tuple[tuple[int, ...], ...]
DEFAULT_CAP = 100_000


class QuiverError(ValueError):
    pass


class CapExceeded(RuntimeError):
    """BFS hit its seed cap: the input is of infinite type or the cap is too small."""


@dataclass(frozen=True)
class Quiver:
    """Quiver on vertices ``0..n-1`` with arrows given as ``(tail, head)`` pairs."""

    n: int
    arrows: tuple[tuple[int, int], ...]

    def __post_init__(self):
        arrows = tuple(sorted((int(t), int(h)) for t, h in self.arrows))
        object.__setattr__(self, "arrows", arrows)
        pairs = set(arrows)
        for t, h in arrows:
            if not (0 <= t < self.n and 0 <= h < self.n):
                raise QuiverError(f"arrow {(t, h)} leaves the vertex range 0..{self.n - 1}")
            if t == h:
                raise QuiverError(f"loop at vertex {t}")
            if (h, t) in pairs:
                raise QuiverError(f"oriented 2-cycle between {t} and {h}")

    def in_arrows(self, k: int) -> list[tuple[int, int]]:
        return [a for a in self.arrows if a[1] == k]

    def out_arrows(self, k: int) -> list[tuple[int, int]]:
        return [a for a in self.arrows if a[0] == k]

    def is_sink(self, k: int) -> bool:
        return not self.out_arrows(k)

    def is_source(self, k: int) -> bool:
        return not self.in_arrows(k)

    def reflect(self, k: int) -> "Quiver":
        """Reverse every arrow incident to ``k``."""
        return Quiver(self.n, tuple((h, t) if k in (t, h) else (t, h) for t, h in self.arrows))

    def is_acyclic(self) -> bool:
        indeg = Counter(h for _, h in self.arrows)
        ready = [v for v in range(self.n) if not indeg[v]]
        seen = 0
        while ready:
            v = ready.pop()
            seen += 1
            for t, h in self.arrows:
                if t == v:
                    indeg[h] -= 1
                    if not indeg[h]:
                        ready.append(h)
        return seen == self.n


def check_skew(B: Sequence[Sequence[int]]) -> Matrix:
    n = len(B)
    M = tuple(tuple(int(x) for x in row) for row in B)
    if any(len(row) != n for row in M):
        raise QuiverError("exchange matrix must be square")
    for i in range(n):
        for j in range(n):
            if M[i][j] != -M[j][i]:
                raise QuiverError(f"matrix is not skew-symmetric at ({i}, {j})")
    return M


def quiver_to_matrix(q: Quiver) -> Matrix:
    """``b_ij = #(j -> i) - #(i -> j)``."""
    B = [[0] * q.n for _ in range(q.n)]
    for t, h in q.arrows:
        B[h][t] += 1
        B[t][h] -= 1
    return tuple(map(tuple, B))


def matrix_to_quiver(B: Sequence[Sequence[int]]) -> Quiver:
    B = check_skew(B)
    arrows = []
    for i, row in enumerate(B):
        for j, b in enumerate(row):
            if b > 0:
                arrows.extend([(j, i)] * b)
    return Quiver(len(B), tuple(arrows))


def matrix_mutate(B: Sequence[Sequence[int]], k: int) -> Matrix:
    n = len(B)
    if not 0 <= k < n:
        raise IndexError(f"direction {k} out of range for rank {n}")
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == k or j == k:
                row.append(-B[i][j])
            else:
                bik, bkj = B[i][k], B[k][j]
                prod = bik * bkj
                if prod > 0:
                    row.append(B[i][j] + (prod if bik > 0 else -prod))
                else:
                    row.append(B[i][j])
        out.append(tuple(row))
    return tuple(out)


# ---------------------------------------------------------------------------
# seeds


@dataclass(frozen=True)
class Seed:
    B: Matrix
    cluster: tuple[LaurentPoly, ...]
    walk: tuple[int, ...] = ()

    @property
    def rank(self) -> int:
        return len(self.B)

    def key(self) -> frozenset:
        return frozenset(self.cluster)


def initial_seed(B: Sequence[Sequence[int]]) -> Seed:
    B = check_skew(B)
    n = len(B)
    return Seed(B, tuple(LaurentPoly.gen(i, n) for i in range(n)), ())


def exchange_binomial(B: Matrix, cluster: Sequence[LaurentPoly], k: int) -> LaurentPoly:
    n = len(B)
    nv = cluster[0].nvars
    plus = LaurentPoly.one(nv)
    minus = LaurentPoly.one(nv)
    for i in range(n):
        b = B[i][k]
        if b > 0:
            plus = plus * cluster[i] ** b
        elif b < 0:
            minus = minus * cluster[i] ** (-b)
    return plus + minus


def seed_mutate(s: Seed, k: int) -> Seed:
    n = s.rank
    if not 0 <= k < n:
        raise IndexError(f"direction {k} out of range for rank {n}")
    new_var = lp_div_exact(exchange_binomial(s.B, s.cluster, k), s.cluster[k])
    cluster = s.cluster[:k] + (new_var,) + s.cluster[k + 1:]
    return Seed(matrix_mutate(s.B, k), cluster, s.walk + (k,))


def mutate_along(s: Seed, walk: Iterable[int]) -> Seed:
    for k in walk:
        s = seed_mutate(s, k)
    return s


def expand_along_walk(B0: Sequence[Sequence[int]], walk: Iterable[int], k: int) -> LaurentPoly:
    s = mutate_along(initial_seed(B0), walk)
    if not 0 <= k < s.rank:
        raise IndexError(f"cluster index {k} out of range for rank {s.rank}")
    return s.cluster[k]


# ---------------------------------------------------------------------------
# exchange graph


def _cluster_sort_key(cluster: Iterable[LaurentPoly]) -> tuple[str, ...]:
    return tuple(sorted(str(u) for u in cluster))


@dataclass
class ExchangeGraph:
    """All clusters of a finite-type pattern, BFS-ordered seeds and exchanges.

    ``seeds[i]`` is a representative seed (in tree order, with its walk from
    the root) of ``clusters[i]``; clusters are sorted canonically.
    ``exchange[(i, u)]`` is the variable replacing ``u`` when leaving cluster
    ``i`` through ``u``.
    """

    root: Matrix
    seeds: list[Seed]
    clusters: list[frozenset]
    variables: list[LaurentPoly]
    edges: list[tuple[int, int]]
    exchange: dict[tuple[int, LaurentPoly], LaurentPoly] = field(repr=False)
    index: dict[frozenset, int] = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.root)

    def sorted_cluster(self, i: int) -> tuple[LaurentPoly, ...]:
        return tuple(sorted(self.clusters[i], key=str))

    def neighbours(self, i: int) -> list[int]:
        out = [b for a, b in self.edges if a == i] + [a for a, b in self.edges if b == i]
        return sorted(out)

    def cluster_of(self, variables: Iterable[LaurentPoly]) -> int | None:
        """Index of some cluster containing every given variable."""
        want = set(variables)
        for i, c in enumerate(self.clusters):
            if want <= c:
                return i
        return None


def enumerate_exchange_graph(B0: Sequence[Sequence[int]], cap: int = DEFAULT_CAP) -> ExchangeGraph:
    if cap <= 0:
        raise ValueError("cap must be positive")
    root = initial_seed(B0)
    n = root.rank
    found: dict[frozenset, Seed] = {root.key(): root}
    exch: dict[tuple[frozenset, LaurentPoly], LaurentPoly] = {}
    edges = set()
    queue = deque([root])
    while queue:
        s = queue.popleft()
        if any(abs(x) > 1 for row in s.B for x in row):
            # never happens in finite type, and the BFS would not close
            raise CapExceeded(f"exchange matrix entry of size >= 2 after walk {list(s.walk)}: infinite type")
        key = s.key()
        for k in range(n):
            old = s.cluster[k]
            known = exch.get((key, old))
            if known is not None:
                B = matrix_mutate(s.B, k)
                t = Seed(B, s.cluster[:k] + (known,) + s.cluster[k + 1:], s.walk + (k,))
            else:
                t = seed_mutate(s, k)
            new = t.cluster[k]
            tkey = t.key()
            exch[(key, old)] = new
            exch[(tkey, new)] = old
            edges.add(frozenset((key, tkey)))
            if tkey not in found:
                if len(found) >= cap:
                    raise CapExceeded(f"more than {cap} seeds; infinite type or cap too small")
                found[tkey] = t
                queue.append(t)
    keys = sorted(found, key=_cluster_sort_key)
    index = {c: i for i, c in enumerate(keys)}
    variables = sorted({u for c in keys for u in c}, key=str)
    exchange = {(index[c], u): v for (c, u), v in exch.items()}
    edge_list = sorted(tuple(sorted(index[c] for c in e)) for e in edges)
    return ExchangeGraph(
        root=root.B,
        seeds=[found[c] for c in keys],
        clusters=keys,
        variables=variables,
        edges=edge_list,
        exchange=exchange,
        index=index,
    )


def reroot_expansions(graph: ExchangeGraph, i: int) -> dict[LaurentPoly, LaurentPoly]:
    """Expansion of every cluster variable in the variables of cluster ``i``.

    A second BFS is run from the seed of cluster ``i`` with fresh generators;
    each step is paired with the corresponding exchange of the original graph,
    so no rational function is ever inverted.
    """
    seed = graph.seeds[i]
    n = graph.rank
    fresh = tuple(LaurentPoly.gen(j, n) for j in range(n))
    start = (seed.B, seed.cluster, fresh)
    mapping: dict[LaurentPoly, LaurentPoly] = dict(zip(seed.cluster, fresh))
    seen = {seed.key()}
    queue = deque([start])
    while queue:
        B, xs, ys = queue.popleft()
        ci = graph.index[frozenset(xs)]
        for k in range(n):
            new_x = graph.exchange[(ci, xs[k])]
            nxs = xs[:k] + (new_x,) + xs[k + 1:]
            key = frozenset(nxs)
            if key in seen and new_x in mapping:
                continue
            new_y = lp_div_exact(exchange_binomial(B, ys, k), ys[k])
            prev = mapping.setdefault(new_x, new_y)
            if prev != new_y:
                raise AssertionError(f"inconsistent re-rooted expansion of {new_x}")
            if key not in seen:
                seen.add(key)
                queue.append((matrix_mutate(B, k), nxs, ys[:k] + (new_y,) + ys[k + 1:]))
    return mapping


# ---------------------------------------------------------------------------
# finite type


def _components(n: int, edges: set[frozenset]) -> list[list[int]]:
    adj = {v: set() for v in range(n)}
    for e in edges:
        a, b = tuple(e)
        adj[a].add(b)
        adj[b].add(a)
    seen, comps = set(), []
    for v in range(n):
        if v in seen:
            continue
        comp, stack = [], [v]
        seen.add(v)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _component_type(vertices: list[int], edges: set[frozenset]) -> str | None:
    m = len(vertices)
    sub = [e for e in edges if set(e) <= set(vertices)]
    if len(sub) != m - 1:
        return None
    deg = Counter(v for e in sub for v in e)
    if all(deg[v] <= 2 for v in vertices):
        return f"A{m}"
    branch = [v for v in vertices if deg[v] >= 3]
    if len(branch) != 1 or deg[branch[0]] != 3:
        return None
    centre = branch[0]
    adj = {v: set() for v in vertices}
    for e in sub:
        a, b = tuple(e)
        adj[a].add(b)
        adj[b].add(a)
    arms = []
    for start in adj[centre]:
        length, prev, cur = 1, centre, start
        while len(adj[cur]) == 2:
            nxt = next(w for w in adj[cur] if w != prev)
            prev, cur = cur, nxt
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return f"D{m}"
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return f"E{m}"
    return None


def dynkin_type(B: Sequence[Sequence[int]]) -> str | None:
    """ADE type of the underlying graph (``"A2xD4"`` for unions), or None."""
    n = len(B)
    edges = set()
    for i in range(n):
        for j in range(i + 1, n):
            if abs(B[i][j]) > 1:
                return None
            if B[i][j]:
                edges.add(frozenset((i, j)))
    if n == 0:
        return None
    parts = []
    for comp in _components(n, edges):
        t = _component_type(comp, edges)
        if t is None:
            return None
        parts.append(t)
    return "x".join(sorted(parts))


def positive_root_count(type_name: str) -> int:
    total = 0
    for part in type_name.split("x"):
        letter, m = part[0], int(part[1:])
        if letter == "A":
            total += m * (m + 1) // 2
        elif letter == "D":
            total += m * (m - 1)
        elif letter == "E":
            total += {6: 36, 7: 63, 8: 120}[m]
        else:
            raise ValueError(f"unknown type {part}")
    return total


def _canonical_form(B: Matrix) -> Matrix:
    """Least relabelling of ``B`` under simultaneous row/column permutation."""
    n = len(B)
    colour = [tuple(sorted(row)) for row in B]
    for _ in range(2):
        colour = [(colour[i], tuple(sorted((B[i][j], colour[j]) for j in range(n) if B[i][j]))) for i in range(n)]
    classes: dict = {}
    for v in range(n):
        classes.setdefault(colour[v], []).append(v)
    groups = [classes[c] for c in sorted(classes)]
    best = None
    for choice in itertools.product(*(itertools.permutations(g) for g in groups)):
        order = [v for part in choice for v in part]
        cand = tuple(tuple(B[i][j] for j in order) for i in order)
        if best is None or cand < best:
            best = cand
    return best


@dataclass(frozen=True)
class FiniteTypeReport:
    finite: bool
    dynkin_member: Quiver | None
    dynkin_type: str | None
    class_size: int


def is_finite_type(B0: Sequence[Sequence[int]], cap: int = DEFAULT_CAP) -> FiniteTypeReport:
    """Search the mutation class of ``B0`` up to relabelling.

    A skew-symmetric matrix with an entry of absolute value at least two is
    never mutation-equivalent to a Dynkin quiver, so such an entry ends the
    search with ``finite=False``.
    """
    if cap <= 0:
        raise ValueError("cap must be positive")
    B0 = check_skew(B0)
    n = len(B0)
    start = _canonical_form(B0)
    seen = {start}
    queue = deque([B0])
    member = None
    while queue:
        B = queue.popleft()
        if any(abs(x) > 1 for row in B for x in row):
            return FiniteTypeReport(False, None, None, len(seen))
        if member is None and dynkin_type(B) is not None:
            member = B
        for k in range(n):
            C = matrix_mutate(B, k)
            key = _canonical_form(C)
            if key not in seen:
                if len(seen) >= cap:
                    raise CapExceeded(f"mutation class exceeds {cap} matrices")
                seen.add(key)
                queue.append(C)
    if member is None:
        return FiniteTypeReport(False, None, None, len(seen))
    return FiniteTypeReport(True, matrix_to_quiver(member), dynkin_type(member), len(seen))
