"""Quiver representations over Q or F_p.

Covers Hom dimensions, quiver Grassmannian point counts and Euler
characteristics (by interpolating point counts over several primes),
BGP reflection functors, the inverse Auslander-Reiten translate of a Dynkin
quiver, and the indecomposables of a Dynkin quiver.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import linalg
from .cluster import Quiver, QuiverError, dynkin_type, positive_root_count, quiver_to_matrix

__all__ = [
    "QuiverRepresentation",
    "InterpolationInconsistent",
    "rep_build",
    "zero_rep",
    "simple_rep",
    "projective_rep",
    "direct_sum",
    "hom_dim",
    "grassmannian_point_count",
    "brute_force_subrep_count",
    "euler_characteristic",
    "counting_data",
    "euler_matrix",
    "reflection_functor",
    "tau_inverse",
    "enumerate_indecomposables",
    "positive_roots",
    "primes",
]


class InterpolationInconsistent(ArithmeticError):
    """Point counts at an extra prime disagree with the interpolated polynomial."""


@dataclass(frozen=True, eq=False)
class QuiverRepresentation:
    """``maps[i]`` is the action of ``quiver.arrows[i]``, of shape (dim head, dim tail).

    ``field`` is None for Q (Fraction entries) or a prime ``p``.
    """

    quiver: Quiver
    dims: tuple[int, ...]
    maps: tuple[np.ndarray, ...]
    field: int | None = None

    @property
    def n(self) -> int:
        return self.quiver.n

    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return not any(self.dims)

    def action(self, arrow: tuple[int, int]) -> np.ndarray:
        return self.maps[self.quiver.arrows.index(arrow)]

    def reduce(self, p: int) -> "QuiverRepresentation":
        if self.field is not None:
            raise ValueError("representation is already over a prime field")
        return QuiverRepresentation(self.quiver, self.dims, tuple(linalg.reduce_mod(m, p) for m in self.maps), p)

    def same_as(self, other: "QuiverRepresentation") -> bool:
        """Literal equality of quiver, dimensions and matrices."""
        return (
            self.quiver == other.quiver
            and self.dims == other.dims
            and self.field == other.field
            and all(a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat)) for a, b in zip(self.maps, other.maps))
        )

    def __repr__(self) -> str:
        return f"QuiverRepresentation(dims={self.dims}, arrows={self.quiver.arrows}, field={self.field})"


def rep_build(quiver: Quiver, dims: Sequence[int], matrices: Sequence, field: int | None = None) -> QuiverRepresentation:
    dims = tuple(int(d) for d in dims)
    if len(dims) != quiver.n or any(d < 0 for d in dims):
        raise ValueError(f"dimension vector {dims} does not fit a quiver on {quiver.n} vertices")
    if len(matrices) != len(quiver.arrows):
        raise ValueError(f"{len(matrices)} matrices for {len(quiver.arrows)} arrows")
    maps = []
    for (t, h), m in zip(quiver.arrows, matrices):
        shape = (dims[h], dims[t])
        if isinstance(m, np.ndarray):
            arr = m
        else:
            try:
                arr = np.array(m, dtype=object)
            except ValueError as exc:
                raise ValueError(f"ragged matrix for arrow {(t, h)}") from exc
            if arr.size == 0:
                arr = np.zeros(shape, dtype=object)
        if arr.shape != shape:
            if arr.size == 0 and 0 in shape:
                arr = np.zeros(shape, dtype=object)
            else:
                raise ValueError(f"arrow {(t, h)} needs a {shape} matrix, got {arr.shape}")
        if field is None:
            arr = linalg.qmatrix(arr, shape)
        else:
            arr = linalg.reduce_mod(arr, field)
        arr.flags.writeable = False
        maps.append(arr)
    return QuiverRepresentation(quiver, dims, tuple(maps), field)


def zero_rep(quiver: Quiver, field: int | None = None) -> QuiverRepresentation:
    return rep_build(quiver, (0,) * quiver.n, [np.zeros((0, 0), dtype=object)] * len(quiver.arrows), field)


def simple_rep(quiver: Quiver, k: int, field: int | None = None) -> QuiverRepresentation:
    dims = [0] * quiver.n
    dims[k] = 1
    mats = [np.zeros((dims[h], dims[t]), dtype=object) for t, h in quiver.arrows]
    return rep_build(quiver, dims, mats, field)


def _paths_from(quiver: Quiver, i: int) -> list[tuple[int, ...]]:
    if not quiver.is_acyclic():
        raise QuiverError("path enumeration needs an acyclic quiver")
    out, stack = [], [((), i)]
    while stack:
        path, v = stack.pop()
        out.append(path)
        for idx, (t, h) in enumerate(quiver.arrows):
            if t == v:
                stack.append((path + (idx,), h))
    return sorted(out, key=lambda p: (len(p), p))


def projective_rep(quiver: Quiver, i: int) -> QuiverRepresentation:
    """Indecomposable projective at ``i``: spanned by the paths starting at ``i``."""
    paths = _paths_from(quiver, i)

    def end(path):
        return quiver.arrows[path[-1]][1] if path else i

    basis = {v: [p for p in paths if end(p) == v] for v in range(quiver.n)}
    dims = [len(basis[v]) for v in range(quiver.n)]
    mats = []
    for idx, (t, h) in enumerate(quiver.arrows):
        m = np.zeros((dims[h], dims[t]), dtype=object)
        for c, p in enumerate(basis[t]):
            m[basis[h].index(p + (idx,)), c] = 1
        mats.append(m)
    return rep_build(quiver, dims, mats)


def direct_sum(M: QuiverRepresentation, N: QuiverRepresentation) -> QuiverRepresentation:
    if M.quiver != N.quiver or M.field != N.field:
        raise ValueError("direct sum needs representations of the same quiver over the same field")
    dims = tuple(a + b for a, b in zip(M.dims, N.dims))
    mats = []
    for (t, h), a, b in zip(M.quiver.arrows, M.maps, N.maps):
        m = linalg.zeros(dims[h], dims[t], M.field)
        m[: a.shape[0], : a.shape[1]] = a
        m[a.shape[0]:, a.shape[1]:] = b
        mats.append(m)
    return rep_build(M.quiver, dims, mats, M.field)


# ---------------------------------------------------------------------------
# Hom spaces


def hom_dim(M: QuiverRepresentation, N: QuiverRepresentation) -> int:
    """dim Hom(M, N): families psi_i with psi_h a_M = a_N psi_t for every arrow."""
    if M.quiver != N.quiver:
        raise ValueError("representations of different quivers")
    if M.field != N.field:
        raise ValueError("representations over different fields")
    p = M.field
    offset, total = [], 0
    for i in range(M.n):
        offset.append(total)
        total += N.dims[i] * M.dims[i]
    if total == 0:
        return 0
    rows = []
    for (t, h), aM, aN in zip(M.quiver.arrows, M.maps, N.maps):
        # psi_h is dimN_h x dimM_h, psi_t is dimN_t x dimM_t
        for r in range(N.dims[h]):
            for c in range(M.dims[t]):
                row = [0] * total
                for s in range(M.dims[h]):
                    row[offset[h] + r * M.dims[h] + s] += aM[s, c]
                for s in range(N.dims[t]):
                    row[offset[t] + s * M.dims[t] + c] -= aN[r, s]
                rows.append(row)
    if not rows:
        return total
    A = np.array(rows, dtype=object)
    return total - linalg.rank(A, p)


def euler_matrix(quiver: Quiver) -> np.ndarray:
    """``e_ii = 1`` and ``e_kj = -#(arrows k -> j)``."""
    E = np.eye(quiver.n, dtype=int)
    for t, h in quiver.arrows:
        E[t, h] -= 1
    return E


# ---------------------------------------------------------------------------
# quiver Grassmannians


@lru_cache(maxsize=None)
def _subspaces(m: int, e: int, q: int) -> tuple[np.ndarray, ...]:
    """Every ``e``-dimensional subspace of F_q^m, as an RREF basis (rows)."""
    if e == 0:
        return (np.zeros((0, m), dtype=np.int64),)
    out = []
    for piv in itertools.combinations(range(m), e):
        free = [(i, j) for i in range(e) for j in range(piv[i] + 1, m) if j not in piv]
        for vals in itertools.product(range(q), repeat=len(free)):
            U = np.zeros((e, m), dtype=np.int64)
            for i, c in enumerate(piv):
                U[i, c] = 1
            for (i, j), v in zip(free, vals):
                U[i, j] = v
            U.flags.writeable = False
            out.append(U)
    return tuple(out)


def _pivots(U: np.ndarray) -> list[int]:
    return [int(np.flatnonzero(row)[0]) for row in U]


def _contained(vectors: np.ndarray, U: np.ndarray, piv: list[int], q: int) -> bool:
    """Whether every column of ``vectors`` lies in the row space of RREF ``U``."""
    if vectors.shape[1] == 0:
        return True
    V = vectors.T % q
    if U.shape[0]:
        V = (V - V[:, piv] @ U) % q
    return not V.any()


def _check_dims(M: QuiverRepresentation, e: Sequence[int]) -> tuple[int, ...]:
    e = tuple(int(x) for x in e)
    if len(e) != M.n or any(not 0 <= x <= d for x, d in zip(e, M.dims)):
        raise ValueError(f"dimension vector {e} out of range for {M.dims}")
    return e


def grassmannian_point_count(M: QuiverRepresentation, e: Sequence[int]) -> int:
    """Number of subrepresentations of dimension ``e`` of ``M`` over F_q."""
    if M.field is None:
        raise ValueError("point counting needs a representation over F_q")
    q = M.field
    e = _check_dims(M, e)
    arrows = M.quiver.arrows
    degree = [0] * M.n
    for t, h in arrows:
        degree[t] += 1
        degree[h] += 1
    order = sorted(range(M.n), key=lambda v: (-degree[v], v))
    position = {v: i for i, v in enumerate(order)}
    # arrows checked as soon as both ends are chosen
    checks = {v: [] for v in order}
    for idx, (t, h) in enumerate(arrows):
        later = t if position[t] > position[h] else h
        checks[later].append(idx)
    candidates = [_subspaces(M.dims[v], e[v], q) for v in order]
    maps = [np.asarray(m, dtype=np.int64) for m in M.maps]
    chosen: dict[int, tuple[np.ndarray, list[int]]] = {}

    def stable(idx: int) -> bool:
        t, h = arrows[idx]
        Ut, _ = chosen[t]
        Uh, ph = chosen[h]
        image = (maps[idx] @ Ut.T) % q
        return _contained(image, Uh, ph, q)

    def dfs(level: int) -> int:
        if level == len(order):
            return 1
        v = order[level]
        total = 0
        for U in candidates[level]:
            chosen[v] = (U, _pivots(U))
            if all(stable(idx) for idx in checks[v]):
                total += dfs(level + 1)
        del chosen[v]
        return total

    return dfs(0)


def brute_force_subrep_count(M: QuiverRepresentation, e: Sequence[int]) -> int:
    """Independent count: test every tuple of subsets of vectors for closure.

    Enumerates all subsets ``U_i`` of F_q^{dim M_i} that are subspaces of the
    right size, without using echelon forms; only sensible for tiny inputs.
    """
    if M.field is None:
        raise ValueError("brute-force counting needs a representation over F_q")
    q = M.field
    e = _check_dims(M, e)
    per_vertex = []
    for d, k in zip(M.dims, e):
        vecs = list(itertools.product(range(q), repeat=d))
        spaces = set()
        for gens in itertools.combinations(vecs, k):
            span = {tuple([0] * d)}
            for g in gens:
                span = {tuple((a + c * b) % q for a, b in zip(s, g)) for s in span for c in range(q)}
            if len(span) == q ** k:
                spaces.add(frozenset(span))
        per_vertex.append(sorted(spaces, key=lambda s: sorted(s)))
    count = 0
    for choice in itertools.product(*per_vertex):
        ok = True
        for (t, h), m in zip(M.quiver.arrows, M.maps):
            for v in choice[t]:
                image = tuple(int(sum(int(m[r, c]) * v[c] for c in range(len(v))) % q) for r in range(m.shape[0]))
                if image not in choice[h]:
                    ok = False
                    break
            if not ok:
                break
        count += ok
    return count


def primes():
    yield 2
    n = 3
    while True:
        if all(n % d for d in range(3, int(n ** 0.5) + 1, 2)):
            yield n
        n += 2


def _integral_maps(M: QuiverRepresentation) -> list[np.ndarray]:
    # rescaling one arrow's matrix leaves every Grassmannian unchanged
    return [linalg.clear_denominators(m) for m in M.maps]


def _good_prime(p: int, maps: list[np.ndarray], ranks: list[int]) -> bool:
    for m, r in zip(maps, ranks):
        if any(int(x) % p == 0 for x in m.flat if x != 0):
            return False
        if linalg.rank(m, p) != r:
            return False
    return True


def _interpolate_at(points: list[tuple[int, int]], x: int) -> Fraction:
    total = Fraction(0)
    for i, (xi, yi) in enumerate(points):
        term = Fraction(yi)
        for j, (xj, _) in enumerate(points):
            if j != i:
                term *= Fraction(x - xj, xi - xj)
        total += term
    return total


@dataclass(frozen=True)
class CountingData:
    e: tuple[int, ...]
    degree_bound: int
    counts: tuple[tuple[int, int], ...]
    polynomial: tuple[Fraction, ...]
    euler_characteristic: int


def _poly_coefficients(points: list[tuple[int, int]]) -> tuple[Fraction, ...]:
    """Monomial coefficients of the interpolating polynomial (constant first)."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k in range(n):
            coeffs[k] += yi * basis[k] / denom
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def counting_data(M: QuiverRepresentation, e: Sequence[int], max_primes: int = 64) -> CountingData:
    """Point counts of Gr_e(M) over enough primes to pin the counting polynomial."""
    if M.field is not None:
        raise ValueError("expected a representation over Q")
    e = _check_dims(M, e)
    D = sum(k * (d - k) for k, d in zip(e, M.dims))
    if all(k == 0 for k in e) or e == M.dims:
        return CountingData(e, D, (), (Fraction(1),), 1)
    maps = _integral_maps(M)
    ranks = [linalg.rank(m) for m in maps]
    need = D + 2
    if need > max_primes:
        raise ValueError(f"needs {need} primes, budget is {max_primes}")
    chosen = []
    for p in primes():
        if len(chosen) == need:
            break
        if _good_prime(p, maps, ranks):
            chosen.append(p)
    points = []
    for p in chosen:
        red = rep_build(M.quiver, M.dims, maps, p)
        points.append((p, grassmannian_point_count(red, e)))
    fit, extra = points[:-1], points[-1]
    if _interpolate_at(fit, extra[0]) != extra[1]:
        raise InterpolationInconsistent(f"counts {points} are not a polynomial of degree <= {D}")
    chi = _interpolate_at(fit, 1)
    if chi.denominator != 1:
        raise InterpolationInconsistent(f"non-integral Euler characteristic {chi}")
    return CountingData(e, D, tuple(points), _poly_coefficients(fit), int(chi))


def euler_characteristic(M: QuiverRepresentation, e: Sequence[int], max_primes: int = 64) -> int:
    return counting_data(M, e, max_primes).euler_characteristic


# ---------------------------------------------------------------------------
# reflection functors and tau^{-1}


def _assemble(M: QuiverRepresentation, k: int, incoming: bool):
    arrows = M.quiver.in_arrows(k) if incoming else M.quiver.out_arrows(k)
    idxs = [i for i, a in enumerate(M.quiver.arrows) if (a[1] == k if incoming else a[0] == k)]
    others = [a[0] if incoming else a[1] for a in arrows]
    return idxs, others


def reflection_functor(M: QuiverRepresentation, k: int, sign: str) -> QuiverRepresentation:
    """BGP reflection: ``'+'`` at a sink (kernel), ``'-'`` at a source (cokernel)."""
    if M.field is not None:
        raise ValueError("reflection functors are implemented over Q")
    q = M.quiver
    p = None
    if sign == "+":
        if not q.is_sink(k):
            raise QuiverError(f"vertex {k} is not a sink")
        idxs, others = _assemble(M, k, incoming=True)
        blocks = [M.maps[i] for i in idxs]
        phi = np.concatenate(blocks, axis=1) if blocks else linalg.zeros(M.dims[k], 0)
        K = linalg.nullspace(phi, p)
        new_dim = K.shape[1]
        new_maps = {}
        row = 0
        for i, v in zip(idxs, others):
            new_maps[i] = K[row: row + M.dims[v], :]
            row += M.dims[v]
    elif sign == "-":
        if not q.is_source(k):
            raise QuiverError(f"vertex {k} is not a source")
        idxs, others = _assemble(M, k, incoming=False)
        blocks = [M.maps[i] for i in idxs]
        total = sum(M.dims[v] for v in others)
        psi = np.concatenate(blocks, axis=0) if blocks else linalg.zeros(0, M.dims[k])
        image = linalg.column_basis(psi)
        comp = linalg.complement(image, linalg.identity(total))
        basis = np.concatenate([image, comp], axis=1)
        proj = linalg.solve(basis, linalg.identity(total))[image.shape[1]:, :]
        new_dim = comp.shape[1]
        new_maps = {}
        col = 0
        for i, v in zip(idxs, others):
            new_maps[i] = proj[:, col: col + M.dims[v]]
            col += M.dims[v]
    else:
        raise ValueError("sign must be '+' or '-'")
    dims = list(M.dims)
    dims[k] = new_dim
    pairs = []
    for i, (t, h) in enumerate(q.arrows):
        if i in new_maps:
            pairs.append(((h, t), new_maps[i]))
        else:
            pairs.append(((t, h), M.maps[i]))
    pairs.sort(key=lambda x: x[0])
    newq = Quiver(q.n, tuple(a for a, _ in pairs))
    return rep_build(newq, dims, [m for _, m in pairs])


def tau_inverse(M: QuiverRepresentation, order: str = "lowest") -> QuiverRepresentation:
    """Inverse Coxeter functor: one '-' reflection per vertex, always at a current source.

    ``order`` picks the lowest (default) or highest index source first.
    """
    if not M.quiver.is_acyclic():
        raise QuiverError("tau inverse needs an acyclic quiver")
    pending = set(range(M.n))
    cur = M
    while pending:
        sources = [v for v in pending if cur.quiver.is_source(v)]
        if not sources:
            raise QuiverError("no admissible source ordering")
        v = min(sources) if order == "lowest" else max(sources)
        cur = reflection_functor(cur, v, "-")
        pending.remove(v)
    if cur.quiver != M.quiver:
        raise AssertionError("Coxeter functor did not return to the original orientation")
    return cur


def positive_roots(quiver: Quiver) -> list[tuple[int, ...]]:
    """Positive roots via the Tits form: nonzero x >= 0 with q(x) = 1."""
    t = dynkin_type(quiver_to_matrix(quiver))
    if t is None:
        raise QuiverError("not a Dynkin quiver")
    n = quiver.n
    # largest coefficient of the highest root
    bound = max({"A": 1, "D": 2, "E6": 3, "E7": 4, "E8": 6}.get(part if part[0] == "E" else part[0]) for part in t.split("x"))
    out = []
    for x in itertools.product(range(bound + 1), repeat=n):
        if not any(x):
            continue
        qx = sum(v * v for v in x) - sum(x[a] * x[b] for a, b in quiver.arrows)
        if qx == 1:
            out.append(x)
    return out


def enumerate_indecomposables(quiver: Quiver) -> list[QuiverRepresentation]:
    """One representative per positive root: tau^{-m} orbits of the projectives."""
    t = dynkin_type(quiver_to_matrix(quiver))
    if t is None:
        raise QuiverError("not a Dynkin quiver")
    out = []
    for i in range(quiver.n):
        M = projective_rep(quiver, i)
        while not M.is_zero():
            out.append(M)
            M = tau_inverse(M)
    if len(out) != positive_root_count(t):
        raise AssertionError(f"found {len(out)} indecomposables, expected {positive_root_count(t)}")
    out.sort(key=lambda M: (sum(M.dims), M.dims))
    return out
