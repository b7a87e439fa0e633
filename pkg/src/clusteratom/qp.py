"""Quivers with potentials and their decorated representations.

Arrows are ``(tail, head)`` pairs; in the finite-type regime handled here
there is at most one arrow between two vertices, so an arrow is determined
by its endpoints and keeps its identity across mutations.

Cyclic paths are tuples of arrows in *traversal order*: ``(a, b, c)`` means
``a`` first, then ``b``, then ``c``.  This is the reverse of the usual
right-to-left product notation, so the cycle usually written ``cba`` is
stored as ``(a, b, c)``.  A cycle is kept in its lexicographically least
rotation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import linalg
from .cluster import (
    Matrix,
    Quiver,
    QuiverError,
    matrix_mutate,
    matrix_to_quiver,
    quiver_to_matrix,
)
from .laurent import LaurentPoly, lp_substitute
from .representations import (
    QuiverRepresentation,
    counting_data,
    direct_sum,
    hom_dim,
    rep_build,
    tau_inverse,
    zero_rep,
)

__all__ = [
    "Arrow",
    "Cycle",
    "Potential",
    "QP",
    "DecoratedRep",
    "QPError",
    "ReductionError",
    "MutationReport",
    "canonical_cycle",
    "chordless_cycles",
    "primitive_potential",
    "cyclic_derivative",
    "second_derivative",
    "path_matrix",
    "jacobian_check",
    "jacobian_dimensions",
    "triangle_and_g",
    "g_vector",
    "premutation",
    "reduce_potential",
    "qp_mutate",
    "negative_simple",
    "rep_mutate",
    "rep_direct_sum",
    "f_polynomial",
    "x_of_rep",
    "e_invariants",
    "build_cluster_rep",
    "qp_along_walk",
]

Arrow = tuple[int, int]
Cycle = tuple[Arrow, ...]


class QPError(ValueError):
    pass


class ReductionError(QPError):
    """The premutation cannot be reduced by the unit-coefficient substitution."""


def canonical_cycle(cycle: Sequence[Arrow]) -> Cycle:
    cycle = tuple(tuple(a) for a in cycle)
    d = len(cycle)
    if d == 0:
        raise QPError("empty cycle")
    for i in range(d):
        if cycle[i][1] != cycle[(i + 1) % d][0]:
            raise QPError(f"arrows {cycle[i]} and {cycle[(i + 1) % d]} do not compose")
    return min(cycle[i:] + cycle[:i] for i in range(d))


def _rotations(cycle: Cycle):
    d = len(cycle)
    for i in range(d):
        yield cycle[i:] + cycle[:i]


def _add_term(terms: dict, key, coeff: int) -> None:
    v = terms.get(key, 0) + coeff
    if v:
        terms[key] = v
    else:
        terms.pop(key, None)


@dataclass(frozen=True)
class Potential:
    """Finite integer combination of cycles, stored canonically."""

    terms: tuple[tuple[Cycle, int], ...] = ()

    @classmethod
    def from_terms(cls, terms: Mapping[Sequence[Arrow], int] | Iterable[tuple[Sequence[Arrow], int]]) -> "Potential":
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Cycle, int] = {}
        for cyc, c in items:
            _add_term(acc, canonical_cycle(cyc), int(c))
        return cls(tuple(sorted(acc.items())))

    def as_dict(self) -> dict[Cycle, int]:
        return dict(self.terms)

    def arrows(self) -> set[Arrow]:
        return {a for cyc, _ in self.terms for a in cyc}

    def degree_two_part(self) -> "Potential":
        return Potential(tuple((c, v) for c, v in self.terms if len(c) == 2))

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for cyc, c in self.terms:
            verts = "->".join(str(a[0] + 1) for a in cyc) + f"->{cyc[0][0] + 1}"
            parts.append(f"{c}*({verts})")
        return " + ".join(parts)


@dataclass(frozen=True)
class QP:
    quiver: Quiver
    potential: Potential = field(default_factory=Potential)

    def __post_init__(self):
        arrows = set(self.quiver.arrows)
        if len(arrows) != len(self.quiver.arrows):
            raise QPError("parallel arrows are outside the supported regime")
        missing = self.potential.arrows() - arrows
        if missing:
            raise QPError(f"potential uses arrows {sorted(missing)} not in the quiver")

    @property
    def n(self) -> int:
        return self.quiver.n

    @property
    def B(self) -> Matrix:
        return quiver_to_matrix(self.quiver)


# ---------------------------------------------------------------------------
# chordless cycles and primitive potentials


def chordless_cycles(A: Quiver) -> list[Cycle]:
    """Induced cycles of length >= 3, each as an oriented cyclic path.

    Raises ``QPError`` if an induced cycle is not cyclically oriented, which
    never happens in the mutation class of a Dynkin quiver.
    """
    B = quiver_to_matrix(A)
    if any(abs(x) > 1 for row in B for x in row):
        raise QPError("quiver has multiple arrows; outside the |b_ij| <= 1 regime")
    adj = {v: set() for v in range(A.n)}
    for t, h in A.arrows:
        adj[t].add(h)
        adj[h].add(t)
    out_of = {t: h for t, h in A.arrows}
    out = []
    for size in range(3, A.n + 1):
        for verts in itertools.combinations(range(A.n), size):
            vs = set(verts)
            if any(len(adj[v] & vs) != 2 for v in verts):
                continue
            # connected 2-regular induced subgraph = a cycle
            seen, stack = {verts[0]}, [verts[0]]
            while stack:
                u = stack.pop()
                for w in adj[u] & vs:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            if seen != vs:
                continue
            path, v = [], verts[0]
            for _ in range(size):
                nxt = [h for t, h in A.arrows if t == v and h in vs]
                if len(nxt) != 1:
                    raise QPError(f"chordless cycle on {sorted(v + 1 for v in vs)} is not cyclically oriented")
                path.append((v, nxt[0]))
                v = nxt[0]
            if v != verts[0]:
                raise QPError(f"chordless cycle on {sorted(v + 1 for v in vs)} is not cyclically oriented")
            out.append(canonical_cycle(path))
    del out_of
    return sorted(out)


def primitive_potential(A: Quiver) -> Potential:
    return Potential.from_terms({c: 1 for c in chordless_cycles(A)})


def is_primitive(qp: QP) -> bool:
    """Support is exactly the chordless cycles, each with coefficient +-1."""
    support = {c: v for c, v in qp.potential.terms}
    return set(support) == set(chordless_cycles(qp.quiver)) and all(abs(v) == 1 for v in support.values())


# ---------------------------------------------------------------------------
# derivatives and their action


def cyclic_derivative(S: Potential, a: Arrow) -> dict[tuple[Arrow, ...], int]:
    """``d_a S`` as a map path -> coefficient; paths run from h(a) to t(a)."""
    out: dict[tuple[Arrow, ...], int] = {}
    for cyc, c in S.terms:
        for rot in _rotations(cyc):
            if rot[0] == a:
                _add_term(out, rot[1:], c)
    return out


def second_derivative(S: Potential, b: Arrow, a: Arrow) -> dict[tuple[Arrow, ...], int]:
    """``d_{ba} S`` for ``h(a) = t(b)``: the arcs completing ``a`` then ``b``; paths run h(b) -> t(a)."""
    if a[1] != b[0]:
        raise QPError(f"{a} and {b} do not compose")
    out: dict[tuple[Arrow, ...], int] = {}
    for cyc, c in S.terms:
        for rot in _rotations(cyc):
            if len(rot) >= 2 and rot[0] == a and rot[1] == b:
                _add_term(out, rot[2:], c)
    return out


def path_matrix(M: QuiverRepresentation, path: Sequence[Arrow], start: int) -> np.ndarray:
    """Action of a path (traversal order) beginning at vertex ``start``."""
    cur = linalg.identity(M.dims[start], M.field)
    v = start
    for a in path:
        if a[0] != v:
            raise QPError(f"path breaks at {a}")
        cur = M.action(a).dot(cur)
        v = a[1]
    return cur


def _path_sum(M: QuiverRepresentation, paths: Mapping[tuple[Arrow, ...], int], start: int, end: int) -> np.ndarray:
    out = linalg.zeros(M.dims[end], M.dims[start], M.field)
    for path, c in paths.items():
        out = out + c * path_matrix(M, path, start)
    return out


def jacobian_check(M: QuiverRepresentation, S: Potential) -> bool:
    """True iff every cyclic derivative of ``S`` acts as zero on ``M``."""
    for a in M.quiver.arrows:
        d = cyclic_derivative(S, a)
        if d and not linalg.is_zero(_path_sum(M, d, a[1], a[0])):
            return False
    return True


def jacobian_dimensions(qp: QP, cap: int = 8) -> list[int]:
    """dim of R<A> / (J + m^N) for N = 1..cap.

    The sequence becomes constant once the Jacobian ideal contains a power of
    the arrow ideal; a constant tail is the empirical finite-dimensionality
    check.  Paths are ``(start, arrows)`` pairs so idempotents are ``(v, ())``.
    """
    arrows = qp.quiver.arrows
    levels = [[(v, ()) for v in range(qp.n)]]
    for _ in range(1, cap):
        levels.append([
            (s, p + (a,)) for s, p in levels[-1] for a in arrows if a[0] == (p[-1][1] if p else s)
        ])
    derivs = [(a, cyclic_derivative(qp.potential, a)) for a in arrows]
    dims = []
    for N in range(1, cap + 1):
        basis = [x for lvl in levels[:N] for x in lvl]
        index = {x: i for i, x in enumerate(basis)}
        ends: dict[int, list] = {}
        starts: dict[int, list] = {}
        for s, p in basis:
            ends.setdefault(p[-1][1] if p else s, []).append((s, p))
            starts.setdefault(s, []).append((s, p))
        rows = []
        for a, d in derivs:
            if not d:
                continue
            # d_a S runs h(a) -> t(a); sandwich it as left . d . right
            for ls, lp in ends.get(a[1], []):
                for rs, rp in starts.get(a[0], []):
                    row: dict[int, int] = {}
                    for path, c in d.items():
                        key = (ls, lp + path + rp)
                        if key in index:
                            row[index[key]] = row.get(index[key], 0) + c
                    if row:
                        rows.append(row)
        mat = linalg.zeros(len(rows), len(basis))
        for i, row in enumerate(rows):
            for j, c in row.items():
                mat[i, j] = c
        dims.append(len(basis) - linalg.rank(mat))
    return dims


# ---------------------------------------------------------------------------
# triangle of maps and g-vectors


@dataclass
class Triangle:
    k: int
    ins: list[Arrow]
    outs: list[Arrow]
    alpha: np.ndarray  # M_in -> M_k
    beta: np.ndarray  # M_k -> M_out
    gamma: np.ndarray  # M_out -> M_in
    g: int


def _triangle(M: QuiverRepresentation, S: Potential, k: int, V_k: int = 0) -> Triangle:
    q = M.quiver
    ins, outs = q.in_arrows(k), q.out_arrows(k)
    p = M.field
    din = sum(M.dims[a[0]] for a in ins)
    dout = sum(M.dims[b[1]] for b in outs)
    alpha = np.concatenate([M.action(a) for a in ins], axis=1) if ins else linalg.zeros(M.dims[k], 0, p)
    beta = np.concatenate([M.action(b) for b in outs], axis=0) if outs else linalg.zeros(0, M.dims[k], p)
    gamma = linalg.zeros(din, dout, p)
    r = 0
    for a in ins:
        c = 0
        for b in outs:
            d = second_derivative(S, b, a)
            if d:
                gamma[r: r + M.dims[a[0]], c: c + M.dims[b[1]]] = _path_sum(M, d, b[1], a[0])
            c += M.dims[b[1]]
        r += M.dims[a[0]]
    kernel = dout - linalg.rank(gamma, p)
    return Triangle(k, ins, outs, alpha, beta, gamma, kernel - M.dims[k] + V_k)


def triangle_and_g(dec: "DecoratedRep", k: int) -> Triangle:
    if not 0 <= k < dec.n:
        raise IndexError(f"vertex {k} out of range")
    tri = _triangle(dec.rep, dec.qp.potential, k, dec.decoration[k])
    if not (linalg.is_zero(tri.alpha.dot(tri.gamma)) and linalg.is_zero(tri.gamma.dot(tri.beta))):
        raise QPError(f"triangle relations fail at vertex {k + 1}")
    return tri


def g_vector(dec: "DecoratedRep") -> tuple[int, ...]:
    return tuple(triangle_and_g(dec, k).g for k in range(dec.n))


# ---------------------------------------------------------------------------
# QP mutation


@dataclass
class MutationReport:
    k: int
    premutation_arrows: list[Arrow]
    premutation_potential: dict[Cycle, int]
    composites: dict[Arrow, tuple[Arrow, Arrow]]
    cancelled: list[tuple[Arrow, Arrow]]
    reduced_potential: Potential

    def as_json(self) -> dict:
        def arrow(a):
            return [a[0] + 1, a[1] + 1]

        return {
            "vertex": self.k + 1,
            "premutation_arrows": [arrow(a) for a in self.premutation_arrows],
            "premutation_potential": [
                {"cycle": [arrow(a) for a in c], "coeff": v} for c, v in sorted(self.premutation_potential.items())
            ],
            "composite_arrows": [
                {"arrow": arrow(x), "first": arrow(a), "then": arrow(b)} for x, (a, b) in sorted(self.composites.items())
            ],
            "cancelled_pairs": [[arrow(x), arrow(y)] for x, y in self.cancelled],
        }


def premutation(qp: QP, k: int):
    """Arrow list, potential and composite-arrow table of the premutation at ``k``."""
    q = qp.quiver
    if not 0 <= k < q.n:
        raise IndexError(f"vertex {k} out of range")
    ins, outs = q.in_arrows(k), q.out_arrows(k)
    arrows = [a for a in q.arrows if k not in a]
    present = set(arrows)
    composites: dict[Arrow, tuple[Arrow, Arrow]] = {}
    for a in ins:
        for b in outs:
            new = (a[0], b[1])
            if new in present:
                raise ReductionError(f"composite arrow {new} would duplicate an existing arrow")
            composites[new] = (a, b)
            present.add(new)
    starred = [(k, a[0]) for a in ins] + [(b[1], k) for b in outs]
    arrows = sorted(present | set(starred))
    pot: dict[Cycle, int] = {}
    for cyc, c in qp.potential.terms:
        # rotate so the cycle does not start by leaving k
        rot = next(r for r in _rotations(cyc) if r[0][0] != k)
        out, i = [], 0
        while i < len(rot):
            x = rot[i]
            if x[1] == k:
                y = rot[i + 1]
                out.append((x[0], y[1]))
                i += 2
            else:
                out.append(x)
                i += 1
        _add_term(pot, canonical_cycle(out), c)
    for new, (a, b) in composites.items():
        # Delta_k: b* then a* then [ba]
        _add_term(pot, canonical_cycle([(b[1], k), (k, a[0]), new]), 1)
    return arrows, pot, composites


def reduce_potential(arrows: Sequence[Arrow], potential: Mapping[Cycle, int]):
    """Remove degree-two terms by unit-coefficient substitutions.

    For a term ``lam*(x, y)`` write the potential as
    ``(y, lam*x + W) + (x, U) + R``; substituting ``x -> (x - W)/lam`` and
    then ``y -> y - U/lam`` leaves ``(y, x) + R - (W, U)/lam``.  Only ``x``
    and ``y`` change, so every other arrow keeps its action on modules.
    """
    pot = dict(potential)
    remaining = set(arrows)
    cancelled = []
    while True:
        deg2 = sorted(c for c in pot if len(c) == 2)
        if not deg2:
            break
        cyc = deg2[0]
        lam = pot.pop(cyc)
        if abs(lam) != 1:
            raise ReductionError(f"degree-two term {cyc} has non-unit coefficient {lam}")
        x, y = cyc
        W: dict[tuple[Arrow, ...], int] = {}
        U: dict[tuple[Arrow, ...], int] = {}
        rest: dict[Cycle, int] = {}
        for c, v in pot.items():
            nx, ny = c.count(x), c.count(y)
            if nx and ny:
                raise ReductionError(f"term {c} contains both arrows of the trivial pair")
            if nx > 1 or ny > 1:
                raise ReductionError(f"term {c} repeats an arrow of the trivial pair")
            if ny:
                rot = next(r for r in _rotations(c) if r[0] == y)
                _add_term(W, rot[1:], v)
            elif nx:
                rot = next(r for r in _rotations(c) if r[0] == x)
                _add_term(U, rot[1:], v)
            else:
                rest[c] = v
        for w, mu in W.items():
            for u, nu in U.items():
                _add_term(rest, canonical_cycle(w + u), -lam * mu * nu)
        pot = rest
        remaining -= {x, y}
        cancelled.append((x, y))
    for a in remaining:
        if (a[1], a[0]) in remaining:
            raise ReductionError(f"2-cycle through {a} survives reduction")
    return sorted(remaining), pot, cancelled


def qp_mutate(qp: QP, k: int) -> tuple[QP, MutationReport]:
    arrows, pot, composites = premutation(qp, k)
    remaining, reduced, cancelled = reduce_potential(arrows, pot)
    expected = matrix_to_quiver(matrix_mutate(qp.B, k))
    if tuple(remaining) != expected.arrows:
        raise ReductionError("reduced arrows disagree with matrix mutation")
    new = QP(expected, Potential.from_terms(reduced))
    if not is_primitive(new):
        raise ReductionError(f"reduced potential {new.potential} is not primitive")
    report = MutationReport(k, arrows, pot, composites, cancelled, new.potential)
    return new, report


def qp_along_walk(qp: QP, walk: Iterable[int]) -> list[QP]:
    out = [qp]
    for k in walk:
        out.append(qp_mutate(out[-1], k)[0])
    return out


# ---------------------------------------------------------------------------
# decorated representations


@dataclass(frozen=True, eq=False)
class DecoratedRep:
    qp: QP
    rep: QuiverRepresentation
    decoration: tuple[int, ...]

    def __post_init__(self):
        if self.rep.quiver != self.qp.quiver:
            raise QPError("representation lives on a different quiver")
        if len(self.decoration) != self.qp.n or any(v < 0 for v in self.decoration):
            raise QPError(f"bad decoration {self.decoration}")

    @property
    def n(self) -> int:
        return self.qp.n

    @property
    def dims(self) -> tuple[int, ...]:
        return self.rep.dims

    def is_positive(self) -> bool:
        return not any(self.decoration)

    def is_negative(self) -> bool:
        return self.rep.is_zero()

    def validate(self) -> None:
        if not jacobian_check(self.rep, self.qp.potential):
            raise QPError("module is not annihilated by the cyclic derivatives")
        for k in range(self.n):
            triangle_and_g(self, k)


def negative_simple(qp: QP, k: int) -> DecoratedRep:
    V = [0] * qp.n
    V[k] = 1
    return DecoratedRep(qp, zero_rep(qp.quiver), tuple(V))


def rep_mutate(dec: DecoratedRep, k: int, check: bool = True) -> DecoratedRep:
    qp, M = dec.qp, dec.rep
    if M.field is not None:
        raise QPError("mutation of representations is done over Q")
    new_qp, report = qp_mutate(qp, k)
    tri = triangle_and_g(dec, k)
    alpha, beta, gamma = tri.alpha, tri.beta, tri.gamma
    din, dout = gamma.shape

    im_gamma = linalg.column_basis(gamma)
    ker_alpha = linalg.nullspace(alpha)
    c2 = linalg.complement(im_gamma, ker_alpha)  # splits ker alpha / im gamma
    im_beta = linalg.column_basis(beta)
    ker_gamma = linalg.nullspace(gamma)
    c3 = linalg.complement(im_beta, ker_gamma)  # splits ker gamma / im beta
    kg_basis = np.concatenate([im_beta, c3], axis=1)
    w = linalg.complement(kg_basis, linalg.identity(dout))
    coords = linalg.solve(np.concatenate([kg_basis, w], axis=1), linalg.identity(dout))
    pi_rho = coords[im_beta.shape[1]: kg_basis.shape[1], :]
    gamma_coords = linalg.solve(im_gamma, gamma)

    r1, d2, d3, d4 = im_gamma.shape[1], c2.shape[1], c3.shape[1], dec.decoration[k]
    new_k = r1 + d2 + d3 + d4
    alpha_bar = np.concatenate(
        [-gamma_coords, linalg.zeros(d2, dout), -pi_rho, linalg.zeros(d4, dout)], axis=0
    )
    beta_bar = np.concatenate([im_gamma, c2, linalg.zeros(din, d3), linalg.zeros(din, d4)], axis=1)

    ker_beta = linalg.nullspace(beta)
    im_alpha = linalg.column_basis(alpha)
    both = np.concatenate([ker_beta, im_alpha], axis=1)
    new_v = linalg.rank(both) - im_alpha.shape[1] if both.shape[1] else 0

    dims = list(M.dims)
    dims[k] = new_k
    # block offsets inside M_in (rows of beta_bar) and M_out (columns of alpha_bar)
    in_off, off = {}, 0
    for a in tri.ins:
        in_off[a] = off
        off += M.dims[a[0]]
    out_off, off = {}, 0
    for b in tri.outs:
        out_off[b] = off
        off += M.dims[b[1]]

    actions: dict[Arrow, np.ndarray] = {}
    for a in qp.quiver.arrows:
        if k not in a:
            actions[a] = M.action(a)
    for new, (a, b) in report.composites.items():
        actions[new] = M.action(b).dot(M.action(a))
    for a in tri.ins:
        actions[(k, a[0])] = beta_bar[in_off[a]: in_off[a] + M.dims[a[0]], :]
    for b in tri.outs:
        actions[(b[1], k)] = alpha_bar[:, out_off[b]: out_off[b] + M.dims[b[1]]]

    rep = rep_build(new_qp.quiver, dims, [actions[a] for a in new_qp.quiver.arrows])
    V = list(dec.decoration)
    V[k] = new_v
    out = DecoratedRep(new_qp, rep, tuple(V))
    if check:
        out.validate()
    return out


def rep_direct_sum(d1: DecoratedRep, d2: DecoratedRep) -> DecoratedRep:
    if d1.qp != d2.qp:
        raise QPError("direct sum needs decorated representations of the same QP")
    return DecoratedRep(d1.qp, direct_sum(d1.rep, d2.rep), tuple(a + b for a, b in zip(d1.decoration, d2.decoration)))


def _dimension_vectors(dims: Sequence[int]):
    return itertools.product(*(range(d + 1) for d in dims))


def euler_characteristics(dec: DecoratedRep, max_primes: int = 64) -> dict[tuple[int, ...], int]:
    """chi(Gr_e(M)) for every e between 0 and dim M (zeros included)."""
    return {e: counting_data(dec.rep, e, max_primes).euler_characteristic for e in _dimension_vectors(dec.dims)}


def f_polynomial(dec: DecoratedRep, max_primes: int = 64) -> LaurentPoly:
    """F-polynomial in y_1..y_n, stored as a LaurentPoly with nonnegative exponents."""
    chi = euler_characteristics(dec, max_primes)
    return LaurentPoly({e: c for e, c in chi.items()}, dec.n)


def x_of_rep(dec: DecoratedRep, B: Matrix | None = None, max_primes: int = 64) -> LaurentPoly:
    """``F(x^{b_1}, ..., x^{b_n}) * x^g`` with ``b_j`` the columns of ``B``."""
    if B is None:
        B = dec.qp.B
    elif tuple(map(tuple, B)) != dec.qp.B:
        raise QPError("B must be the exchange matrix of the QP's quiver")
    n = dec.n
    F = f_polynomial(dec, max_primes)
    images = [LaurentPoly.monomial([B[i][j] for i in range(n)]) for j in range(n)]
    return lp_substitute(F, images).shift(g_vector(dec))


def e_invariants(Mdec: DecoratedRep, Ndec: DecoratedRep) -> dict:
    if Mdec.qp != Ndec.qp:
        raise QPError("E-invariants need decorated representations of the same QP")
    gM, gN = g_vector(Mdec), g_vector(Ndec)

    def einj(X, Y, gY):
        return hom_dim(X.rep, Y.rep) + sum(a * b for a, b in zip(X.dims, gY))

    out = {
        "e_inj": einj(Mdec, Ndec, gN),
        "e_inj_reverse": einj(Ndec, Mdec, gM),
        "e_self_M": einj(Mdec, Mdec, gM),
    }
    acyclic_seed = Mdec.qp.potential.is_zero() and Mdec.qp.quiver.is_acyclic()
    if acyclic_seed and Mdec.is_positive() and Ndec.is_positive():
        homological = hom_dim(tau_inverse(Ndec.rep), Mdec.rep)
        out["homological"] = homological
        if homological != out["e_inj"]:
            raise AssertionError(f"E_inj {out['e_inj']} != dim Hom(tau^-1 N, M) = {homological}")
    return out


def build_cluster_rep(
    B0: Sequence[Sequence[int]],
    walk: Sequence[int],
    k: int | None = None,
    exponents: Sequence[int] | None = None,
    qp0: QP | None = None,
    check: bool = True,
) -> DecoratedRep:
    """Decorated representation whose X is the cluster variable (or monomial) at ``walk``.

    Mutate the initial QP forward along ``walk``, start from negative simples
    there, and mutate back along the reversed walk.
    """
    if (k is None) == (exponents is None):
        raise ValueError("give exactly one of k and exponents")
    if qp0 is None:
        A = matrix_to_quiver(B0)
        qp0 = QP(A, primitive_potential(A))
    elif qp0.B != tuple(map(tuple, B0)):
        raise QPError("initial QP does not match B0")
    n = qp0.n
    if exponents is None:
        if not 0 <= k < n:
            raise IndexError(f"cluster index {k} out of range")
        exponents = [0] * n
        exponents[k] = 1
    if len(exponents) != n or any(a < 0 for a in exponents):
        raise ValueError(f"bad exponent vector {exponents}")
    qps = qp_along_walk(qp0, walk)
    top = qps[-1]
    parts = []
    for i, a in enumerate(exponents):
        if not a:
            continue
        dec = negative_simple(top, i)
        for j in reversed(walk):
            dec = rep_mutate(dec, j, check=check)
        parts.extend([dec] * a)
    if not parts:
        qp_end = top
        for j in reversed(walk):
            qp_end = qp_mutate(qp_end, j)[0]
        return DecoratedRep(qp_end, zero_rep(qp_end.quiver), (0,) * n)
    out = parts[0]
    for d in parts[1:]:
        out = rep_direct_sum(out, d)
    if check:
        e = e_invariants(out, out)["e_self_M"]
        if e != 0:
            raise AssertionError(f"E-invariant {e} != 0 for a cluster representation")
        if any(m and v for m, v in zip(out.dims, out.decoration)):
            raise AssertionError("support condition violated: M_i and V_i both nonzero")
    return out
