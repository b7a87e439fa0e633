"""Cluster monomials, the proper-Laurent-monomial lemma and atomicity checks.

Everything here works with expansions in the initial cluster.  Expansions in
another cluster come from ``reroot_expansions``: a second BFS whose steps
are paired with the exchanges of the original graph.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg
from .cluster import ExchangeGraph, reroot_expansions
from .laurent import LaurentPoly, lp_classify, lp_div_exact, lp_substitute
from .qp import DecoratedRep, g_vector
from .representations import counting_data, hom_dim

__all__ = [
    "ClusterMonomial",
    "BasisExpansion",
    "MonomialBasis",
    "LemmaReport",
    "AtomicityResult",
    "ProofReport",
    "enumerate_cluster_monomials",
    "check_proper_lemma",
    "expand_in_basis",
    "expansion_in_cluster",
    "verify_atomicity",
    "proof_inequalities",
    "random_combination",
]


@dataclass(frozen=True)
class ClusterMonomial:
    """Product of variables of one cluster; ``variables[j]`` carries ``exponents[j]``."""

    cluster: int
    variables: tuple[LaurentPoly, ...]
    exponents: tuple[int, ...]
    expansion: LaurentPoly = field(compare=False, hash=False)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def support(self) -> dict[LaurentPoly, int]:
        return {v: a for v, a in zip(self.variables, self.exponents) if a}

    def label(self) -> str:
        parts = []
        for v, a in zip(self.variables, self.exponents):
            if a:
                parts.append(f"({v})" + (f"^{a}" if a > 1 else ""))
        return "*".join(parts) or "1"

    def as_json(self) -> dict:
        return {
            "cluster": self.cluster,
            "factors": [{"variable": str(v), "power": a} for v, a in zip(self.variables, self.exponents) if a],
            "expansion": str(self.expansion),
        }


def enumerate_cluster_monomials(graph: ExchangeGraph, max_deg: int) -> list[ClusterMonomial]:
    """All cluster monomials of degree <= ``max_deg``, one per distinct expansion.

    The owner of a monomial shared by several clusters is the cluster with the
    smallest index.  Output is ordered by degree, then owner, then exponents.
    """
    if max_deg < 0:
        raise ValueError("max_deg must be nonnegative")
    n = graph.rank
    seen: set[LaurentPoly] = set()
    out: list[ClusterMonomial] = []
    for deg in range(max_deg + 1):
        for i in range(len(graph.clusters)):
            variables = graph.sorted_cluster(i)
            for combo in itertools.combinations_with_replacement(range(n), deg):
                exps = [0] * n
                for j in combo:
                    exps[j] += 1
                expansion = LaurentPoly.one(n)
                for v, a in zip(variables, exps):
                    if a:
                        expansion = expansion * v ** a
                if expansion in seen:
                    continue
                seen.add(expansion)
                out.append(ClusterMonomial(i, variables, tuple(exps), expansion))
    return out


# ---------------------------------------------------------------------------
# the lemma


@dataclass
class LemmaReport:
    max_deg: int
    clusters: int
    monomials: int
    checked: int = 0
    skipped: int = 0
    violations: list[dict] = field(default_factory=list)
    per_cluster: list[tuple[int, int, int]] = field(default_factory=list)  # checked, skipped, violations

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_json(self) -> dict:
        return {
            "max_deg": self.max_deg,
            "clusters": self.clusters,
            "monomials": self.monomials,
            "checked": self.checked,
            "skipped": self.skipped,
            "violations": self.violations,
            "ok": self.ok,
        }


def _lemma_in_cluster(graph: ExchangeGraph, monomials: Sequence[ClusterMonomial], i: int):
    table = reroot_expansions(graph, i)
    here = graph.clusters[i]
    n = graph.rank
    checked = skipped = 0
    bad = []
    for m in monomials:
        supp = m.support()
        if set(supp) <= here:
            skipped += 1
            continue
        checked += 1
        e = LaurentPoly.one(n)
        for v, a in supp.items():
            e = e * table[v] ** a
        cls = lp_classify(e)
        if not (cls["is_proper_sum"] and cls["is_nonneg"]):
            bad.append({"cluster": i, "monomial": m.label(), "expansion": str(e), **cls})
    return checked, skipped, bad


def _lemma_task(args):
    return _lemma_in_cluster(*args)


def check_proper_lemma(
    graph: ExchangeGraph,
    max_deg: int,
    monomials: Sequence[ClusterMonomial] | None = None,
    threads: int = 1,
) -> LemmaReport:
    """Every cluster monomial outside a cluster expands there as a positive sum of proper monomials."""
    if monomials is None:
        monomials = enumerate_cluster_monomials(graph, max_deg)
    report = LemmaReport(max_deg, len(graph.clusters), len(monomials))
    tasks = [(graph, monomials, i) for i in range(len(graph.clusters))]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_lemma_task, tasks, chunksize=max(1, len(tasks) // (4 * threads))))
    else:
        results = [_lemma_task(t) for t in tasks]
    for checked, skipped, bad in results:
        report.checked += checked
        report.skipped += skipped
        report.violations.extend(bad)
        report.per_cluster.append((checked, skipped, len(bad)))
    return report


# ---------------------------------------------------------------------------
# basis expansion


class MonomialBasis:
    """Cluster monomials of bounded degree with a cached exact solver.

    Coordinates are the initial-cluster monomials occurring in the basis
    expansions.  A square invertible block of the coefficient matrix is
    inverted once; each expansion is then a matrix-vector product followed by
    an exact residual check.
    """

    def __init__(self, graph: ExchangeGraph, max_deg: int):
        self.graph = graph
        self.max_deg = max_deg
        self.monomials = enumerate_cluster_monomials(graph, max_deg)
        support = sorted({e for m in self.monomials for e in m.expansion.terms})
        self.coords = {e: r for r, e in enumerate(support)}
        A = linalg.zeros(len(support), len(self.monomials))
        for c, m in enumerate(self.monomials):
            for e, v in m.expansion.terms.items():
                A[self.coords[e], c] = v
        _, rows = linalg.rref(A.T.copy())
        if len(rows) != len(self.monomials):
            raise AssertionError("cluster monomial expansions are linearly dependent")
        self._rows = rows
        self._inverse = linalg.solve(A[rows, :], linalg.identity(len(rows)))
        self._tables: dict[int, dict[LaurentPoly, LaurentPoly]] = {}

    def __len__(self) -> int:
        return len(self.monomials)

    def reroot(self, i: int) -> dict[LaurentPoly, LaurentPoly]:
        if i not in self._tables:
            self._tables[i] = reroot_expansions(self.graph, i)
        return self._tables[i]

    def combine(self, coeffs: Sequence[int]) -> LaurentPoly:
        out = LaurentPoly.zero(self.graph.rank)
        for c, m in zip(coeffs, self.monomials):
            if c:
                out = out + m.expansion * int(c)
        return out


@dataclass
class BasisExpansion:
    coefficients: dict[ClusterMonomial, int]
    residual: bool

    def vector(self, basis: MonomialBasis) -> list[int]:
        return [self.coefficients.get(m, 0) for m in basis.monomials]

    @property
    def nonneg(self) -> bool:
        return all(c >= 0 for c in self.coefficients.values())

    def as_json(self) -> dict:
        return {
            "residual": self.residual,
            "terms": [{"monomial": m.label(), "cluster": m.cluster, "coeff": c} for m, c in self.coefficients.items()],
        }


def expand_in_basis(
    p: LaurentPoly, graph: ExchangeGraph | None = None, max_deg: int = 3, basis: MonomialBasis | None = None
) -> BasisExpansion:
    """Integer coordinates of ``p`` in the cluster monomials of degree <= ``max_deg``.

    ``residual`` is set when ``p`` is not an integer combination of them.
    """
    if basis is None:
        if graph is None:
            raise ValueError("need a graph or a basis")
        basis = MonomialBasis(graph, max_deg)
    if p.nvars != basis.graph.rank:
        raise ValueError("rank mismatch")
    if any(e not in basis.coords for e in p.terms):
        return BasisExpansion({}, True)
    rhs = linalg.zeros(len(basis._rows), 1)
    pos = {r: i for i, r in enumerate(basis._rows)}
    for e, v in p.terms.items():
        r = basis.coords[e]
        if r in pos:
            rhs[pos[r], 0] = Fraction(v)
    sol = basis._inverse.dot(rhs)[:, 0]
    if any(Fraction(x).denominator != 1 for x in sol):
        return BasisExpansion({}, True)
    coeffs = [int(x) for x in sol]
    if basis.combine(coeffs) != p:
        return BasisExpansion({}, True)
    return BasisExpansion({m: c for m, c in zip(basis.monomials, coeffs) if c}, False)


# ---------------------------------------------------------------------------
# atomicity


def expansion_in_cluster(p: LaurentPoly, table: dict[LaurentPoly, LaurentPoly]) -> LaurentPoly:
    """Rewrite ``p`` (initial variables) in the generators of another cluster.

    Write ``p = N / x^d`` with ``N`` a polynomial, substitute, and divide
    exactly by the image of ``x^d``.
    """
    n = p.nvars
    if p.is_zero():
        return p
    images = [table[LaurentPoly.gen(j, n)] for j in range(n)]
    d = tuple(max(0, -m) for m in p.min_exponents())
    num = lp_substitute(p.shift(d), images)
    den = lp_substitute(LaurentPoly.monomial(d), images)
    return lp_div_exact(num, den)


@dataclass
class AtomicityResult:
    """``None`` fields mean undecided: the element left the span (``residual``)."""

    is_positive: bool | None
    coords_nonneg: bool | None
    theorem_consistent: bool | None
    residual: bool
    negative_cluster: int | None = None

    def as_json(self) -> dict:
        return {
            "is_positive": self.is_positive,
            "coords_nonneg": self.coords_nonneg,
            "theorem_consistent": self.theorem_consistent,
            "residual": self.residual,
            "negative_cluster": self.negative_cluster,
        }


def verify_atomicity(
    p: LaurentPoly, graph: ExchangeGraph | None = None, max_deg: int = 3, basis: MonomialBasis | None = None
) -> AtomicityResult:
    """Compare positivity in every cluster with nonnegativity of basis coordinates."""
    if basis is None:
        if graph is None:
            raise ValueError("need a graph or a basis")
        basis = MonomialBasis(graph, max_deg)
    expansion = expand_in_basis(p, basis=basis)
    if expansion.residual:
        # outside the span at this degree: neither side is decided
        return AtomicityResult(None, None, None, True)
    positive, where = True, None
    for i in range(len(basis.graph.clusters)):
        if not lp_classify(expansion_in_cluster(p, basis.reroot(i)))["is_nonneg"]:
            positive, where = False, i
            break
    nonneg = expansion.nonneg
    return AtomicityResult(positive, nonneg, positive == nonneg, False, where)


def random_combination(basis: MonomialBasis, rng: np.random.Generator, lo: int = -3, hi: int = 3) -> list[int]:
    """Integer coefficient vector with entries drawn uniformly from ``[lo, hi]``.

    Most entries are zero so that the element is a short combination; at
    least one entry is nonzero when ``lo < hi`` allows it.
    """
    m = len(basis)
    coeffs = [0] * m
    size = int(rng.integers(1, min(4, m) + 1))
    for j in rng.choice(m, size=size, replace=False):
        coeffs[int(j)] = int(rng.integers(lo, hi + 1))
    return coeffs


# ---------------------------------------------------------------------------
# the inequalities behind the lemma


@dataclass
class ProofReport:
    g: tuple[int, ...]
    dim: tuple[int, ...]
    contributing: list[tuple[int, ...]]
    checks: int = 0
    violations: list[dict] = field(default_factory=list)
    # nonempty Grassmannians whose Euler characteristic vanishes
    chi_zero_nonempty: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_json(self) -> dict:
        return {
            "g": list(self.g),
            "dim": list(self.dim),
            "contributing": [list(e) for e in self.contributing],
            "checks": self.checks,
            "violations": self.violations,
            "chi_zero_nonempty": [list(e) for e in self.chi_zero_nonempty],
            "ok": self.ok,
        }


def proof_inequalities(dec: DecoratedRep, B: Sequence[Sequence[int]] | None = None, max_primes: int = 64) -> ProofReport:
    """Check ``e.g < 0`` for contributing ``e`` and properness of each ``g + Be``.

    A dimension vector contributes when some point count of Gr_e(M) is
    nonzero.  This contains every ``e`` with nonzero Euler characteristic;
    the ones with vanishing characteristic are listed separately.
    """
    if not dec.is_positive() or dec.rep.is_zero():
        raise ValueError("need a nonzero representation with zero decoration")
    if B is None:
        B = dec.qp.B
    n = dec.n
    g = g_vector(dec)
    dim = dec.dims
    data = [counting_data(dec.rep, e, max_primes) for e in itertools.product(*(range(d + 1) for d in dim))]
    contributing = sorted(c.e for c in data if any(cnt for _, cnt in c.counts))
    report = ProofReport(g, dim, contributing)
    report.chi_zero_nonempty = sorted(
        c.e for c in data if c.e in contributing and c.euler_characteristic == 0
    )

    def dot(u, v):
        return sum(a * b for a, b in zip(u, v))

    for e in contributing:
        if any(e):
            report.checks += 1
            if dot(e, g) >= 0:
                report.violations.append({"e": list(e), "kind": "e.g >= 0", "value": dot(e, g)})
        exp = [g[i] + sum(B[i][j] * e[j] for j in range(n)) for i in range(n)]
        report.checks += 1
        if min(exp) >= 0:
            report.violations.append({"e": list(e), "kind": "exponent not proper", "value": exp})
    report.checks += 1
    top = dot(dim, g)
    if top != -hom_dim(dec.rep, dec.rep) or top >= 0:
        report.violations.append({"e": list(dim), "kind": "dim.g != -hom(M,M) < 0", "value": top})
    return report
