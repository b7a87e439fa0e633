import itertools

import numpy as np
import pytest

from clusteratom.atomic import (
    MonomialBasis,
    check_proper_lemma,
    enumerate_cluster_monomials,
    expand_in_basis,
    expansion_in_cluster,
    proof_inequalities,
    random_combination,
    verify_atomicity,
)
from clusteratom.cluster import reroot_expansions
from clusteratom.laurent import LaurentPoly, lp_classify
from clusteratom.qp import QP, DecoratedRep, build_cluster_rep, primitive_potential
from clusteratom.representations import rep_build

from conftest import A2


def X(text, n=2):
    return LaurentPoly.parse(text, n)


@pytest.fixture(scope="module")
def a2_basis(graphs):
    return MonomialBasis(graphs("A2"), 2)


@pytest.fixture(scope="module")
def a3_basis(graphs):
    return MonomialBasis(graphs("A3"), 2)


class TestMonomials:
    def test_a2_counts(self, graphs):
        g = graphs("A2")
        assert len(enumerate_cluster_monomials(g, 0)) == 1
        assert len(enumerate_cluster_monomials(g, 1)) == 6
        assert len(enumerate_cluster_monomials(g, 2)) == 16

    def test_count_oracle(self, graphs):
        """Distinct monomials = sum over faces of the cluster complex.

        A monomial with support F (a compatible set) and degree d is counted
        once; the number with full support |F| = s and degree d is C(d-1, s-1).
        """
        from math import comb

        for name, deg in (("A3", 3), ("D4", 2)):
            g = graphs(name)
            faces = set()
            for c in g.clusters:
                for r in range(len(c) + 1):
                    faces.update(frozenset(x) for x in itertools.combinations(sorted(c, key=str), r))
            want = sum(comb(d - 1, len(f) - 1) if f else 1 for f in faces for d in range(deg + 1) if (d == 0) == (not f))
            assert len(enumerate_cluster_monomials(g, deg)) == want

    def test_expansion_is_product(self, graphs):
        for m in enumerate_cluster_monomials(graphs("A3"), 2):
            prod = LaurentPoly.one(3)
            for v, a in m.support().items():
                prod = prod * v ** a
            assert prod == m.expansion


class TestLemma:
    def test_proper_example(self, graphs):
        g = graphs("A2")
        u = X("x1^-1*x2^-1 + x1^-1 + x2^-1")
        i = g.clusters.index(frozenset({X("x1"), X("x2")}))
        assert reroot_expansions(g, i)[u] == u
        assert lp_classify(u)["is_proper_sum"]

    def test_sweeps(self, graphs):
        for name, deg in (("A2", 2), ("A3", 2), ("C3", 2)):
            r = check_proper_lemma(graphs(name), deg)
            assert r.ok and r.checked > 0

    def test_skips_monomials_of_the_cluster(self, graphs):
        g = graphs("A2")
        r = check_proper_lemma(g, 1)
        # each cluster contains the constant and its own two variables
        assert r.skipped == 3 * len(g.clusters)
        assert r.checked == 3 * len(g.clusters)

    def test_threads_same_report(self, graphs):
        g = graphs("A3")
        assert check_proper_lemma(g, 2, threads=2).as_json() == check_proper_lemma(g, 2).as_json()


class TestExpand:
    def test_basis_element(self, a2_basis):
        for m in a2_basis.monomials:
            e = expand_in_basis(m.expansion, basis=a2_basis)
            assert e.coefficients == {m: 1} and not e.residual

    def test_exchange_relation(self, a2_basis):
        e = expand_in_basis(X("x2 + 1"), basis=a2_basis)
        assert sorted(m.label() for m in e.coefficients) == ["(x2)", "1"]
        assert set(e.coefficients.values()) == {1}

    def test_round_trip(self, a3_basis):
        rng = np.random.default_rng(3)
        for _ in range(20):
            i, j = rng.choice(len(a3_basis), 2, replace=False)
            coeffs = [0] * len(a3_basis)
            coeffs[i], coeffs[j] = 3, 2
            got = expand_in_basis(a3_basis.combine(coeffs), basis=a3_basis)
            assert got.vector(a3_basis) == coeffs

    def test_residual(self, a2_basis):
        assert expand_in_basis(X("x1^-1"), basis=a2_basis).residual
        # degree 3 monomial is outside the degree 2 span
        assert expand_in_basis(X("x1^3"), basis=a2_basis).residual


class TestAtomicity:
    def test_basis_elements_positive(self, a2_basis):
        for m in a2_basis.monomials:
            r = verify_atomicity(m.expansion, basis=a2_basis)
            assert (r.is_positive, r.coords_nonneg, r.theorem_consistent) == (True, True, True)

    def test_differences(self, a2_basis):
        ms = a2_basis.monomials
        for m1, m2 in itertools.combinations(ms, 2):
            if m1.degree != m2.degree:
                continue
            r = verify_atomicity(m1.expansion - m2.expansion, basis=a2_basis)
            assert r.coords_nonneg is False and r.is_positive is False and r.theorem_consistent

    def test_zero(self, a2_basis):
        r = verify_atomicity(LaurentPoly.zero(2), basis=a2_basis)
        assert (r.is_positive, r.coords_nonneg, r.theorem_consistent) == (True, True, True)

    def test_hidden_negativity(self, a2_basis):
        """x1*x1' - 1 = x2 is positive although it is written with a minus sign."""
        p = X("x1") * X("x1^-1 + x1^-1*x2") - 1
        r = verify_atomicity(p, basis=a2_basis)
        assert r.is_positive and r.coords_nonneg

    def test_random(self, a3_basis):
        rng = np.random.default_rng(11)
        for _ in range(30):
            p = a3_basis.combine(random_combination(a3_basis, rng))
            assert verify_atomicity(p, basis=a3_basis).theorem_consistent

    def test_expansion_in_cluster_consistent(self, graphs):
        g = graphs("A2")
        for i in range(len(g.clusters)):
            table = reroot_expansions(g, i)
            for v in g.variables:
                assert expansion_in_cluster(v, table) == table[v]


class TestProofInequalities:
    def test_p1(self):
        from clusteratom.cluster import Quiver

        q = Quiver(2, ((0, 1),))
        dec = DecoratedRep(QP(q, primitive_potential(q)), rep_build(q, (1, 1), [[[1]]]), (0, 0))
        r = proof_inequalities(dec, A2)
        assert r.ok
        assert r.g == (0, -1)
        assert (0, 1) in r.contributing and (1, 0) not in r.contributing

    def test_all_cluster_reps(self, graphs):
        for name in ("A2", "A3", "C3"):
            g = graphs(name)
            for s in g.seeds:
                for k in range(g.rank):
                    dec = build_cluster_rep(g.root, s.walk, k=k)
                    if dec.is_positive() and not dec.rep.is_zero():
                        r = proof_inequalities(dec)
                        assert r.ok
                        assert r.chi_zero_nonempty == []

    def test_rejects_negative(self, graphs):
        dec = build_cluster_rep(A2, [], k=0)
        with pytest.raises(ValueError):
            proof_inequalities(dec)
