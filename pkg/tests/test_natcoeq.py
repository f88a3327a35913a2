import pytest

from semimod.congruence import congruence_closure
from semimod.natcoeq import (
    BoundCapExceeded,
    BourneNatQuotient,
    CyclicMonoid,
    NatQuotient,
    bourne_nat_quotient,
    coequalizer_nat,
    naive_nat_classes,
    nat_congruence_quotient,
)
from semimod.semiideal import EmptyIdeal

C42_TABLE = [
    [0, 1, 2, 3, 4, 5],
    [1, 2, 3, 4, 5, 4],
    [2, 3, 4, 5, 4, 5],
    [3, 4, 5, 4, 5, 4],
    [4, 5, 4, 5, 4, 5],
    [5, 4, 5, 4, 5, 4],
]


class TestCyclicMonoid:
    def test_c42_table(self):
        M = CyclicMonoid(4, 2).to_monoid(labels=False)
        assert [list(r) for r in M.add] == C42_TABLE

    def test_pure_cycle_is_group(self):
        M = CyclicMonoid(0, 3).to_monoid(labels=False)
        assert [list(r) for r in M.add] == [[0, 1, 2], [1, 2, 0], [2, 0, 1]]

    def test_projection_is_additive(self):
        c = CyclicMonoid(3, 4)
        for a in range(30):
            for b in range(30):
                assert c.project(a + b) == c.project(c.project(a) + c.project(b))


class TestCoequalizerNat:
    def test_four_six_example(self):
        q = coequalizer_nat(4, 6)
        assert q.result == CyclicMonoid(4, 2)
        M = q.result.to_monoid(labels=False)
        assert [list(r) for r in M.add] == C42_TABLE
        assert M.add[5][5] == 4 and M.add[1][5] == 4

    def test_equal_maps(self):
        q = coequalizer_nat(3, 3)
        assert q.is_symbolic_nat
        assert q.verify()

    def test_zero_and_three(self):
        q = coequalizer_nat(0, 3)
        assert q.result == CyclicMonoid(0, 3)

    def test_certificates_replay(self):
        for a, b in [(4, 6), (0, 3), (2, 5), (3, 12), (1, 2)]:
            q = coequalizer_nat(a, b)
            assert q.verify_certificate_a()
            assert q.verify_certificate_b()

    def test_tampered_certificate_rejected(self):
        q = coequalizer_nat(4, 6)
        bad = NatQuotient(q.pairs, CyclicMonoid(4, 4), q.cert_a, q.cert_b, q.bound_used)
        assert not bad.verify_certificate_b()
        broken_chain = tuple((u + 1, v, s, k) for u, v, s, k in q.cert_b)
        bad2 = NatQuotient(q.pairs, q.result, q.cert_a, broken_chain, q.bound_used)
        assert not bad2.verify_certificate_b()


class TestGeneratedQuotient:
    def test_single_trivial_pair(self):
        q = nat_congruence_quotient([(5, 5)])
        assert q.is_symbolic_nat

    def test_two_pairs(self):
        q = nat_congruence_quotient([(2, 5), (3, 7)])
        assert q.result == CyclicMonoid(2, 1)
        # {0, 1, 2} with 2 absorbing
        M = q.result.to_monoid(labels=False)
        assert M.add[2][2] == 2 and M.add[1][2] == 2

    def test_small_elements_are_singletons(self):
        q = nat_congruence_quotient([(4, 6)])
        c = q.result
        for n in range(c.index):
            assert c.project(n) == n

    def test_merged_pairs_differ_by_period(self):
        q = nat_congruence_quotient([(3, 9), (5, 11)])
        c = q.result
        for n in range(50):
            for m in range(50):
                if c.project(n) == c.project(m):
                    assert (n - m) % c.period == 0

    def test_bound_doubling_stability(self):
        for pairs in [[(4, 6)], [(2, 5), (3, 7)], [(5, 8)]]:
            q1 = nat_congruence_quotient(pairs)
            q2 = nat_congruence_quotient(pairs, bound_cap=4 * max(q1.bound_used, 64))
            assert q1.result == q2.result

    def test_bound_cap_raises(self):
        with pytest.raises(BoundCapExceeded):
            nat_congruence_quotient([(10, 30)], bound_cap=12)

    def test_agreement_with_finite_chain_congruence(self):
        # truncate the naturals to a large cyclic monoid and rerun there
        q = nat_congruence_quotient([(4, 6)])
        big = CyclicMonoid(40, 2).to_monoid(labels=False)
        C = congruence_closure(big, [(4, 6)])
        c = q.result
        for n in range(20):
            for m in range(20):
                assert C.same(n, m) == (c.project(n) == c.project(m))


class TestNaiveClasses:
    def test_four_six_example(self):
        classes = naive_nat_classes(4, 6, probe_limit=20)
        assert len(classes) == 2
        assert classes[0] == list(range(0, 21, 2))
        assert classes[1] == list(range(1, 21, 2))

    def test_consecutive_multipliers(self):
        classes = naive_nat_classes(5, 6, probe_limit=20)
        assert len(classes) == 1

    def test_reflexive(self):
        classes = naive_nat_classes(3, 7, probe_limit=10)
        assert sorted(x for c in classes for x in c) == list(range(11))

    def test_any_window_size(self):
        for limit in (8, 15, 30):
            assert len(naive_nat_classes(4, 6, probe_limit=limit)) == 2


class TestBourneQuotient:
    def test_four_six(self):
        q = bourne_nat_quotient([4, 6])
        assert q.modulus == 2
        assert q.quotient == CyclicMonoid(0, 2)
        assert q.verify()

    def test_single_generator(self):
        q = bourne_nat_quotient([5])
        assert q.modulus == 5

    def test_adjacent_generators_trivial(self):
        q = bourne_nat_quotient([2, 3])
        assert q.modulus == 1
        assert q.quotient.to_monoid().size == 1

    def test_empty_rejected(self):
        with pytest.raises(EmptyIdeal):
            bourne_nat_quotient([])

    def test_tampered_witnesses_rejected(self):
        q = bourne_nat_quotient([4, 6])
        bad = BourneNatQuotient(q.generators, q.modulus, q.quotient,
                                tuple((n + 1, w) for n, w in q.witnesses))
        assert not bad.verify()
