import itertools

import pytest

from semimod.congruence import (
    HypothesisFails,
    bourne_congruence,
    chain_congruence,
    coequalizer_finite,
    coequalizer_universal_probe,
    congruence_closure,
    enumerate_congruences,
    factor_through,
    identity_congruence,
    kernel_congruence,
    kernel_pair,
    kernel_pair_of_congruence,
    naive_congruence,
    quotient,
    zero_class,
)
from semimod.core import (
    all_submonoids,
    cyclic_group,
    enumerate_homs,
    hom_check,
    identity_hom,
    saturating_monoid,
    small_monoid_corpus,
    sub_as_monoid,
    trivial_monoid,
    validate_monoid,
    zero_hom,
)
from semimod.natcoeq import CyclicMonoid

C42 = CyclicMonoid(4, 2).to_monoid(labels=False)


class TestClosure:
    def test_empty_seeds(self):
        M = cyclic_group(4)
        C = congruence_closure(M, [])
        assert C.num_classes() == 4

    def test_c42_tail_merge(self):
        C = congruence_closure(C42, [(4, 5)])
        assert C.num_classes() == 5
        assert C.same(4, 5)
        Q, nu = quotient(C42, C)
        assert Q.size == 5

    def test_contains_seeds(self):
        M = saturating_monoid(3)
        C = congruence_closure(M, [(1, 2)])
        assert C.same(1, 2)

    def test_idempotent_and_monotone(self):
        M = C42
        small = congruence_closure(M, [(2, 4)])
        big = congruence_closure(M, [(2, 4), (1, 3)])
        assert big.contains(small)
        again = congruence_closure(M, [(a, b) for a in M.elements()
                                       for b in M.elements() if small.same(a, b)])
        assert again.rep == small.rep

    def test_minimality_against_enumeration(self):
        for M in small_monoid_corpus(4):
            congs = enumerate_congruences(M)
            pairs = list(itertools.combinations(range(M.size), 2))
            for seeds in itertools.chain(
                    ([p] for p in pairs),
                    itertools.combinations(pairs, 2)):
                closed = congruence_closure(M, list(seeds))
                meet_rep = None
                for C in congs:
                    if all(C.same(a, b) for a, b in seeds):
                        if meet_rep is None:
                            meet_rep = list(C.rep)
                        else:
                            # intersect the two partitions
                            key = {}
                            new = []
                            for m in M.elements():
                                k = (meet_rep[m], C.rep[m])
                                key.setdefault(k, m)
                                new.append(key[k])
                            meet_rep = new
                assert tuple(meet_rep) == closed.rep


class TestQuotient:
    def test_identity_congruence(self):
        M = C42
        Q, nu = quotient(M, identity_congruence(M))
        assert Q.add == M.add
        assert nu.image == tuple(M.elements())

    def test_total_congruence(self):
        M = cyclic_group(4)
        C = congruence_closure(M, [(0, 1)])
        Q, nu = quotient(M, C)
        assert Q.size == 1

    def test_zero_class_is_index_zero(self):
        C = congruence_closure(C42, [(0, 2)])
        Q, nu = quotient(C42, C)
        assert nu.image[0] == 0


class TestKernelCongruence:
    def test_injective(self):
        M = cyclic_group(3)
        C = kernel_congruence(identity_hom(M))
        assert C.num_classes() == 3

    def test_zero_map(self):
        C = kernel_congruence(zero_hom(cyclic_group(3), cyclic_group(2)))
        assert C.num_classes() == 1

    def test_parity_map(self):
        f = hom_check(C42, cyclic_group(2), [m % 2 for m in range(6)])
        assert kernel_congruence(f).num_classes() == 2


class TestFactorThrough:
    def test_identity_congruence(self):
        M = C42
        f = hom_check(M, cyclic_group(2), [m % 2 for m in range(6)])
        f2 = factor_through(f, identity_congruence(M))
        assert f2.image == f.image

    def test_kernel_gives_injective(self):
        f = hom_check(C42, cyclic_group(2), [m % 2 for m in range(6)])
        f2 = factor_through(f, kernel_congruence(f))
        assert f2.is_injective()

    def test_coarser_fails(self):
        M = cyclic_group(4)
        f = identity_hom(M)
        C = congruence_closure(M, [(0, 2)])
        with pytest.raises(HypothesisFails):
            factor_through(f, C)

    def test_homomorphism_theorem_over_all_homs(self):
        for M in small_monoid_corpus(3):
            for N in small_monoid_corpus(3):
                for f in enumerate_homs(M, N):
                    C = kernel_congruence(f)
                    Q, nu = quotient(M, C)
                    f2 = factor_through(f, C)
                    assert f2.compose(nu).image == f.image


class TestChainAndNaive:
    def test_equal_maps_give_identity(self):
        M = cyclic_group(4)
        f = identity_hom(M)
        assert chain_congruence(f, f).num_classes() == M.size

    def test_coequalizer_id_zero_on_z2(self):
        M = cyclic_group(2)
        Q, nu = coequalizer_finite(identity_hom(M), zero_hom(M, M))
        assert Q.size == 1

    def test_naive_on_saturating_merges_all(self):
        N = saturating_monoid(3)
        C = naive_congruence(identity_hom(N), identity_hom(N))
        assert C.num_classes() == 1  # 0 ~ 1 via n = n' = 1

    def test_naive_contains_seed_pairs(self):
        M, N = C42, cyclic_group(2)
        for f in enumerate_homs(N, M):
            for g in enumerate_homs(N, M):
                C = naive_congruence(f, g)
                for n in N.elements():
                    assert C.same(f.image[n], g.image[n])

    def test_chain_finer_than_naive_strictly_somewhere(self):
        strict = 0
        for M in small_monoid_corpus(3):
            for N in small_monoid_corpus(3):
                for f in enumerate_homs(N, M):
                    for g in enumerate_homs(N, M):
                        nc = naive_congruence(f, g)
                        cc = chain_congruence(f, g)
                        assert nc.contains(cc)
                        if not cc.contains(nc):
                            strict += 1
        assert strict > 0

    def test_universal_property_probe(self):
        corpus = small_monoid_corpus(3)
        for M in corpus:
            if M.size > 2:
                continue
            for N in corpus:
                if N.size > 2:
                    continue
                for f in enumerate_homs(N, M):
                    for g in enumerate_homs(N, M):
                        assert coequalizer_universal_probe(f, g, corpus)

    def test_chain_equals_kernel_intersection_surrogate(self):
        # the coequalizer congruence equals the meet of all kernel
        # congruences of coequalizing maps into small targets
        corpus = small_monoid_corpus(3)
        M = cyclic_group(4)
        N = cyclic_group(2)
        f = hom_check(N, M, [0, 2])
        g = zero_hom(N, M)
        cc = chain_congruence(f, g)
        meet = [[True] * M.size for _ in M.elements()]
        for P in corpus + [M]:
            for h in enumerate_homs(M, P):
                if all(h.image[f.image[n]] == h.image[g.image[n]] for n in N.elements()):
                    for a in M.elements():
                        for b in M.elements():
                            if h.image[a] != h.image[b]:
                                meet[a][b] = False
        for a in M.elements():
            for b in M.elements():
                assert meet[a][b] == cc.same(a, b)


class TestBourne:
    def test_trivial_submonoid(self):
        M = C42
        assert bourne_congruence(M, (0,)).num_classes() == M.size

    def test_whole_monoid(self):
        M = C42
        assert bourne_congruence(M, tuple(M.elements())).num_classes() == 1

    def test_equals_chain_of_inclusion_and_zero(self):
        for M in small_monoid_corpus(4):
            for K in all_submonoids(M):
                S, incl = sub_as_monoid(M, K)
                assert (bourne_congruence(M, K).rep
                        == chain_congruence(incl, zero_hom(S, M)).rep)

    def test_smallest_congruence_killing_k(self):
        for M in small_monoid_corpus(4):
            congs = enumerate_congruences(M)
            for K in all_submonoids(M):
                B = bourne_congruence(M, K)
                for C in congs:
                    if all(C.same(k, 0) for k in K):
                        assert C.contains(B)

    def test_zero_class_contains_k_strictly_somewhere(self):
        strict = 0
        for M in small_monoid_corpus(4):
            for K in all_submonoids(M):
                z = set(zero_class(bourne_congruence(M, K)))
                assert set(K) <= z
                if set(K) < z:
                    strict += 1
        assert strict > 0

    def test_zero_class_is_submonoid_and_refines(self):
        M = C42
        C = congruence_closure(M, [(2, 4)])
        K = zero_class(C)
        assert M.is_submonoid(K)
        assert C.contains(bourne_congruence(M, K))


class TestKernelPair:
    def test_injective_gives_diagonal(self):
        M = cyclic_group(3)
        kp = kernel_pair(identity_hom(M))
        assert kp.rel.size == M.size

    def test_zero_gives_square(self):
        M = cyclic_group(3)
        kp = kernel_pair(zero_hom(M, M))
        assert kp.rel.size == M.size ** 2

    def test_projections_recover_pairs(self):
        f = hom_check(C42, cyclic_group(2), [m % 2 for m in range(6)])
        kp = kernel_pair(f)
        for i, bp_index in enumerate(kp.elements):
            a, b = kp.ambient.unpair(bp_index)
            assert kp.p1.image[i] == a and kp.p2.image[i] == b
            assert f.image[a] == f.image[b]

    def test_pairing_is_unique_fill_in(self):
        M = cyclic_group(2)
        f = identity_hom(M)
        g = identity_hom(M)
        C = kernel_congruence(identity_hom(M))
        kp = kernel_pair_of_congruence(C)
        h = kp.pairing(f, g)
        assert kp.p1.compose(h).image == f.image
        assert kp.p2.compose(h).image == g.image

    def test_roundtrip_with_coequalizer(self):
        # the coequalizer of the kernel pair of a quotient map is the quotient
        for M in small_monoid_corpus(3):
            for seed in itertools.combinations(range(M.size), 2):
                C = congruence_closure(M, [seed])
                Q, nu = quotient(M, C)
                kp = kernel_pair(nu)
                C2 = chain_congruence(kp.p1, kp.p2)
                assert C2.rep == C.rep

    def test_congruence_embeds_in_chain_of_projections(self):
        M = saturating_monoid(3)
        C = congruence_closure(M, [(1, 2)])
        kp = kernel_pair_of_congruence(C)
        C2 = chain_congruence(kp.p1, kp.p2)
        for a in M.elements():
            for b in M.elements():
                if C.same(a, b):
                    assert C2.same(a, b)


class TestEnumerateCongruences:
    def test_trivial(self):
        assert len(enumerate_congruences(trivial_monoid())) == 1

    def test_z2(self):
        assert len(enumerate_congruences(cyclic_group(2))) == 2

    def test_z4_matches_subgroups(self):
        assert len(enumerate_congruences(cyclic_group(4))) == 3

    def test_all_outputs_are_congruences(self):
        for M in small_monoid_corpus(4):
            for C in enumerate_congruences(M):
                assert C.is_translation_closed()


def test_congruence_json():
    C = congruence_closure(C42, [(4, 5)])
    assert C.to_json() == {"classes": [[0], [1], [2], [3], [4, 5]]}
