"""Congruence relations on finite commutative monoids.

A congruence is an equivalence relation closed under translation by every
element, so the quotient carries a well-defined addition.  The generated
closure runs a union-find worklist: whenever two classes merge, all their
translates are re-examined.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Optional, Sequence

from .core import (
    Biproduct,
    BudgetExceeded,
    FiniteCommMonoid,
    MonoidHom,
    NotASubmonoid,
    SemimodError,
    biproduct,
    validate_monoid,
)


class HypothesisFails(SemimodError):
    def __init__(self, m: int, m2: int):
        super().__init__(f"{m} ~ {m2} but the map separates them")
        self.witness = (m, m2)


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        self.parent[rb] = ra  # keep the smaller index as representative
        return True


@dataclass(frozen=True)
class Congruence:
    carrier: FiniteCommMonoid
    rep: tuple[int, ...]                       # element -> smallest member of its class
    generators: tuple[tuple[int, int], ...] = ()

    def same(self, a: int, b: int) -> bool:
        return self.rep[a] == self.rep[b]

    def classes(self) -> list[list[int]]:
        buckets: dict[int, list[int]] = {}
        for m, r in enumerate(self.rep):
            buckets.setdefault(r, []).append(m)
        return [buckets[r] for r in sorted(buckets)]

    def class_of(self, m: int) -> list[int]:
        return [x for x in self.carrier.elements() if self.rep[x] == self.rep[m]]

    def num_classes(self) -> int:
        return len(set(self.rep))

    def is_translation_closed(self) -> bool:
        M = self.carrier
        for a in M.elements():
            for b in M.elements():
                if self.rep[a] == self.rep[b]:
                    for w in M.elements():
                        if self.rep[M.add[a][w]] != self.rep[M.add[b][w]]:
                            return False
        return True

    def contains(self, other: "Congruence") -> bool:
        """Every class of `other` lies inside a class of self."""
        return all(self.same(a, b)
                   for a in self.carrier.elements()
                   for b in self.carrier.elements()
                   if other.same(a, b))

    def to_json(self) -> dict:
        return {"classes": self.classes()}


def _from_uf(M: FiniteCommMonoid, uf: UnionFind,
             generators: Iterable[tuple[int, int]] = ()) -> Congruence:
    rep = tuple(uf.find(m) for m in M.elements())
    return Congruence(M, rep, tuple(generators))


def identity_congruence(M: FiniteCommMonoid) -> Congruence:
    return Congruence(M, tuple(M.elements()))


def congruence_closure(M: FiniteCommMonoid,
                       pairs: Sequence[tuple[int, int]]) -> Congruence:
    """Smallest congruence containing the given pairs."""
    for a, b in pairs:
        if not (0 <= a < M.size and 0 <= b < M.size):
            raise SemimodError(f"pair ({a},{b}) out of range")
    uf = UnionFind(M.size)
    work = list(pairs)
    while work:
        a, b = work.pop()
        if uf.union(a, b):
            for w in M.elements():
                work.append((M.add[a][w], M.add[b][w]))
    return _from_uf(M, uf, pairs)


def quotient(M: FiniteCommMonoid, C: Congruence) -> tuple[FiniteCommMonoid, MonoidHom]:
    """The quotient monoid and its projection; class of 0 is element 0."""
    reps = sorted(set(C.rep))
    index = {r: i for i, r in enumerate(reps)}
    table = [[index[C.rep[M.add[a][b]]] for b in reps] for a in reps]
    labels = None
    if M.labels is not None:
        labels = tuple("{" + ",".join(M.label(m) for m in C.class_of(r)) + "}" for r in reps)
    Q = validate_monoid(table, labels)
    nu = MonoidHom(M, Q, tuple(index[C.rep[m]] for m in M.elements()))
    return Q, nu


def kernel_congruence(f: MonoidHom) -> Congruence:
    """Partition of the source by the fibers of f."""
    first: dict[int, int] = {}
    rep = []
    for m in f.source.elements():
        v = f.image[m]
        first.setdefault(v, m)
        rep.append(first[v])
    C = Congruence(f.source, tuple(rep))
    assert C.is_translation_closed()
    return C


def factor_through(f: MonoidHom, C: Congruence) -> MonoidHom:
    """The unique map on the quotient with f = f' o nu; fails loudly otherwise."""
    M = f.source
    for a in M.elements():
        for b in M.elements():
            if C.same(a, b) and f.image[a] != f.image[b]:
                raise HypothesisFails(a, b)
    Q, nu = quotient(M, C)
    reps = sorted(set(C.rep))
    return MonoidHom(Q, f.target, tuple(f.image[r] for r in reps))


def chain_congruence(f: MonoidHom, g: MonoidHom) -> Congruence:
    """Closure of the pairs f(n) ~ g(n); its quotient is the coequalizer."""
    if f.source is not g.source and f.source != g.source:
        raise SemimodError("mismatched sources")
    if f.target is not g.target and f.target != g.target:
        raise SemimodError("mismatched targets")
    seeds = [(f.image[n], g.image[n]) for n in f.source.elements()]
    return congruence_closure(f.target, seeds)


def coequalizer_finite(f: MonoidHom, g: MonoidHom) -> tuple[FiniteCommMonoid, MonoidHom]:
    return quotient(f.target, chain_congruence(f, g))


def naive_congruence(f: MonoidHom, g: MonoidHom) -> Congruence:
    """m ~ m' iff m + f(n) + g(n') = m' + f(n') + g(n) for some n, n'.

    Computed by exhaustive enumeration over the finite source; the relation
    is already a congruence, which is re-checked.
    """
    M = f.target
    N = f.source
    uf = UnionFind(M.size)
    for m in M.elements():
        for m2 in M.elements():
            for n in N.elements():
                for n2 in N.elements():
                    lhs = M.sum([m, f.image[n], g.image[n2]])
                    rhs = M.sum([m2, f.image[n2], g.image[n]])
                    if lhs == rhs:
                        uf.union(m, m2)
    C = _from_uf(M, uf)
    assert C.is_translation_closed()
    return C


def bourne_congruence(M: FiniteCommMonoid, K: Sequence[int]) -> Congruence:
    """m ~ m' iff m + a = m' + b for some a, b in the submonoid K."""
    K = tuple(sorted(K))
    if not M.is_submonoid(K):
        raise NotASubmonoid(f"{K} is not a submonoid")
    uf = UnionFind(M.size)
    for m in M.elements():
        for m2 in M.elements():
            if any(M.add[m][a] == M.add[m2][b] for a in K for b in K):
                uf.union(m, m2)
    C = _from_uf(M, uf)
    assert C.is_translation_closed()
    return C


def zero_class(C: Congruence) -> tuple[int, ...]:
    return tuple(C.class_of(0))


@dataclass(frozen=True)
class KernelPair:
    rel: FiniteCommMonoid          # the submonoid of related pairs in M x M
    elements: tuple[int, ...]      # rel index -> biproduct index
    p1: MonoidHom
    p2: MonoidHom
    ambient: Biproduct

    def pairing(self, g: MonoidHom, h: MonoidHom) -> MonoidHom:
        """The unique map x -> (g(x), h(x)) into the relation submonoid."""
        pos = {bp: i for i, bp in enumerate(self.elements)}
        image = []
        for x in g.source.elements():
            bp = self.ambient.pair(g.image[x], h.image[x])
            if bp not in pos:
                raise SemimodError("the pair (g, h) does not land in the relation")
            image.append(pos[bp])
        return MonoidHom(g.source, self.rel, tuple(image))


def kernel_pair_of_congruence(C: Congruence) -> KernelPair:
    M = C.carrier
    bp = biproduct(M, M)
    members = tuple(bp.pair(a, b) for a in M.elements() for b in M.elements()
                    if C.same(a, b))
    pos = {x: i for i, x in enumerate(members)}
    table = [[pos[bp.monoid.add[a][b]] for b in members] for a in members]
    Rel = validate_monoid(table)
    p1 = MonoidHom(Rel, M, tuple(bp.unpair(x)[0] for x in members))
    p2 = MonoidHom(Rel, M, tuple(bp.unpair(x)[1] for x in members))
    return KernelPair(Rel, members, p1, p2, bp)


def kernel_pair(f: MonoidHom) -> KernelPair:
    return kernel_pair_of_congruence(kernel_congruence(f))


def enumerate_congruences(M: FiniteCommMonoid, max_size: int = 6) -> list[Congruence]:
    """All congruences of a small monoid, by filtering set partitions."""
    n = M.size
    if n > max_size:
        raise BudgetExceeded(f"monoid size {n} exceeds the cap {max_size}")
    out = []
    # restricted growth strings enumerate the set partitions
    def rec(i: int, assign: list[int], nblocks: int):
        if i == n:
            # block ids -> smallest member representative
            first = {}
            rep = []
            for m, b in enumerate(assign):
                first.setdefault(b, m)
                rep.append(first[b])
            C = Congruence(M, tuple(rep))
            if C.is_translation_closed():
                out.append(C)
            return
        for b in range(nblocks + 1):
            assign.append(b)
            rec(i + 1, assign, max(nblocks, b + 1))
            assign.pop()

    rec(0, [], 0)
    return out


def coequalizer_universal_probe(f: MonoidHom, g: MonoidHom,
                                targets: Iterable[FiniteCommMonoid],
                                budget: int = 10**7) -> bool:
    """Finite surrogate of the coequalizer property over the given targets.

    For every map h with h o f = h o g, a unique factorization through the
    computed quotient must exist.
    """
    from .core import enumerate_homs
    Q, nu = coequalizer_finite(f, g)
    M = f.target
    for P in targets:
        for h in enumerate_homs(M, P, budget):
            if all(h.image[f.image[n]] == h.image[g.image[n]] for n in f.source.elements()):
                # factorization exists and is unique because nu is surjective
                cls: dict[int, int] = {}
                ok = True
                for m in M.elements():
                    q = nu.image[m]
                    if q in cls and cls[q] != h.image[m]:
                        ok = False
                        break
                    cls[q] = h.image[m]
                if not ok:
                    return False
    return True
