"""Finite commutative monoids given by addition tables.

Element 0 is always the identity.  A validated monoid doubles as a module
over the nonnegative integers via the repeated-addition action, which is
cached per element as an eventually-periodic orbit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable, Mapping, Optional, Sequence

DEFAULT_BUDGET = 10**7


class SemimodError(Exception):
    pass


class OutOfRange(SemimodError):
    pass


class NotIdentity(SemimodError):
    def __init__(self, m: int):
        super().__init__(f"0 + {m} != {m}: element 0 is not an identity")
        self.witness = m


class NotCommutative(SemimodError):
    def __init__(self, m: int, m2: int):
        super().__init__(f"{m} + {m2} != {m2} + {m}")
        self.witness = (m, m2)


class NotAssociative(SemimodError):
    def __init__(self, m: int, m2: int, m3: int):
        super().__init__(f"({m} + {m2}) + {m3} != {m} + ({m2} + {m3})")
        self.witness = (m, m2, m3)


class IdentityNotPreserved(SemimodError):
    pass


class NotAdditive(SemimodError):
    def __init__(self, m: int, m2: int):
        super().__init__(f"f({m} + {m2}) != f({m}) + f({m2})")
        self.witness = (m, m2)


class NotASubmonoid(SemimodError):
    pass


class BudgetExceeded(SemimodError):
    pass


@dataclass(frozen=True)
class Orbit:
    """First repetition of the sequence m, 2m, 3m, ...: (index+period)m = index*m.

    The sequence starts at 1*m, so the identity has orbit (1, 1) and an
    order-n group element has orbit (1, n).
    """

    index: int
    period: int


@dataclass(frozen=True)
class FiniteCommMonoid:
    size: int
    add: tuple[tuple[int, ...], ...]
    labels: Optional[tuple[str, ...]] = None
    # powers[m] = (0, m, 2m, ..., (i+p)m); computed at validation time
    _powers: tuple[tuple[int, ...], ...] = field(default=(), compare=False, repr=False)
    _orbits: tuple[Orbit, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if not self._powers:
            powers, orbits = _orbit_tables(self.size, self.add)
            object.__setattr__(self, "_powers", powers)
            object.__setattr__(self, "_orbits", orbits)

    def plus(self, a: int, b: int) -> int:
        return self.add[a][b]

    def sum(self, elems: Iterable[int]) -> int:
        acc = 0
        for e in elems:
            acc = self.add[acc][e]
        return acc

    def elements(self) -> range:
        return range(self.size)

    def label(self, m: int) -> str:
        if self.labels is not None:
            return self.labels[m]
        return str(m)

    def orbit(self, m: int) -> Orbit:
        if not 0 <= m < self.size:
            raise OutOfRange(f"element {m} out of range")
        return self._orbits[m]

    def scalar(self, k: int, m: int) -> int:
        """k*m = m + ... + m (k times), via the cached orbit."""
        if not 0 <= m < self.size:
            raise OutOfRange(f"element {m} out of range")
        if k < 0:
            raise OutOfRange("scalar must be nonnegative")
        orb = self._orbits[m]
        top = orb.index + orb.period
        if k < top:
            return self._powers[m][k]
        return self._powers[m][orb.index + (k - orb.index) % orb.period]

    def is_submonoid(self, subset: Iterable[int]) -> bool:
        s = set(subset)
        if 0 not in s:
            return False
        return all(self.add[a][b] in s for a in s for b in s)


def _orbit_tables(size, add):
    powers = []
    orbits = []
    for m in range(size):
        seq = [0]  # 0*m
        seen: dict[int, int] = {}
        cur = 0
        k = 0
        while True:
            k += 1
            cur = add[cur][m]
            if cur in seen:
                i = seen[cur]
                p = k - i
                break
            seen[cur] = k
            seq.append(cur)
        powers.append(tuple(seq))
        orbits.append(Orbit(i, p))
    return tuple(powers), tuple(orbits)


def validate_monoid(table: Sequence[Sequence[int]],
                    labels: Optional[Sequence[str]] = None) -> FiniteCommMonoid:
    """Check the monoid axioms and return the validated monoid.

    Raises the first violated axiom with a witnessing tuple.
    """
    n = len(table)
    if n == 0:
        raise OutOfRange("empty table")
    for row in table:
        if len(row) != n:
            raise OutOfRange("table is not square")
        for v in row:
            if not 0 <= v < n:
                raise OutOfRange(f"entry {v} out of range [0, {n})")
    for m in range(n):
        if table[0][m] != m:
            raise NotIdentity(m)
    for m in range(n):
        for m2 in range(m + 1, n):
            if table[m][m2] != table[m2][m]:
                raise NotCommutative(m, m2)
    for m in range(n):
        for m2 in range(n):
            for m3 in range(n):
                if table[table[m][m2]][m3] != table[m][table[m2][m3]]:
                    raise NotAssociative(m, m2, m3)
    return FiniteCommMonoid(
        size=n,
        add=tuple(tuple(row) for row in table),
        labels=tuple(labels) if labels is not None else None,
    )


def scalar_action(M: FiniteCommMonoid, k: int, m: int) -> int:
    return M.scalar(k, m)


def orbit(M: FiniteCommMonoid, m: int) -> Orbit:
    return M.orbit(m)


@dataclass(frozen=True)
class MonoidHom:
    source: FiniteCommMonoid
    target: FiniteCommMonoid
    image: tuple[int, ...]

    def __call__(self, m: int) -> int:
        return self.image[m]

    def compose(self, other: "MonoidHom") -> "MonoidHom":
        """self after other."""
        return MonoidHom(other.source, self.target,
                         tuple(self.image[other.image[m]] for m in other.source.elements()))

    def is_injective(self) -> bool:
        return len(set(self.image)) == self.source.size

    def is_surjective(self) -> bool:
        return len(set(self.image)) == self.target.size

    def is_bijective(self) -> bool:
        return self.is_injective() and self.is_surjective()


def hom_check(M: FiniteCommMonoid, N: FiniteCommMonoid,
              image: Sequence[int]) -> MonoidHom:
    if len(image) != M.size:
        raise OutOfRange("image table length mismatch")
    for v in image:
        if not 0 <= v < N.size:
            raise OutOfRange(f"image value {v} out of range")
    if image[0] != 0:
        raise IdentityNotPreserved("f(0) != 0")
    for a in range(M.size):
        for b in range(a, M.size):
            if image[M.add[a][b]] != N.add[image[a]][image[b]]:
                raise NotAdditive(a, b)
    return MonoidHom(M, N, tuple(image))


def identity_hom(M: FiniteCommMonoid) -> MonoidHom:
    return MonoidHom(M, M, tuple(range(M.size)))


def zero_hom(M: FiniteCommMonoid, N: FiniteCommMonoid) -> MonoidHom:
    return MonoidHom(M, N, (0,) * M.size)


def enumerate_homs(M: FiniteCommMonoid, N: FiniteCommMonoid,
                   budget: int = DEFAULT_BUDGET) -> list[MonoidHom]:
    """All homomorphisms M -> N, lexicographically ordered by image table.

    Backtracking over images of 1..size-1 with incremental additivity checks.
    """
    n = M.size
    image = [0] * n
    out: list[MonoidHom] = []
    spent = 0

    def consistent(k: int) -> bool:
        # check all sums involving element k against already-assigned elements
        for a in range(k + 1):
            s = M.add[a][k]
            if s <= k and image[s] != N.add[image[a]][image[k]]:
                return False
        # sums of smaller elements landing on k
        for a in range(k):
            for b in range(a, k):
                if M.add[a][b] == k and image[k] != N.add[image[a]][image[b]]:
                    return False
        return True

    def rec(k: int):
        nonlocal spent
        if k == n:
            out.append(MonoidHom(M, N, tuple(image)))
            return
        for v in range(N.size):
            spent += 1
            if spent > budget:
                raise BudgetExceeded("hom enumeration budget exhausted")
            image[k] = v
            if consistent(k):
                rec(k + 1)
        image[k] = 0

    rec(1) if n > 1 else out.append(MonoidHom(M, N, (0,)))
    return out


@dataclass(frozen=True)
class Biproduct:
    monoid: FiniteCommMonoid
    injections: tuple[MonoidHom, MonoidHom]
    projections: tuple[MonoidHom, MonoidHom]
    pair: Callable[[int, int], int]
    unpair: Callable[[int], tuple[int, int]]


def biproduct(M: FiniteCommMonoid, N: FiniteCommMonoid) -> Biproduct:
    """M x N with componentwise addition; injections and projections."""
    nN = N.size
    size = M.size * nN

    def pair(a: int, b: int) -> int:
        return a * nN + b

    def unpair(x: int) -> tuple[int, int]:
        return divmod(x, nN)

    table = [[0] * size for _ in range(size)]
    for a, b in product(M.elements(), N.elements()):
        for a2, b2 in product(M.elements(), N.elements()):
            table[pair(a, b)][pair(a2, b2)] = pair(M.add[a][a2], N.add[b][b2])
    P = validate_monoid(table)
    i1 = MonoidHom(M, P, tuple(pair(a, 0) for a in M.elements()))
    i2 = MonoidHom(N, P, tuple(pair(0, b) for b in N.elements()))
    p1 = MonoidHom(P, M, tuple(unpair(x)[0] for x in range(size)))
    p2 = MonoidHom(P, N, tuple(unpair(x)[1] for x in range(size)))
    return Biproduct(P, (i1, i2), (p1, p2), pair, unpair)


def submonoid_generated(M: FiniteCommMonoid, subset: Iterable[int]) -> tuple[int, ...]:
    """Closure of subset plus {0} under the addition table."""
    closed = {0} | set(subset)
    work = list(closed)
    while work:
        a = work.pop()
        for b in list(closed):
            s = M.add[a][b]
            if s not in closed:
                closed.add(s)
                work.append(s)
    return tuple(sorted(closed))


def all_submonoids(M: FiniteCommMonoid) -> list[tuple[int, ...]]:
    """All submonoids of a small monoid, by closing every subset."""
    found = set()
    nonzero = [m for m in M.elements() if m != 0]
    for mask in range(1 << len(nonzero)):
        gens = [nonzero[i] for i in range(len(nonzero)) if mask >> i & 1]
        found.add(submonoid_generated(M, gens))
    return sorted(found)


def sub_as_monoid(M: FiniteCommMonoid, subset: Sequence[int]) -> tuple[FiniteCommMonoid, MonoidHom]:
    """Present a submonoid as a monoid in its own right, with its inclusion."""
    subset = tuple(sorted(subset))
    if not M.is_submonoid(subset):
        raise NotASubmonoid(f"{subset} is not closed or lacks 0")
    pos = {m: i for i, m in enumerate(subset)}
    table = [[pos[M.add[a][b]] for b in subset] for a in subset]
    labels = tuple(M.label(m) for m in subset) if M.labels else None
    S = validate_monoid(table, labels)
    incl = MonoidHom(S, M, subset)
    return S, incl


@dataclass(frozen=True)
class DirectSumVerdict:
    sum_is_all: bool                      # (a) the subsets sum to M
    independent: bool                     # (b) pairwise-zero meet and 0-sum forces 0
    unique_decomposition: bool            # (c) the coproduct criterion
    witness: Optional[tuple[tuple[int, ...], tuple[int, ...]]] = None

    @property
    def is_internal_direct_sum(self) -> bool:
        return self.sum_is_all and self.unique_decomposition


def internal_direct_sum_check(M: FiniteCommMonoid,
                              subsets: Sequence[Sequence[int]]) -> DirectSumVerdict:
    """Test whether M is the internal direct sum of the given submonoids.

    The verdict separates the necessary conditions (sum and independence)
    from the decisive one: uniqueness of decompositions.
    """
    subs = [tuple(sorted(s)) for s in subsets]
    for i, s in enumerate(subs):
        if not M.is_submonoid(s):
            raise NotASubmonoid(f"subset #{i} is not a submonoid")

    decomps: dict[int, list[tuple[int, ...]]] = {m: [] for m in M.elements()}
    for combo in product(*subs):
        decomps[M.sum(combo)].append(combo)

    sum_is_all = all(decomps[m] for m in M.elements())

    independent = True
    for i in range(len(subs)):
        rest = submonoid_generated(M, [m for j, s in enumerate(subs) if j != i for m in s])
        if set(subs[i]) & set(rest) != {0}:
            independent = False
    for combo in decomps[0]:
        if any(c != 0 for c in combo):
            independent = False

    unique = True
    witness = None
    for m in M.elements():
        if len(decomps[m]) > 1:
            unique = False
            witness = (decomps[m][0], decomps[m][1])
            break

    return DirectSumVerdict(sum_is_all, independent, unique, witness)


@dataclass(frozen=True)
class SummandAnalysis:
    complement: Optional[tuple[int, ...]]
    retraction: Optional[MonoidHom]
    idempotent: Optional[MonoidHom]


def direct_summand_analysis(N: FiniteCommMonoid, M: Sequence[int],
                            budget: int = DEFAULT_BUDGET) -> SummandAnalysis:
    """Search for a complement, a retraction, and an idempotent with image M.

    The three searches are independent; any of them may succeed alone.
    """
    M = tuple(sorted(M))
    if not N.is_submonoid(M):
        raise NotASubmonoid(f"{M} is not a submonoid")

    complement = None
    for S in all_submonoids(N):
        verdict = internal_direct_sum_check(N, [M, S])
        if verdict.is_internal_direct_sum:
            complement = S
            break

    Msub, incl = sub_as_monoid(N, M)
    pos = {m: i for i, m in enumerate(M)}
    retraction = None
    for h in enumerate_homs(N, Msub, budget):
        if all(h.image[m] == pos[m] for m in M):
            retraction = h
            break

    idempotent = None
    for h in enumerate_homs(N, N, budget):
        if set(h.image) == set(M) and all(h.image[h.image[x]] == h.image[x] for x in N.elements()):
            idempotent = h
            break

    return SummandAnalysis(complement, retraction, idempotent)


@dataclass(frozen=True)
class NatVec:
    """Finitely supported map from generator labels to positive multiplicities."""

    coords: tuple[tuple[object, int], ...]

    @staticmethod
    def of(mapping: Mapping) -> "NatVec":
        items = tuple(sorted((x, k) for x, k in mapping.items() if k != 0))
        for _, k in items:
            if k < 0:
                raise OutOfRange("multiplicities must be nonnegative")
        return NatVec(items)

    @staticmethod
    def unit(x) -> "NatVec":
        return NatVec(((x, 1),))

    @staticmethod
    def zero() -> "NatVec":
        return NatVec(())

    def __add__(self, other: "NatVec") -> "NatVec":
        acc = dict(self.coords)
        for x, k in other.coords:
            acc[x] = acc.get(x, 0) + k
        return NatVec.of(acc)

    def scale(self, k: int) -> "NatVec":
        return NatVec.of({x: k * v for x, v in self.coords})

    def get(self, x) -> int:
        return dict(self.coords).get(x, 0)


def free_universal_map(X: Sequence, f: Mapping, M: FiniteCommMonoid) -> Callable[[NatVec], int]:
    """The unique additive map from free vectors over X into M extending f."""
    X = list(X)
    for x in X:
        if not 0 <= f[x] < M.size:
            raise OutOfRange(f"f({x!r}) out of range")

    def g(vec: NatVec) -> int:
        acc = 0
        for x, k in vec.coords:
            if x not in f:
                raise OutOfRange(f"unknown label {x!r}")
            acc = M.add[acc][M.scalar(k, f[x])]
        return acc

    return g


# --- small-monoid corpus (oracle support) ---------------------------------

def enumerate_comm_monoid_tables(n: int) -> list[FiniteCommMonoid]:
    """All commutative monoid tables of size n with identity 0 (labeled)."""
    cells = [(a, b) for a in range(1, n) for b in range(a, n)]
    out = []
    table = [[0] * n for _ in range(n)]
    for m in range(n):
        table[0][m] = table[m][0] = m

    def rec(idx: int):
        if idx == len(cells):
            try:
                out.append(validate_monoid([row[:] for row in table]))
            except SemimodError:
                pass
            return
        a, b = cells[idx]
        for v in range(n):
            table[a][b] = table[b][a] = v
            rec(idx + 1)
        table[a][b] = table[b][a] = 0

    rec(0)
    return out


def _canonical_form(M: FiniteCommMonoid) -> tuple:
    from itertools import permutations
    best = None
    for perm in permutations(range(1, M.size)):
        p = (0,) + perm
        inv = [0] * M.size
        for i, v in enumerate(p):
            inv[v] = i
        t = tuple(tuple(inv[M.add[p[a]][p[b]]] for b in range(M.size)) for a in range(M.size))
        if best is None or t < best:
            best = t
    return best


def small_monoid_corpus(max_size: int) -> list[FiniteCommMonoid]:
    """One representative per isomorphism class, sizes 1..max_size."""
    reps = []
    for n in range(1, max_size + 1):
        seen = set()
        for M in enumerate_comm_monoid_tables(n):
            c = _canonical_form(M)
            if c not in seen:
                seen.add(c)
                reps.append(M)
    return reps


# --- JSON interchange ------------------------------------------------------

def monoid_to_json(M: FiniteCommMonoid) -> dict:
    d = {"size": M.size, "add": [list(row) for row in M.add]}
    if M.labels is not None:
        d["labels"] = list(M.labels)
    return d


def monoid_from_json(data: dict) -> FiniteCommMonoid:
    table = data["add"]
    if data.get("size") != len(table):
        raise OutOfRange("declared size does not match the table")
    return validate_monoid(table, data.get("labels"))


def load_monoid(path: str) -> FiniteCommMonoid:
    with open(path) as fh:
        return monoid_from_json(json.load(fh))


# --- handy standard tables -------------------------------------------------

def trivial_monoid() -> FiniteCommMonoid:
    return validate_monoid([[0]])


def cyclic_group(n: int) -> FiniteCommMonoid:
    return validate_monoid([[(a + b) % n for b in range(n)] for a in range(n)])


def saturating_monoid(n: int) -> FiniteCommMonoid:
    """{0, 1, ..., n-1} under a + b = max(a, b); every element is idempotent."""
    return validate_monoid([[max(a, b) for b in range(n)] for a in range(n)])
