"""Command-line interface.

Commands: semiideal, coeq, quotient, tensor, monoid-check, verify.
Exit codes: 0 success, 1 input/validation error, 2 budget or bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from math import gcd

from . import congruence as cg
from . import natcoeq, semiideal, tensor
from .core import (
    BudgetExceeded,
    FiniteCommMonoid,
    SemimodError,
    load_monoid,
    monoid_to_json,
    small_monoid_corpus,
    validate_monoid,
)
from .natcoeq import BoundCapExceeded


def _budget(args) -> int:
    if getattr(args, "budget", None):
        return args.budget
    env = os.environ.get("SEMIMOD_BUDGET")
    return int(env) if env else 10**6


def render_table(M: FiniteCommMonoid, ascii_labels: bool = False) -> str:
    if ascii_labels or M.labels is None:
        labels = [f"c{m}" if ascii_labels else str(m) for m in M.elements()]
    else:
        labels = list(M.labels)
    width = max(len(l) for l in labels) + 1
    lines = ["+".rjust(width) + " |" + "".join(l.rjust(width) for l in labels)]
    lines.append("-" * len(lines[0]))
    for a in M.elements():
        row = labels[a].rjust(width) + " |"
        row += "".join(labels[M.add[a][b]].rjust(width) for b in M.elements())
        lines.append(row)
    return "\n".join(lines)


def cmd_semiideal(args) -> int:
    M = semiideal.Semiideal(args.generators)
    if M.is_zero:
        print("error: need at least one nonzero generator", file=sys.stderr)
        return 1
    info = M.to_json()
    info["quotient"] = f"Z/{M.period()}"
    if args.json:
        print(json.dumps(info))
    else:
        print(f"generators         {list(M.generators)}")
        print(f"period             {info['period']}")
        print(f"footing            {info['footing']}")
        print(f"periodic core      {{{info['footing']} + n*{info['period']}}} u {{0}}")
        print(f"minimal generators {info['minimal_generators']}")
        print(f"cyclic             {info['cyclic']}")
        print(f"quotient           Z/{info['period']}")
    return 0


def cmd_coeq(args) -> int:
    if args.naive:
        classes = natcoeq.naive_nat_classes(args.a, args.b, probe_limit=20)
        if args.json:
            print(json.dumps({"naive_classes": classes}))
        else:
            print(f"one-step relation census on 0..20: {len(classes)} classes")
            for c in classes:
                print(" ", c)
        return 0
    q = natcoeq.coequalizer_nat(args.a, args.b, bound_cap=args.bound_cap)
    if q.is_symbolic_nat:
        print(json.dumps({"result": "N0"}) if args.json else "coequalizer: N0 (identity)")
        return 0
    if args.json:
        print(json.dumps(q.to_json()))
    else:
        c = q.result
        print(f"coequalizer: C(index={c.index}, period={c.period}), {c.size} classes")
        print(render_table(c.to_monoid(), ascii_labels=args.ascii))
        print(f"certificate A verified: {q.verify_certificate_a()}")
        print(f"certificate B ({len(q.cert_b)} chain steps) verified: "
              f"{q.verify_certificate_b()}")
    return 0


def cmd_quotient(args) -> int:
    M = load_monoid(args.monoid)
    pairs = [(args.pairs[i], args.pairs[i + 1]) for i in range(0, len(args.pairs), 2)]
    C = cg.congruence_closure(M, pairs)
    Q, nu = cg.quotient(M, C)
    if args.json:
        print(json.dumps({"classes": C.classes(), "quotient": monoid_to_json(Q)}))
    else:
        print(f"{C.num_classes()} classes: {C.classes()}")
        print(render_table(Q, ascii_labels=args.ascii))
    return 0


def cmd_tensor(args) -> int:
    M = load_monoid(args.monoid_m)
    N = load_monoid(args.monoid_n)
    T = tensor.tensor_product(M, N, budget=_budget(args))
    out = {
        "size": T.monoid.size,
        "table": [list(r) for r in T.monoid.add],
        "bilinear": [list(r) for r in T.bilinear],
    }
    if args.check_coherence:
        out["symmetry"] = tensor.symmetry_iso(M, N, budget=_budget(args)).verify()
        out["associativity"] = tensor.associativity_iso(M, M, N, budget=_budget(args)).verify()
    if args.json:
        print(json.dumps(out))
    else:
        print(f"tensor product has {T.monoid.size} elements")
        print(render_table(T.monoid, ascii_labels=True))
        print("pure tensors (m,n) -> class:")
        for m in M.elements():
            print(" ", list(T.bilinear[m]))
        if args.check_coherence:
            print(f"symmetry iso verified: {out['symmetry']}")
            print(f"associativity iso verified: {out['associativity']}")
    return 0


def cmd_monoid_check(args) -> int:
    with open(args.file) as fh:
        data = json.load(fh)
    try:
        M = validate_monoid(data["add"], data.get("labels"))
    except SemimodError as e:
        print(f"invalid: {e}", file=sys.stderr)
        return 1
    print(f"valid commutative monoid with {M.size} elements")
    return 0


# --- verification suites ---------------------------------------------------

def _check(name: str, ok: bool, failures: list) -> None:
    print(f"  [{'ok' if ok else 'FAIL'}] {name}")
    if not ok:
        failures.append(name)


def verify_reference_tables(failures: list) -> None:
    q = natcoeq.coequalizer_nat(4, 6)
    expected = [
        [0, 1, 2, 3, 4, 5],
        [1, 2, 3, 4, 5, 4],
        [2, 3, 4, 5, 4, 5],
        [3, 4, 5, 4, 5, 4],
        [4, 5, 4, 5, 4, 5],
        [5, 4, 5, 4, 5, 4],
    ]
    table = [list(r) for r in q.result.to_monoid().add]
    _check("coequalizer of (4,6) matches the printed 6x6 table",
           table == expected, failures)
    _check("certificates replay", q.verify(), failures)

    from .core import internal_direct_sum_check, direct_summand_analysis
    M4 = validate_monoid([[0, 1, 2, 3], [1, 1, 3, 3], [2, 3, 3, 3], [3, 3, 3, 3]],
                         ["0", "1A", "1B", "2B"])
    v = internal_direct_sum_check(M4, [(0, 1), (0, 2, 3)])
    _check("4-element counterexample: sum and independence hold, uniqueness fails",
           v.sum_is_all and v.independent and not v.unique_decomposition, failures)
    N3 = validate_monoid([[0, 1, 2], [1, 1, 2], [2, 2, 2]])
    a = direct_summand_analysis(N3, (0, 1))
    _check("3-element counterexample: retraction and idempotent but no complement",
           a.complement is None and a.retraction is not None
           and a.idempotent is not None, failures)


def verify_oracles(failures: list) -> None:
    ok = True
    for a in range(2, 41):
        for b in range(2, 41):
            if a == b:
                continue
            if semiideal.footing_two_generators(a, b) != semiideal.Semiideal([a, b]).footing():
                ok = False
    _check("two-generator footing formula vs dynamic programming", ok, failures)

    ok = True
    for a in range(2, 31):
        for b in range(2, 31):
            got = semiideal.bezout_nonneg(a, b)
            want = semiideal.bezout_exhaustive_search(a, b)
            if (got is None) != (want is None):
                ok = False
            if got is not None and got[0] * a + got[1] * b != (a - 1) * (b - 1):
                ok = False
            if (got is None) != (gcd(a, b) != 1):
                ok = False
    _check("nonnegative Bezout solvability iff coprime", ok, failures)

    ok = True
    for M in small_monoid_corpus(4):
        congs = cg.enumerate_congruences(M)
        pairs = [(a, b) for a in M.elements() for b in range(a + 1, M.size)]
        for seed in pairs:
            closed = cg.congruence_closure(M, [seed])
            for C in congs:
                if C.same(*seed) and not C.contains(closed):
                    ok = False
    _check("generated closure is the least congruence containing the seeds",
           ok, failures)


def verify_coherence(failures: list) -> None:
    corpus = small_monoid_corpus(3)
    ok = True
    for M in corpus:
        for N in corpus:
            if not tensor.symmetry_iso(M, N).verify():
                ok = False
    _check("symmetry isomorphism on the size-<=3 corpus", ok, failures)
    ok = True
    for M in corpus:
        for N in corpus:
            for P in corpus:
                if not tensor.associativity_iso(M, N, P).verify():
                    ok = False
    _check("associativity isomorphism on the size-<=3 corpus", ok, failures)
    ok = True
    for P in corpus:
        for M in corpus:
            for N in corpus:
                if not tensor.hom_adjunction_check(P, M, N):
                    ok = False
    _check("tensor-hom adjunction on the size-<=3 corpus", ok, failures)


def cmd_verify(args) -> int:
    suites = {
        "reference-tables": verify_reference_tables,
        "oracles": verify_oracles,
        "coherence": verify_coherence,
    }
    failures: list = []
    print(f"suite {args.suite}:")
    suites[args.suite](failures)
    if failures:
        print(f"{len(failures)} check(s) failed", file=sys.stderr)
        return 1
    print("all checks passed")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="semimod")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("semiideal", help="period, footing, and canonical generators")
    s.add_argument("generators", type=int, nargs="+")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_semiideal)

    s = sub.add_parser("coeq", help="coequalizer of two multiplication maps on N0")
    s.add_argument("a", type=int)
    s.add_argument("b", type=int)
    s.add_argument("--naive", action="store_true",
                   help="census of the one-step relation instead")
    s.add_argument("--bound-cap", type=int, default=10**6)
    s.add_argument("--json", action="store_true")
    s.add_argument("--ascii", action="store_true", help="plain cN labels")
    s.set_defaults(func=cmd_coeq)

    s = sub.add_parser("quotient", help="quotient of a monoid file by generated pairs")
    s.add_argument("monoid")
    s.add_argument("pairs", type=int, nargs="*", help="flat list a1 b1 a2 b2 ...")
    s.add_argument("--json", action="store_true")
    s.add_argument("--ascii", action="store_true")
    s.set_defaults(func=cmd_quotient)

    s = sub.add_parser("tensor", help="tensor product of two monoid files")
    s.add_argument("monoid_m")
    s.add_argument("monoid_n")
    s.add_argument("--check-coherence", action="store_true")
    s.add_argument("--budget", type=int, default=None)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_tensor)

    s = sub.add_parser("monoid-check", help="validate a monoid JSON file")
    s.add_argument("file")
    s.set_defaults(func=cmd_monoid_check)

    s = sub.add_parser("verify", help="run an acceptance suite")
    s.add_argument("suite", choices=["reference-tables", "oracles", "coherence"])
    s.set_defaults(func=cmd_verify)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (BudgetExceeded, BoundCapExceeded) as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return 2
    except (SemimodError, OSError, json.JSONDecodeError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
