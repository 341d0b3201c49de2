"""Exhaustive and seeded property suites over the finite catalog.

Each suite quantifies its structural parameters (spaces, bases, maps,
orders, carriers) exhaustively within bounds, and draws family assignments
exhaustively while the assignment space stays small, falling back to
constant corner cases plus a seeded sample otherwise.  A run is fully
deterministic for a fixed (suite, bounds, seed, budget).

Findings are plain JSON-ready documents.  A violation is a broken law and
fails the suite; a witness is an expected counterexample (the suites that
drop a hypothesis must produce at least one).  Every finding replays:
``replay_finding`` re-runs the single stored instance through the public
operations and reports whether it still triggers.
"""

import random
from dataclasses import dataclass
from itertools import combinations
from itertools import product as iproduct

from . import serialize
from .catalog import all_bases, all_tables, all_topologies
from .classes import (
    SetClass,
    check_reduction,
    check_separation,
    complement_class,
    delta_class,
    generate_class,
    reduction_to_separation,
)
from .errors import InputError, PreconditionError
from .hausdorff import (
    MODES,
    PREFIX,
    RANGE,
    Base,
    IndexedFamily,
    canonical_base,
    compile_positions,
    dual_evaluate,
    eval_plan_bits,
    evaluate,
)
from .maps import PointMap, alg_contains, alg_enumerate, diagonal_product, directed_image_check
from .masks import SubsetMask, restrict_bits
from .spaces import FinSpace, zero_sets
from .transfer import REDUCTION, SEPARATION, transfer_property, zero_trace_gap, zero_witness_map


@dataclass(frozen=True)
class Bounds:
    """Structural size ceilings for one suite run."""

    max_points: int = 3
    alphabet: int = 2
    depth: int = 2
    cap: int = 4096


@dataclass(frozen=True)
class SuiteResult:
    name: str
    cases: int
    violations: tuple
    witnesses: tuple
    violation_count: int
    witness_count: int
    expects_witnesses: bool

    @property
    def passed(self):
        if self.violation_count:
            return False
        if self.expects_witnesses and not self.witness_count:
            return False
        return True

    def summary(self):
        verdict = "pass" if self.passed else "FAIL"
        return (
            f"{self.name}: {self.cases} cases, {self.violation_count} violations, "
            f"{self.witness_count} witnesses [{verdict}]"
        )


class _Collector:
    """Accumulates findings, keeping only the first few full documents."""

    def __init__(self, name, expects_witnesses, keep=32):
        self.name = name
        self.expects_witnesses = expects_witnesses
        self.keep = keep
        self.cases = 0
        self.violations = []
        self.witnesses = []
        self.violation_count = 0
        self.witness_count = 0

    def case(self):
        self.cases += 1

    def _finding(self, kind, instance, detail):
        return {"suite": self.name, "kind": kind, "instance": instance, "detail": detail}

    def violation(self, instance, detail):
        self.violation_count += 1
        if len(self.violations) < self.keep:
            self.violations.append(self._finding("violation", instance, detail))

    def witness(self, instance, detail):
        self.witness_count += 1
        if len(self.witnesses) < self.keep:
            self.witnesses.append(self._finding("witness", instance, detail))

    def result(self):
        return SuiteResult(
            self.name,
            self.cases,
            tuple(self.violations),
            tuple(self.witnesses),
            self.violation_count,
            self.witness_count,
            self.expects_witnesses,
        )


_SPACE_POOLS = {}
_BASE_POOLS = {}
_POSET_POOLS = {}


def _opens_class(space):
    return SetClass.from_bits(space.n, space.open_bits())


def _spaces(max_points):
    if max_points not in _SPACE_POOLS:
        pool = []
        for k in range(max_points + 1):
            pool.extend(all_topologies(k, max_points=max_points))
        _SPACE_POOLS[max_points] = tuple(pool)
    return _SPACE_POOLS[max_points]


def _bases(bounds):
    key = (bounds.alphabet, bounds.depth)
    if key not in _BASE_POOLS:
        _BASE_POOLS[key] = tuple(all_bases(bounds.alphabet, bounds.depth))
    return _BASE_POOLS[key]


def _posets(k):
    """Reflexive-transitive antisymmetric orders on 0..k-1 as above-masks."""
    if k not in _POSET_POOLS:
        off_diag = [(i, j) for i in range(k) for j in range(k) if i != j]
        seen = set()
        for pick in range(1 << len(off_diag)):
            above = [1 << i for i in range(k)]
            for t, (i, j) in enumerate(off_diag):
                if pick >> t & 1:
                    above[i] |= 1 << j
            changed = True
            while changed:
                changed = False
                for i in range(k):
                    acc = above[i]
                    rest = acc
                    while rest:
                        low = rest & -rest
                        acc |= above[low.bit_length() - 1]
                        rest ^= low
                    if acc != above[i]:
                        above[i] = acc
                        changed = True
            if any(
                i != j and above[i] >> j & 1 and above[j] >> i & 1
                for i in range(k)
                for j in range(k)
            ):
                continue
            seen.add(tuple(above))
        _POSET_POOLS[k] = tuple(sorted(seen))
    return _POSET_POOLS[k]


def _order_pairs(above):
    return [[i, j] for i in range(len(above)) for j in range(len(above)) if i != j and above[i] >> j & 1]


def _is_directed(above):
    k = len(above)
    return all(
        any(above[i] >> u & 1 and above[j] >> u & 1 for u in range(k))
        for i in range(k)
        for j in range(k)
    )


def _assignments(pool, k, rng, budget):
    """Value tuples drawn from pool^k: everything when small, sampled when not."""
    if k == 0:
        return [()]
    total = len(pool) ** k
    if total <= max(64, budget):
        return list(iproduct(pool, repeat=k))
    out = [(v,) * k for v in pool[: min(3, len(pool))]]
    for _ in range(budget):
        out.append(tuple(pool[rng.randrange(len(pool))] for _ in range(k)))
    return out


def _discrete_doc(n):
    return serialize.space_to_doc(FinSpace.discrete(n))


def _table_map_doc(n, m, table):
    return {"dom": _discrete_doc(n), "cod": _discrete_doc(m), "table": list(table)}


def _family_doc(n, mode, order, values):
    assignments = {
        serialize._index_key(mode, idx): sorted(p for p in range(n) if values[i] >> p & 1)
        for i, idx in enumerate(order)
    }
    return {"universe": n, "mode": mode, "assignments": assignments, "default": None}


def _pts(n, bits):
    return sorted(p for p in range(n) if bits >> p & 1)


# ---------------------------------------------------------------------------
# the suites


def _run_distributivity(bounds, rng, budget, col):
    """Meets and joins move through the operation and its dual pointwise."""
    for space in _spaces(bounds.max_points):
        n = space.n
        full = (1 << n) - 1
        pool = list(space.open_bits())
        space_doc = serialize.space_to_doc(space)
        for base in _bases(bounds):
            base_doc = None
            for mode in MODES:
                order = base.relevant_indices(mode)
                plans = compile_positions(base, mode, order)
                for values in _assignments(pool, len(order), rng, budget):
                    col.case()
                    ev = eval_plan_bits(plans, values) & full
                    dv = full ^ (eval_plan_bits(plans, tuple(full ^ v for v in values)) & full)
                    for mask in range(1 << n):
                        meet = eval_plan_bits(plans, tuple(v & mask for v in values)) & full
                        join = full ^ (
                            eval_plan_bits(plans, tuple(full ^ (v | mask) for v in values)) & full
                        )
                        bad = []
                        if meet != ev & mask:
                            bad.append(("intersection", meet, ev & mask))
                        if join != dv | mask:
                            bad.append(("union", join, dv | mask))
                        for identity, left, right in bad:
                            if base_doc is None:
                                base_doc = serialize.base_to_doc(base)
                            col.violation(
                                {
                                    "space": space_doc,
                                    "base": base_doc,
                                    "mode": mode,
                                    "family": _family_doc(n, mode, order, values),
                                    "mask": _pts(n, mask),
                                    "identity": identity,
                                },
                                {"left": _pts(n, left), "right": _pts(n, right)},
                            )


def _replay_distributivity(instance, kind, detail):
    base = serialize.base_from_doc(instance["base"])
    family = serialize.family_from_doc(instance["family"])
    mode = instance["mode"]
    mask = SubsetMask.from_points(family.n, instance["mask"])
    if instance["identity"] == "intersection":
        left = evaluate(base, family.map_values(lambda v: v & mask), mode)
        right = evaluate(base, family, mode) & mask
    else:
        left = dual_evaluate(base, family.map_values(lambda v: v | mask), mode)
        right = dual_evaluate(base, family, mode) | mask
    return left != right


def _run_restriction(bounds, rng, budget, col):
    """Evaluation commutes with taking traces on a carrier."""
    for space in _spaces(bounds.max_points):
        n = space.n
        full = (1 << n) - 1
        pool = list(space.open_bits())
        space_doc = serialize.space_to_doc(space)
        for base in _bases(bounds):
            base_doc = None
            for mode in MODES:
                order = base.relevant_indices(mode)
                plans = compile_positions(base, mode, order)
                for values in _assignments(pool, len(order), rng, budget):
                    col.case()
                    ev = eval_plan_bits(plans, values) & full
                    for carrier in range(1 << n):
                        left = restrict_bits(ev & carrier, carrier)
                        right = eval_plan_bits(
                            plans, tuple(restrict_bits(v & carrier, carrier) for v in values)
                        )
                        sub_full = (1 << bin(carrier).count("1")) - 1
                        if left != right & sub_full:
                            if base_doc is None:
                                base_doc = serialize.base_to_doc(base)
                            col.violation(
                                {
                                    "space": space_doc,
                                    "base": base_doc,
                                    "mode": mode,
                                    "family": _family_doc(n, mode, order, values),
                                    "carrier": _pts(n, carrier),
                                },
                                {
                                    "left": _pts(n, left),
                                    "right": _pts(n, right & sub_full),
                                },
                            )


def _replay_restriction(instance, kind, detail):
    base = serialize.base_from_doc(instance["base"])
    family = serialize.family_from_doc(instance["family"])
    mode = instance["mode"]
    n = family.n
    carrier = SubsetMask.from_points(n, instance["carrier"])
    sub_n = carrier.card()
    traced = IndexedFamily(
        sub_n,
        mode,
        {
            idx: SubsetMask(sub_n, restrict_bits(v.bits & carrier.bits, carrier.bits))
            for idx, v in family.assignments.items()
        },
    )
    left = restrict_bits(evaluate(base, family, mode).bits & carrier.bits, carrier.bits)
    right = evaluate(base, traced, mode).bits
    return left != right


def _run_preimage_commutes(bounds, rng, budget, col):
    """Preimages pass through the operation and its dual for every table."""
    for n in range(bounds.max_points + 1):
        full_n = (1 << n) - 1
        for m in range(1, bounds.max_points + 1):
            full_m = (1 << m) - 1
            pool = list(range(1 << m))
            for table in all_tables(n, m):
                fiber = [0] * m
                for x, y in enumerate(table):
                    fiber[y] |= 1 << x
                pre = [0] * (1 << m)
                for v in range(1 << m):
                    acc = 0
                    for y in range(m):
                        if v >> y & 1:
                            acc |= fiber[y]
                    pre[v] = acc
                map_doc = None
                for base in _bases(bounds):
                    for mode in MODES:
                        order = base.relevant_indices(mode)
                        plans = compile_positions(base, mode, order)
                        for values in _assignments(pool, len(order), rng, budget):
                            col.case()
                            checks = (
                                (
                                    "eval",
                                    pre[eval_plan_bits(plans, values) & full_m],
                                    eval_plan_bits(plans, tuple(pre[v] for v in values)) & full_n,
                                ),
                                (
                                    "dual",
                                    pre[
                                        full_m
                                        ^ (
                                            eval_plan_bits(
                                                plans, tuple(full_m ^ v for v in values)
                                            )
                                            & full_m
                                        )
                                    ],
                                    full_n
                                    ^ (
                                        eval_plan_bits(
                                            plans, tuple(full_n ^ pre[v] for v in values)
                                        )
                                        & full_n
                                    ),
                                ),
                            )
                            for identity, left, right in checks:
                                if left != right:
                                    if map_doc is None:
                                        map_doc = _table_map_doc(n, m, table)
                                    col.violation(
                                        {
                                            "map": map_doc,
                                            "base": serialize.base_to_doc(base),
                                            "mode": mode,
                                            "family": _family_doc(m, mode, order, values),
                                            "identity": identity,
                                        },
                                        {"left": _pts(n, left), "right": _pts(n, right)},
                                    )


def _replay_preimage_commutes(instance, kind, detail):
    pm = serialize.map_from_doc(instance["map"])
    base = serialize.base_from_doc(instance["base"])
    family = serialize.family_from_doc(instance["family"])
    mode = instance["mode"]
    pulled = IndexedFamily(
        pm.dom.n,
        mode,
        {idx: pm.preimage(v) for idx, v in family.assignments.items()},
    )
    if instance["identity"] == "eval":
        left = pm.preimage(evaluate(base, family, mode))
        right = evaluate(base, pulled, mode)
    else:
        left = pm.preimage(dual_evaluate(base, family, mode))
        right = dual_evaluate(base, pulled, mode)
    return left != right


def _run_algebra_closure(bounds, rng, budget, col):
    """alg F is the brute-force fixed-point family and is closed under eval."""
    bases = _bases(bounds)
    for n in range(bounds.max_points + 1):
        dom = FinSpace.discrete(n)
        img = [0] * (1 << n)
        for m in range(1, bounds.max_points + 1):
            cod = FinSpace.discrete(m)
            for table in all_tables(n, m):
                col.case()
                for bits in range(1 << n):
                    acc = 0
                    for x in range(n):
                        if bits >> x & 1:
                            acc |= 1 << table[x]
                    img[bits] = acc
                fiber = [0] * m
                for x, y in enumerate(table):
                    fiber[y] |= 1 << x
                pre_of = [0] * (1 << m)
                for v in range(1 << m):
                    acc = 0
                    for y in range(m):
                        if v >> y & 1:
                            acc |= fiber[y]
                    pre_of[v] = acc
                brute = sorted(a for a in range(1 << n) if pre_of[img[a]] == a)
                pm = PointMap(dom, cod, table)
                alg = alg_enumerate(pm)
                alg_bits = sorted(mem.bits for mem in alg.members)
                map_doc = None
                if alg_bits != brute:
                    map_doc = _table_map_doc(n, m, table)
                    col.violation(
                        {"map": map_doc, "check": "extension"},
                        {
                            "enumerated": [_pts(n, b) for b in alg_bits],
                            "brute_force": [_pts(n, b) for b in brute],
                        },
                    )
                fibers = len({y for y in table})
                if len(alg) != 1 << fibers:
                    if map_doc is None:
                        map_doc = _table_map_doc(n, m, table)
                    col.violation(
                        {"map": map_doc, "check": "cardinality"},
                        {"size": len(alg), "fibers": fibers},
                    )
                alg_set = set(alg_bits)
                pool = alg_bits
                for base in bases:
                    for mode in MODES:
                        order = base.relevant_indices(mode)
                        plans = compile_positions(base, mode, order)
                        for values in _assignments(pool, len(order), rng, budget):
                            out = eval_plan_bits(plans, values) & ((1 << n) - 1)
                            if out not in alg_set:
                                if map_doc is None:
                                    map_doc = _table_map_doc(n, m, table)
                                col.violation(
                                    {
                                        "map": map_doc,
                                        "check": "eval-closure",
                                        "base": serialize.base_to_doc(base),
                                        "mode": mode,
                                        "family": _family_doc(n, mode, order, values),
                                    },
                                    {"outcome": _pts(n, out)},
                                )


def _replay_algebra_closure(instance, kind, detail):
    pm = serialize.map_from_doc(instance["map"])
    n = pm.dom.n
    check = instance["check"]
    brute = sorted(
        a for a in range(1 << n) if pm.preimage_bits(pm.image_bits(a)) == a
    )
    alg = alg_enumerate(pm)
    alg_bits = sorted(mem.bits for mem in alg.members)
    if check == "extension":
        return alg_bits != brute
    if check == "cardinality":
        return len(alg) != 1 << len(set(pm.table))
    base = serialize.base_from_doc(instance["base"])
    family = serialize.family_from_doc(instance["family"])
    out = evaluate(base, family, instance["mode"])
    return out.bits not in set(alg_bits)


def _run_diagonal_absorption(bounds, rng, budget, col):
    """Membership in a factor's algebra survives the diagonal product."""
    top = min(bounds.max_points, 3)
    for n in range(top + 1):
        dom = FinSpace.discrete(n)
        for m1 in range(1, top + 1):
            cod1 = FinSpace.discrete(m1)
            for m2 in range(1, top + 1):
                cod2 = FinSpace.discrete(m2)
                for t1 in all_tables(n, m1):
                    pm1 = PointMap(dom, cod1, t1)
                    alg1 = alg_enumerate(pm1)
                    for t2 in all_tables(n, m2):
                        col.case()
                        pm2 = PointMap(dom, cod2, t2)
                        diag = diagonal_product([pm1, pm2])
                        alg_diag = {mem.bits for mem in alg_enumerate(diag).members}
                        for which, pm, alg in (("left", pm1, alg1), ("right", pm2, alg_enumerate(pm2))):
                            for mem in alg.members:
                                if mem.bits not in alg_diag:
                                    col.violation(
                                        {
                                            "maps": [
                                                _table_map_doc(n, m1, t1),
                                                _table_map_doc(n, m2, t2),
                                            ],
                                            "factor": which,
                                            "member": _pts(n, mem.bits),
                                        },
                                        {"algebra_size": len(alg_diag)},
                                    )


def _replay_diagonal_absorption(instance, kind, detail):
    pms = [serialize.map_from_doc(doc, f"maps[{i}]") for i, doc in enumerate(instance["maps"])]
    member = SubsetMask.from_points(pms[0].dom.n, instance["member"])
    diag = diagonal_product(pms)
    return not alg_contains(diag, member)


def _run_zero_witness_certificate(bounds, rng, budget, col):
    """Indicator diagonals certify every small selection of zero sets."""
    for space in _spaces(bounds.max_points):
        zs = zero_sets(space).members
        space_doc = serialize.space_to_doc(space)
        for r in range(min(3, len(zs)) + 1):
            for combo in combinations(zs, r):
                col.case()
                rep = zero_witness_map(space, list(combo))
                bad = [z for (z, ok) in rep.certificate if not ok]
                if bad or not rep.all_saturated:
                    col.violation(
                        {
                            "space": space_doc,
                            "zeros": [serialize.points_doc(z) for z in combo],
                        },
                        {"unsaturated": [serialize.points_doc(z) for z in bad]},
                    )
                    continue
                if r:
                    joined = evaluate(
                        canonical_base("union", r),
                        IndexedFamily.from_list(space.n, list(combo)),
                        RANGE,
                    )
                    if not alg_contains(rep.map, joined):
                        col.violation(
                            {
                                "space": space_doc,
                                "zeros": [serialize.points_doc(z) for z in combo],
                            },
                            {"escaping_union": serialize.points_doc(joined)},
                        )


def _replay_zero_witness_certificate(instance, kind, detail):
    space = serialize.space_from_doc(instance["space"])
    zeros = [SubsetMask.from_points(space.n, z) for z in instance["zeros"]]
    rep = zero_witness_map(space, zeros)
    if not rep.all_saturated:
        return True
    if zeros:
        joined = evaluate(
            canonical_base("union", len(zeros)),
            IndexedFamily.from_list(space.n, zeros),
            RANGE,
        )
        return not alg_contains(rep.map, joined)
    return False


def _run_image_commutes(bounds, rng, budget, col):
    """Images pass through prefix evaluation of decreasing families."""
    for n in range(1, bounds.max_points + 1):
        full_n = (1 << n) - 1
        for m in range(1, bounds.max_points + 1):
            full_m = (1 << m) - 1
            for table in all_tables(n, m):
                img = [0] * (1 << n)
                for bits in range(1 << n):
                    acc = 0
                    for x in range(n):
                        if bits >> x & 1:
                            acc |= 1 << table[x]
                    img[bits] = acc
                map_doc = None
                for base in _bases(bounds):
                    order = base.relevant_indices(PREFIX)
                    plans = compile_positions(base, PREFIX, order)
                    parent = [
                        order.index(idx[:-1]) if idx else None for idx in order
                    ]
                    for _ in range(budget):
                        col.case()
                        dec = [0] * len(order)
                        raw = [0] * len(order)
                        for i, idx in enumerate(order):
                            pick = rng.randrange(1 << n)
                            raw[i] = pick
                            dec[i] = pick if parent[i] is None else dec[parent[i]] & pick
                        findings = []
                        ev_dec = eval_plan_bits(plans, dec) & full_n
                        lhs = img[ev_dec]
                        rhs = eval_plan_bits(plans, tuple(img[v] for v in dec)) & full_m
                        if lhs != rhs:
                            findings.append(("decreasing-image", dec, lhs, rhs, m))
                        run = [0] * len(order)
                        for i in range(len(order)):
                            run[i] = raw[i] if parent[i] is None else run[parent[i]] & raw[i]
                        ev_raw = eval_plan_bits(plans, raw) & full_n
                        ev_run = eval_plan_bits(plans, run) & full_n
                        if ev_raw != ev_run:
                            findings.append(("replacement-value", raw, ev_raw, ev_run, n))
                        lhs2 = img[ev_run]
                        rhs2 = eval_plan_bits(plans, tuple(img[v] for v in run)) & full_m
                        if lhs2 != rhs2:
                            findings.append(("replacement-image", raw, lhs2, rhs2, m))
                        for check, vals, left, right, size in findings:
                            if map_doc is None:
                                map_doc = _table_map_doc(n, m, table)
                            col.violation(
                                {
                                    "map": map_doc,
                                    "base": serialize.base_to_doc(base),
                                    "family": _family_doc(n, PREFIX, order, vals),
                                    "check": check,
                                },
                                {"left": _pts(size, left), "right": _pts(size, right)},
                            )


def _replay_image_commutes(instance, kind, detail):
    from .hausdorff import decreasing_replacement

    pm = serialize.map_from_doc(instance["map"])
    base = serialize.base_from_doc(instance["base"])
    family = serialize.family_from_doc(instance["family"])
    check = instance["check"]
    if check == "replacement-value":
        run = decreasing_replacement(family)
        return evaluate(base, family) != evaluate(base, run)
    if check == "replacement-image":
        family = decreasing_replacement(family)
    mapped = IndexedFamily(
        pm.cod.n, PREFIX, {idx: pm.image(v) for idx, v in family.assignments.items()}
    )
    left = pm.image(evaluate(base, family))
    right = evaluate(base, mapped)
    return left != right


def _run_image_necessity(bounds, rng, budget, col):
    """Non-injective maps break image commutation on some non-decreasing family."""
    probe = Base(1, [(0, 0)], PREFIX)
    order = probe.relevant_indices(PREFIX)
    plans = compile_positions(probe, PREFIX, order)
    for n in range(1, bounds.max_points + 1):
        full_n = (1 << n) - 1
        for m in range(1, bounds.max_points + 1):
            full_m = (1 << m) - 1
            for table in all_tables(n, m):
                col.case()
                img = [0] * (1 << n)
                for bits in range(1 << n):
                    acc = 0
                    for x in range(n):
                        if bits >> x & 1:
                            acc |= 1 << table[x]
                    img[bits] = acc
                injective = len(set(table)) == n
                if injective:
                    pool = list(range(1 << n))
                    for base in _bases(bounds):
                        o = base.relevant_indices(PREFIX)
                        p = compile_positions(base, PREFIX, o)
                        for values in _assignments(pool, len(o), rng, min(budget, 4)):
                            lhs = img[eval_plan_bits(p, values) & full_n]
                            rhs = eval_plan_bits(p, tuple(img[v] for v in values)) & full_m
                            if lhs != rhs:
                                col.violation(
                                    {
                                        "map": _table_map_doc(n, m, table),
                                        "base": serialize.base_to_doc(base),
                                        "family": _family_doc(n, PREFIX, o, values),
                                        "check": "injective-image",
                                    },
                                    {"left": _pts(m, lhs), "right": _pts(m, rhs)},
                                )
                    continue
                found = None
                for x in range(n):
                    for y in range(n):
                        if x == y or table[x] != table[y]:
                            continue
                        values = (full_n, 1 << x, 1 << y)
                        lhs = img[eval_plan_bits(plans, values) & full_n]
                        rhs = eval_plan_bits(plans, tuple(img[v] for v in values)) & full_m
                        if lhs != rhs:
                            found = (values, lhs, rhs)
                            break
                    if found:
                        break
                if found is None:
                    col.violation(
                        {"map": _table_map_doc(n, m, table), "check": "missing-witness"},
                        {},
                    )
                else:
                    values, lhs, rhs = found
                    col.witness(
                        {
                            "map": _table_map_doc(n, m, table),
                            "base": serialize.base_to_doc(probe),
                            "family": _family_doc(n, PREFIX, order, values),
                            "check": "non-decreasing-image",
                        },
                        {"left": _pts(m, lhs), "right": _pts(m, rhs)},
                    )


def _replay_image_necessity(instance, kind, detail):
    pm = serialize.map_from_doc(instance["map"])
    if instance.get("check") == "missing-witness":
        n = pm.dom.n
        probe = Base(1, [(0, 0)], PREFIX)
        for x in range(n):
            for y in range(n):
                if x == y or pm.table[x] != pm.table[y]:
                    continue
                family = IndexedFamily(
                    n,
                    PREFIX,
                    {
                        (): SubsetMask.full(n),
                        (0,): SubsetMask(n, 1 << x),
                        (0, 0): SubsetMask(n, 1 << y),
                    },
                )
                mapped = IndexedFamily(
                    pm.cod.n,
                    PREFIX,
                    {idx: pm.image(v) for idx, v in family.assignments.items()},
                )
                if pm.image(evaluate(probe, family)) != evaluate(probe, mapped):
                    return False
        return True
    return _replay_image_commutes(
        {**instance, "check": "direct"}, kind, detail
    )


def _run_intersection_image(bounds, rng, budget, col):
    """Directed decreasing families push intersections through images."""
    top = min(bounds.max_points, 3)
    for n in range(1, top + 1):
        subsets = list(range(1 << n))
        for k in range(1, top + 1):
            for above in _posets(k):
                if not _is_directed(above):
                    continue
                relation = _order_pairs(above)
                decreasing = [
                    fam
                    for fam in iproduct(subsets, repeat=k)
                    if all(
                        not (above[i] >> j & 1) or not (fam[j] & ~fam[i])
                        for i in range(k)
                        for j in range(k)
                        if i != j
                    )
                ]
                for m in range(1, top + 1):
                    for table in all_tables(n, m):
                        img = [0] * (1 << n)
                        for bits in range(1 << n):
                            acc = 0
                            for x in range(n):
                                if bits >> x & 1:
                                    acc |= 1 << table[x]
                            img[bits] = acc
                        full_m = (1 << m) - 1
                        pm = None
                        for fi, fam in enumerate(decreasing):
                            col.case()
                            inter = (1 << n) - 1
                            rhs = full_m
                            for v in fam:
                                inter &= v
                                rhs &= img[v]
                            lhs = img[inter]
                            if lhs != rhs:
                                col.violation(
                                    {
                                        "map": _table_map_doc(n, m, table),
                                        "order": relation,
                                        "family": [_pts(n, v) for v in fam],
                                    },
                                    {"left": _pts(m, lhs), "right": _pts(m, rhs)},
                                )
                            if fi < 2:
                                if pm is None:
                                    pm = PointMap(
                                        FinSpace.discrete(n), FinSpace.discrete(m), table
                                    )
                                rep = directed_image_check(
                                    pm,
                                    [tuple(p) for p in relation],
                                    [SubsetMask(n, v) for v in fam],
                                )
                                if not (rep.equal and rep.directed and rep.decreasing):
                                    col.violation(
                                        {
                                            "map": _table_map_doc(n, m, table),
                                            "order": relation,
                                            "family": [_pts(n, v) for v in fam],
                                            "check": "report",
                                        },
                                        {
                                            "equal": rep.equal,
                                            "directed": rep.directed,
                                            "decreasing": rep.decreasing,
                                        },
                                    )


def _replay_intersection_image(instance, kind, detail):
    pm = serialize.map_from_doc(instance["map"])
    relation = [tuple(p) for p in serialize.relation_from_doc(instance["order"])]
    family = [SubsetMask.from_points(pm.dom.n, v) for v in instance["family"]]
    rep = directed_image_check(pm, relation, family)
    if kind == "witness":
        return not rep.equal
    if instance.get("check") == "report":
        return not (rep.equal and rep.directed and rep.decreasing)
    return rep.directed and rep.decreasing and not rep.equal


def _run_intersection_image_necessity(bounds, rng, budget, col):
    """Dropping directedness or decreasingness admits strict inclusions."""
    top = min(bounds.max_points, 2)
    for n in range(1, top + 1):
        subsets = list(range(1 << n))
        for m in range(1, top + 1):
            for table in all_tables(n, m):
                img = [0] * (1 << n)
                for bits in range(1 << n):
                    acc = 0
                    for x in range(n):
                        if bits >> x & 1:
                            acc |= 1 << table[x]
                    img[bits] = acc
                full_m = (1 << m) - 1
                for k in range(1, top + 1):
                    for above in _posets(k):
                        directed = _is_directed(above)
                        relation = _order_pairs(above)
                        for fam in iproduct(subsets, repeat=k):
                            col.case()
                            decreasing = all(
                                not (above[i] >> j & 1) or not (fam[j] & ~fam[i])
                                for i in range(k)
                                for j in range(k)
                                if i != j
                            )
                            inter = (1 << n) - 1
                            rhs = full_m
                            for v in fam:
                                inter &= v
                                rhs &= img[v]
                            lhs = img[inter]
                            if lhs == rhs:
                                continue
                            instance = {
                                "map": _table_map_doc(n, m, table),
                                "order": relation,
                                "family": [_pts(n, v) for v in fam],
                            }
                            outcome = {
                                "left": _pts(m, lhs),
                                "right": _pts(m, rhs),
                                "directed": directed,
                                "decreasing": decreasing,
                            }
                            if directed and decreasing:
                                col.violation(instance, outcome)
                            else:
                                col.witness(instance, outcome)


def _run_reduction_dual_separation(bounds, rng, budget, col):
    """Reduction for the opens forces separation for the closeds, with witnesses."""
    for space in _spaces(bounds.max_points):
        col.case()
        opens = _opens_class(space)
        red = check_reduction(opens)
        if not red.holds:
            continue
        space_doc = serialize.space_to_doc(space)
        closeds = complement_class(opens)
        sep = check_separation(closeds)
        if not sep.holds:
            col.violation(
                {"space": space_doc, "check": "separation-verdict"},
                {"failing_pair": [serialize.points_doc(s) for s in sep.failing_pair]},
            )
            continue
        delta = delta_class(closeds)
        for a in closeds.members:
            for b in closeds.members:
                if not a.isdisjoint(b):
                    continue
                pair = [serialize.points_doc(a), serialize.points_doc(b)]
                try:
                    w = reduction_to_separation(opens, a, b)
                except PreconditionError as exc:
                    col.violation(
                        {"space": space_doc, "check": "constructed-witness", "pair": pair},
                        {"error": str(exc)},
                    )
                    continue
                if not (w.holds(delta) and w.separator in closeds):
                    col.violation(
                        {"space": space_doc, "check": "constructed-witness", "pair": pair},
                        {"separator": serialize.points_doc(w.separator)},
                    )


def _replay_reduction_dual_separation(instance, kind, detail):
    space = serialize.space_from_doc(instance["space"])
    opens = _opens_class(space)
    if not check_reduction(opens).holds:
        return False
    closeds = complement_class(opens)
    if instance["check"] == "separation-verdict":
        return not check_separation(closeds).holds
    a, b = (SubsetMask.from_points(space.n, p) for p in instance["pair"])
    try:
        w = reduction_to_separation(opens, a, b)
    except PreconditionError:
        return True
    return not (w.holds(delta_class(closeds)) and w.separator in closeds)


def _run_zero_trace_gap(bounds, rng, budget, col):
    """Traces of ambient zero sets are intrinsic; the converse can fail."""
    for space in _spaces(bounds.max_points):
        space_doc = serialize.space_to_doc(space)
        discrete = space.is_discrete()
        for carrier_bits in range(1 << space.n):
            col.case()
            carrier = SubsetMask(space.n, carrier_bits)
            rep = zero_trace_gap(space, carrier)
            intrinsic = rep.intrinsic.member_bits()
            escaped = [t for t in rep.traces.members if t.bits not in intrinsic]
            if escaped:
                col.violation(
                    {"space": space_doc, "carrier": serialize.points_doc(carrier), "check": "trace-not-intrinsic"},
                    {"escaped": [serialize.points_doc(t) for t in escaped]},
                )
            if len(rep.gap):
                if discrete or carrier_bits == (1 << space.n) - 1:
                    col.violation(
                        {"space": space_doc, "carrier": serialize.points_doc(carrier), "check": "unexpected-gap"},
                        {"gap": [serialize.points_doc(g) for g in rep.gap.members]},
                    )
                else:
                    col.witness(
                        {"space": space_doc, "carrier": serialize.points_doc(carrier)},
                        {"gap": [serialize.points_doc(g) for g in rep.gap.members]},
                    )


def _replay_zero_trace_gap(instance, kind, detail):
    space = serialize.space_from_doc(instance["space"])
    carrier = SubsetMask.from_points(space.n, instance["carrier"])
    rep = zero_trace_gap(space, carrier)
    if kind == "witness":
        return len(rep.gap) > 0
    if instance.get("check") == "trace-not-intrinsic":
        intrinsic = rep.intrinsic.member_bits()
        return any(t.bits not in intrinsic for t in rep.traces.members)
    return len(rep.gap) > 0 and (space.is_discrete() or carrier.bits == (1 << space.n) - 1)


_IDENTITY_BASES = (
    ("union", (2,)),
    ("intersection", (2,)),
    ("a_operation", (2, 2)),
)


def _run_transfer_identity(bounds, rng, budget, col):
    """Transfer along the identity agrees with the direct checkers."""
    for space in _spaces(bounds.max_points):
        opens = _opens_class(space)
        ident = PointMap.identity(space)
        space_doc = serialize.space_to_doc(space)
        for kind_name, params in _IDENTITY_BASES:
            base = canonical_base(kind_name, *params)
            for mode in MODES:
                order = base.relevant_indices(mode)
                enum = len([i for i in order if i != ()])
                if len(opens) ** enum > bounds.cap:
                    continue
                phi = generate_class(base, opens, mode, cap=bounds.cap)
                for which in (REDUCTION, SEPARATION):
                    col.case()
                    rep = transfer_property(ident, base, opens, opens, mode, which, cap=bounds.cap)
                    direct = check_reduction(phi) if which == REDUCTION else check_separation(phi)
                    agree = rep.verdict == direct.holds
                    if agree and rep.verdict:
                        for trace in rep.pairs:
                            direct_w = direct.witnesses.get((trace.a, trace.b))
                            if which == REDUCTION:
                                same = (
                                    direct_w is not None
                                    and trace.witness_dom.c == direct_w.c
                                    and trace.witness_dom.d == direct_w.d
                                )
                            else:
                                same = (
                                    direct_w is not None
                                    and trace.witness_dom.separator == direct_w.separator
                                )
                            if not same:
                                agree = False
                                break
                    if not agree:
                        col.violation(
                            {
                                "space": space_doc,
                                "base": serialize.base_to_doc(base),
                                "mode": mode,
                                "which": which,
                            },
                            {"transfer": rep.verdict, "direct": direct.holds},
                        )


def _replay_transfer_identity(instance, kind, detail):
    space = serialize.space_from_doc(instance["space"])
    base = serialize.base_from_doc(instance["base"])
    mode = instance["mode"]
    which = instance["which"]
    opens = _opens_class(space)
    phi = generate_class(base, opens, mode)
    rep = transfer_property(PointMap.identity(space), base, opens, opens, mode, which)
    direct = check_reduction(phi) if which == REDUCTION else check_separation(phi)
    return rep.verdict != direct.holds


# ---------------------------------------------------------------------------
# registry and entry points

_SUITES = {
    "distributivity": (
        _run_distributivity,
        Bounds(max_points=3),
        10,
        False,
        "meet and join identities for eval and its dual over all small topologies",
    ),
    "restriction": (
        _run_restriction,
        Bounds(max_points=3),
        8,
        False,
        "evaluation commutes with traces on every carrier",
    ),
    "preimage-commutes": (
        _run_preimage_commutes,
        Bounds(max_points=3),
        10,
        False,
        "preimages pass through eval and dual for every table",
    ),
    "algebra-closure": (
        _run_algebra_closure,
        Bounds(max_points=4),
        6,
        False,
        "alg F is the fixed-point family, has size 2^fibers, and eval stays inside",
    ),
    "diagonal-absorption": (
        _run_diagonal_absorption,
        Bounds(max_points=3),
        0,
        False,
        "factor algebras embed in the diagonal product's algebra",
    ),
    "zero-witness-certificate": (
        _run_zero_witness_certificate,
        Bounds(max_points=4),
        0,
        False,
        "indicator diagonals saturate every small selection of zero sets",
    ),
    "image-commutes": (
        _run_image_commutes,
        Bounds(max_points=3),
        8,
        False,
        "images pass through prefix eval of decreasing families",
    ),
    "image-necessity": (
        _run_image_necessity,
        Bounds(max_points=3),
        6,
        True,
        "every non-injective map breaks image commutation without decreasingness",
    ),
    "intersection-image": (
        _run_intersection_image,
        Bounds(max_points=3),
        0,
        False,
        "directed decreasing families push intersections through images",
    ),
    "intersection-image-necessity": (
        _run_intersection_image_necessity,
        Bounds(max_points=2),
        0,
        True,
        "dropping directedness or decreasingness yields strict inclusions",
    ),
    "reduction-dual-separation": (
        _run_reduction_dual_separation,
        Bounds(max_points=4),
        0,
        False,
        "reduction for opens forces separation for closeds, constructively",
    ),
    "zero-trace-gap": (
        _run_zero_trace_gap,
        Bounds(max_points=4),
        0,
        True,
        "traces of zero sets are intrinsic; non-discrete spaces show gaps",
    ),
    "transfer-identity": (
        _run_transfer_identity,
        Bounds(max_points=3),
        0,
        False,
        "transfer along the identity matches the direct checkers",
    ),
}

_REPLAYS = {
    "distributivity": _replay_distributivity,
    "restriction": _replay_restriction,
    "preimage-commutes": _replay_preimage_commutes,
    "algebra-closure": _replay_algebra_closure,
    "diagonal-absorption": _replay_diagonal_absorption,
    "zero-witness-certificate": _replay_zero_witness_certificate,
    "image-commutes": _replay_image_commutes,
    "image-necessity": _replay_image_necessity,
    "intersection-image": _replay_intersection_image,
    "intersection-image-necessity": _replay_intersection_image,
    "reduction-dual-separation": _replay_reduction_dual_separation,
    "zero-trace-gap": _replay_zero_trace_gap,
    "transfer-identity": _replay_transfer_identity,
}


def suite_names():
    return tuple(sorted(_SUITES))


def suite_description(name):
    if name not in _SUITES:
        raise InputError(f"unknown suite {name!r}; known: {', '.join(suite_names())}")
    return _SUITES[name][4]


def suite_defaults(name):
    """Default bounds, sampling budget, and witness expectation of a suite."""
    if name not in _SUITES:
        raise InputError(f"unknown suite {name!r}; known: {', '.join(suite_names())}")
    _, bounds, budget, expects, _ = _SUITES[name]
    return bounds, budget, expects


def run_suite(name, bounds=None, seed=0, budget=None, keep=32):
    """Run one suite deterministically and collect its findings."""
    if name not in _SUITES:
        raise InputError(f"unknown suite {name!r}; known: {', '.join(suite_names())}")
    runner, default_bounds, default_budget, expects, _ = _SUITES[name]
    if bounds is None:
        bounds = default_bounds
    if budget is None:
        budget = default_budget
    rng = random.Random(f"{name}:{seed}")
    col = _Collector(name, expects, keep=keep)
    runner(bounds, rng, budget, col)
    return col.result()


def replay_finding(doc):
    """Re-run a stored finding; True means it still triggers."""
    if not isinstance(doc, dict):
        raise InputError("finding document must be an object")
    suite = doc.get("suite")
    if suite not in _REPLAYS:
        raise InputError(f"unknown suite {suite!r} in finding document")
    instance = doc.get("instance")
    if not isinstance(instance, dict):
        raise InputError("finding document is missing its instance")
    return bool(_REPLAYS[suite](instance, doc.get("kind", "violation"), doc.get("detail") or {}))
