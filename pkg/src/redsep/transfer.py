"""Moving reduction / separation along maps, constructively.

Witnesses for a pair of saturated sets pull back through preimages.  The
full pipeline checks the hypotheses, generates the source and target
classes, finds a witness for every image pair in the target class, pulls it
back, and re-verifies it in the source class; any failure is reported with
the offending hypothesis or pair.
"""

from dataclasses import dataclass
from typing import Optional

from .classes import (
    DEFAULT_ASSIGNMENT_CAP,
    ReductionWitness,
    SeparationWitness,
    SetClass,
    _reduction_witness,
    _separation_witness,
    check_reduction,
    check_separation,
    delta_class,
    generate_class,
    restrict_class,
)
from .errors import InputError, PreconditionError, ResourceError
from .maps import PointMap, alg_contains
from .masks import SubsetMask
from .spaces import DEFAULT_MAX_PRODUCT_POINTS, FinSpace, subspace, zero_sets

REDUCTION = "reduction"
SEPARATION = "separation"


def pull_back_witnesses(pm, a, b, witness):
    """Pull a codomain witness for (F(a), F(b)) back to one for (a, b).

    Both a and b must be saturated (unions of fibers); preimages then restore
    them exactly, and the pulled-back sets inherit every witness condition.
    """
    for name, mask in (("a", a), ("b", b)):
        if not isinstance(mask, SubsetMask) or mask.n != pm.dom.n:
            raise InputError(f"{name} must be a SubsetMask over the domain")
        if not alg_contains(pm, mask):
            raise PreconditionError(f"{name} = {mask!r} is not saturated for the map")
    fa, fb = pm.image(a), pm.image(b)
    if isinstance(witness, ReductionWitness):
        if witness.a != fa or witness.b != fb or not witness.holds():
            raise PreconditionError(f"witness does not reduce ({fa!r}, {fb!r})")
        pulled = ReductionWitness(a, b, pm.preimage(witness.c), pm.preimage(witness.d))
        if not pulled.holds():
            raise PreconditionError("pulled-back reduction witness failed validation")
        return pulled
    if isinstance(witness, SeparationWitness):
        if witness.a != fa or witness.b != fb or not witness.holds():
            raise PreconditionError(f"witness does not separate ({fa!r}, {fb!r})")
        pulled = SeparationWitness(a, b, pm.preimage(witness.separator))
        if not pulled.holds():
            raise PreconditionError("pulled-back separation witness failed validation")
        return pulled
    raise InputError(f"unsupported witness type {type(witness).__name__}")


@dataclass(frozen=True)
class HypothesisReport:
    name: str
    holds: bool
    offending: tuple


@dataclass(frozen=True)
class PairTrace:
    a: SubsetMask
    b: SubsetMask
    fa: SubsetMask
    fb: SubsetMask
    witness_cod: object
    witness_dom: object
    valid: bool


@dataclass(frozen=True)
class TransferReport:
    which: str
    hypotheses: tuple
    verdict: bool
    failure: Optional[str]
    class_dom: Optional[SetClass]
    class_cod: Optional[SetClass]
    pairs: tuple


def transfer_property(
    pm,
    base,
    generators_dom,
    generators_cod,
    mode,
    which,
    cap=DEFAULT_ASSIGNMENT_CAP,
):
    """Carry reduction or separation from the codomain class to the domain class.

    Hypotheses checked up front: images of domain generators land among the
    codomain generators, preimages of codomain generators land among the
    domain generators, every domain generator is saturated, and the generated
    codomain class has the property.  When they hold, every pair from the
    generated domain class is handled by image, canonical witness search,
    pullback, and re-validation in the domain class.
    """
    if which not in (REDUCTION, SEPARATION):
        raise InputError(f"which must be {REDUCTION!r} or {SEPARATION!r}")
    if generators_dom.n != pm.dom.n:
        raise InputError("domain generators live on the wrong universe")
    if generators_cod.n != pm.cod.n:
        raise InputError("codomain generators live on the wrong universe")

    bad_images = tuple(
        g for g in generators_dom.members if pm.image(g) not in generators_cod
    )
    bad_preimages = tuple(
        h for h in generators_cod.members if pm.preimage(h) not in generators_dom
    )
    bad_saturation = tuple(
        g for g in generators_dom.members if not alg_contains(pm, g)
    )
    class_cod = generate_class(base, generators_cod, mode, cap=cap)
    target_check = check_reduction(class_cod) if which == REDUCTION else check_separation(class_cod)
    hypotheses = (
        HypothesisReport("images-stay-in-codomain-generators", not bad_images, bad_images),
        HypothesisReport("preimages-stay-in-domain-generators", not bad_preimages, bad_preimages),
        HypothesisReport("domain-generators-saturated", not bad_saturation, bad_saturation),
        HypothesisReport(
            f"codomain-class-has-{which}",
            target_check.holds,
            (target_check.failing_pair,) if target_check.failing_pair else (),
        ),
    )
    failed = [h.name for h in hypotheses if not h.holds]
    if failed:
        return TransferReport(
            which, hypotheses, False, f"hypothesis failed: {', '.join(failed)}",
            None, class_cod, (),
        )

    class_dom = generate_class(base, generators_dom, mode, cap=cap)
    delta_cod = delta_class(class_cod)
    delta_dom = delta_class(class_dom)
    traces = []
    for a in class_dom.members:
        for b in class_dom.members:
            if which == SEPARATION and not a.isdisjoint(b):
                continue
            fa, fb = pm.image(a), pm.image(b)
            if which == REDUCTION:
                w_cod = _reduction_witness(class_cod, fa, fb)
            else:
                if not fa.isdisjoint(fb):
                    w_cod = None
                else:
                    w_cod = _separation_witness(class_cod, delta_cod, fa, fb)
            if w_cod is None:
                traces.append(PairTrace(a, b, fa, fb, None, None, False))
                return TransferReport(
                    which, hypotheses, False,
                    f"no codomain witness for the image pair ({fa!r}, {fb!r})",
                    class_dom, class_cod, tuple(traces),
                )
            pulled = pull_back_witnesses(pm, a, b, w_cod)
            if which == REDUCTION:
                valid = pulled.holds() and pulled.c in class_dom and pulled.d in class_dom
            else:
                valid = pulled.holds(delta_dom)
            traces.append(PairTrace(a, b, fa, fb, w_cod, pulled, valid))
            if not valid:
                return TransferReport(
                    which, hypotheses, False,
                    f"pulled-back witness left the domain class for ({a!r}, {b!r})",
                    class_dom, class_cod, tuple(traces),
                )
    return TransferReport(which, hypotheses, True, None, class_dom, class_cod, tuple(traces))


@dataclass(frozen=True)
class ZeroWitnessReport:
    map: PointMap
    certificate: tuple  # (set, saturated) per listed zero set
    all_saturated: bool


# the indicator codomain depends only on the number of listed sets
_INDICATOR_CODS = {}


def _indicator_cod(k):
    if k not in _INDICATOR_CODS:
        _INDICATOR_CODS[k] = FinSpace.discrete(1 << k)
    return _INDICATOR_CODS[k]


def zero_witness_map(space, zeros, max_points=DEFAULT_MAX_PRODUCT_POINTS):
    """Diagonal of the 0/1 indicator maps of the listed zero sets.

    Each indicator sends points inside the set to 0 and the rest to 1; it is
    continuous into the discrete pair because zero sets are unions of
    components.  Every listed set is a preimage under the diagonal, so the
    certificate of saturation always verifies.
    """
    zs = zero_sets(space)
    zeros = list(zeros)
    for z in zeros:
        if not isinstance(z, SubsetMask) or z.n != space.n:
            raise InputError(f"{z!r} is not a SubsetMask over the space")
        if z not in zs:
            raise PreconditionError(f"{z!r} is not a zero set of the space")
    k = len(zeros)
    if 1 << k > max_points:
        raise ResourceError(f"{k} indicator factors exceed the product cap {max_points}")
    # diagonal of k two-point discrete factors, row-major: bit i of the code
    # is the indicator of zeros[k-1-i]; equals the generic product codec
    table = []
    for x in range(space.n):
        code = 0
        for z in zeros:
            code = code * 2 + (0 if x in z else 1)
        table.append(code)
    pm = PointMap(space, _indicator_cod(k), table)
    certificate = tuple((z, alg_contains(pm, z)) for z in zeros)
    return ZeroWitnessReport(pm, certificate, all(ok for _, ok in certificate))


@dataclass(frozen=True)
class GapReport:
    carrier: SubsetMask
    remap: tuple       # new index -> original point
    traces: SetClass   # restrictions of ambient zero sets, subspace indexing
    intrinsic: SetClass
    gap: SetClass      # intrinsic members that are not traces


def zero_trace_gap(space, carrier):
    """Compare restricted ambient zero sets with the subspace's own zero sets.

    Traces are always intrinsic (restrictions of component-constant indicator
    maps stay continuous); the converse can fail off discrete spaces, and the
    gap lists the intrinsic zero sets with no ambient representative.
    """
    traces = restrict_class(zero_sets(space), carrier)
    sub, remap = subspace(space, carrier)
    intrinsic = zero_sets(sub)
    gap = SetClass.from_bits(
        sub.n, intrinsic.member_bits() - traces.member_bits()
    )
    return GapReport(carrier, remap, traces, intrinsic, gap)
