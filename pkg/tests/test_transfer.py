"""Transfer of reduction/separation along maps, zero witnesses, trace gaps."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from redsep import (
    REDUCTION,
    SEPARATION,
    FinSpace,
    InputError,
    PointMap,
    PreconditionError,
    ReductionWitness,
    ResourceError,
    SeparationWitness,
    SetClass,
    SubsetMask,
    alg_enumerate,
    canonical_base,
    check_reduction,
    check_separation,
    generate_class,
    pull_back_witnesses,
    transfer_property,
    zero_sets,
    zero_trace_gap,
    zero_witness_map,
)

from conftest import mask, sclass, spaces, tables


def merge32():
    return PointMap(FinSpace.discrete(3), FinSpace.discrete(2), [0, 0, 1])


MERGE_GENS = [[], [0, 1], [2], [0, 1, 2]]


def test_pull_back_restores_reduction_witnesses():
    pm = merge32()
    a, b = mask(3, [0, 1]), mask(3, [2])
    w = ReductionWitness(mask(2, [0]), mask(2, [1]), mask(2, [0]), mask(2, [1]))
    pulled = pull_back_witnesses(pm, a, b, w)
    assert (pulled.a, pulled.b) == (a, b)
    assert pulled.c == mask(3, [0, 1]) and pulled.d == mask(3, [2])
    assert pulled.holds()


def test_pull_back_restores_separation_witnesses():
    pm = merge32()
    a, b = mask(3, [0, 1]), mask(3, [2])
    w = SeparationWitness(mask(2, [0]), mask(2, [1]), mask(2, [0]))
    pulled = pull_back_witnesses(pm, a, b, w)
    assert pulled.separator == mask(3, [0, 1])
    assert pulled.holds()


def test_pull_back_preconditions():
    pm = merge32()
    ok = ReductionWitness(mask(2, [0]), mask(2, [1]), mask(2, [0]), mask(2, [1]))
    with pytest.raises(PreconditionError):
        pull_back_witnesses(pm, mask(3, [0]), mask(3, [2]), ok)
    stale = ReductionWitness(mask(2, [1]), mask(2, [0]), mask(2, [1]), mask(2, [0]))
    with pytest.raises(PreconditionError):
        pull_back_witnesses(pm, mask(3, [0, 1]), mask(3, [2]), stale)
    with pytest.raises(InputError):
        pull_back_witnesses(pm, mask(3, [0, 1]), mask(3, [2]), (1, 2))
    with pytest.raises(InputError):
        pull_back_witnesses(pm, mask(2, [0]), mask(3, [2]), ok)


@given(tables, st.data())
def test_pulled_back_canonical_witnesses_always_validate(nmt, data):
    n, m, table = nmt
    pm = PointMap(FinSpace.discrete(n), FinSpace.discrete(m), table)
    saturated = list(alg_enumerate(pm))
    a = data.draw(st.sampled_from(saturated), label="a")
    b = data.draw(st.sampled_from(saturated), label="b")
    direct = check_reduction(SetClass.power_set(m))
    w = direct.witnesses[(pm.image(a), pm.image(b))]
    pulled = pull_back_witnesses(pm, a, b, w)
    assert pulled.holds()
    if a.isdisjoint(b) and pm.image(a).isdisjoint(pm.image(b)):
        sep = check_separation(SetClass.power_set(m))
        ws = sep.witnesses[(pm.image(a), pm.image(b))]
        assert pull_back_witnesses(pm, a, b, ws).holds()


def test_merge_map_transfers_reduction_to_its_saturated_class():
    rep = transfer_property(
        merge32(),
        canonical_base("union", 2),
        sclass(3, MERGE_GENS),
        SetClass.power_set(2),
        "range",
        REDUCTION,
    )
    assert rep.verdict and rep.failure is None
    assert all(h.holds for h in rep.hypotheses)
    assert {m.points() for m in rep.class_dom} == {(), (2,), (0, 1), (0, 1, 2)}
    assert len(rep.pairs) == 16
    assert all(t.valid and t.witness_dom.holds() for t in rep.pairs)
    assert all(t.fa == merge32().image(t.a) for t in rep.pairs)


def test_merge_map_transfers_separation_too():
    rep = transfer_property(
        merge32(),
        canonical_base("union", 2),
        sclass(3, MERGE_GENS),
        SetClass.power_set(2),
        "range",
        SEPARATION,
    )
    assert rep.verdict
    assert all(t.valid for t in rep.pairs)
    assert all(t.a.isdisjoint(t.b) for t in rep.pairs)


def test_unsaturated_generators_fail_the_saturation_hypothesis():
    rep = transfer_property(
        merge32(),
        canonical_base("union", 2),
        sclass(3, [[], [0], [0, 1], [2], [0, 1, 2]]),
        SetClass.power_set(2),
        "range",
        REDUCTION,
    )
    assert not rep.verdict
    assert "domain-generators-saturated" in rep.failure
    by_name = {h.name: h for h in rep.hypotheses}
    assert by_name["domain-generators-saturated"].offending == (mask(3, [0]),)
    assert by_name["images-stay-in-codomain-generators"].holds
    assert by_name["preimages-stay-in-domain-generators"].holds
    assert rep.class_dom is None and rep.pairs == ()


def test_escaping_images_fail_the_image_hypothesis():
    rep = transfer_property(
        merge32(),
        canonical_base("union", 2),
        sclass(3, MERGE_GENS),
        sclass(2, [[], [0], [0, 1]]),
        "range",
        REDUCTION,
    )
    assert not rep.verdict
    by_name = {h.name: h for h in rep.hypotheses}
    assert not by_name["images-stay-in-codomain-generators"].holds
    assert by_name["images-stay-in-codomain-generators"].offending == (mask(3, [2]),)


def test_codomain_class_without_the_property_is_reported_with_its_pair(five_open):
    opens = SetClass.from_bits(3, five_open.open_bits())
    rep = transfer_property(
        PointMap.identity(five_open),
        canonical_base("union", 2),
        opens,
        opens,
        "range",
        REDUCTION,
    )
    assert not rep.verdict
    assert rep.failure == "hypothesis failed: codomain-class-has-reduction"
    by_name = {h.name: h for h in rep.hypotheses}
    bad = by_name["codomain-class-has-reduction"]
    assert not bad.holds
    assert bad.offending == ((mask(3, [0, 1]), mask(3, [1, 2])),)


@given(spaces, st.sampled_from([REDUCTION, SEPARATION]))
def test_identity_transfer_agrees_with_the_direct_check(space, which):
    opens = SetClass.from_bits(space.n, space.open_bits())
    base = canonical_base("union", 2)
    rep = transfer_property(
        PointMap.identity(space), base, opens, opens, "range", which
    )
    generated = generate_class(base, opens, "range")
    direct = (
        check_reduction(generated) if which == REDUCTION else check_separation(generated)
    )
    assert rep.verdict == direct.holds
    if rep.verdict:
        for t in rep.pairs:
            assert t.witness_dom == direct.witnesses[(t.a, t.b)]
            assert t.witness_cod == direct.witnesses[(t.a, t.b)]


def test_indicator_diagonal_certifies_every_listed_zero_set(connected3):
    zeros = [mask(3, []), mask(3, [0, 1, 2])]
    rep = zero_witness_map(connected3, zeros)
    assert rep.all_saturated
    assert rep.map.table == (2, 2, 2)
    assert rep.map.cod.n == 4
    assert rep.certificate == ((zeros[0], True), (zeros[1], True))


def test_indicator_diagonal_on_a_discrete_space():
    space = FinSpace.discrete(3)
    rep = zero_witness_map(space, [mask(3, [0]), mask(3, [1, 2])])
    assert rep.all_saturated
    assert rep.map.table == (1, 2, 2)


@given(spaces, st.data())
def test_zero_witness_certificates_always_verify(space, data):
    pool = sorted(zero_sets(space))
    zeros = data.draw(
        st.lists(st.sampled_from(pool), max_size=3) if pool else st.just([]),
        label="zeros",
    )
    rep = zero_witness_map(space, zeros)
    assert rep.all_saturated
    for z, ok in rep.certificate:
        assert ok
        assert rep.map.preimage(rep.map.image(z)) == z


def test_zero_witness_map_guards(connected3):
    with pytest.raises(ResourceError):
        zero_witness_map(FinSpace.discrete(4), [mask(4, [i]) for i in range(4)])
    with pytest.raises(PreconditionError):
        zero_witness_map(connected3, [mask(3, [0])])
    with pytest.raises(InputError):
        zero_witness_map(FinSpace.discrete(3), [mask(2, [0])])


def test_connected_space_leaves_a_trace_gap(connected3):
    rep = zero_trace_gap(connected3, mask(3, [1, 2]))
    assert rep.remap == (1, 2)
    assert {m.points() for m in rep.traces} == {(), (0, 1)}
    assert rep.intrinsic == SetClass.power_set(2)
    assert {m.points() for m in rep.gap} == {(0,), (1,)}


@given(spaces, st.integers(0, 7))
def test_traces_are_always_intrinsic_zero_sets(space, carrier_bits):
    carrier = SubsetMask(space.n, carrier_bits & ((1 << space.n) - 1))
    rep = zero_trace_gap(space, carrier)
    assert rep.traces.member_bits() <= rep.intrinsic.member_bits()
    assert rep.gap.member_bits() == (
        rep.intrinsic.member_bits() - rep.traces.member_bits()
    )


@given(st.integers(0, 15))
def test_discrete_spaces_have_no_trace_gap(carrier_bits):
    space = FinSpace.discrete(4)
    rep = zero_trace_gap(space, SubsetMask(4, carrier_bits))
    assert len(rep.gap) == 0


@given(spaces)
def test_the_full_carrier_has_no_trace_gap(space):
    rep = zero_trace_gap(space, SubsetMask.full(space.n))
    assert len(rep.gap) == 0
    assert rep.traces == rep.intrinsic
