import random

import pytest

from locekr import constructions as C
from locekr.exact import binomial
from locekr.hilton import (
    HiltonInstance,
    check_cross_conditions,
    hilton_bound,
    parse_instance,
    render_verdict,
    serialize_instance,
    verify_hilton,
)
from locekr.setfamily import Family, FamilyFormatError, GroundParams, ksets

from oracles import brute_i


def _inst(n, k, blocks):
    return HiltonInstance.build(GroundParams(n, k), blocks)


def _empty(n, k):
    return Family.from_masks(GroundParams(n, k), [])


def test_m_and_M_sequences():
    inst = _inst(10, 3, [(1, _empty(10, 3)), (3, _empty(10, 3)), (1, _empty(10, 3))])
    assert inst.m == [0, 2, 0, 1]
    assert inst.M == [1, 2, 2, 3]
    assert [f.j for f in inst.families] == [1, 1, 2]


def test_identical_stars_satisfy_cross_condition():
    S = C.star(10, 2, 1)
    assert check_cross_conditions(_inst(10, 2, [(1, S)] * 3))


def test_disjoint_singletons_fail_cross_two():
    a = Family.from_sets(6, 2, [(1, 2)])
    b = Family.from_sets(6, 2, [(3, 4)])
    inst = _inst(6, 2, [(1, a), (2, b)])
    assert not check_cross_conditions(inst)
    v = verify_hilton(inst)
    assert not v.condition_ok and not v.failed
    assert "inapplicable" in render_verdict(inst, v)


def test_single_family_is_vacuously_fine():
    F = Family.from_sets(6, 2, [(1, 2), (3, 4)])
    inst = _inst(6, 2, [(1, F)])
    assert check_cross_conditions(inst)
    assert verify_hilton(inst).intra == (False,)


@pytest.mark.parametrize("m,expected", [(3, 45), (10, 90), (0, 45)])
def test_bound_examples(m, expected):
    inst = _inst(10, 2, [(1, _empty(10, 2))] * m)
    assert hilton_bound(inst) == expected


def test_three_stars_example():
    inst = _inst(10, 2, [(1, C.star(10, 2, 1))] * 3)
    v = verify_hilton(inst)
    assert (v.total, v.bound, v.holds) == (27, 45, True)
    assert all(m.r == 3 and m.i_U == 1 and m.cap == 3 for m in v.multiplicities)


def test_full_level_alone_is_tight():
    v = verify_hilton(_inst(10, 2, [(1, C.full_level(10, 2))]))
    assert (v.total, v.bound, v.holds) == (45, 45, True)


def test_ten_stars_are_tight():
    v = verify_hilton(_inst(10, 2, [(1, C.star(10, 2, 1))] * 10))
    assert (v.total, v.bound, v.holds) == (90, 90, True)


@pytest.mark.parametrize("n,k,t", [(10, 2, 1), (12, 3, 1), (12, 3, 2)])
def test_restriction_to_one_index(n, k, t):
    S = C.star(n, k, t)
    for m in range(0, 6):
        inst = _inst(n, k, [(t, S)] * m)
        assert hilton_bound(inst) == max(binomial(n, k), m * binomial(n - t, k - t))


def _random_instance(rng):
    n = rng.randint(4, 8)
    k = rng.randint(2, min(4, n - 1))
    P = GroundParams(n, k)
    pool = ksets(n, k)
    core = 0
    if rng.random() < 0.6:
        for x in rng.sample(range(n), rng.randint(1, k - 1)):
            core |= 1 << x
    blocks: list[tuple[int, list[int]]] = []
    for _ in range(rng.randint(1, 5)):
        i = rng.randint(1, k)
        chosen: list[int] = []
        cands = [m for m in pool if m & core == core] if core and rng.random() < 0.8 else pool
        for A in rng.sample(cands, min(len(cands), rng.randint(0, 12))):
            if all((A & B).bit_count() >= max(i, j) for j, fam in blocks for B in fam):
                chosen.append(A)
        blocks.append((i, chosen))
    return HiltonInstance.build(P, [(i, Family.from_masks(P, fam)) for i, fam in blocks])


def test_counting_step_on_random_valid_instances():
    rng = random.Random(11)
    nontrivial = 0
    for _ in range(1000):
        inst = _random_instance(rng)
        v = verify_hilton(inst)
        assert v.condition_ok
        assert v.counting_ok
        union = sorted({A for f in inst.families for A in f.family.members})
        if union:
            ref = brute_i([[x for x in range(inst.params.n) if A >> x & 1] for A in union])
            assert [m.i_U for m in v.multiplicities] == ref
        for m in v.multiplicities:
            assert m.r <= inst.M[m.i_U]
            nontrivial += m.r > 1
    assert nontrivial > 100


def test_instance_file_roundtrip():
    inst = _inst(6, 3, [(1, C.star(6, 3, 1)), (2, _empty(6, 3)), (2, C.star(6, 3, 2))])
    text = serialize_instance(inst)
    back = parse_instance(text)
    assert back == inst
    assert "family i=2\n\nfamily i=2" in text


@pytest.mark.parametrize("text,lineno,fragment", [
    ("", 1, "missing header"),
    ("n=5 k=2\n1 2\n", 2, "before any"),
    ("n=5 k=2\nfamily i=3\n", 2, "outside 1..2"),
    ("n=5 k=2\nfamily j=1\n", 2, "malformed"),
    ("n=5 k=2\nfamily i=x\n", 2, "non-integer"),
    ("n=5 k=2\nfamily i=1\n1 2\n1 2\n", 4, "duplicate"),
    ("n=5 k=2\nfamily i=1\n1 9\n", 3, "range"),
])
def test_instance_parse_errors(text, lineno, fragment):
    with pytest.raises(FamilyFormatError) as e:
        parse_instance(text)
    assert e.value.lineno == lineno
    assert fragment in str(e.value)


def test_large_n_stars_hold():
    # mixed thresholds built from nested stars are cross-max-intersecting
    n, k = 24, 3
    inst = _inst(n, k, [(1, C.star(n, k, 2)), (2, C.star(n, k, 2)), (2, C.star(n, k, 3))])
    v = verify_hilton(inst)
    assert v.condition_ok and v.large_n and v.holds and not v.failed
