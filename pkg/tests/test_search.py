import json
import math

import pytest

from cyclomap import (
    BranchMap,
    SweepSpec,
    decompose,
    differential_verify,
    enumerate_mto1,
    make_field,
    multiplicative_group,
)
from cyclomap.errors import CapExceeded
from cyclomap.mto1 import CriterionVerdict, branch_map_valid_ms, criterion_l2
from cyclomap.search import SplitMix64, sample_rng


def test_splitmix_reference_stream():
    # first outputs for seed 1234567, per the reference construction
    rng = SplitMix64(1234567)
    first = [rng.next_u64() for _ in range(3)]
    assert first == [
        6457827717110365317,
        3203168211198807973,
        9817491932198370423,
    ]
    assert SplitMix64(1234567).next_u64() == first[0]


def test_sample_rng_is_chunk_invariant():
    a = [sample_rng(9, i).next_u64() for i in range(10)]
    b = [sample_rng(9, i).next_u64() for i in range(5, 10)]
    assert a[5:] == b


def test_exhaustive_sweep_zero_mismatches_small():
    spec = SweepSpec(criterion="l2", field_id="5", ell=2, r_range=(1, 4))
    report = differential_verify(spec)
    assert report.total_cases == (4 * 4) ** 2 * 4
    assert report.applicable_cases == report.total_cases
    assert report.mismatches == []


def test_random_sweep_deterministic_json():
    spec = SweepSpec(
        criterion="l3", field_id="13", ell=3, r_range=(1, 12),
        mode="random", samples=400, seed=42,
    )
    a = differential_verify(spec)
    b = differential_verify(spec)
    assert a.to_json() == b.to_json()
    payload = json.loads(a.to_json())
    assert payload["mismatch_count"] == 0
    assert "elapsed_seconds" not in payload
    assert "elapsed_seconds" in json.loads(a.to_json(include_runtime=True))


def test_parallel_equals_serial():
    spec = SweepSpec(criterion="l2", field_id="13", ell=2, r_range=(1, 6))
    serial = differential_verify(spec)
    parallel = differential_verify(spec, jobs=3)
    assert serial.to_json() == parallel.to_json()
    spec_r = SweepSpec(
        criterion="l2", field_id="13", ell=2, r_range=(1, 12),
        mode="random", samples=300, seed=5,
    )
    assert differential_verify(spec_r).to_json() == differential_verify(spec_r, jobs=2).to_json()


def test_cap_guard():
    spec = SweepSpec(criterion="l2", field_id="17", ell=2, r_range=(1, 16), cap=100)
    with pytest.raises(CapExceeded):
        differential_verify(spec)


def test_corrupted_criterion_is_caught():
    # dropping the size-bound clause must produce mismatches, including the
    # 8-to-1 instance with branches (1,2),(4,6) over the 13-element field
    def corrupted(bm, m):
        v = criterion_l2(bm, m)
        if v.applicable and not v.holds:
            d0, d1 = bm.multiplicities
            if m == d0 + d1:
                d = min(d0, d1)
                off = bm._offsets
                if m % d == 0 and off[0] % (2 * d) == off[1] % (2 * d):
                    return CriterionVerdict(True, True, "size bound dropped")
        return v

    spec = SweepSpec(criterion="l2", field_id="13", ell=2, r_range=(1, 12))
    report = differential_verify(spec, criterion_fn=corrupted)
    assert report.mismatches
    F = make_field(13)
    target = {"a_exps": [0, 2], "r": [2, 6]}  # (1, 2), (4, 6)
    found = [
        mm
        for mm in report.mismatches
        if mm["a_exps"] == target["a_exps"] and mm["r"] == target["r"]
    ]
    # that map is genuinely 8-to-1, so the mutation flips some *other* m
    assert any(mm["criterion"] and not mm["oracle"] for mm in report.mismatches)
    bm = BranchMap(
        decompose(multiplicative_group(F), 2), [(1, 2), (4, 6)]
    )
    assert 8 in branch_map_valid_ms(bm)


def test_sweep_ad_hoc_sufficient_conditions():
    # prose conditions for 4+ branches, checked as sanity assertions:
    # pairwise-disjoint images make the map gcd-to-1 exactly when all the
    # gcds agree; all-bijective branches with residues m-to-1 give m-to-1
    F = make_field(17)
    dec = decompose(multiplicative_group(F), 4)
    rng = SplitMix64(2024)
    seen = 0
    for _ in range(3000):
        bm = BranchMap(
            dec,
            [(F.exp_at(rng.randrange(16)), 1 + rng.randrange(16)) for _ in range(4)],
        )
        images = [bm.branch_image(i).elements for i in range(4)]
        disjoint = all(
            not (images[i] & images[j]) for i in range(4) for j in range(i + 1, 4)
        )
        if not disjoint:
            continue
        seen += 1
        valid = branch_map_valid_ms(bm)
        ds = set(bm.multiplicities)
        for m in range(1, 17):
            assert (m in valid) == (ds == {m})
    assert seen > 20


def test_enumerate_small_examples(f13):
    # power maps at index 1: only exponents with gcd(r, 12) = 2 qualify
    maps = list(enumerate_mto1(f13, 1, 2, r_range=(1, 12)))
    assert maps and all(math.gcd(bm.exponents[0], 12) == 2 for bm in maps)
    # index 2, m = 3: the (8,3),(7,3) instance appears under narrowed bounds
    found = [
        bm.branches
        for bm in enumerate_mto1(f13, 2, 3, a_exp_range=(3, 11), r_range=(3, 3))
    ]
    assert ((8, 3), (7, 3)) in [tuple(b) for b in found]


def test_enumerate_respects_limit_and_verifies(f13):
    stream = list(enumerate_mto1(f13, 2, 3, limit=5))
    assert len(stream) == 5
    for bm in stream:
        assert 3 in branch_map_valid_ms(bm)


def test_enumerate_f17_2to1_all_pass_criterion():
    from cyclomap import criterion_2to1_any_l

    F = make_field(17)
    count = 0
    for bm in enumerate_mto1(F, 4, 2, r_range=(1, 4), limit=10):
        assert criterion_2to1_any_l(bm).holds
        count += 1
    assert count == 10
