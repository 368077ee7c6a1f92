import math

import pytest

from cyclomap import (
    Polynomial,
    classify_wrapped,
    criterion_wrapped,
    criterion_xrh,
    eval_wrapped,
    infer_monomial_branches,
    make_wrapped,
    reduce_to_unit,
    unit_circle,
    xrh_valid_ms,
)
from cyclomap.errors import (
    ConstraintViolated,
    GcdHypothesis,
    HypothesisViolated,
    RootOnUnitCircle,
)
from cyclomap.search import SplitMix64, sample_rng
from cyclomap.unitary import (
    FamilySpec,
    UnitMapping,
    ext_field_for,
    family_b1,
    family_b2,
    family_b3,
    family_cb0,
    family_cbu,
    family_construct,
    family_cta,
    family_ctab,
    family_ctkuv,
    family_t4,
    family_t5,
)


def _random_rootfree(q, seed, count):
    """Yield (r, h) with gcd(r, q-1) = 1 and h root-free on the unit circle."""
    F = ext_field_for(q)
    unit = unit_circle(F, q)
    done = 0
    idx = 0
    while done < count:
        rng = sample_rng(seed, idx)
        idx += 1
        deg = 1 + rng.randrange(q)
        h = Polynomial(F, [rng.randrange(F.q) for _ in range(deg + 1)])
        if h.is_zero():
            continue
        r = 1 + rng.randrange(F.q - 1)
        if math.gcd(r, q - 1) != 1:
            continue
        if any(h.eval(x) == 0 for x in unit):
            continue
        done += 1
        yield F, unit, r, h


# -- construction ----------------------------------------------------------------

def test_make_wrapped_validates_roots():
    F = ext_field_for(5)
    unit = unit_circle(F, 5)
    zeta = unit.generator
    h = Polynomial.from_terms(F, {1: 1, 0: F.neg(zeta)})  # x - zeta
    with pytest.raises(RootOnUnitCircle):
        make_wrapped(5, 1, h, field=F, unit=unit)
    ok = make_wrapped(5, 1, Polynomial(F, (1,)), field=F, unit=unit)  # h = 1
    assert eval_wrapped(ok, 0) == 0
    with pytest.raises(ConstraintViolated):
        make_wrapped(7, 1, Polynomial(F, (1,)), field=F)


def test_eval_wrapped_is_power_times_h():
    for F, unit, r, h in _random_rootfree(5, 999, 5):
        wm = make_wrapped(5, r, h, field=F, unit=unit)
        for x in range(F.q):
            y = F.pow(x, 4) if x else 0
            expected = 0 if x == 0 else F.mul(F.pow(x, r), h.eval(y))
            assert eval_wrapped(wm, x) == expected


def test_reduce_to_unit_pointwise():
    F = ext_field_for(5)
    unit = unit_circle(F, 5)
    h = Polynomial.from_terms(F, {0: 1, 1: F.from_int(2)})  # 1 + 2x, no unit roots
    wm = make_wrapped(5, 1, h, field=F, unit=unit)
    g = reduce_to_unit(wm)
    for x in unit:
        assert g(x) == F.mul(F.pow(x, 1), F.pow(h.eval(x), 4))
        assert unit.contains(g(x))  # g maps the circle into itself


def test_classify_wrapped_matches_direct_evaluation():
    for F, unit, r, h in _random_rootfree(5, 4242, 10):
        wm = make_wrapped(5, r, h, field=F, unit=unit)
        fast = classify_wrapped(wm)
        fibers = {}
        for x in range(1, F.q):
            y = eval_wrapped(wm, x)
            fibers[y] = fibers.get(y, 0) + 1
        from collections import Counter

        assert dict(Counter(fibers.values())) == fast.histogram
        fast.check_consistency()


# -- branch inference ---------------------------------------------------------------

def test_infer_monomial_branches_binomial():
    # h = 1 + a*x^(u+t) reduces to scales (1/a, -1/a) and exponent r-u
    q = 13
    F = ext_field_for(q)
    unit = unit_circle(F, q)
    t = (q + 1) // 2
    a = unit.element(2)
    u, r = 1, 3  # gcd(q+1, u+t) = 2 and (-a)^7 = -1, so h is root-free
    h = Polynomial.from_terms(F, {0: 1, u + t: a})
    wm = make_wrapped(q, r, h, field=F, unit=unit)
    bm = infer_monomial_branches(reduce_to_unit(wm), 2)
    assert bm is not None
    inv_a = F.inv(a)
    assert bm.scales == (inv_a, F.neg(inv_a))
    for i in range(2):
        assert (bm.exponents[i] - (r - u)) % t == 0


def test_infer_power_map_any_index():
    q = 5
    F = ext_field_for(q)
    unit = unit_circle(F, q)
    wm = make_wrapped(q, 3, Polynomial(F, (1,)), field=F, unit=unit)
    g = reduce_to_unit(wm)
    for ell in (1, 2, 3, 6):
        bm = infer_monomial_branches(g, ell)
        assert bm is not None
        # the (scale, exponent) pair is only unique up to (s*z^-ti, e+t);
        # the evaluated map and the base branch are canonical
        assert bm.scales[0] == 1
        t = (q + 1) // ell
        assert all((e - 3) % t == 0 for e in bm.exponents)
        for x in unit:
            assert bm.eval(x) == g(x)


def test_infer_rejects_non_monomial_table():
    q = 5
    F = ext_field_for(q)
    unit = unit_circle(F, q)
    table = [unit.element(k) for k in range(q + 1)]  # identity map
    # break A_0: points 1, z^2, z^4 now map to 1, z^2, z^2 — the ratio
    # g(z^2*x)/g(x) is inconsistent across the coset
    table[4] = unit.element(2)
    g = UnitMapping(unit, table)
    assert infer_monomial_branches(g, 2) is None
    # identity itself is monomial for every index
    ident = UnitMapping(unit, [unit.element(k) for k in range(q + 1)])
    assert infer_monomial_branches(ident, 2) is not None


def test_round_trip_branch_form_equals_g():
    rng = SplitMix64(6060)
    q = 11
    F = ext_field_for(q)
    unit = unit_circle(F, q)
    t = (q + 1) // 2
    hits = 0
    for j in range(q + 1):
        a = unit.element(j)
        for u in range(t):
            h = Polynomial.from_terms(F, {0: 1, u + t: a})
            try:
                wm = make_wrapped(q, 3, h, field=F, unit=unit)
            except RootOnUnitCircle:
                continue
            g = reduce_to_unit(wm)
            bm = infer_monomial_branches(g, 2)
            assert bm is not None
            for x in unit:
                assert bm.eval(x) == g(x)
            hits += 1
    assert hits > 10


# -- criteria -----------------------------------------------------------------------

def test_criterion_wrapped_needs_coprime_r():
    F = ext_field_for(5)
    unit = unit_circle(F, 5)
    wm = make_wrapped(5, 2, Polynomial(F, (1,)), field=F, unit=unit)
    with pytest.raises(GcdHypothesis):
        criterion_wrapped(wm, 2)


def test_criterion_wrapped_oracle_equivalence_small():
    # zero mismatches against the full-plane oracle; the criterion only
    # touches the q+1 unit-circle points
    for q in (5, 7):
        for F, unit, r, h in _random_rootfree(q, 7 * q, 40):
            wm = make_wrapped(q, r, h, field=F, unit=unit)
            oracle = classify_wrapped(wm).valid_ms
            for m in range(1, q + 2):
                assert criterion_wrapped(wm, m).holds == (m in oracle)


def test_criterion_wrapped_unit_paths_agree_with_oracle_path():
    # monomial-branch path (two-branch and equal-multiplicity) vs oracle path
    q = 5
    F = ext_field_for(q)
    unit = unit_circle(F, q)
    t = (q + 1) // 2
    for j in range(q + 1):
        a = unit.element(j)
        for u in range(t):
            for r in (1, 3, 5, 7):
                if math.gcd(r, q - 1) != 1:
                    continue
                h = Polynomial.from_terms(F, {0: 1, u + t: a})
                try:
                    wm = make_wrapped(q, r, h, field=F, unit=unit)
                except RootOnUnitCircle:
                    continue
                for m in range(1, q + 2):
                    via_l2 = criterion_wrapped(wm, m, ell=2)
                    via_oracle = criterion_wrapped(wm, m)
                    via_equal = criterion_wrapped(wm, m, ell=q + 1)
                    assert via_l2.holds == via_oracle.holds == via_equal.holds


def test_permutation_monomial(f13):
    F = ext_field_for(13)
    unit = unit_circle(F, 13)
    wm = make_wrapped(13, 5, Polynomial(F, (1,)), field=F, unit=unit)
    assert math.gcd(5, 168) == 1
    v = criterion_wrapped(wm, 1)
    assert v.holds


def test_criterion_xrh_on_base_field(f13):
    # f = x^r * h(x^s) over F_13 itself, index 3 (subgroup of cube roots)
    h = Polynomial.from_terms(f13, {0: 1, 1: 2})
    for r in range(1, 13):
        valid = xrh_valid_ms(f13, r, h, 3)
        # direct oracle over F_13*
        s = 4
        fibers = {}
        for x in range(1, 13):
            y = f13.mul(f13.pow(x, r), h.eval(f13.pow(x, s)))
            fibers[y] = fibers.get(y, 0) + 1
        from collections import Counter

        hist = Counter(fibers.values())
        direct = {m for m in range(1, 13) if hist.get(m, 0) == 12 // m}
        assert valid == direct, r
        for m in range(1, 13):
            assert criterion_xrh(f13, r, h, 3, m).holds == (m in direct)


# -- families ------------------------------------------------------------------------

def test_family_validation_errors():
    with pytest.raises(ConstraintViolated):
        family_cbu(q=8, r=1, u=0, a=1)  # q must be odd
    F = ext_field_for(5)
    with pytest.raises(ConstraintViolated):
        family_cbu(q=5, r=2, u=0, a=1)  # gcd(r, q-1) != 1
    with pytest.raises(ConstraintViolated):
        family_cbu(q=5, r=1, u=9, a=1)  # u >= t
    with pytest.raises(ConstraintViolated):
        family_cbu(q=5, r=1, u=0, a=2)  # 2 not on the unit circle
    unit = unit_circle(F, 5)
    minus1 = F.neg(1)
    with pytest.raises(RootOnUnitCircle):
        family_cbu(q=5, r=1, u=0, a=minus1)  # h = 1 - x^t vanishes on the circle
    with pytest.raises(ConstraintViolated):
        family_ctkuv(q=7, r=1, u=1, v=0, k=1, a=1)  # 7 != 2 (mod 3)


def test_family_ctkuv_gcd_mismatch_not_applicable():
    q = 11
    F = ext_field_for(q)
    unit = unit_circle(F, q)
    t = (q + 1) // 3  # 4
    eps = unit.element(t)
    a = F.sub(1, eps)  # ratio = 1 in U
    # r = 7, u = 1: gcd(6, 4) = 2 != gcd(5, 4) = 1
    with pytest.raises(HypothesisViolated):
        family_ctkuv(q=q, r=7, u=1, v=0, k=1, a=a)


def test_family_cbu_cb0_exhaustive_small():
    for q in (5, 7):
        F = ext_field_for(q)
        unit = unit_circle(F, q)
        t = (q + 1) // 2
        checked = 0
        for fam in (family_cbu, family_cb0):
            for r in range(1, q * q):
                if math.gcd(r, q - 1) != 1:
                    continue
                for u in range(t):
                    for j in range(q + 1):
                        try:
                            res = fam(q=q, r=r, u=u, a=unit.element(j))
                        except (RootOnUnitCircle, ConstraintViolated):
                            continue
                        oracle = {
                            m
                            for m in classify_wrapped(res.wrapped).valid_ms
                            if m <= q + 1
                        }
                        assert res.predicted_ms == oracle, (fam.__name__, q, r, u, j)
                        checked += 1
        assert checked > 100


def test_family_trinomials_sampled():
    q = 7
    F = ext_field_for(q)
    minus1 = F.neg(1)
    four = F.from_int(4)
    a_cta = [a for a in range(1, F.q) if F.pow(a, q + 1) == four]
    a_ctab = [a for a in range(1, F.q) if F.pow(a, q - 1) == minus1]
    t = (q + 1) // 2
    checked = 0
    for r in (1, 5, 11, 25):
        for u in range(1, t):
            for v in (0, 1):
                for a in a_cta[:4]:
                    try:
                        res = family_cta(q=q, r=r, u=u, v=v, a=a)
                    except (RootOnUnitCircle, ConstraintViolated):
                        continue
                    oracle = {
                        m for m in classify_wrapped(res.wrapped).valid_ms if m <= q + 1
                    }
                    assert res.predicted_ms == oracle
                    checked += 1
                for a in a_ctab[:3]:
                    target = F.sub(1, F.mul(a, a))
                    bs = [b for b in range(1, F.q) if F.pow(b, q + 1) == target]
                    for b in bs[:3]:
                        try:
                            res = family_ctab(q=q, r=r, u=u, v=v, a=a, b=b)
                        except (RootOnUnitCircle, ConstraintViolated):
                            continue
                        oracle = {
                            m
                            for m in classify_wrapped(res.wrapped).valid_ms
                            if m <= q + 1
                        }
                        assert res.predicted_ms == oracle
                        checked += 1
    assert checked > 50


def test_family_ctkuv_q32_instance():
    q = 32
    F = ext_field_for(q)
    unit = unit_circle(F, q)
    zeta = unit.generator
    eps = unit.element(11)
    a = F.mul(F.inv(zeta), F.add(1, eps))
    res = family_ctkuv(q=q, r=6, u=2, v=0, k=1, a=a)
    assert res.predicted_ms == {3}
    assert res.details["z1"] == 1
    assert res.details["z2"] == (1 - 11) % 33
    assert 3 in classify_wrapped(res.wrapped).valid_ms


def test_family_b_shapes_predict_full_oracle():
    q = 5
    checked = 0
    for fam, kwargs_list in (
        (family_b1, [dict(ell=2, r=r, v=v, a=a) for r in (1, 2, 3, 8) for v in (0, 1) for a in (1, 3, 7)]),
        (family_b2, [dict(ell=3, r=r, u=u, v=0, a=a) for r in (1, 5) for u in (0, 1) for a in (1,)]),
        (family_b3, [dict(ell=1, r=r, v=0, a=a) for r in (1, 4) for a in (2, 5)]),
        (family_t4, [dict(r=r, a=a) for r in (1, 5, 7) for a in (2, 3, 9)]),
        (family_t5, [dict(r=r, a=a) for r in (1, 5) for a in (2, 3)]),
    ):
        for kwargs in kwargs_list:
            try:
                res = fam(q=q, **kwargs)
            except (RootOnUnitCircle, ConstraintViolated):
                continue
            oracle = classify_wrapped(res.wrapped).valid_ms
            assert res.predicted_ms == oracle, (fam.__name__, kwargs)
            checked += 1
    assert checked > 20


def test_family_b2_unit_constant_required():
    with pytest.raises(ConstraintViolated):
        family_b2(q=5, ell=2, r=1, u=0, v=0, a=2)  # 2 not on the circle


def test_family_construct_dispatch():
    F = ext_field_for(5)
    unit = unit_circle(F, 5)
    res = family_construct(FamilySpec("cbu", {"q": 5, "r": 1, "u": 1, "a": unit.element(2)}))
    assert res.family_id == "CBU"
    with pytest.raises(ValueError):
        family_construct(FamilySpec("nope", {}))


def test_family_predictions_are_generator_independent():
    # the CTKUV instance re-run with three different unit generators
    q = 32
    F = ext_field_for(q)
    base = unit_circle(F, q)
    outcomes = set()
    for j in (1, 2, 5):
        unit = unit_circle(F, q, generator=base.element(j))
        zeta = unit.generator
        eps = unit.element(11)
        a = F.mul(F.inv(zeta), F.add(1, eps))
        res = family_ctkuv(q=q, r=6, u=2, v=0, k=1, a=a)
        outcomes.add(frozenset(res.predicted_ms))
        assert 3 in classify_wrapped(res.wrapped).valid_ms
    assert outcomes == {frozenset({3})}
