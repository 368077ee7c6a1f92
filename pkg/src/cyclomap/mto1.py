"""Many-to-one classification: brute-force oracle and closed-form criteria.

A mapping f on a finite set A of size k*m + r (0 <= r < m) is m-to-1 when
exactly k image points have exactly m preimages; the r leftover domain
points form the exceptional set.  `classify_*` functions count preimages
directly (the oracle); the `criterion_*` functions decide the same question
from branch data alone and are differentially verified against the oracle.
"""

from __future__ import annotations

import math
from collections import Counter
from typing import Callable, NamedTuple

from .cyclotomic import BranchMap, Polynomial, multiplicative_group
from .errors import (
    DomainElementOutsideField,
    HypothesisViolated,
    UnequalGcds,
    WrongIndex,
)

ZERO_KEY = -1  # fiber key for the fixed point 0 when classifying over all of F_q


class Mto1Report:
    """Multiplicity histogram, admissible m values, and exceptional sets."""

    __slots__ = ("domain_size", "histogram", "valid_ms", "_pairs_fn", "_order_key")

    def __init__(self, domain_size, histogram, valid_ms, pairs_fn, order_key):
        self.domain_size = domain_size
        self.histogram = histogram
        self.valid_ms = valid_ms
        self._pairs_fn = pairs_fn
        self._order_key = order_key

    def exceptional_of(self, m: int) -> tuple[int, ...]:
        """Domain elements whose fiber size differs from m, by ascending log."""
        if m not in self.valid_ms:
            raise ValueError(f"m={m} is not an admissible multiplicity")
        fibers = Counter(img for _, img in self._pairs_fn())
        out = [x for x, img in self._pairs_fn() if fibers[img] != m]
        out.sort(key=self._order_key)
        return tuple(out)

    def check_consistency(self):
        """Histogram identities implied by the definition; used by tests."""
        total = sum(mult * count for mult, count in self.histogram.items())
        assert total == self.domain_size
        for m in range(1, self.domain_size + 1):
            expected = self.histogram.get(m, 0) == self.domain_size // m
            assert (m in self.valid_ms) == expected
        for m in self.valid_ms:
            assert len(self.exceptional_of(m)) == self.domain_size % m

    def __repr__(self):
        return (
            f"Mto1Report(size={self.domain_size}, valid={sorted(self.valid_ms)})"
        )


def _valid_from_fibers(fiber_counts, domain_size) -> frozenset[int]:
    hist = Counter(fiber_counts)
    return frozenset(m for m, c in hist.items() if c == domain_size // m)


def classify_pairs(pairs, order_key=None) -> Mto1Report:
    """Oracle classification of explicit (element, image) pairs."""
    pairs = tuple(pairs)
    fibers = Counter(img for _, img in pairs)
    histogram = dict(Counter(fibers.values()))
    valid = _valid_from_fibers(fibers.values(), len(pairs))
    key = order_key or (lambda x: x)
    return Mto1Report(len(pairs), histogram, valid, lambda: pairs, key)


def classify_callable(fn: Callable[[int], int], domain, order_key=None) -> Mto1Report:
    return classify_pairs(((x, fn(x)) for x in domain), order_key)


def branch_map_fibers(bm: BranchMap) -> dict[int, int]:
    """Image-exponent -> preimage-count over the whole group (the oracle core)."""
    N = bm.decomp.ctx.order
    ell = bm.decomp.index
    rs = bm.exponents_mod
    las = bm.log_scales
    fibers: dict[int, int] = {}
    for k in range(N):
        e = (k * rs[k % ell] + las[k % ell]) % N
        fibers[e] = fibers.get(e, 0) + 1
    return fibers


def branch_map_valid_ms(bm: BranchMap, include_zero: bool = False) -> frozenset[int]:
    """Admissible m set by brute force; fast path for sweeps."""
    fibers = branch_map_fibers(bm)
    counts = list(fibers.values())
    size = bm.decomp.ctx.order
    if include_zero:
        counts.append(1)  # 0 maps to 0 and nothing else hits 0
        size += 1
    return _valid_from_fibers(counts, size)


def classify_branch_map(bm: BranchMap, include_zero: bool = False) -> Mto1Report:
    """Oracle classification of a branch map over its group (or group + 0).

    include_zero only makes sense on a full multiplicative group, where the
    map extends by 0 -> 0; branch constants are nonzero so nothing else
    maps to 0.
    """
    fibers = branch_map_fibers(bm)
    ctx = bm.decomp.ctx
    size = ctx.order + (1 if include_zero else 0)
    counts = list(fibers.values())
    if include_zero:
        counts.append(1)
    histogram = dict(Counter(counts))
    valid = _valid_from_fibers(counts, size)

    def pairs():
        for k in range(ctx.order):
            yield ctx.element(k), bm.eval_exp(k)
        if include_zero:
            yield 0, ZERO_KEY

    def order_key(x):
        return -1 if x == 0 else ctx.dlog(x)

    return Mto1Report(size, histogram, valid, lambda: tuple(pairs()), order_key)


def classify_polynomial(poly: Polynomial, domain: str | tuple = "fqstar") -> Mto1Report:
    """Oracle classification of a polynomial over F_q, F_q*, or an explicit set."""
    F = poly.field
    if domain == "fq":
        dom = range(F.q)
    elif domain == "fqstar":
        dom = range(1, F.q)
    else:
        dom = tuple(domain)
        for x in dom:
            if not F.contains(x):
                raise DomainElementOutsideField(f"{x} is not in {F!r}")

    def order_key(x):
        return -1 if x == 0 else F.dlog(x)

    return classify_callable(poly.eval, dom, order_key)


# ---------------------------------------------------------------------------
# Verdicts.
# ---------------------------------------------------------------------------

class CriterionVerdict(NamedTuple):
    applicable: bool
    holds: bool | None
    witness: str


def _yes(witness: str) -> CriterionVerdict:
    return CriterionVerdict(True, True, witness)


def _no(witness: str) -> CriterionVerdict:
    return CriterionVerdict(True, False, witness)


def _na(witness: str) -> CriterionVerdict:
    return CriterionVerdict(False, None, witness)


# ---------------------------------------------------------------------------
# Lifting from the unit group to the whole field.
# ---------------------------------------------------------------------------

def lift_to_full_field(fn, field, m: int, star_report=None,
                       star_valid=None) -> CriterionVerdict:
    """m-to-1 on F_q from m-to-1 on F_q*, for maps whose only root is 0.

    fn: BranchMap (over the full group), Polynomial, or callable on codes.
    Raises HypothesisViolated when f(0) != 0 or some nonzero root exists.
    """
    if isinstance(fn, BranchMap):
        evaluate = fn.eval
        zero_image = 0
        if star_valid is None and star_report is None:
            star_valid = branch_map_valid_ms(fn)
        # branch constants are nonzero, so no nonzero root can exist
    else:
        evaluate = fn.eval if isinstance(fn, Polynomial) else fn
        zero_image = evaluate(0)
        for x in range(1, field.q):
            if evaluate(x) == 0:
                raise HypothesisViolated(
                    f"nonzero root {x}: the map must vanish only at 0"
                )
    if zero_image != 0:
        raise HypothesisViolated("the map must fix 0")
    if star_valid is None:
        if star_report is None:
            star_report = classify_callable(evaluate, range(1, field.q))
        star_valid = star_report.valid_ms
    on_star = m in star_valid
    if m == 1:
        return _yes("bijective-star") if on_star else _no("not-1to1-on-star")
    if field.q % m == 0:
        return _no("m-divides-q")
    return _yes("star+m-not-dividing-q") if on_star else _no("not-mto1-on-star")


# ---------------------------------------------------------------------------
# Closed-form criteria.  Each mirrors one characterization exactly; the
# differential harness holds them to zero mismatches against the oracle.
# ---------------------------------------------------------------------------

def criterion_l2(bm: BranchMap, m: int) -> CriterionVerdict:
    """Two branches: m-to-1 on the group iff one of two clauses holds."""
    if bm.decomp.index != 2:
        raise WrongIndex("criterion_l2 needs exactly 2 branches")
    N = bm.decomp.ctx.order
    if not 1 <= m <= N:
        return _na("m-out-of-range")
    d0, d1 = bm.multiplicities
    off = bm._offsets
    s = bm.decomp.coset_size
    if m == d0 == d1:
        if off[0] % (2 * m) != off[1] % (2 * m):
            return _yes("equal-multiplicities, disjoint images")
        return _no("equal-multiplicities but images coincide")
    if m == d0 + d1:
        d = d0 if d0 <= d1 else d1
        if m % d:
            return _no("min multiplicity does not divide m")
        if off[0] % (2 * d) != off[1] % (2 * d):
            return _no("small image not contained in large image")
        if (s // (m - d)) * (m - 2 * d) >= m:
            return _no("size-bound s(m-2d)/(m-d) < m fails")
        return _yes("containment clause")
    return _no("m is neither the common multiplicity nor their sum")


def criterion_l3(bm: BranchMap, m: int) -> CriterionVerdict:
    """Three branches: m-to-1 on the group iff one of six clauses holds."""
    if bm.decomp.index != 3:
        raise WrongIndex("criterion_l3 needs exactly 3 branches")
    N = bm.decomp.ctx.order
    if not 1 <= m <= N:
        return _na("m-out-of-range")
    if m not in bm.m_candidates:
        return _no("m is not a sum of branch multiplicities (nor 2s)")
    d = bm.multiplicities
    off = bm._offsets
    s = bm.decomp.coset_size
    two_s = 2 * s
    total = d[0] + d[1] + d[2]
    for i, j, k in bm.sorted_permutations:
        di, dj, dk = d[i], d[j], d[k]
        if m == di == dj == dk:
            n1 = 3 * m
            if len({off[0] % n1, off[1] % n1, off[2] % n1}) == 3:
                return _yes("clause 1: equal multiplicities, distinct images")
        if m == dk and m == di + dj and dj % di == 0:
            n2 = 3 * di
            oi, oj, ok = off[i] % n2, off[j] % n2, off[k] % n2
            if oi == oj != ok and (s // dj) * (dj - di) < m:
                return _yes("clause 2: pair merges into the heavy branch's level")
        if m == di + dj and dj == dk and dj % di == 0:
            n3 = 3 * di
            if off[i] % n3 == off[j] % n3 == off[k] % n3:
                n3b = 3 * dj
                if off[j] % n3b != off[k] % n3b and (s // dj) * (dj - 2 * di) < m:
                    return _yes("clause 3: light branch inside both heavy images")
        if m == two_s and di == dj == dk == s:
            n4 = 3 * s
            oi, oj, ok = off[i] % n4, off[j] % n4, off[k] % n4
            if (oi == oj != ok) or (oi == ok != oj):
                return _yes("clause 4: full-size branches, one pair merged")
        if m == two_s and dj == dk == s:
            n5 = 3 * s
            if off[j] % n5 == off[k] % n5:
                n5b = 3 * d[i]
                if off[i] % n5b != off[j] % n5b:
                    return _yes("clause 5: two full-size branches merged")
        if m == total and dk % di == 0 and dk % dj == 0:
            if (
                off[i] % (3 * di) == off[k] % (3 * di)
                and off[j] % (3 * dj) == off[k] % (3 * dj)
                and (s // dk) * (2 * dk - di - dj) < m
            ):
                return _yes("clause 6: all three images nested")
    return _no("no clause satisfied")


def _def_mto1_on_values(values, m: int) -> bool:
    """Definition-style m-to-1 for a finite list of values."""
    n = len(values)
    if not 1 <= m <= n:
        return False
    hist = Counter(Counter(values).values())
    return hist.get(m, 0) == n // m


def criterion_2to1_any_l(bm: BranchMap) -> CriterionVerdict:
    """2-to-1 on the group for any number of branches."""
    ell = bm.decomp.index
    N = bm.decomp.ctx.order
    s = bm.decomp.coset_size
    d = bm.multiplicities
    off = bm._offsets
    if N < 2:
        return _na("group too small for m=2")
    if ell == 1:
        return _yes("power map with gcd 2") if d[0] == 2 else _no("gcd(r0, N) != 2")
    if ell == N:
        vals = [off[i] % ell for i in range(ell)]
        if _def_mto1_on_values(vals, 2):
            return _yes("singleton cosets: residues 2-to-1")
        return _no("singleton cosets: residues not 2-to-1")
    ones = [i for i in range(ell) if d[i] == 1]
    twos = [i for i in range(ell) if d[i] == 2]
    if len(ones) + len(twos) != ell:
        return _no("a branch has multiplicity > 2")
    if len(twos) == 0:
        if len(ones) % 2:
            return _no("odd count of bijective branches")
        if _def_mto1_on_values([off[i] % ell for i in ones], 2):
            return _yes("all branches bijective, images pair up")
        return _no("bijective-branch images do not pair up")
    if len(ones) == 0:
        if _def_mto1_on_values([off[i] % (2 * ell) for i in twos], 1):
            return _yes("all branches 2-to-1 with disjoint images")
        return _no("two 2-to-1 branch images collide")
    # mixed: bijective and 2-to-1 branches must not meet, then both clauses
    one_res = {off[i] % ell for i in ones}
    two_res = {off[t] % ell for t in twos}
    if one_res & two_res:
        return _no("a bijective image meets a 2-to-1 image")
    if len(ones) % 2:
        return _no("odd count of bijective branches (mixed case)")
    if not _def_mto1_on_values([off[i] % ell for i in ones], 2):
        return _no("bijective-branch images do not pair up (mixed case)")
    if not _def_mto1_on_values([off[t] % (2 * ell) for t in twos], 1):
        return _no("two 2-to-1 branch images collide (mixed case)")
    return _yes("mixed clause")


def criterion_equal_d(bm: BranchMap, m: int) -> CriterionVerdict:
    """m-to-1 when every branch has the same multiplicity d."""
    d_set = set(bm.multiplicities)
    if len(d_set) != 1:
        raise UnequalGcds("branch multiplicities are not all equal")
    d = d_set.pop()
    ell = bm.decomp.index
    N = bm.decomp.ctx.order
    s = bm.decomp.coset_size
    if not 1 <= m <= N:
        return _na("m-out-of-range")
    if m % d:
        return _no("common multiplicity does not divide m")
    m1 = m // d
    n = ell * d
    if not _def_mto1_on_values([bm._offsets[i] % n for i in range(ell)], m1):
        return _no("image residues are not (m/d)-to-1 over the branches")
    if s * (ell % m1) >= m:
        return _no("size-bound s(l mod (m/d)) < m fails")
    return _yes("equal-multiplicity clause")


# ---------------------------------------------------------------------------
# Specialized corollary criteria (fixed m or constants realized by
# polynomial values); each is checked against its parent criterion and the
# oracle in the test suite.
# ---------------------------------------------------------------------------

def _effective_q(bm: BranchMap) -> int:
    return bm.decomp.ctx.order + 1


def cor32(bm: BranchMap) -> CriterionVerdict:
    """2-to-1 with two branches."""
    if bm.decomp.index != 2:
        raise WrongIndex("cor32 needs 2 branches")
    d0, d1 = bm.multiplicities
    off = bm._offsets
    if d0 == d1 == 2 and off[0] % 4 != off[1] % 4:
        return _yes("both branches 2-to-1, images disjoint")
    if d0 == d1 == 1 and off[0] % 2 == off[1] % 2:
        return _yes("both branches bijective, images equal")
    return _no("neither 2-to-1 clause holds")


def cor33(bm: BranchMap) -> CriterionVerdict:
    """3-to-1 with two branches (group order + 1 >= 13)."""
    if bm.decomp.index != 2:
        raise WrongIndex("cor33 needs 2 branches")
    if _effective_q(bm) < 13:
        return _na("needs q >= 13")
    d0, d1 = bm.multiplicities
    off = bm._offsets
    if d0 == d1 == 3 and off[0] % 6 != off[1] % 6:
        return _yes("both branches 3-to-1, images disjoint")
    return _no("3-to-1 clause fails")


def cor42(bm: BranchMap) -> CriterionVerdict:
    """2-to-1 with three branches (group order + 1 >= 7)."""
    if bm.decomp.index != 3:
        raise WrongIndex("cor42 needs 3 branches")
    if _effective_q(bm) < 7:
        return _na("needs q >= 7")
    d = bm.multiplicities
    off = bm._offsets
    if d[0] == d[1] == d[2] == 2:
        if len({off[0] % 6, off[1] % 6, off[2] % 6}) == 3:
            return _yes("all branches 2-to-1, distinct images")
        return _no("images collide")
    for i, j, k in bm.sorted_permutations:
        if d[i] == d[j] == 1 and d[k] == 2:
            if off[i] % 3 == off[j] % 3 != off[k] % 3:
                return _yes("two bijective branches merge, 2-to-1 branch apart")
    return _no("no 2-to-1 clause holds")


def cor43(bm: BranchMap) -> CriterionVerdict:
    """3-to-1 with three branches (group order + 1 >= 19)."""
    if bm.decomp.index != 3:
        raise WrongIndex("cor43 needs 3 branches")
    if _effective_q(bm) < 19:
        return _na("needs q >= 19")
    d = bm.multiplicities
    off = bm._offsets
    if d[0] == d[1] == d[2] == 3:
        if len({off[0] % 9, off[1] % 9, off[2] % 9}) == 3:
            return _yes("all branches 3-to-1, distinct images")
    if off[0] % 3 == off[1] % 3 == off[2] % 3:
        if d[0] == d[1] == d[2] == 1:
            return _yes("all branches bijective, all images equal")
        for i, j, k in bm.sorted_permutations:
            if d[i] == 1 and d[j] == d[k] == 2:
                if off[j] % 6 != off[k] % 6:
                    return _yes("one bijective + two separated 2-to-1 branches")
    return _no("no 3-to-1 clause holds")


def cor53_branch_map(field, ell: int, a0: int, a1: int, r0: int, r1: int) -> BranchMap:
    """Map with branches (a0, r0), then (a1, r1) on every other coset."""
    from .cyclotomic import CosetDecomposition

    decomp = CosetDecomposition(multiplicative_group(field), ell)
    return BranchMap(decomp, [(a0, r0)] + [(a1, r1)] * (ell - 1))


def cor53(field, ell: int, a0: int, a1: int, r0: int, r1: int, m: int) -> CriterionVerdict:
    """Repeated-branch map: m-to-1 iff gcd(r1, ell*d) == m."""
    if ell < 3:
        return _na("needs at least 3 branches")
    if (field.q - 1) % ell:
        raise WrongIndex(f"{ell} does not divide q-1")
    s = (field.q - 1) // ell
    d0, d1 = math.gcd(r0, s), math.gcd(r1, s)
    if d0 != d1:
        raise HypothesisViolated("gcd(r0, s) must equal gcd(r1, s)")
    d = d0
    if field.pow(a0, s // d) != field.pow(a1, s // d):
        raise HypothesisViolated("a0^(s/d) must equal a1^(s/d)")
    if not 1 <= m <= field.q - 1:
        return _na("m-out-of-range")
    if math.gcd(r1, ell * d) == m:
        return _yes("gcd(r1, l*d) == m")
    return _no("gcd(r1, l*d) != m")


def cor54(bm: BranchMap) -> CriterionVerdict:
    """d-to-1 (m equal to the common multiplicity) iff residues all distinct."""
    d_set = set(bm.multiplicities)
    if len(d_set) != 1:
        raise UnequalGcds("branch multiplicities are not all equal")
    d = d_set.pop()
    ell = bm.decomp.index
    n = ell * d
    vals = [bm._offsets[i] % n for i in range(ell)]
    if len(set(vals)) == ell:
        return _yes(f"residues injective: map is {d}-to-1")
    return _no("residue collision: not d-to-1")


def cor55(bm: BranchMap, m: int) -> CriterionVerdict:
    """All branches bijective on their coset: m-to-1 iff residues m-to-1."""
    if set(bm.multiplicities) != {1}:
        raise HypothesisViolated("every gcd(r_i, s) must be 1")
    ell = bm.decomp.index
    s = bm.decomp.coset_size
    N = bm.decomp.ctx.order
    if not 1 <= m <= N:
        return _na("m-out-of-range")
    if not _def_mto1_on_values([bm._offsets[i] % ell for i in range(ell)], m):
        return _no("residues not m-to-1 over the branches")
    if s * (ell % m) >= m:
        return _no("size-bound fails")
    return _yes("bijective-branch clause")


def cor56_branch_map(q: int, n: int, ell: int) -> BranchMap:
    """The interpolation map with scales l*w^(i(l-1)) and exponents q^i."""
    from .cyclotomic import CosetDecomposition
    from .gf import make_field, split_prime_power

    qn = q ** n
    if (qn - 1) % (ell * ell):
        raise HypothesisViolated("needs q^n = 1 (mod l^2)")
    p, e = split_prime_power(q)
    field = make_field(p, e * n)
    decomp = CosetDecomposition(multiplicative_group(field), ell)
    s = decomp.coset_size
    omega_exp = s  # generator**s is a primitive ell-th root of unity
    scales = [
        field.mul(field.from_int(ell), field.exp_at((i * (ell - 1) * omega_exp) % (qn - 1)))
        for i in range(ell)
    ]
    return BranchMap(decomp, [(scales[i], q ** i) for i in range(ell)])


def cor56(q: int, n: int, ell: int, m: int) -> CriterionVerdict:
    """Frobenius-exponent map: m-to-1 iff (x*q^x mod l) is m-to-1 on [l]."""
    qn = q ** n
    if (qn - 1) % (ell * ell):
        raise HypothesisViolated("needs q^n = 1 (mod l^2)")
    if not 1 <= m < qn:
        return _na("m-out-of-range")
    s = (qn - 1) // ell
    vals = [(i * pow(q, i, ell)) % ell for i in range(ell)]
    if not _def_mto1_on_values(vals, m):
        return _no("(x q^x) mod l not m-to-1")
    if s * (ell % m) >= m:
        return _no("size-bound fails")
    return _yes("frobenius-exponent clause")


def cor61_branch_map(field, g0: Polynomial, g1: Polynomial, r0: int, r1: int) -> BranchMap:
    """Branch constants realized as g_i(+-1)^(2 d_i)."""
    from .cyclotomic import CosetDecomposition

    s = (field.q - 1) // 2
    d0, d1 = math.gcd(r0, s), math.gcd(r1, s)
    one = 1
    minus_one = field.neg(1)
    a0 = field.pow(g0.eval(one), 2 * d0)
    a1 = field.pow(g1.eval(minus_one), 2 * d1)
    decomp = CosetDecomposition(multiplicative_group(field), 2)
    return BranchMap(decomp, [(a0, r0), (a1, r1)])


def cor61(field, g0: Polynomial, g1: Polynomial, r0: int, r1: int, m: int) -> CriterionVerdict:
    """Log-free two-branch criterion with even-power constants."""
    if field.p == 2:
        raise HypothesisViolated("needs odd q")
    if g0.eval(1) == 0 or g1.eval(field.neg(1)) == 0:
        raise HypothesisViolated("g0(1) * g1(-1) must be nonzero")
    s = (field.q - 1) // 2
    d0, d1 = math.gcd(r0, s), math.gcd(r1, s)
    return _parity_clauses(d0, d1, r1, s, m, field.q - 1)


def cor62(q: int, n: int, h0: Polynomial, h1: Polynomial, r0: int, r1: int,
          m: int) -> CriterionVerdict:
    """Log-free two-branch criterion over GF(q^n) with base-field constants."""
    field = h0.field
    qn = q ** n
    if field.q != qn:
        raise HypothesisViolated("polynomials must live in GF(q^n)")
    if field.p == 2:
        raise HypothesisViolated("needs odd q")
    s = (qn - 1) // 2
    d0, d1 = math.gcd(r0, s), math.gcd(r1, s)
    d = min(d0, d1)
    if ((qn - 1) // (q - 1)) % (2 * d):
        raise HypothesisViolated("needs 2d | (q^n - 1)/(q - 1)")
    v0 = h0.eval(1)
    v1 = h1.eval(field.neg(1))
    for v in (v0, v1):
        if v == 0 or not field.in_subfield(v, q):
            raise HypothesisViolated("h_i(+-1) must be a nonzero base-field value")
    return _parity_clauses(d0, d1, r1, s, m, qn - 1)


def cor62_branch_map(q: int, n: int, h0: Polynomial, h1: Polynomial,
                     r0: int, r1: int) -> BranchMap:
    from .cyclotomic import CosetDecomposition

    field = h0.field
    a0 = h0.eval(1)
    a1 = h1.eval(field.neg(1))
    decomp = CosetDecomposition(multiplicative_group(field), 2)
    return BranchMap(decomp, [(a0, r0), (a1, r1)])


def _parity_clauses(d0: int, d1: int, r1: int, s: int, m: int, order: int) -> CriterionVerdict:
    # The realized constants have log == 0 mod 2*d_i, so the image conditions
    # reduce to divisibility of r1 by 2m resp. 2d.  (The weaker odd/even form
    # is equivalent only when s is odd and silently fails otherwise, e.g.
    # r0 = r1 = 2 over a 13-element field.)
    if not 1 <= m <= order:
        return _na("m-out-of-range")
    if m == d0 == d1 and r1 % (2 * m):
        return _yes("equal multiplicities, second exponent splits the levels")
    if m == d0 + d1:
        d = min(d0, d1)
        if m % d == 0 and r1 % (2 * d) == 0 and (s // (m - d)) * (m - 2 * d) < m:
            return _yes("containment clause")
    return _no("no realized-constant clause holds")


_SPECIALIZED = {
    "COR32": cor32,
    "COR33": cor33,
    "COR42": cor42,
    "COR43": cor43,
    "COR53": cor53,
    "COR54": cor54,
    "COR55": cor55,
    "COR56": cor56,
    "COR61": cor61,
    "COR62": cor62,
}


def specialized_criterion(variant: str, *args, **kwargs) -> CriterionVerdict:
    """Dispatch to one of the fixed-m / realized-constant criteria."""
    try:
        fn = _SPECIALIZED[variant.upper()]
    except KeyError:
        raise ValueError(f"unknown criterion variant {variant!r}") from None
    return fn(*args, **kwargs)
