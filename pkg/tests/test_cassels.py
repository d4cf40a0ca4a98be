import random

import pytest

from noncongruent.arith import Place, REAL_PLACE, factor_squarefree, legendre
from noncongruent.cassels import (
    closed_form_pairing,
    local_pairing,
    local_point_search,
    pairing_matrix,
    pairing_places,
    pairing_product,
    tangent_data,
    torsor,
)
from noncongruent.criteria import distinguished_divisor
from noncongruent.errors import NotRankTwo
from noncongruent.matrices import SelmerTriple, selmer_elements
from noncongruent.reps import rep_2mu2_tau2


def test_torsor_coefficients_exact():
    ts = torsor(SelmerTriple(17, 1, 17), 17)
    assert ts.h1 == (-17, 0, 1, -17)
    assert ts.h2 == (-17, -17, 0, 17)
    assert ts.h3 == (34, 17, -1, 0)
    # the three forms always sum to zero
    for i in range(4):
        assert ts.h1[i] + ts.h2[i] + ts.h3[i] == 0


def test_trivial_torsor_has_rational_point():
    ts = torsor(SelmerTriple(1, 1, 1), 17)
    pt = (0, 1, 1, 1)
    for form in ts.forms():
        assert sum(c * x * x for c, x in zip(form, pt)) == 0
    assert local_point_search(ts, REAL_PLACE).coords == pt


def test_tangent_data_vanishing():
    for n in (17, 34, 161, 322):
        t1, t3 = tangent_data(factor_squarefree(n))
        for t in (t1, t3):
            assert sum(c * x * x for c, x in zip(t.form, t.point)) == 0
            assert sum(c * x for c, x in zip(t.linear, t.point)) == 0


def test_closed_form_examples():
    sf = factor_squarefree(17)
    assert closed_form_pairing(sf, 17, -3) == -1
    sf = factor_squarefree(34)
    assert closed_form_pairing(sf, 17, None) == 1
    sf = factor_squarefree(161)
    assert closed_form_pairing(sf, 23, -9) == 1


def test_local_pairing_examples():
    sf17 = factor_squarefree(17)
    assert local_pairing(sf17, Place(17)) == -1  # (3/17)
    assert local_pairing(sf17, Place(2)) == 1
    sf34 = factor_squarefree(34)
    assert local_pairing(sf34, Place(2)) == 1


def test_local_pairing_real_place_sign():
    # even case with negative distinguished divisor: the real factor is -1
    sf = factor_squarefree(322)
    assert distinguished_divisor(sf) == -7
    assert local_pairing(sf, REAL_PLACE) == -1
    assert pairing_product(sf) == closed_form_pairing(sf, -7, None) == -1


def test_local_pairing_rejects_good_places():
    # factors away from 2n are never evaluated (they are +1 by screening)
    sf = factor_squarefree(17)
    with pytest.raises(ValueError):
        local_pairing(sf, Place(5))


def test_pairing_matrix_examples():
    gram, nondeg = pairing_matrix(factor_squarefree(17))
    assert gram == ((1, -1), (-1, 1)) and nondeg
    gram, nondeg = pairing_matrix(factor_squarefree(34))
    assert gram == ((1, 1), (1, 1)) and not nondeg
    with pytest.raises(NotRankTwo):
        pairing_matrix(factor_squarefree(41 * 73))  # s2 = 4 here


def test_point_search_solvable_matches_selmer_membership():
    # for n = 17 the torsor of (1,17,17) is solvable at 17 and 2;
    # a non-Selmer triple must fail at some place
    sf = factor_squarefree(17)
    pure = selmer_elements(sf)
    places = [REAL_PLACE, Place(2), Place(17)]
    for lam in pure:
        ts = torsor(lam, 17)
        for v in places:
            assert local_point_search(ts, v) is not None
    # torsion translates of pure elements stay everywhere solvable
    translate = SelmerTriple(-1, 17, -17)
    ts = torsor(translate, 17)
    assert all(local_point_search(ts, v) is not None for v in places)
    # a genuinely non-Selmer triple fails 2-adically
    ts = torsor(SelmerTriple(2, 1, 2), 17)
    assert local_point_search(ts, Place(2)) is None


def test_real_place_solvability_is_sign_of_d2():
    for lam, solvable in [
        (SelmerTriple(1, 1, 1), True),
        (SelmerTriple(-1, 1, -1), True),
        (SelmerTriple(1, -1, -1), False),
        (SelmerTriple(-1, -1, 1), False),
    ]:
        ts = torsor(lam, 17)
        assert (local_point_search(ts, REAL_PLACE) is not None) == solvable


def test_good_place_spot_check():
    # At good odd primes the local factor is +1: evaluate the tangent forms
    # at a certified local point and take the Hilbert symbol directly.
    from noncongruent.arith import hilbert

    sf = factor_squarefree(17)
    d = distinguished_divisor(sf)
    t1, t3 = tangent_data(sf)
    ts = torsor(SelmerTriple(1, 17, 17), 17)
    good = (3, 5, 7, 11, 13, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79)
    checked = 0
    for p in good:
        pt = local_point_search(ts, Place(p))
        assert pt is not None  # good reduction is always solvable
        coords = pt.coords
        l1 = sum(c * x for c, x in zip(t1.linear, coords))
        l3 = sum(c * x for c, x in zip(t3.linear, coords))
        if l1 % p == 0 or l3 % p == 0:
            continue  # a tangent vanished at this particular point
        assert hilbert(l1 * l3, d, Place(p)) == 1
        checked += 1
    assert checked >= 15


def _certified_points(ts, p, max_level):
    """All Hensel-certified points mod p^m for m <= max_level (white box)."""
    from noncongruent.cassels import (
        _certified,
        _choose_pair,
        _level_one,
        _lift_children,
        _minimize_at_p,
    )

    if p == 2:
        h1, h3 = list(ts.h1), list(ts.h3)
        scales = [0, 0, 0, 0]
    else:
        forms, scales = _minimize_at_p(ts, p)
        h1, h3 = _choose_pair(forms, p)
    frontier = _level_one(h1, h3, p)
    mod = p
    for m in range(1, max_level + 1):
        for x in frontier:
            if _certified(h1, h3, x, p, m) is not None:
                coords = tuple((x[i] * p ** scales[i]) % p**m for i in range(4))
                yield coords, m
        nxt = []
        for x in frontier:
            nxt.extend(_lift_children(h1, h3, x, p, mod))
        frontier = list(dict.fromkeys(nxt))
        mod *= p


def _factor_at_searched_point(sf, v, d, lam):
    """Local factor evaluated at search-found points instead of the proof's.

    Returns None when no certified point determines the tangent product's
    unit class (the caller skips such places).
    """
    from noncongruent.arith import hilbert, hilbert2_from_parts
    from noncongruent.cassels import torsor as make_torsor

    t1, t3 = tangent_data(sf)
    p = v.p
    margin = 3 if p == 2 else 1
    for coords, m in _certified_points(make_torsor(lam, sf.n), p, 9 if p == 2 else 4):
        value = (
            sum(c * x for c, x in zip(t1.linear, coords))
            * sum(c * x for c, x in zip(t3.linear, coords))
        ) % p**m
        val = 0
        while val < m and value % p == 0:
            value //= p
            val += 1
        if m - val < margin:
            continue
        if p == 2:
            return hilbert2_from_parts(val, value % 8, d)
        return hilbert(p**val * value, d, v)
    return None


def test_point_choice_independence_of_product():
    # replacing the explicit proof points by certified searched points must
    # not change the total product (individual factors may differ)
    from noncongruent.arith import squarefree_part
    from noncongruent import matrices

    factors_checked = 0
    complete_cases = 0
    for n in range(1, 400, 8):  # odd, 1 mod 8
        if squarefree_part(n) != n:
            continue
        sf = factor_squarefree(n)
        if sf.k == 0 or not sf.eligibility or matrices.s2(sf) != 2:
            continue
        d = distinguished_divisor(sf)
        mu = rep_2mu2_tau2(n, d).mu
        lam = SelmerTriple(1, n, n)
        product = 1
        complete = True
        for v in [Place(2)] + [Place(p) for p in sf.primes]:
            factor = _factor_at_searched_point(sf, v, d, lam)
            if factor is None:
                complete = False
                break
            factors_checked += 1
            product *= factor
        if complete:
            complete_cases += 1
            assert product == closed_form_pairing(sf, d, mu), n
    assert complete_cases >= 5 and factors_checked >= 12


def test_pairing_product_matches_closed_form_small():
    from noncongruent.arith import squarefree_part
    from noncongruent import matrices

    for n in range(1, 500):
        if n % 8 not in (1, 2) or squarefree_part(n) != n:
            continue
        sf = factor_squarefree(n)
        if sf.k == 0 or not sf.eligibility or matrices.s2(sf) != 2:
            continue
        d = distinguished_divisor(sf)
        mu = None if sf.is_even else rep_2mu2_tau2(n, d).mu
        assert pairing_product(sf) == closed_form_pairing(sf, d, mu), n
