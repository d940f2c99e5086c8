import pytest

from affcell.asymptotic import a_value
from affcell.coeff import LaurentHalf, NotDivisible
from affcell.hecke import HeckeElt, h_struct, ntilde, t_mul
from affcell.schur import (
    NotMaxRep,
    SchurElt,
    cell_generation_check,
    hecke_idempotent_check,
    iota_schur,
    order_compatibility_scan,
    realize_on_hecke,
    schur_mul,
    schur_ntilde,
    subsets,
)
from affcell.weyl import (
    compose,
    enumerate_elements,
    from_word,
    identity,
    is_max_rep,
    longest_element,
    partition_data,
    partitions,
    poincare_poly,
    simple,
)

q = LaurentHalf.q()
E = frozenset()
S1 = frozenset({1})


def test_realize_examples(cache2):
    s1, s0 = simple(2, 1), simple(2, 0)
    w = from_word(2, [1, 0])
    assert realize_on_hecke(cache2, schur_ntilde(E, E, w)) == ntilde(cache2, w)
    assert realize_on_hecke(cache2, schur_ntilde(S1, S1, s1)) == ntilde(cache2, s1)
    img = realize_on_hecke(cache2, schur_ntilde(S1, E, w))
    assert img == ntilde(cache2, w)
    assert t_mul(HeckeElt.basis_element(s1), img) == img.scale(q)
    with pytest.raises(NotMaxRep):
        schur_ntilde(S1, E, s0)


def test_schur_mul_examples(cache2):
    s1 = simple(2, 1)
    e = schur_ntilde(S1, S1, s1)
    assert schur_mul(cache2, e, e) == e
    a = schur_ntilde(E, E, s1)
    assert schur_mul(cache2, a, a) == a.scale(1 + q)
    assert schur_mul(cache2, schur_ntilde(E, S1, s1), schur_ntilde(E, E, s1)).is_zero()


def test_iota_schur_examples():
    s1, s0 = simple(2, 1), simple(2, 0)
    e = schur_ntilde(S1, S1, s1)
    assert iota_schur(e) == e
    a = schur_ntilde(S1, E, compose(s1, s0))
    assert iota_schur(a) == schur_ntilde(E, S1, compose(s0, s1))
    b = a + schur_ntilde(E, E, s0).scale(q)
    assert iota_schur(iota_schur(b)) == b


@pytest.mark.parametrize("n,P", [(n, P) for n in (2, 3) for P in subsets(range(1, n))])
def test_idempotents(n, P, cache2, cache3):
    cache = cache2 if n == 2 else cache3
    rep = hecke_idempotent_check(cache, P)
    assert rep["ok"], rep


def test_idempotent_values(cache3):
    rep = hecke_idempotent_check(cache3, [1, 2])
    assert rep["p_P"] == str(LaurentHalf.from_q_coeffs([1, 2, 2, 1]))
    wP = longest_element(3, [1, 2])
    assert cache3.product(wP, wP) == {wP: poincare_poly(3, [1, 2])}


def _schur_pairs(n, L):
    fin = range(1, n)
    for R in subsets(fin):
        for Q in subsets(fin):
            us = [u for u in enumerate_elements(n, L) if is_max_rep(Q, u, R)]
            for P in subsets(fin):
                vs = [v for v in enumerate_elements(n, L) if is_max_rep(R, v, P)]
                for u in us:
                    for v in vs:
                        yield Q, R, P, u, v


def test_divisibility_and_maximal_support(cache3):
    count = 0
    for Q, R, P, u, v in _schur_pairs(3, 4):
        prod = schur_mul(cache3, schur_ntilde(Q, R, u), schur_ntilde(R, P, v))
        for (Q2, P2, w), c in prod.terms.items():
            assert (Q2, P2) == (Q, P) and is_max_rep(Q, w, P)
            assert c.subring().in_Zq
        count += 1
    assert count > 100


def test_iota_anti_automorphism(cache3):
    for Q, R, P, u, v in _schur_pairs(3, 3):
        a, b = schur_ntilde(Q, R, u), schur_ntilde(R, P, v)
        assert iota_schur(schur_mul(cache3, a, b)) == schur_mul(cache3, iota_schur(b), iota_schur(a))


def test_idempotent_acts_as_identity(cache3):
    for Q, R, P, u, v in _schur_pairs(3, 4):
        x = schur_ntilde(Q, R, u)
        eQ = schur_ntilde(Q, Q, longest_element(3, Q))
        eR = schur_ntilde(R, R, longest_element(3, R))
        assert schur_mul(cache3, eQ, x) == x
        assert schur_mul(cache3, x, eR) == x


def test_gamma_lift(cache3, cert3):
    reps = {lam: partition_data(lam).w_lambda for lam in partitions(3)}
    checked = 0
    for Q, R, P, u, v in _schur_pairs(3, 3):
        lR = longest_element(3, R).length
        pR = poincare_poly(3, R)
        for w, h in h_struct(cache3, u, v).items():
            lam = next((l for l, r in reps.items() if cert3.two_sided_equivalent(w, r)), None)
            if lam is None:
                continue
            a = a_value(lam)
            hS = (h * LaurentHalf.monomial(lR)).divexact(pR)
            assert hS.coeff(a - lR) == h.coeff(a)
            checked += 1
    assert checked > 50


def test_division_failure_is_reported():
    with pytest.raises(NotDivisible):
        (q + 2).divexact(poincare_poly(2, [1]))


def test_cell_generation_trivial_and_n2(cache2, cert2):
    rep = cell_generation_check(cache2, cert2, (2,), 6)
    assert rep["violations"] == []
    assert rep["members"] > 0 and rep["unverified_at_this_bound"] == []
    found = {tuple(v["w"]) for v in rep["verified"]}
    assert simple(2, 1).window in found and (-1, 4) in found
    rep = cell_generation_check(cache2, cert2, (1, 1), 6)
    assert rep["violations"] == [] and identity(2).window in {tuple(v["w"]) for v in rep["verified"]}


@pytest.mark.parametrize("lam", partitions(3))
def test_cell_generation_n3(cache3, cert3, lam):
    rep = cell_generation_check(cache3, cert3, lam, 5)
    assert rep["violations"] == []
    assert len(rep["verified"]) + len(rep["unverified_at_this_bound"]) == rep["members"]
    assert partition_data(lam).w_lambda.window in {tuple(v["w"]) for v in rep["verified"]}


def test_order_compatibility(cache3, cert3):
    rep = order_compatibility_scan(cache3, cert3, 4)
    assert rep["checked"] > 0 and rep["violations"] == []


def test_json():
    a = schur_ntilde(S1, E, from_word(2, [1, 0])).scale(q)
    js = a.to_json()
    assert js["terms"][0]["Q"] == [1] and js["terms"][0]["P"] == []
    assert str(SchurElt(2)) == "0"
