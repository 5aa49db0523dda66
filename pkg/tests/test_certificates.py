from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from conelab.certificates import (
    CertificateRefusedError,
    OutOfTheoremScopeError,
    SingularParameterError,
    build_clique_certificate_odd,
    build_colouring_certificate_even,
    build_colouring_certificate_odd,
    check_parameter_identities,
    chromatic_upper_colouring,
    colouring_certificate,
    cone_parameters,
    kneser_embedding,
    theorem_value,
)
from conelab.chromatic import chromatic_number
from conelab.cones import cone, generalized_cone
from conelab.graph import InvalidParameterError, complete, cycle, generate, kneser
from conelab.ratlp import FractionalColouring, fractional_chromatic, verify_fractional_colouring

C7SQ = generate("circulant", [7, 1, 2])


def theorem_oracle(cg, ch, n):
    """Direct evaluation of the closed form, written independently of cone_parameters."""
    S = sum(F(cg - 1) ** k for k in range(n))
    if n % 2 == 0:
        return cg + 1 / S
    return cg + ch / (ch * S + 1 - ch)


rationals = st.builds(lambda p, q: F(p, q), st.integers(2, 30), st.integers(1, 6)).filter(lambda x: x >= 2)


def test_parameter_examples():
    p = cone_parameters(3, 2, 3)
    assert p.tau_prime == F(1, 13)
    assert p.alpha == [F(4, 13), F(2, 13), F(1, 13)]
    assert cone_parameters(F(5, 2), 2, 3).tau_prime == F(2, 17)
    for cg in (3, F(5, 2), F(7, 3)):
        p = cone_parameters(cg, 2, 1)
        assert p.tau_prime == 1
        assert theorem_value(cg, 2, 1).value == cg + 2


def test_theorem_examples():
    assert theorem_value(3, 2, 2).value == F(10, 3)
    assert theorem_value(3, 2, 3).value == F(41, 13)
    assert theorem_value(3, 3, 3).value == F(60, 19)
    assert theorem_value(F(5, 2), 2, 2).value == F(29, 10)
    with pytest.raises(OutOfTheoremScopeError):
        theorem_value(F(5, 2), 3, 3)


@settings(max_examples=200, deadline=None)
@given(rationals, st.integers(1, 9), st.data())
def test_theorem_value_matches_oracle(cg, n, data):
    ch = data.draw(st.sampled_from([F(1), F(2), F(5, 2), F(3), cg]).filter(lambda x: x <= cg))
    assert theorem_value(cg, ch, n).value == theorem_oracle(cg, ch, n)


@settings(max_examples=200, deadline=None)
@given(rationals, st.integers(1, 9), st.data())
def test_identities_hold(cg, n, data):
    ch = data.draw(st.sampled_from([F(1), F(2), F(5, 2), F(3), cg]).filter(lambda x: x <= cg))
    p = cone_parameters(cg, ch, n)
    rep = check_parameter_identities(p)
    assert rep.ok, rep.failed
    assert all(a > 0 for a in p.alpha)
    assert p.alpha[0] >= p.alpha[-1]


@pytest.mark.parametrize("cg,ch,n", [(3, 2, 3), (F(7, 3), 2, 5), (F(5, 2), F(5, 2), 7)])
def test_identity_examples(cg, ch, n):
    assert check_parameter_identities(cone_parameters(cg, ch, n)).ok


def test_scaled_pattern_parameters():
    p = cone_parameters(3, 2, 3, s=4, t=2)
    assert (p.s, p.t) == (4, 2)
    assert check_parameter_identities(p).ok
    with pytest.raises(InvalidParameterError):
        cone_parameters(3, 2, 3, s=5, t=2)


def test_parameter_errors():
    with pytest.raises(InvalidParameterError):
        cone_parameters(F(3, 2), 1, 3)
    with pytest.raises(InvalidParameterError):
        cone_parameters(3, F(1, 2), 3)
    p = cone_parameters(2, 2, 3)
    with pytest.raises(SingularParameterError):
        p.require_delta()
    assert theorem_value(2, 2, 3).value == 2 + F(2, 5)


def test_delta_sign():
    assert cone_parameters(3, 2, 3).negative_deltas == []
    assert cone_parameters(F(5, 2), 2, 3).negative_deltas == []
    # equal fractional chromatic numbers force the top delta below zero
    for cg in (3, F(5, 2), F(10, 3)):
        for n in (3, 5, 7):
            p = cone_parameters(cg, cg, n)
            assert p.negative_deltas == [n - 1]
    assert cone_parameters(3, 3, 3).delta[2] == F(-2, 19)


@pytest.mark.parametrize("G,H,n,total", [
    (complete(3), complete(2), 3, F(41, 13)),
    (cycle(5), complete(2), 3, F(93, 34)),
    (complete(3), complete(3), 3, F(60, 19)),
    (complete(3), complete(2), 5, theorem_oracle(3, 2, 5)),
])
def test_clique_certificate(G, H, n, total):
    lg, lh = fractional_chromatic(G), fractional_chromatic(H)
    c = build_clique_certificate_odd(G, H, n, lg.dual, lh.dual)
    assert c.total == total
    assert all(w >= 0 for w in c.clique.weights)
    assert c.verify().valid


def test_clique_certificate_uniform_weights():
    c = build_clique_certificate_odd(complete(3), complete(2), 3, [1, 1, 1], [1, 1])
    assert c.total == F(41, 13) and c.verify().valid
    c = build_clique_certificate_odd(cycle(5), complete(2), 3, [F(1, 2)] * 5, [1, 1])
    assert c.total == F(93, 34) and c.verify().valid


def test_clique_certificate_refusals():
    with pytest.raises(CertificateRefusedError):
        build_clique_certificate_odd(complete(3), complete(2), 3, [1, 1, F(1, 2)], [1, 1])
    with pytest.raises(CertificateRefusedError):
        build_clique_certificate_odd(complete(3), complete(2), 2, [1, 1, 1], [1, 1])
    with pytest.raises(OutOfTheoremScopeError):
        build_clique_certificate_odd(cycle(5), complete(3), 3, [F(1, 2)] * 5, [1, 1, 1])


def _singletons(k):
    return [(frozenset({i}), F(1)) for i in range(k)]


@pytest.mark.parametrize("G,s,t,n", [
    (complete(3), 3, 1, 2), (cycle(5), 5, 2, 2), (complete(3), 3, 1, 4), (complete(3), 6, 2, 2),
])
def test_even_colouring_certificate(G, s, t, n):
    lp = fractional_chromatic(G)
    c = build_colouring_certificate_even(G, s, t, n, lp.primal)
    v = c.verify()
    assert v.valid and v.exact_cover and v.min_coverage == 1
    assert c.total == theorem_oracle(lp.value, 1, n)


def test_even_certificate_sizes_and_names():
    c = build_colouring_certificate_even(complete(3), 3, 1, 2, _singletons(3))
    assert c.total == F(10, 3) and c.cone.n == 15
    assert c.colouring.names[-1] == "O"
    c = build_colouring_certificate_even(cycle(5), 5, 2, 2, fractional_chromatic(cycle(5)).primal)
    assert c.cone.n == 65 and c.total == F(29, 10)
    assert c.to_json()["verified"]["exact_cover"]


def test_even_certificate_refusals():
    with pytest.raises(CertificateRefusedError):
        build_colouring_certificate_even(complete(3), 5, 2, 2, _singletons(3))
    with pytest.raises(CertificateRefusedError):
        build_colouring_certificate_even(complete(3), 3, 1, 2, [(frozenset({0, 1}), F(1)), (frozenset({2}), F(2))])
    with pytest.raises(CertificateRefusedError):
        build_colouring_certificate_even(complete(3), 3, 1, 3, _singletons(3))


@pytest.mark.parametrize("G,s,t,n", [
    (complete(3), 2, 1, 3), (cycle(5), 2, 1, 3), (complete(3), 2, 1, 5), (complete(4), 3, 1, 3),
    (complete(4), 5, 2, 3), (complete(3), 4, 2, 3),
])
def test_odd_colouring_certificate(G, s, t, n):
    lp = fractional_chromatic(G)
    c = build_colouring_certificate_odd(G, s, t, n, lp.primal)
    v = c.verify()
    assert c.params.negative_deltas == []
    assert v.valid and v.exact_cover
    assert c.total == theorem_oracle(lp.value, F(s, t), n)


def test_odd_certificate_coverage_exact_even_with_negative_delta():
    c = build_colouring_certificate_odd(complete(3), 3, 1, 3, _singletons(3))
    assert c.total == F(60, 19)
    assert all(x == 1 for x in c.colouring.coverage())
    v = c.verify()
    assert not v.valid and v.negative_entry is not None


def test_odd_certificate_refusals():
    with pytest.raises(CertificateRefusedError):
        build_colouring_certificate_odd(complete(3), 3, 2, 3, _singletons(3))
    with pytest.raises(SingularParameterError):
        build_colouring_certificate_odd(complete(2), 2, 1, 3, _singletons(2))
    with pytest.raises(OutOfTheoremScopeError):
        build_colouring_certificate_odd(cycle(5), 3, 1, 3, fractional_chromatic(cycle(5)).primal)


def test_sandwich():
    for G, H in ((complete(3), complete(2)), (cycle(5), complete(2))):
        lg, lh = fractional_chromatic(G), fractional_chromatic(H)
        q = build_clique_certificate_odd(G, H, 3, lg.dual, lh.dual)
        c = build_colouring_certificate_odd(G, 2, 1, 3, lg.primal)
        assert q.total == c.total == theorem_value(lg.value, lh.value, 3).value


def test_general_pattern_by_pullback():
    c = colouring_certificate(cycle(5), cycle(5), 2)
    v = c.verify()
    assert v.valid and c.total == F(29, 10)
    c = colouring_certificate(complete(3), cycle(5), 3)
    v = c.verify()
    assert v.valid and c.total == theorem_oracle(3, F(5, 2), 3)
    assert c.cone.pattern_graph == cycle(5)


def test_kneser_embedding():
    e = kneser_embedding(cycle(5), 5, 2)
    assert e.status == "found" and e.scale == 1
    e = kneser_embedding(complete(3), 2, 1, max_scale=2)
    assert e.status == "not found at cap" and e.hom is None


def test_upper_colouring_examples():
    u = chromatic_upper_colouring(cycle(5), complete(2), 2)
    assert u.is_proper() and (u.k, u.k_prime) == (3, 0) and u.colours_used <= 4
    u = chromatic_upper_colouring(complete(3), complete(2), (1, 1))
    assert u.is_proper() and u.colours_used == 5 and u.bound == 6
    u = chromatic_upper_colouring(C7SQ, complete(2), 3)
    assert u.is_proper() and u.colours_used <= 5
    assert chromatic_number(u.cone.graph).chi == 5


@pytest.mark.parametrize("h", [(1, 2, 3), (2, 2, 2), (1, 1, 4), (3, 1, 2)])
def test_upper_colouring_mixed_heights(h):
    u = chromatic_upper_colouring(cycle(5), complete(3), h)
    assert u.is_proper() and u.colours_used <= u.bound


def test_upper_colouring_refuses():
    with pytest.raises(CertificateRefusedError):
        chromatic_upper_colouring(complete(2), complete(3), 2)
