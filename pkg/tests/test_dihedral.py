from itertools import product

import pytest
from hypothesis import given, strategies as st

from dirtile.dihedral import (
    DihedralElement,
    DimensionError,
    act_on_code,
    act_on_index,
    compose,
    conjugate,
    element_name,
    elements,
    multiply,
    negate,
    parse_element,
    sign,
)


def index_perm(m, flip, rot):
    """Oracle: the index permutation written out from r(i)=i+1, f(i)=m+1-i."""
    r = {i: i % m + 1 for i in range(1, m + 1)}
    f = {i: m + 1 - i for i in range(1, m + 1)}
    out = {}
    for i in range(1, m + 1):
        j = i
        for _ in range(rot):
            j = r[j]
        if flip:
            j = f[j]
        out[i] = j
    return out


@st.composite
def group_and_code(draw, max_m=8):
    m = draw(st.integers(3, max_m))
    code = tuple(draw(st.lists(st.sampled_from((1, -1)), min_size=m, max_size=m)))
    a = DihedralElement(m, draw(st.booleans()), draw(st.integers(0, m - 1)))
    b = DihedralElement(m, draw(st.booleans()), draw(st.integers(0, m - 1)))
    return m, code, a, b


def test_inverse_pair_and_involution():
    for m in range(3, 9):
        e = DihedralElement.identity(m)
        assert compose(DihedralElement.r(m), DihedralElement.r(m, m - 1)) == e
        assert compose(DihedralElement.f(m), DihedralElement.f(m)) == e


def test_compose_fr_rr_in_d4_checked_on_indices():
    fr = parse_element("fr", 4)
    rr = parse_element("rr", 4)
    got = compose(fr, rr)
    assert got == DihedralElement(4, True, 3)
    composed = {i: act_on_index(fr, act_on_index(rr, i)) for i in range(1, 5)}
    assert composed == {i: act_on_index(got, i) for i in range(1, 5)}


def test_triangle_code_action():
    d = (1, -1, 1)
    assert act_on_code(DihedralElement.r(3), d) == (-1, 1, 1)
    assert act_on_code(DihedralElement.f(3), d) == (-1, 1, -1)
    assert act_on_code(DihedralElement.identity(3), d) == d
    # the triangle witness equation: f(d) . fr(d) . rr(d) = d
    vals = [act_on_code(parse_element(w, 3), d) for w in ("f", "fr", "rr")]
    assert vals == [(-1, 1, -1), (-1, -1, 1), (1, 1, -1)]


def test_index_action_examples():
    assert act_on_index(DihedralElement.r(5), 5) == 1
    assert act_on_index(DihedralElement.f(5), 2) == 4
    with pytest.raises(IndexError):
        act_on_index(DihedralElement.r(5), 6)


def test_index_action_matches_oracle_permutation():
    for m in range(3, 9):
        for s in elements(m):
            perm = index_perm(m, s.flip, s.rot)
            assert all(act_on_index(s, i) == perm[i] for i in range(1, m + 1))


def test_sign_examples():
    assert sign(DihedralElement.identity(5)) == 1
    assert sign(DihedralElement.f(5)) == -1
    assert sign(parse_element("f r^3", 5)) == -1


def test_conjugation_examples():
    for m in range(3, 9):
        r, f = DihedralElement.r(m), DihedralElement.f(m)
        tau = parse_element("f r^2", m)
        assert conjugate(DihedralElement.identity(m), tau) == tau
        assert conjugate(r, f) == DihedralElement(m, True, -2)
        assert conjugate(f, r) == DihedralElement.r(m, m - 1)


def test_mismatched_m():
    with pytest.raises(DimensionError):
        compose(DihedralElement.r(3), DihedralElement.r(4))
    with pytest.raises(DimensionError):
        act_on_code(DihedralElement.r(3), (1, 1, 1, 1))


def test_names_and_parsing():
    assert [element_name(s) for s in elements(3)] == ["e", "r^1", "r^2", "f", "f r^1", "f r^2"]
    for m in (3, 5, 8):
        for s in elements(m):
            assert parse_element(element_name(s), m) == s
    assert parse_element("frrr", 4) == DihedralElement(4, True, 3)
    assert parse_element("rf", 5) == DihedralElement(5, True, 4)
    with pytest.raises(ValueError):
        parse_element("x", 4)


def test_action_law_exhaustive_small_m():
    for m in range(3, 7):
        codes = list(product((1, -1), repeat=m))
        for a in elements(m):
            for b in elements(m):
                ab = compose(a, b)
                for c in codes:
                    assert act_on_code(ab, c) == act_on_code(a, act_on_code(b, c))


@given(group_and_code())
def test_action_law(data):
    m, code, a, b = data
    assert act_on_code(compose(a, b), code) == act_on_code(a, act_on_code(b, code))
    for i in range(1, m + 1):
        assert act_on_index(compose(a, b), i) == act_on_index(a, act_on_index(b, i))


@given(group_and_code())
def test_group_laws(data):
    m, _, a, b = data
    c = DihedralElement(m, a.flip != b.flip, a.rot * 3 + 1)
    e = DihedralElement.identity(m)
    assert compose(compose(a, b), c) == compose(a, compose(b, c))
    assert compose(a, e) == a == compose(e, a)
    assert compose(a, a.inverse()) == e
    assert sign(compose(a, b)) == sign(a) * sign(b)
    f, r = DihedralElement.f(m), DihedralElement.r(m)
    assert compose(compose(f, r), f) == r.inverse()


@given(group_and_code())
def test_action_is_bijective(data):
    m, _, a, _ = data
    codes = list(product((1, -1), repeat=m)) if m <= 6 else []
    assert len({act_on_code(a, c) for c in codes}) == len(codes)


def test_product_rule_exhaustive_m_le_5():
    for m in range(3, 6):
        codes = list(product((1, -1), repeat=m))
        for s in elements(m):
            img = {c: act_on_code(s, c) for c in codes}
            for a in codes:
                for b in codes:
                    ab = multiply(a, b)
                    # signed pair rule
                    want = multiply(img[a], img[b])
                    assert img[ab] == (want if sign(s) == 1 else negate(want))
                    for c in codes[:: max(1, len(codes) // 8)]:
                        assert img[multiply(ab, c)] == multiply(multiply(img[a], img[b]), img[c])
