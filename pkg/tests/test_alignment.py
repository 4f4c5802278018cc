import itertools
import random

import pytest

from conftest import reflective_patch
from dirtile.alignment import (
    EdgeReversal,
    InvalidScheme,
    NotRealizable,
    ReflectionScheme,
    SymmetryError,
    apply_reversal,
    check_phi_generated,
    check_psi_reflective,
    choose_relabel,
    compose_maps,
    composite_symmetry,
    gamma_codes,
    generate_from_scheme,
    infer_psi,
    infer_scheme,
    random_track,
    reflect_automorphism,
    relations_hold,
    scheme_from_inference,
    search_schemes,
    tau_along,
)
from dirtile.coxeter import KeySpace
from dirtile.dihedral import DihedralElement, act_on_code, act_on_index, elements, multiply, parse_element
from dirtile.mgon import MGonCategory
from dirtile.patch import follow_route, geodesic_labels, geodesic_through, tile_keys, validate
from dirtile.reversal_closed import subset

ALL4 = [str(s) for s in elements(4)]


def square_scheme():
    code = (-1, -1, 1, -1)
    cat = MGonCategory(code)
    phi = [(1, 1, -1, -1)] * 2 + [(-1, -1, 1, 1)] * 2
    return ReflectionScheme(cat, cat, 4, subset(code, ALL4), phi)


def pentagon_scheme():
    target = (1, -1, 1, 1, 1)
    phi = [(1, 1, -1, -1, -1), (1, 1, 1, 1, 1)] + [(-1, -1, 1, 1, 1)] * 3
    return ReflectionScheme(
        MGonCategory((-1, -1, -1, 1, 1)), MGonCategory(target), 4, subset(target, ["e", "r", "f r^2", "f r^3"]), phi
    )


def translation_scheme():
    target = (1, -1, -1, 1)
    phi = [(1, -1, 1, -1), (-1, 1, -1, 1)] * 2
    return ReflectionScheme(MGonCategory.cyclic(4), MGonCategory(target), 4, subset(target, ALL4), phi)


def generated(scheme, radius=3):
    p = reflective_patch(scheme.m, scheme.n, radius, scheme.base.code)
    return p, generate_from_scheme(p, scheme, DihedralElement.identity(scheme.m))


# --- re-alignment --------------------------------------------------------


def test_pentagon_relabel_example():
    p = reflective_patch(5, 4, 2)
    tau = EdgeReversal.constant(p, (-1, 1, 1, 1, -1))
    target = MGonCategory((1, 1, -1, -1, -1))
    q, chosen = apply_reversal(p, tau, target)
    rf = parse_element("rf", 5)
    assert set(chosen.values()) == {rf}
    assert [act_on_index(rf, i) for i in range(1, 6)] == [1, 5, 4, 3, 2]
    for t_old, t_new in zip(p.tiles, q.tiles):
        assert t_new.edges == tuple(t_old.edges[j - 1] for j in (1, 5, 4, 3, 2))
    report = validate(q)
    assert report.ok, [str(v) for v in report.violations[:3]]
    assert q.category == target


def test_relabel_reaches_every_code_in_the_restricted_set():
    for source in itertools.product((1, -1), repeat=4):
        for target in itertools.product((1, -1), repeat=4):
            reachable = {multiply(source, act_on_code(s, target)) for s in elements(4)}
            for tau_x in itertools.product((1, -1), repeat=4):
                found = choose_relabel(source, tau_x, target)
                assert (found is not None) == (tau_x in reachable)


def test_identity_round_trip():
    p = reflective_patch(4, 4, 2)
    q, chosen = apply_reversal(p, EdgeReversal.identity(p), p.category)
    assert q == p
    assert all(s == DihedralElement.identity(4) for s in chosen.values())


def test_reverse_twice_restores_directions():
    p = reflective_patch(5, 4, 2)
    tau = EdgeReversal.constant(p, (-1, 1, 1, 1, -1))
    q, _ = apply_reversal(p, tau, MGonCategory((1, 1, -1, -1, -1)))
    r, _ = apply_reversal(q, EdgeReversal(q, tau.values), p.category)
    assert [(e.src, e.tgt) for e in r.edges] == [(e.src, e.tgt) for e in p.edges]
    assert validate(r).ok


def test_single_flipped_edge_is_not_realizable():
    p = reflective_patch(4, 4, 1)
    values = [1] * len(p.edges)
    values[p.edge(1, 0)] = -1
    with pytest.raises(NotRealizable):
        apply_reversal(p, EdgeReversal(p, values), p.category)


def test_from_tile_codes_rejects_disagreement():
    p = reflective_patch(4, 4, 1)
    codes = [(1, 1, 1, 1)] * len(p.tiles)
    codes[0] = (-1, 1, 1, 1)
    with pytest.raises(NotRealizable):
        EdgeReversal.from_tile_codes(p, codes)


def test_edge_reversal_value_checks():
    p = reflective_patch(4, 4, 0)
    with pytest.raises(ValueError):
        EdgeReversal(p, (1, 1, 1))
    with pytest.raises(ValueError):
        EdgeReversal(p, (1, 0, 1, 1))


# --- schemes -------------------------------------------------------------


def test_all_ones_scheme_gives_constant_tau():
    code = (1, 1, 1, 1, 1)
    scheme = ReflectionScheme(MGonCategory(code), MGonCategory(code), 4, subset(code, ["e"]), [code] * 5)
    p, tau = generated(scheme)
    assert set(tau.values) == {1}


def test_square_scheme_depends_on_letter_parities():
    scheme = square_scheme()
    p, tau = generated(scheme, 3)
    by_parity = {}
    for t in p.tiles:
        key = (sum(i in (1, 2) for i in t.word) % 2, sum(i in (3, 4) for i in t.word) % 2)
        by_parity.setdefault(key, set()).add(tau.at(t.id))
    assert all(len(v) == 1 for v in by_parity.values())
    assert len({next(iter(v)) for v in by_parity.values()}) == 4
    assert check_phi_generated(p, tau, scheme)


@pytest.mark.parametrize("make", [square_scheme, pentagon_scheme, translation_scheme])
def test_generated_tau_is_track_independent(make):
    scheme = make()
    p, tau = generated(scheme, 3)
    assert check_phi_generated(p, tau, scheme)
    rng = random.Random(3)
    e = DihedralElement.identity(scheme.m)
    for x in range(len(p.tiles)):
        for _ in range(3):
            route = random_track(p, x, rng)
            assert follow_route(p, p.base_tile, route) == x
            assert tau_along(p, scheme, e, route) == tau.at(x)


@pytest.mark.parametrize("make", [square_scheme, pentagon_scheme, translation_scheme])
def test_generated_tau_is_realizable(make):
    scheme = make()
    p, tau = generated(scheme, 2)
    q, _ = apply_reversal(p, tau, scheme.target)
    assert validate(q, reflective=False).ok


def test_other_start_in_gamma():
    scheme = pentagon_scheme()
    p = reflective_patch(5, 4, 2, scheme.base.code)
    for s in scheme.gamma.elements:
        tau = generate_from_scheme(p, scheme, s)
        assert tau.at(p.base_tile) == multiply(scheme.base.code, act_on_code(s, scheme.target.code))
        assert check_phi_generated(p, tau, scheme)


def test_scheme_values_lie_in_gamma_codes():
    for scheme in (square_scheme(), pentagon_scheme(), translation_scheme()):
        allowed = gamma_codes(scheme.target.code, scheme.gamma.elements)
        assert set(scheme.phi) <= allowed
        assert scheme.problems() == []


def test_scheme_problems():
    good = pentagon_scheme()
    bad_diag = ReflectionScheme(good.base, good.target, 4, good.gamma, [(-1, 1, 1, 1, 1)] + list(good.phi[1:]))
    assert any("position 1" in s for s in bad_diag.problems())
    bad_n = ReflectionScheme(good.base, good.target, 6, good.gamma, good.phi)
    assert any("n=6" in s for s in bad_n.problems())
    not_closed = ReflectionScheme(good.base, good.target, 4, subset(good.target.code, ["e", "r"]), good.phi)
    assert not_closed.problems()
    with pytest.raises(InvalidScheme):
        bad_n.check()
    p = reflective_patch(5, 4, 1, good.base.code)
    with pytest.raises(InvalidScheme):
        generate_from_scheme(p, good, parse_element("f", 5))
    with pytest.raises(InvalidScheme):
        generate_from_scheme(reflective_patch(5, 4, 1), good, DihedralElement.identity(5))


def test_infer_scheme_recovers_phi():
    for scheme in (square_scheme(), pentagon_scheme(), translation_scheme()):
        p, tau = generated(scheme, 2)
        inference = infer_scheme(p, tau)
        assert inference.ok and inference.phi == scheme.phi
        rebuilt = scheme_from_inference(inference, scheme.base, scheme.target, scheme.n, scheme.gamma)
        assert rebuilt == scheme


def test_translation_example_values():
    scheme = translation_scheme()
    p, tau = generated(scheme, 2)
    # changes of tau across single sides form the listed pattern
    changes = {multiply(tau.at(p.neighbor(x, i)), tau.at(x)) for x in range(len(p.tiles))
               for i in range(1, 5) if p.neighbor(x, i) is not None}
    assert changes == {(1, -1, 1, -1), (-1, 1, -1, 1)}
    assert infer_scheme(p, tau).phi == ((1, -1, 1, -1), (-1, 1, -1, 1), (1, -1, 1, -1), (-1, 1, -1, 1))


def test_infer_scheme_reports_conflict():
    p = reflective_patch(4, 4, 2)
    rng = random.Random(11)
    tau = EdgeReversal(p, [rng.choice((1, -1)) for _ in p.edges])
    inference = infer_scheme(p, tau)
    assert not inference.ok and inference.conflict is not None
    with pytest.raises(InvalidScheme):
        scheme_from_inference(inference, p.category, p.category, 4, subset((1, 1, 1, 1), ["e"]))


def test_relations_and_search():
    assert relations_hold([(1, 1, -1, 1)] * 4, 6)
    assert not relations_hold([(1, 1, -1, 1), (1, 1, 1, 1), (1, 1, 1, 1), (1, 1, 1, 1)], 6)
    assert search_schemes(4, 6) == [((1, 1, 1, 1),) * 4]
    assert len(search_schemes(4, 4)) == 8**4
    # without the diagonal constraint only constant tuples survive
    loose = search_schemes(3, 6, fixed_diagonal=False)
    assert len(loose) == 8 and all(len(set(phi)) == 1 for phi in loose)


def test_n_2_mod_4_word_tau_consistent_only_for_trivial_phi():
    p = reflective_patch(4, 6, 2)
    for phi in itertools.product(*[[c for c in itertools.product((1, -1), repeat=4) if c[i] == 1] for i in range(4)]):
        codes = []
        for t in p.tiles:
            c = (1, 1, 1, 1)
            for i in t.word:
                c = multiply(phi[i - 1], c)
            codes.append(c)
        try:
            tau = EdgeReversal.from_tile_codes(p, codes)
        except NotRealizable:
            continue
        consistent = infer_scheme(p, tau).phi == phi
        assert consistent == (phi == ((1, 1, 1, 1),) * 4)


# --- reflections ---------------------------------------------------------


def _key_oracle(p, geodesic):
    """Left multiplication by the reflection t = w s_i w^-1 fixing the geodesic."""
    ks = KeySpace(p.params)
    keys = tile_keys(p)
    where = {k: x for x, k in enumerate(keys)}
    e = p.edges[geodesic[0]]
    x = e.tiles[0]
    i = p.label(x, e.id)
    w = p.tiles[x].word
    t_word = tuple(w) + (i,) + tuple(reversed(w))
    out = {}
    for y, t in enumerate(p.tiles):
        image = ks.apply_word(t_word + tuple(t.word))
        if image in where:
            out[y] = where[image]
    return out


@pytest.mark.parametrize("m,n", [(4, 4), (5, 4), (3, 8), (4, 6)])
def test_reflection_matches_group_oracle(m, n):
    p = reflective_patch(m, n, 3)
    for e in p.edges[:: max(1, len(p.edges) // 25)]:
        if not e.interior:
            continue
        g = geodesic_through(p, e.id)
        gamma = reflect_automorphism(p, g)
        oracle = _key_oracle(p, g)
        assert gamma.items() <= oracle.items()
        for x, y in gamma.items():
            assert gamma.get(y, x) == x
            for j in range(1, m + 1):
                u, w = p.neighbor(x, j), p.neighbor(y, j)
                if u in gamma:
                    assert gamma[u] == w


def test_reflection_needs_interior_edge():
    p = reflective_patch(4, 4, 0)
    with pytest.raises(SymmetryError):
        reflect_automorphism(p, (0,))


def test_psi_equals_phi_of_geodesic_label():
    for scheme in (square_scheme(), pentagon_scheme(), translation_scheme()):
        p, tau = generated(scheme, 3)
        for e in p.edges:
            if not e.interior:
                continue
            g = geodesic_through(p, e.id)
            (label,) = set(geodesic_labels(p, g))
            gamma = reflect_automorphism(p, g)
            psi = infer_psi(tau, gamma)
            assert psi == scheme.phi[label - 1]
            assert check_psi_reflective(p, tau, gamma, psi)


def test_reflective_tiling_has_trivial_psi():
    p = reflective_patch(5, 4, 2)
    tau = EdgeReversal.identity(p)
    for e in p.edges:
        if e.interior:
            gamma = reflect_automorphism(p, geodesic_through(p, e.id))
            assert infer_psi(tau, gamma) == (1,) * 5


def test_pentagon_composites():
    scheme = pentagon_scheme()
    p, tau = generated(scheme, 3)
    g5, g2, g1 = (geodesic_through(p, p.edge(i, p.base_tile)) for i in (5, 2, 1))
    assert composite_symmetry(p, tau, [g5, g2]) == (-1, -1, 1, 1, 1)
    assert composite_symmetry(p, tau, [g1, g2]) == (1, 1, -1, -1, -1)


def test_compose_maps_order():
    a = {1: 2, 2: 1, 3: 3}
    b = {2: 5, 3: 6}
    assert compose_maps([a, b]) == {1: 5, 3: 6}
    assert compose_maps([b, a]) == {}
