"""Generators, enumeration, orders, words, hom extension, cache."""

import os
import random

import pytest

from veribv.band import GroupElement, truncate
from veribv.errors import BudgetExceededError
from veribv.groups import (
    GEN_DIAGS,
    RELATORS_G,
    RELATORS_H,
    cached_closure,
    check_hom_extends,
    closure,
    element_order,
    evaluate_word,
    group_order_ladder,
    load_group,
    make_generators,
    parse_word,
    predicted_order,
    save_group,
    verify_relators,
)

# log2 of the group orders, frozen from enumeration at every level
LOG2_ORDERS = {1: 3, 2: 6, 3: 8, 4: 11, 5: 14, 6: 16, 7: 19, 8: 22}


def test_generator_diagonals_verbatim():
    gs = make_generators(5)
    assert gs.x0.triples() == tuple(
        map(lambda t: tuple(t), GEN_DIAGS["x0"])
    )
    assert gs.x1.triple(1) == (23, 224, 138)
    assert gs.x1.triple(2) == (59, 136, 495)
    assert gs.x2.triple(1) == (46, 68, 217)
    # deeper levels pad with zero diagonals
    deep = make_generators(8)
    assert deep.x0.triple(6) == (0, 0, 0)
    assert deep.x0.triple(8) == (0, 0, 0)


def test_derived_generators_and_relations():
    for k in (1, 2, 3, 6, 8):
        gs = make_generators(k)
        ident = GroupElement.identity(k)
        assert gs.x3 == (gs.x0 * gs.x1).inverse()
        for i in range(7):
            assert gs[i] * gs[(i + 1) % 7] * gs[(i + 3) % 7] == ident


def test_key_element_x_printed_triples():
    gs = make_generators(3)
    x = gs.x3
    assert x.triples() == ((28, 235, 129), (29, 211, 263), (26, 227, 326))


def test_make_generators_rejects_level_zero():
    with pytest.raises(ValueError):
        make_generators(0)


def test_orders_against_prediction():
    for k in range(1, 6):
        gs = make_generators(k)
        G = closure([gs.x0, gs.x1, gs.x2], k, labels=("x0", "x1", "x2"))
        H = closure([gs.x0, gs.x1], k, labels=("x0", "x1"))
        assert G.order == predicted_order(k) == 1 << LOG2_ORDERS[k]
        assert H.order == predicted_order(k, subgroup=True)
        assert 2 * H.order == G.order
        assert H.index <= G.index


def test_predicted_order_frozen_ladder():
    for k, log2 in LOG2_ORDERS.items():
        assert predicted_order(k) == 1 << log2


def test_group_order_ladder():
    rows = group_order_ladder(6)
    assert rows == [(3, 256, 8), (4, 2048, 8), (5, 16384, 4), (6, 65536, 8)]
    with pytest.raises(ValueError):
        group_order_ladder(2)


def test_closure_budget_refusal():
    gs = make_generators(3)
    with pytest.raises(BudgetExceededError) as info:
        closure([gs.x0, gs.x1, gs.x2], 3, budget=255)
    assert info.value.budget == 255
    exact = closure([gs.x0, gs.x1, gs.x2], 3, budget=256)
    assert exact.order == 256


def test_element_order_against_repeated_multiplication():
    def order_by_multiplying(g):
        count = 1
        cur = g
        while not cur.is_identity:
            cur = cur * g
            count += 1
        return count

    rnd = random.Random(5102)
    gs = make_generators(3)
    H = closure([gs.x0, gs.x1], 3, labels=("x0", "x1"))
    elems = list(H.elements)
    sample = [GroupElement(3, elems[rnd.randrange(len(elems))]) for _ in range(40)]
    for g in sample + [gs.x0, gs.x1, gs.x2, gs.x3]:
        assert element_order(g) == order_by_multiplying(g)


def test_element_order_ladder_for_generators():
    expected = {1: 2, 2: 4, 3: 4, 4: 8, 5: 8, 6: 8, 7: 8, 8: 16}
    for k, want in expected.items():
        gs = make_generators(k)
        assert element_order(gs.x0) == want
        assert element_order(gs.x1) == want
        assert element_order(gs.x3) == want


def test_word_parsing_and_evaluation():
    assert parse_word("x1^-3 x0^2 x1") == [("x1", -3), ("x0", 2), ("x1", 1)]
    gs = make_generators(3)
    env = {"x0": gs.x0, "x1": gs.x1}
    assert evaluate_word("x0 x0^-1", env).is_identity
    assert evaluate_word("x1^-3 x0^2", env) == gs.x1 ** -3 * gs.x0 ** 2
    with pytest.raises(ValueError):
        evaluate_word("", env)
    with pytest.raises(KeyError):
        evaluate_word("x9", env)


def test_relators_hold():
    for k in (3, 5):
        gs = make_generators(k)
        assert verify_relators({"x0": gs.x0, "x1": gs.x1, "x2": gs.x2}, RELATORS_G)
        assert verify_relators({"x0": gs.x0, "x1": gs.x1}, RELATORS_H)
    gs = make_generators(3)
    assert not verify_relators({"x0": gs.x0, "x1": gs.x1}, ("x0 x1",))


def test_hom_identity_and_inversion(gens3):
    H = closure([gens3.x0, gens3.x1], 3, labels=("x0", "x1"))
    ident_res = check_hom_extends(H, {"x0": gens3.x0, "x1": gens3.x1})
    assert ident_res.extends and ident_res.bijective
    inv_res = check_hom_extends(
        H, {"x0": gens3.x0.inverse(), "x1": gens3.x1.inverse()}
    )
    assert inv_res.extends and inv_res.bijective
    # the extension respects products wherever it exists
    rnd = random.Random(5203)
    elems = list(H.elements)
    for _ in range(50):
        a = GroupElement(3, elems[rnd.randrange(len(elems))])
        b = GroupElement(3, elems[rnd.randrange(len(elems))])
        assert inv_res.image_of(a * b) == inv_res.image_of(a) * inv_res.image_of(b)


def test_hom_fails_on_higher_level():
    gs = make_generators(5)
    H = closure([gs.x0, gs.x1], 5, labels=("x0", "x1"))
    res = check_hom_extends(H, {"x0": gs.x0.inverse(), "x1": gs.x1.inverse()})
    assert not res.extends
    assert res.image_map is None
    with pytest.raises(ValueError):
        res.image_of(gs.x0)


def test_hom_collapse_is_not_bijective(gens3):
    H = closure([gens3.x0, gens3.x1], 3, labels=("x0", "x1"))
    ident = GroupElement.identity(3)
    res = check_hom_extends(H, {"x0": ident, "x1": ident})
    assert res.extends and not res.bijective


def test_hom_precondition_errors(gens3):
    H = closure([gens3.x0, gens3.x1], 3, labels=("x0", "x1"))
    with pytest.raises(ValueError):
        check_hom_extends(H, {"x0": gens3.x0})
    with pytest.raises(ValueError):
        check_hom_extends(H, {"x0": gens3.x0, "x1": gens3.x2})


def test_first_diagonal_quotient_is_elementary_abelian(gens3):
    G = closure([gens3.x0, gens3.x1, gens3.x2], 3, labels=("x0", "x1", "x2"))
    H = closure([gens3.x0, gens3.x1], 3, labels=("x0", "x1"))
    g_classes = {truncate(GroupElement(3, p), 1) for p in G.elements}
    h_classes = {truncate(GroupElement(3, p), 1) for p in H.elements}
    assert len(g_classes) == 8
    assert len(h_classes) == 4
    for c in g_classes:
        assert (c * c).is_identity


def test_cache_roundtrip(tmp_path, gens3):
    G = closure([gens3.x0, gens3.x1, gens3.x2], 3, labels=("x0", "x1", "x2"))
    path = os.path.join(tmp_path, "g3.vbvg")
    save_group(G, path)
    back = load_group(path, G.gens)
    assert back.order == G.order
    assert back.index == G.index
    assert back.elements == tuple(sorted(G.elements))

    hits = cached_closure(
        [gens3.x0, gens3.x1, gens3.x2], 3, cache_dir=str(tmp_path), labels=("x0", "x1", "x2")
    )
    again = cached_closure(
        [gens3.x0, gens3.x1, gens3.x2], 3, cache_dir=str(tmp_path), labels=("x0", "x1", "x2")
    )
    assert hits.index == again.index == G.index


def test_cache_rejects_corrupt_file(tmp_path, gens3):
    G = closure([gens3.x0, gens3.x1], 3, labels=("x0", "x1"))
    path = os.path.join(tmp_path, "h3.vbvg")
    save_group(G, path)
    with open(path, "rb") as fh:
        blob = fh.read()
    with open(path, "wb") as fh:
        fh.write(b"XXXX" + blob[4:])
    with pytest.raises(ValueError):
        load_group(path, G.gens)
    with open(path, "wb") as fh:
        fh.write(blob[:-3])
    with pytest.raises(ValueError):
        load_group(path, G.gens)
