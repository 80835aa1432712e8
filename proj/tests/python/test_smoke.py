"""Smoke tests for the python bindings."""

import pytest

import liederiv as ld


def test_parse_and_print_round_trip():
    d = ld.Derivation("x3*d1 + d2")
    assert str(d) == "x3*d1 + d2"
    assert d.num_vars == 3
    f = ld.RationalFunction("(x2 + x3)/(x2*x3)")
    assert str(f) == "(x2 + x3)/(x2*x3)"


def test_bracket_and_apply():
    d3 = ld.Derivation("d3", 3)
    e = ld.Derivation("x3*d1", 3)
    assert str(ld.bracket(d3, e)) == "d1"
    assert str(d3.apply("x3^2/2")) == "x3"
    assert ld.bracket(d3, d3).is_zero()


def test_structure_of_the_nonabelian_threefold():
    alg = ld.LieAlgebra.from_text("d1; d2 + x3*d1; d3")
    assert alg.dim == 3
    assert ld.rank_over_r(alg) == 3
    nilpotent, cls = ld.nilpotency(alg)
    assert nilpotent and cls == 2
    z = ld.center_report(alg)
    assert z["rank_over_R"] == 1
    assert z["corank"] == 2
    report = ld.structure(alg)
    assert report["nilpotency_class"] == 2
    assert report["basis"][0] == "d1"


def test_classify_and_embed_families():
    a1 = ld.build_l1(3, 2)
    v1 = ld.classify(a1)
    assert v1["case"] == "type_l1"
    assert v1["b"] == "x3"

    a2 = ld.build_l2(3, 2)
    v2 = ld.classify(a2)
    assert v2["case"] == "type_l2"
    assert v2["a"] == "x2"
    assert v2["b"] == "x3"

    table = ld.embed(a2)
    assert table["brackets_preserved"] is True
    assert table["pairs_checked"] == a2.dim * (a2.dim - 1) // 2
    for entry in table["map"]:
        img = ld.Derivation(entry["image"], 3)
        assert ld.is_member_un(img)


def test_out_of_scope_raises_nothing_but_reports():
    alg = ld.LieAlgebra.from_text("d2; x2*d2")
    verdict = ld.classify(alg)
    assert verdict["case"] == "out_of_scope"
    assert verdict["failed_check"].startswith("nilpotency")
    with pytest.raises(ValueError):
        ld.embed(alg)


def test_triangular_membership_and_witness():
    assert ld.is_member_un(ld.Derivation("x3^2*d1 + x3*d2 + d3", 3))
    assert not ld.is_member_un(ld.Derivation("x1*d2", 2))
    chain, final = ld.non_nilpotency_witness(3, 5)
    assert len(chain) == 5
    assert final == "d1"
    assert ld.fg_subalgebra_class(ld.parse_derivations("d3; x3*d2", 3)) == 2


def test_slices():
    d = ld.Derivation("x3*d1", 3)
    preslice, slice_ = ld.find_slice(d, ["x1", "x3"])
    assert preslice == "x1"
    assert slice_ == "x1/x3"


def test_random_nilpotent_is_deterministic():
    a = ld.random_nilpotent(3, 7, 2)
    b = ld.random_nilpotent(3, 7, 2)
    assert [str(x) for x in a.basis] == [str(x) for x in b.basis]
    nilpotent, _ = ld.nilpotency(a)
    assert nilpotent
