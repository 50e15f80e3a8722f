import pytest

from htcmap.catalog import (
    Catalog,
    CatalogError,
    builtin_map,
    builtin_space,
    composite_map,
    custom_space,
    known_facts,
    product_map,
    product_space,
)
from htcmap.quantities import Cat, QuantityError, TCr, parse_quantity
from htcmap.ring import ring_metrics


def facts_by_quantity(spec, r_values=range(2, 6)):
    return {f.quantity: (f.lo, f.hi) for f in known_facts(spec, r_values)}


def test_sphere_facts():
    odd = facts_by_quantity(builtin_space("sphere", n=3))
    assert all(odd[TCr((("S3", 1),), r)] == (r, r) for r in range(2, 6))
    even = facts_by_quantity(builtin_space("sphere", n=2))
    assert all(even[TCr((("S2", 1),), r)] == (r + 1, r + 1) for r in range(2, 6))
    assert facts_by_quantity(builtin_space("sphere", n=4))[TCr((("S4", 1),), 3)] == (4, 4)
    assert odd[Cat((("S3", 1),))] == (2, 2)


def test_projective_facts():
    rp3 = builtin_space("real_projective", n=3)
    assert ring_metrics(rp3.ring) == (4, 3) and rp3.h_space
    assert facts_by_quantity(rp3)[Cat((("RP3", 1),))] == (4, 4)
    assert facts_by_quantity(builtin_space("rp", n=7))[Cat((("RP7", 1),))] == (8, 8)
    assert not builtin_space("rp", n=2).h_space
    cp2 = builtin_space("complex_projective", n=2)
    assert cp2.ring.occupied_degrees() == [0, 2, 4]


def test_point_facts():
    assert facts_by_quantity(builtin_space("point")) == {Cat(()): (1, 1)}


def test_product_space_examples():
    t = product_space(builtin_space("sphere", n=1), builtin_space("sphere", n=1))
    assert t.h_space and ring_metrics(t.ring) == (4, 2)
    assert t.key == builtin_space("torus", k=2).key
    rp = builtin_space("rp", n=2)
    assert product_space(rp, rp).ring.total_dim == 9
    x = product_space(builtin_space("point"), rp)
    assert x.ring == rp.ring and x.key == rp.key


def test_builtin_maps():
    p = builtin_map("double_cover", n=2)
    assert p.fibration and not p.section and not p.homotopy_section
    assert p.domain.name == "S2" and p.codomain.name == "RP2"
    assert all(not img for img in p.pullback.images)
    q = builtin_map("complex_quotient", n=2)
    assert q.domain.name == "S5" and q.codomain.name == "CP2"
    pr = builtin_map("projection", x=builtin_space("sphere", n=3), f=builtin_space("sphere", n=1))
    assert pr.fibration and pr.section and pr.homotopy_section
    assert pr.codomain.name == "S3"
    ident = builtin_map("identity", x=builtin_space("rp", n=2))
    assert ident.identity and ident.section
    c = builtin_map("constant", x=builtin_space("rp", n=2), y=builtin_space("rp", n=3))
    assert c.null_homotopic and not c.fibration
    with pytest.raises(CatalogError):
        builtin_map("nope")
    with pytest.raises(CatalogError):
        builtin_space("nope")


def test_composite_and_product_flags():
    cat = Catalog()
    p1 = cat.map("p1")
    ident = cat.map("id(RP1)")
    comp = composite_map(p1, ident)
    assert comp.fibration and not comp.section
    assert comp.domain.key == p1.domain.key and comp.codomain.key == ident.codomain.key
    with pytest.raises(CatalogError):
        composite_map(ident, p1)
    prod_ = product_map(p1, ident)
    assert prod_.fibration and not prod_.homotopy_section
    assert prod_.codomain.key == (("RP1", 2),)
    assert prod_.pullback is not None


def test_catalog_names():
    cat = Catalog()
    assert cat.space_key("S1 x S1") == (("S1", 2),)
    assert cat.space_key("T2") == (("S1", 2),)
    assert cat.space_key("RP2^3") == (("RP2", 3),)
    assert cat.space_key("S2 × RP3") == (("RP3", 1), ("S2", 1))
    assert cat.space_key("pt") == ()
    assert cat.map("p3").name == "p3"
    assert cat.map("q2").codomain.name == "CP2"
    assert cat.map("proj(S3,S1)").section
    assert cat.map("const(pt,RP2)").null_homotopic
    with pytest.raises(CatalogError):
        cat.space("KleinBottle")
    with pytest.raises(CatalogError):
        cat.map("g7")
    with pytest.raises(CatalogError):
        cat.add_map(builtin_map("double_cover", n=3))


def test_custom_space():
    x = custom_space("X", [("a", 1, 2)])
    assert ring_metrics(x.ring) == (2, 1)
    assert custom_space("Y").ring is None
    c = custom_space("Z", contractible=True)
    assert c.is_point and c.contractible
    with pytest.raises(CatalogError):
        custom_space("S3")
    with pytest.raises(CatalogError):
        custom_space("W", [("a", 1, 2)], contractible=True)


def test_parse_quantity():
    cat = Catalog()
    q = parse_quantity("tcrs(p2, r=3, s=3)", cat.space_key, cat.map_name)
    assert (q.kind, q.subject, q.r, q.s) == ("tcrs", "p2", 3, 3)
    assert str(q) == "tcrs(p2, r=3, s=3)"
    assert parse_quantity("tc(S^2, r=5)", cat.space_key).subject == (("S2", 1),)
    assert parse_quantity("sec(p1, s=2)", cat.space_key, cat.map_name).s == 2
    q = parse_quantity("htcrs(proj(S3,S1), r=2, s=1)", cat.space_key, cat.map_name)
    assert q.subject == "proj(S3,S1)"
    for bad in ["tcrs(p2, r=3)", "tc(S2)", "foo(S2)", "tcrs(p2, r=2, s=3)", "tcrs(p2 r=2 s=1)", "cat()"]:
        with pytest.raises(QuantityError):
            parse_quantity(bad, cat.space_key, cat.map_name)
