from fractions import Fraction

import pytest

from buildingtorsion.complexes import (
    QuotientGraph,
    cell_counts,
    search_presentation,
    torus_complex,
)
from buildingtorsion.errors import DimensionError, StructureError
from buildingtorsion.intmat import snf
from buildingtorsion.torsion import (
    a2_relations,
    annihilator_family,
    bound,
    chi,
    tree_relations,
)


def naive_order(pres, cap=16):
    """Smallest m >= 1 with m [I] in the row span, by direct scan."""
    for m in range(1, cap + 1):
        if pres.identity_multiple_in_span(m):
            return m
    return None


def test_bouquet_order():
    g = QuotientGraph(n_vertices=1, geom_edges=((0, 0), (0, 0)))
    pres = tree_relations(g)
    assert pres.generators == ("I", "e(0)", "e(1)", "e(2)", "e(3)")
    order = pres.order_of_identity()
    assert order.finite and order.value == 1
    assert naive_order(pres) == 1


def test_theta_order():
    g = QuotientGraph(n_vertices=2, geom_edges=((0, 1), (0, 1), (0, 1)))
    pres = tree_relations(g)
    assert pres.matrix.rows == 5  # 2 vertex sums + 3 edge pairs
    order = pres.order_of_identity()
    assert order.finite and order.value == 1
    assert naive_order(pres) == 1


def test_four_parallel_edges_order_two():
    g = QuotientGraph(n_vertices=2, geom_edges=((0, 1),) * 4)
    pres = tree_relations(g)
    order = pres.order_of_identity()
    assert order.finite and order.value == 2
    assert naive_order(pres) == 2
    assert snf(pres.matrix).invariant_factors == (1, 1, 1, 1, 1, 2)
    # the order divides |n0 - n1|
    assert abs(g.n_vertices - len(g.geom_edges)) % order.value == 0


def test_disconnected_graph_rejected():
    g = QuotientGraph(
        n_vertices=2, geom_edges=((0, 0), (0, 0), (1, 1), (1, 1))
    )
    with pytest.raises(StructureError):
        tree_relations(g)


def test_torus_presentation_shape():
    x = torus_complex(1)
    pres = a2_relations(x)
    assert len(pres.generators) == 22  # 1 + 2*6 cells + 3*3 edges
    assert pres.matrix.rows == 11
    assert pres.generators[0] == "I"
    assert len(pres.row_tags) == 11


def test_torus_identity_has_infinite_order():
    x = torus_complex(1)
    pres = a2_relations(x)
    assert pres.order_of_identity().finite is False
    # certificate: a homomorphism to Z killing every relation but not I
    phi = []
    for lab in pres.generators:
        if lab == "I":
            phi.append(6)
        elif lab.startswith("d"):
            phi.append(1)  # covers d and dbar
        else:
            phi.append(2)  # e, ebar, ehat
    for i in range(pres.matrix.rows):
        image = sum(
            pres.matrix.at(i, j) * phi[j] for j in range(pres.matrix.cols)
        )
        assert image == 0, pres.row_tags[i]


def test_torus_with_transfer_rows():
    # scale-1 transfer matrices are identities, so the new rows collapse
    # to a single zero row; the order stays infinite
    x = torus_complex(1)
    pres = a2_relations(x, include_mk=True)
    assert pres.matrix.rows == 12
    assert pres.order_of_identity().finite is False
    zero_rows = [
        i
        for i in range(pres.matrix.rows)
        if all(v == 0 for v in pres.matrix.row(i))
    ]
    assert len(zero_rows) == 1
    assert pres.row_tags[zero_rows[0]].startswith("position-transfer")


def test_searched_complex_identity_vanishes():
    x, _ = search_presentation(2)
    pres = a2_relations(x)
    order = pres.order_of_identity()
    assert order.finite and order.value == 1
    counts = cell_counts(x, q=2)
    euler = counts.n0 - counts.n1 + counts.n2
    assert pres.identity_multiple_in_span(euler)
    pres_mk = a2_relations(x, include_mk=True)
    order_mk = pres_mk.order_of_identity()
    assert order_mk.finite and order_mk.value == 1
    # transfer rows force n0 (q^2 - 1) [I] = 0
    assert pres_mk.identity_multiple_in_span(3)
    assert bound(2, 2, 1).value % order_mk.value == 0


def test_bound_values_and_cases():
    assert bound(2, 5, 1) == bound(2, 5, 1)
    b = bound(2, 5, 1)
    assert (b.value, b.case) == (8, "q ≡ 2 mod 3")
    assert bound(3, 2, 1).value == 1
    assert bound(3, 2, 1).case == "n odd"
    assert bound(4, 2, 1).value == 3
    assert bound(4, 2, 1).case == "n even"
    assert bound(2, 4, 1) == bound(2, 4, 1)
    assert bound(2, 4, 1).value == 15
    assert bound(2, 4, 1).case == "q ≡ 1 mod 3"
    assert bound(2, 3, 3).value == 8
    assert bound(2, 3, 3).case == "q ≡ 0 mod 3"
    with pytest.raises(StructureError):
        bound(2, 3, 1)
    with pytest.raises(DimensionError):
        bound(0, 2, 1)
    with pytest.raises(DimensionError):
        bound(2, 1, 1)


def test_chi_values():
    assert chi(2, 2, 1).value == 1 and chi(2, 2, 1).integral
    assert chi(1, 3, 2).value == -2
    assert chi(4, 4, 1).value == 144585
    c = chi(2, 3, 1)
    assert c.value == Fraction(16, 3) and not c.integral
    # flat case matches the cell counts of the torus family
    for s in (1, 3):
        counts = cell_counts(torus_complex(s))
        assert chi(2, 1, s).value == counts.euler == 0
    x, _ = search_presentation(2)
    assert chi(2, 2, 1).value == cell_counts(x).euler


def test_annihilator_family():
    assert annihilator_family(3, 2, 1) == (7, 15, 7)
    assert annihilator_family(2, 4, 1) == (15, 15)
    assert annihilator_family(2, 3, 3) == (24, 24)
    assert annihilator_family(1, 5, 2) == (8,)
    # bound undefined here, but the family itself is still well formed
    assert annihilator_family(2, 3, 1) == (8, 8)
