import numpy as np
import pytest

from catres.algebra import (
    Algebra,
    AlgebraError,
    Idempotent,
    QuiverSpec,
    corner_algebra,
    from_quiver,
    primitive_idempotents,
    quotient_by_power,
)
from catres.corpus import (
    gentle_two_cycle,
    truncated_poly_algebra,
    two_fields,
    upper_triangular_2,
)
from catres.linalg import FieldSpec, Mat, coords_in_rows, row_span_contains

F2 = FieldSpec("prime", 2)
F3 = FieldSpec("prime", 3)
F5 = FieldSpec("prime", 5)
QQ = FieldSpec("rational")


def matrix_span_algebra(field, mats, labels):
    """Structure constants from a closed set of matrices (test helper)."""
    flat = Mat.from_rows(field, [np.array(m).flatten().tolist() for m in mats])
    d = len(mats)
    if field.kind == "prime":
        table = np.zeros((d, d, d), dtype=np.int64)
    else:
        table = np.empty((d, d, d), dtype=object)
    for i in range(d):
        for j in range(d):
            prod = np.array(mats[i], dtype=object) @ np.array(mats[j], dtype=object)
            if field.kind == "prime":
                prod = prod % field.p
            table[i, j] = coords_in_rows(flat, Mat.from_rows(field, [prod.flatten().tolist()])).a[0]
    n = len(mats[0])
    unit = coords_in_rows(flat, Mat.from_rows(field, [np.eye(n, dtype=int).flatten().tolist()]))
    return Algebra(field, labels, unit, table)


# -- validate ------------------------------------------------------------


def test_validate_x2_table():
    a = truncated_poly_algebra(F5, 2)
    assert a.validate().ok


def test_validate_detects_broken_table():
    a = truncated_poly_algebra(F5, 2)
    table = a.table.copy()
    table[1, 1] = [1, 0]  # x*x = 1 breaks associativity/unit structure here
    bad = Algebra(F5, a.basis_labels, a.unit, table)
    rep = bad.validate()
    # x*x=1 makes this the group algebra of Z/2: still associative; force a
    # genuinely broken table instead
    table[0, 1] = [1, 0]
    worse = Algebra(F5, a.basis_labels, a.unit, table)
    rep = worse.validate()
    assert not rep.ok and rep.violations


def test_validate_one_dimensional():
    a = truncated_poly_algebra(QQ, 1)
    assert a.validate().ok and a.dim == 1


# -- quiver frontend -------------------------------------------------------


def test_quiver_loop_mod_square():
    spec = QuiverSpec(F5, ["1"], [("x", "1", "1")], [], length_bound=2)
    a = from_quiver(spec)
    assert a.dim == 2 and a.validate().ok
    # isomorphic to k[x]/(x^2): x*x = 0
    xi = a.basis_labels.index("x")
    prod = a.multiply(a.basis_element(xi), a.basis_element(xi))
    assert prod.is_zero()


def test_quiver_two_vertex_one_relation():
    spec = QuiverSpec(
        F5,
        ["1", "2"],
        [("a", "1", "2"), ("b", "2", "1")],
        [[(1, ["a", "b"])]],
        length_bound=3,
    )
    a = from_quiver(spec)
    assert a.dim == 5
    assert sorted(a.basis_labels) == sorted(["e_1", "e_2", "a", "b", "b*a"])
    assert a.validate().ok


def test_quiver_no_arrows_two_vertices():
    a = two_fields(F5)
    assert a.dim == 2 and a.validate().ok
    assert a.radical_chain().radical.rows == 0


def test_quiver_rejects_nonparallel_relation():
    with pytest.raises(AlgebraError):
        from_quiver(
            QuiverSpec(
                F5,
                ["1", "2"],
                [("a", "1", "2"), ("b", "2", "1")],
                [[(1, ["a", "b"]), (1, ["b", "a"])]],
                length_bound=3,
            )
        )


def test_quiver_requires_length_bound():
    with pytest.raises(AlgebraError):
        QuiverSpec(F5, ["1"], [("x", "1", "1")], [], length_bound=0)


def test_quiver_rejects_short_relation():
    with pytest.raises(AlgebraError):
        from_quiver(
            QuiverSpec(F5, ["1"], [("x", "1", "1")], [[(1, ["x"])]], length_bound=3)
        )


# -- radical ----------------------------------------------------------------


def test_radical_x2():
    a = truncated_poly_algebra(F5, 2)
    ch = a.radical_chain()
    assert ch.nilpotency_index == 2
    assert ch.radical.tolist() == [[0, 1]]


def test_radical_semisimple_product():
    a = two_fields(F5)
    ch = a.radical_chain()
    assert ch.nilpotency_index == 1 and ch.radical.rows == 0


def test_radical_x3_powers():
    a = truncated_poly_algebra(QQ, 3)
    ch = a.radical_chain()
    assert [p.rows for p in ch.powers] == [2, 1, 0]
    assert ch.nilpotency_index == 3


def test_radical_trace_form_fails_but_chain_succeeds_on_m2f2():
    mats = [[[1, 0], [0, 0]], [[0, 1], [0, 0]], [[0, 0], [1, 0]], [[0, 0], [0, 1]]]
    a = matrix_span_algebra(F2, mats, ["E11", "E12", "E21", "E22"])
    assert a.validate().ok
    ch = a.radical_chain()
    assert ch.radical.rows == 0 and ch.nilpotency_index == 1


def test_radical_f4_is_zero():
    mats = [[[1, 0], [0, 1]], [[0, 1], [1, 1]]]
    a = matrix_span_algebra(F2, mats, ["1", "w"])
    assert a.radical_chain().radical.rows == 0


def test_radical_deep_chain_f2x4():
    a = truncated_poly_algebra(F2, 4)
    ch = a.radical_chain()
    assert [p.rows for p in ch.powers] == [3, 2, 1, 0]


def group_algebra(field, n):
    """k[C_n] on the group basis g^0..g^(n-1); radical not basis-aligned."""
    import numpy as np

    if field.kind == "prime":
        table = np.zeros((n, n, n), dtype=np.int64)
    else:
        from fractions import Fraction

        table = np.empty((n, n, n), dtype=object)
        table[...] = Fraction(0)
    for i in range(n):
        for j in range(n):
            table[i, j, (i + j) % n] = field.one
    unit = Mat.from_rows(field, [[field.one] + [field.zero] * (n - 1)])
    return Algebra(field, [f"g{i}" for i in range(n)], unit, table)


def test_radical_of_modular_group_algebras():
    # F_2[C_4] = F_2[x]/(x-1)^4: radical dim 3, nilpotency 4
    a = group_algebra(F2, 4)
    assert a.validate().ok
    ch = a.radical_chain()
    assert [p.rows for p in ch.powers] == [3, 2, 1, 0]
    # F_3[C_6] = F_3[u]/u^3 x F_3[u]/u^3: radical dim 4, A/J = F_3 x F_3
    b = group_algebra(F3, 6)
    ch = b.radical_chain()
    assert ch.radical.rows == 4 and ch.nilpotency_index == 3
    assert len(primitive_idempotents(b, ch)) == 2
    # F_5[C_4]: 4 invertible in F_5, semisimple (splits: x^4-1 has 4 roots)
    c = group_algebra(F5, 4)
    ch = c.radical_chain()
    assert ch.radical.rows == 0
    assert len(primitive_idempotents(c, ch)) == 4
    # Q[C_3]: semisimple, Q x Q(omega): splitting gives up on the quadratic
    # component but the radical itself is zero
    d = group_algebra(QQ, 3)
    assert d.radical_chain().radical.rows == 0


def test_radical_annotation_verified():
    a = truncated_poly_algebra(F5, 2)
    good = Mat.from_rows(F5, [[0, 1]])
    ch = a.radical_chain(annotation=good)
    assert ch.nilpotency_index == 2
    with pytest.raises(AlgebraError):
        a.radical_chain(annotation=Mat.from_rows(F5, [[1, 0]]))  # not nilpotent


def test_radical_elements_nilpotent_and_powers_nest():
    for a in [gentle_two_cycle(F2), upper_triangular_2(F3), truncated_poly_algebra(F3, 3)]:
        ch = a.radical_chain()
        j = ch.radical
        for r in range(j.rows):
            m = a.left_mult_matrix(j.row_at(r))
            power = m
            for _ in range(a.dim):
                power = power @ m
            assert power.is_zero()
        for i in range(len(ch.powers) - 1):
            for r in range(ch.powers[i + 1].rows):
                assert row_span_contains(ch.powers[i], ch.powers[i + 1].row_at(r))
        # spot-check J^i * J^j <= J^(i+j)
        n = ch.nilpotency_index
        for i in range(1, n):
            for j_ in range(1, n - i + 1):
                a_rows = ch.power(i)
                b_rows = ch.power(j_)
                tgt = ch.power(min(i + j_, n))
                for r in range(a_rows.rows):
                    for s in range(b_rows.rows):
                        prod = a.multiply(a_rows.row_at(r), b_rows.row_at(s))
                        assert row_span_contains(tgt, prod) or prod.is_zero()


# -- quotients ---------------------------------------------------------------


def test_quotient_by_power_top_and_bottom():
    a = truncated_poly_algebra(QQ, 3)
    ch = a.radical_chain()
    top, _ = quotient_by_power(a, ch, 1)
    assert top.dim == 1
    full, _ = quotient_by_power(a, ch, 3)
    assert full.dim == 3 and full.validate().ok


def test_quotient_by_power_middle_is_x2():
    a = truncated_poly_algebra(QQ, 3)
    ch = a.radical_chain()
    mid, proj = quotient_by_power(a, ch, 2)
    assert mid.dim == 2 and mid.validate().ok
    # x has nonzero image with square zero
    ximg = a.basis_element(1) @ proj
    assert not ximg.is_zero()
    assert mid.multiply(ximg, ximg).is_zero()


def test_quotient_index_out_of_range():
    a = truncated_poly_algebra(QQ, 3)
    ch = a.radical_chain()
    with pytest.raises(AlgebraError):
        quotient_by_power(a, ch, 4)


# -- idempotents and corners ---------------------------------------------------


def test_primitive_idempotents_local():
    a = truncated_poly_algebra(F2, 2)
    idems = primitive_idempotents(a, a.radical_chain())
    assert len(idems) == 1 and idems[0].coords == a.unit


def test_primitive_idempotents_kxk():
    a = two_fields(F5)
    idems = primitive_idempotents(a, a.radical_chain())
    assert len(idems) == 2
    assert sorted(e.coords.tolist() for e in idems) == [[[0, 1]], [[1, 0]]]


def test_primitive_idempotents_t2():
    a = upper_triangular_2(F3)
    idems = primitive_idempotents(a, a.radical_chain())
    assert len(idems) == 2
    total = idems[0].coords + idems[1].coords
    assert total == a.unit
    for e in idems:
        assert a.multiply(e.coords, e.coords) == e.coords


def test_primitive_idempotents_matrix_block():
    mats = [[[1, 0], [0, 0]], [[0, 1], [0, 0]], [[0, 0], [1, 0]], [[0, 0], [0, 1]]]
    a = matrix_span_algebra(F2, mats, ["E11", "E12", "E21", "E22"])
    idems = primitive_idempotents(a, a.radical_chain())
    assert len(idems) == 2
    s = idems[0].coords + idems[1].coords
    assert s == a.unit


def test_split_gives_up_on_proper_division_component():
    # F_4 over F_2 is a division algebra of dimension 2 over the prime
    # field: the decomposition reports and aborts instead of guessing
    from catres.algebra import SplitGiveUp

    mats = [[[1, 0], [0, 1]], [[0, 1], [1, 1]]]
    a = matrix_span_algebra(F2, mats, ["1", "w"])
    with pytest.raises(SplitGiveUp):
        primitive_idempotents(a, a.radical_chain())


def test_corner_identity_and_zero():
    a = truncated_poly_algebra(F5, 2)
    c, embed, degenerate = corner_algebra(a, Idempotent(a.unit))
    assert not degenerate and c.dim == a.dim
    # corner at 1 is isomorphic to a via the embedding rows
    for i in range(c.dim):
        for j in range(c.dim):
            lhs = a.multiply(embed.row_at(i), embed.row_at(j))
            rhs = coords_in_rows(embed, lhs)
            assert (rhs @ embed) == lhs
    z, _, degenerate = corner_algebra(a, Idempotent(Mat.zeros(F5, 1, 2)))
    assert degenerate and z.dim == 0


def test_corner_t2_vertex():
    a = upper_triangular_2(F3)
    idems = primitive_idempotents(a, a.radical_chain())
    c, embed, deg = corner_algebra(a, idems[0])
    assert not deg and c.dim == 1 and c.validate().ok


def test_corner_rejects_non_idempotent():
    a = truncated_poly_algebra(F5, 2)
    with pytest.raises(AlgebraError):
        corner_algebra(a, Idempotent(a.basis_element(1)))


# -- opposite -------------------------------------------------------------------


def test_opposite_commutative_equal():
    a = truncated_poly_algebra(F5, 2)
    assert (a.opposite().table == a.table).all()


def test_opposite_t2_validates_and_involutes():
    a = upper_triangular_2(F3)
    op = a.opposite()
    assert op.validate().ok
    assert (op.opposite().table == a.table).all()
    assert not (op.table == a.table).all()


def test_center_of_t2():
    a = upper_triangular_2(F3)
    z = a.center()
    assert z.rows == 1  # spanned by the unit


def test_generating_indices_small():
    a = truncated_poly_algebra(F5, 4)
    gens = a.generating_indices()
    assert len(gens) == 1  # x generates with the unit
