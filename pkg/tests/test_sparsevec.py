import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ipsketch.sparsevec import (SparseVector, format_text, inner, norm, overlap_scale,
                                parse_text, read_vector, restrict_to_intersection, write_vector)
from ipsketch.tables import encode_key_indicator, encode_value_column, example_tables


@st.composite
def vector_pairs(draw, n=30):
    def vec():
        d = draw(st.dictionaries(st.integers(1, n), st.floats(-100, 100, allow_nan=False),
                                 max_size=n))
        return SparseVector.from_dict(n, d)
    return vec(), vec()


def test_invariants_enforced():
    v = SparseVector(10, [5, 2, 9], [1.0, 0.0, -2.0])
    assert v.indices.tolist() == [5, 9] and v.values.tolist() == [1.0, -2.0]
    with pytest.raises(ValueError):
        SparseVector(10, [1, 1], [1.0, 2.0])
    with pytest.raises(ValueError):
        SparseVector(10, [0], [1.0])
    with pytest.raises(ValueError):
        SparseVector(10, [11], [1.0])
    with pytest.raises(ValueError):
        SparseVector(10, [1], [np.nan])
    with pytest.raises(AttributeError):
        v.n = 3
    with pytest.raises(ValueError):
        v.values[0] = 2.0


def test_example_table_products():
    a, b = example_tables()
    assert inner(encode_value_column(a), encode_key_indicator(b)) == 12.0
    assert inner(encode_key_indicator(a), encode_key_indicator(b)) == 4.0
    va, vb = restrict_to_intersection(encode_value_column(a), encode_value_column(b))
    assert va.indices.tolist() == [4, 5, 8, 11] == vb.indices.tolist()
    assert va.values.tolist() == [6.0, 1.0, 2.0, 3.0]
    assert vb.values.tolist() == [5.0, 1.0, 2.0, 2.5]


def test_norm_and_trivial_cases():
    assert norm(SparseVector(3, [2], [3.0])) == 3.0
    assert norm(SparseVector(3)) == 0.0
    assert norm(SparseVector(2, [1, 2], [3.0, 4.0])) == 5.0
    a, b = SparseVector(5, [1], [1.0]), SparseVector(5, [2], [1.0])
    assert inner(a, b) == 0.0
    ai, bi = restrict_to_intersection(a, b)
    assert ai.nnz == bi.nnz == 0
    assert restrict_to_intersection(a, a) == (a, a)
    with pytest.raises(ValueError):
        inner(a, SparseVector(6, [1], [1.0]))


@given(vector_pairs())
def test_inner_product_properties(pair):
    a, b = pair
    ai, bi = restrict_to_intersection(a, b)
    assert inner(a, b) == inner(ai, bi)
    assert abs(inner(a, b)) <= norm(a) * norm(b) * (1 + 1e-12) + 1e-12
    assert norm(ai) <= norm(a) and norm(bi) <= norm(b)
    assert overlap_scale(a, b) <= norm(a) * norm(b) * (1 + 1e-12)
    assert np.isclose(inner(a, b), float(a.to_dense() @ b.to_dense()), rtol=1e-12, atol=1e-9)


@given(vector_pairs())
def test_text_round_trip(pair):
    a, _ = pair
    assert parse_text(format_text(a)) == a


def test_text_file_and_errors(tmp_path):
    v = SparseVector(8, [1, 8], [0.5, -3.25])
    write_vector(v, tmp_path / "v.txt")
    assert read_vector(tmp_path / "v.txt") == v
    assert parse_text("# comment\nn=4\n\n2 1.5  # trailing\n") == SparseVector(4, [2], [1.5])
    for bad in ("", "2 1.0\n", "n=4\n1\n", "n=4\n5 1.0\n"):
        with pytest.raises(ValueError):
            parse_text(bad)


def test_dense_round_trip_and_scaling():
    d = np.array([0.0, 2.0, 0.0, -1.0])
    v = SparseVector.from_dense(d)
    assert v.indices.tolist() == [2, 4]
    assert np.array_equal(v.to_dense(), d)
    assert (2 * v).values.tolist() == [4.0, -2.0]
    assert v[4] == -1.0 and v[3] == 0.0 and len(v) == 2
    assert hash(v) == hash(SparseVector.from_dense(d))
