"""Dataset loading, binning, canonicalization, and the synthesized benchmark."""

import io

import numpy as np
import pytest

from divsel.data import (
    BinningSpec,
    Dataset,
    DiscreteColumn,
    dataset_from_matrices,
    generate_synthesized,
    load_dense_csv,
    load_sparse_multilabel,
    write_dense_csv,
)
from divsel.errors import ParseError, ValidationError
from divsel.info import nvi_distance

DENSE_EXAMPLE = "a,b,y\n0,0,0\n0,1,0\n1,0,1\n1,1,1\n"


def test_dense_csv_basic():
    data = load_dense_csv(io.StringIO(DENSE_EXAMPLE), 1)
    assert (data.n_instances, data.n_features, data.n_labels) == (4, 2, 1)
    assert data.feature_names == ("a", "b")
    assert data.label_names == ("y",)
    assert data.features[0].codes.tolist() == [0, 0, 1, 1]
    assert data.labels[0].codes.tolist() == [0, 0, 1, 1]


def test_dense_csv_label_count_leaves_no_features():
    with pytest.raises(ValidationError):
        load_dense_csv(io.StringIO(DENSE_EXAMPLE), 3)


def test_dense_csv_no_header():
    data = load_dense_csv(io.StringIO("0,1\n1,0\n"), 1, has_header=False)
    assert data.feature_names == ("f0",)
    assert data.label_names == ("y0",)


def test_dense_csv_parse_errors_name_the_line():
    with pytest.raises(ParseError, match="line 3"):
        load_dense_csv(io.StringIO("a,y\n0,0\n1\n"), 1)
    with pytest.raises(ParseError, match="line 2.*non-numeric"):
        load_dense_csv(io.StringIO("a,y\n x,0\n"), 1)
    with pytest.raises(ParseError, match="non-finite"):
        load_dense_csv(io.StringIO("a,y\nnan,0\n"), 1)
    with pytest.raises(ValidationError, match="no data rows"):
        load_dense_csv(io.StringIO("a,y\n"), 1)
    with pytest.raises(ParseError, match="empty"):
        load_dense_csv(io.StringIO(""), 1)


def test_dense_csv_crlf_endings():
    data = load_dense_csv(io.StringIO("a,y\r\n0,1\r\n1,0\r\n"), 1)
    assert data.features[0].codes.tolist() == [0, 1]


def test_multiclass_label_needs_flag():
    text = "a,y\n0,0\n1,1\n0,2\n"
    with pytest.raises(ValidationError, match="more than 2"):
        load_dense_csv(io.StringIO(text), 1)
    data = load_dense_csv(io.StringIO(text), 1, allow_multiclass_labels=True)
    assert data.labels[0].cardinality == 3


def test_equal_frequency_binning_balances_counts():
    rng = np.random.default_rng(3)
    values = rng.permutation(np.linspace(0.0, 1.0, 100))
    col = DiscreteColumn.from_values(values, BinningSpec(bins=5))
    assert col.cardinality == 5
    counts = np.bincount(col.codes)
    assert counts.tolist() == [20, 20, 20, 20, 20]


def test_equal_frequency_binning_with_ties():
    # heavy ties can merge bins; coverage and balance within one element
    values = np.repeat(np.arange(4), 25).astype(float)
    col = DiscreteColumn.from_values(values, BinningSpec(bins=5))
    assert col.cardinality <= 5
    assert set(col.codes.tolist()) == set(range(col.cardinality))


def test_equal_width_binning():
    values = np.linspace(0.0, 10.0, 100)
    col = DiscreteColumn.from_values(values, BinningSpec(strategy="equal_width", bins=4))
    assert col.cardinality == 4
    assert col.codes[0] == 0 and col.codes[-1] == 3


def test_small_cardinality_skips_binning():
    values = np.array([7.0, 3.0, 7.0, 11.0])
    col = DiscreteColumn.from_values(values, BinningSpec(bins=2))
    # 3 distinct <= max_raw_categories: codes by sorted raw value
    assert col.codes.tolist() == [1, 0, 1, 2]
    assert col.cardinality == 3


def test_binning_none_only_canonicalizes():
    values = np.arange(100, dtype=float)
    col = DiscreteColumn.from_values(values, BinningSpec(strategy="none"))
    assert col.cardinality == 100


def test_binning_spec_validation():
    with pytest.raises(ValueError):
        BinningSpec(strategy="magic")
    with pytest.raises(ValueError):
        BinningSpec(bins=1)
    with pytest.raises(ValueError):
        BinningSpec(max_raw_categories=0)
    BinningSpec(strategy="none", bins=1)  # bins unused


def test_discrete_column_invariants():
    with pytest.raises(ValueError):
        DiscreteColumn(np.array([0, 2]), 3)  # code 1 missing
    with pytest.raises(ValueError):
        DiscreteColumn(np.array([0, 3]), 3)  # out of range
    col = DiscreteColumn(np.array([1, 0, 1]), 2)
    with pytest.raises(ValueError):
        col.codes[0] = 1


def test_dataset_validation():
    col = DiscreteColumn(np.array([0, 1]), 2)
    with pytest.raises(ValidationError, match="unique"):
        Dataset((col, col), ("a", "a"), (col,), ("y",), 2)
    with pytest.raises(ValidationError, match="at least one feature"):
        Dataset((), (), (col,), ("y",), 2)
    short = DiscreteColumn(np.array([0, 1, 1]), 2)
    with pytest.raises(ValidationError, match="length"):
        Dataset((col,), ("a",), (short,), ("y",), 2)


SPARSE_EXAMPLE = "0 1:1\n 2:1\n0,1 1:1 2:1\n"


def test_sparse_basic():
    data = load_sparse_multilabel(io.StringIO(SPARSE_EXAMPLE), 2, 2)
    assert data.n_instances == 3
    assert data.labels[0].codes.tolist() == [1, 0, 1]
    assert data.labels[1].codes.tolist() == [0, 0, 1]
    assert data.features[0].codes.tolist() == [1, 0, 1]
    assert data.features[1].codes.tolist() == [0, 1, 1]


def test_sparse_empty_file_loads_then_fails_downstream():
    data = load_sparse_multilabel(io.StringIO(""), 2, 1)
    assert data.n_instances == 0
    from divsel.info import InfoCache

    cache = InfoCache(data)
    with pytest.raises(ValueError):
        cache.mi_table()


def test_sparse_parse_errors():
    with pytest.raises(ParseError, match="line 1.*increase"):
        load_sparse_multilabel(io.StringIO("0 2:1 1:1\n"), 2, 1)
    with pytest.raises(ParseError, match="label id 5"):
        load_sparse_multilabel(io.StringIO("5 1:1\n"), 2, 2)
    with pytest.raises(ParseError, match="index 9"):
        load_sparse_multilabel(io.StringIO("0 9:1\n"), 2, 1)
    with pytest.raises(ParseError, match="bad entry"):
        load_sparse_multilabel(io.StringIO("0 1:zz\n"), 2, 1)
    with pytest.raises(ParseError, match=">= 0"):
        load_sparse_multilabel(io.StringIO("0 1:-3\n"), 2, 1)


def test_round_trip_dense_csv():
    rng = np.random.default_rng(8)
    data = dataset_from_matrices(rng.integers(0, 4, (5, 30)), rng.integers(0, 2, (2, 30)))
    buf = io.StringIO()
    write_dense_csv(data, buf)
    back = load_dense_csv(io.StringIO(buf.getvalue()), 2, binning=BinningSpec(strategy="none"))
    assert back.feature_names == data.feature_names
    for a, b in zip(back.features, data.features):
        assert a.codes.tolist() == b.codes.tolist()
    for a, b in zip(back.labels, data.labels):
        assert a.codes.tolist() == b.codes.tolist()


def test_canonicalization_covers_dense_range():
    rng = np.random.default_rng(9)
    for _ in range(50):
        vals = rng.choice([3.0, 7.5, -2.0, 100.0, 0.0], size=rng.integers(1, 40))
        col = DiscreteColumn.from_values(vals)
        assert sorted(set(col.codes.tolist())) == list(range(col.cardinality))


def test_synthesized_shape_and_agreements(synth):
    assert (synth.n_features, synth.n_instances, synth.n_labels) == (800, 256, 8)
    for lab in range(8):
        y = synth.labels[lab].codes
        a = synth.features[lab * 100].codes
        b = synth.features[lab * 100 + 50].codes
        assert int(np.sum(a == y)) == 128
        assert int(np.sum(b == y)) == 64


def test_synthesized_repeats_are_verbatim(synth):
    for block in range(16):
        base = synth.features[block * 50].codes
        for rep in range(1, 50):
            assert np.array_equal(synth.features[block * 50 + rep].codes, base)


def test_synthesized_duplicates_have_zero_distance(synth):
    assert nvi_distance(synth.features[0].codes, synth.features[17].codes) == 0.0
    assert nvi_distance(synth.features[120].codes, synth.features[149].codes) == 0.0


def test_synthesized_deterministic():
    a = generate_synthesized(123)
    b = generate_synthesized(123)
    c = generate_synthesized(124)
    assert all(
        np.array_equal(x.codes, y.codes) for x, y in zip(a.features + a.labels, b.features + b.labels)
    )
    assert any(
        not np.array_equal(x.codes, y.codes) for x, y in zip(a.features, c.features)
    )


def test_synthesized_names(synth):
    assert synth.feature_names[0] == "x0a00"
    assert synth.feature_names[50] == "x0b00"
    assert synth.feature_names[799] == "x7b49"
    assert synth.label_names == tuple(f"y{j}" for j in range(8))
