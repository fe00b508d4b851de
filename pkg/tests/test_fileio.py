import numpy as np
import pytest
import scipy.io

from ridgeproj import (
    ConvergenceTrace,
    DesignMatrix,
    load_matrix,
    load_trace_csv,
    load_vector,
    save_matrix,
    save_trace_csv,
    save_vector,
)
from helpers import random_csr


class TestMatrixMarket:
    def test_coordinate_roundtrip(self, tmp_path):
        rng = np.random.default_rng(0)
        A, arr = random_csr(rng, 12, 9, density=0.3)
        path = tmp_path / "m.mtx"
        save_matrix(A, str(path))
        back = load_matrix(str(path))
        assert back.storage == "csr"
        assert back.nnz == A.nnz
        assert np.array_equal(back.toarray(), arr)

    def test_array_roundtrip_exact(self, tmp_path):
        rng = np.random.default_rng(1)
        arr = rng.standard_normal((7, 5))
        A = DesignMatrix.from_dense(arr)
        path = tmp_path / "dense.mtx"
        save_matrix(A, str(path))
        back = load_matrix(str(path))
        assert np.array_equal(back.toarray(), arr)

    def test_scipy_reads_our_files(self, tmp_path):
        rng = np.random.default_rng(2)
        A, arr = random_csr(rng, 8, 6)
        path = tmp_path / "x.mtx"
        save_matrix(A, str(path))
        assert np.allclose(scipy.io.mmread(str(path)).toarray(), arr, atol=0)

    def test_we_read_scipy_files(self, tmp_path):
        rng = np.random.default_rng(3)
        arr = np.round(rng.standard_normal((6, 4)), 6)
        arr[np.abs(arr) < 0.6] = 0.0
        path = tmp_path / "s.mtx"
        scipy.io.mmwrite(str(path), scipy.sparse.coo_matrix(arr))
        assert np.allclose(load_matrix(str(path)).toarray(), arr, atol=0)

    def test_small_coordinate_literal(self, tmp_path):
        path = tmp_path / "lit.mtx"
        path.write_text(
            "%%MatrixMarket matrix coordinate real general\n"
            "% a comment\n"
            "2 2 3\n"
            "1 1 1.5\n"
            "1 2 -2\n"
            "2 2 4\n"
        )
        A = load_matrix(str(path))
        assert A.storage == "csr"
        assert A.nnz == 3
        assert np.array_equal(A.toarray(), [[1.5, -2.0], [0.0, 4.0]])

    def test_errors_carry_line_numbers(self, tmp_path):
        cases = [
            ("%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 2\n", ":1:"),
            ("%%MatrixMarket matrix coordinate real general\n2 2\n", ":2:"),
            ("%%MatrixMarket matrix coordinate real general\n1 1 1\n5 5 2\n", ":3:"),
            ("%%MatrixMarket matrix coordinate real general\n1 1 1\n1 1 oops\n", ":3:"),
            ("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n", "expected 4 values"),
        ]
        for text, needle in cases:
            path = tmp_path / "bad.mtx"
            path.write_text(text)
            with pytest.raises(ValueError, match=needle):
                load_matrix(str(path))

    def test_array_column_major(self, tmp_path):
        path = tmp_path / "cm.mtx"
        path.write_text(
            "%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n4\n"
        )
        assert np.array_equal(load_matrix(str(path)).toarray(), [[1.0, 3.0], [2.0, 4.0]])


class TestCsv:
    def test_matrix_roundtrip(self, tmp_path):
        rng = np.random.default_rng(4)
        arr = rng.standard_normal((5, 3))
        path = tmp_path / "m.csv"
        save_matrix(DesignMatrix.from_dense(arr), str(path))
        assert np.array_equal(load_matrix(str(path)).toarray(), arr)

    def test_vector_roundtrip(self, tmp_path):
        rng = np.random.default_rng(5)
        x = rng.standard_normal(9)
        path = tmp_path / "v.csv"
        save_vector(x, str(path))
        assert np.array_equal(load_vector(str(path)), x)

    def test_vector_single_line_form(self, tmp_path):
        path = tmp_path / "row.csv"
        path.write_text("1.5,2.5,-3\n")
        assert np.array_equal(load_vector(str(path)), [1.5, 2.5, -3.0])

    def test_empty_file_errors(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("")
        with pytest.raises(ValueError, match="empty"):
            load_matrix(str(path))
        with pytest.raises(ValueError, match="empty"):
            load_vector(str(path))

    def test_ragged_matrix_errors_with_line(self, tmp_path):
        path = tmp_path / "ragged.csv"
        path.write_text("1,2\n3\n")
        with pytest.raises(ValueError, match=":2:"):
            load_matrix(str(path))

    def test_vector_rejects_matrix(self, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text("1,2\n3,4\n")
        with pytest.raises(ValueError, match="one value per line"):
            load_vector(str(path))


class TestTraceCsv:
    def test_roundtrip_identical_records(self, tmp_path):
        trace = ConvergenceTrace(records=[(0, 1.0), (1, 0.25), (2, 1e-17)],
                                 algorithm="projection",
                                 metadata={"gamma": 0.1})
        path = tmp_path / "t.csv"
        save_trace_csv(trace, str(path))
        back = load_trace_csv(str(path))
        assert back.records == trace.records

    def test_header_enforced(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("iter,err\n0,1\n")
        with pytest.raises(ValueError, match="header"):
            load_trace_csv(str(path))
