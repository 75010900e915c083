#ifndef NILREP_MATRIX_HPP
#define NILREP_MATRIX_HPP

#include <vector>

#include "nilrep/cyclotomic.hpp"

namespace nilrep {

// Dense matrix over a fixed cyclotomic field.  All exact, no pivот scaling
// heuristics: pivots are chosen first-nonzero in row-major order so computed
// bases are reproducible.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0), conductor_(1) {}
    Matrix(size_t rows, size_t cols, long conductor)
        : rows_(rows), cols_(cols), conductor_(conductor),
          data_(rows * cols, Cyclotomic(Rational(0), conductor)) {}

    static Matrix identity(size_t n, long conductor);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    long conductor() const { return conductor_; }

    Cyclotomic& at(size_t i, size_t j) { return data_[i * cols_ + j]; }
    const Cyclotomic& at(size_t i, size_t j) const { return data_[i * cols_ + j]; }

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix pow(Integer e) const;  // e >= 0
    Matrix transpose() const;
    Matrix inverse() const;  // throws ValidationError if singular
    bool is_invertible() const;
    Cyclotomic trace() const;

    Matrix embed(long target_conductor) const;

    static Matrix block_diag(const std::vector<Matrix>& blocks);

private:
    size_t rows_, cols_;
    long conductor_;
    std::vector<Cyclotomic> data_;
};

// Sparse row container used by the intertwiner solvers.  Entries are kept
// sorted by column with no explicit zeros.
struct SparseRow {
    std::vector<std::pair<size_t, Cyclotomic>> entries;
    void add(size_t col, const Cyclotomic& value);
    bool empty() const { return entries.empty(); }
};

// Incremental row echelon over Q(zeta).  Rows are processed in submission
// order; leading entry of each surviving row becomes a pivot.
class RowEchelon {
public:
    explicit RowEchelon(size_t ncols) : ncols_(ncols) {}

    // reduce a row against current pivots, install it if nonzero remains
    void add_row(SparseRow row);
    size_t rank() const { return pivots_.size(); }

    // basis of the solution space of M x = 0, one column vector per basis
    // element, ordered by ascending free column
    std::vector<std::vector<Cyclotomic>> nullspace_basis(long conductor) const;

private:
    size_t ncols_;
    std::vector<SparseRow> pivot_rows_;           // echelon rows
    std::vector<size_t> pivots_;                  // leading column per row
    std::vector<long> pivot_of_col_;              // col -> index in pivot_rows_, lazily sized
    long pivot_index(size_t col) const;
    friend class NullspaceHelper;
};

// Nullspace of a dense matrix (rows x cols), returned as column vectors.
std::vector<std::vector<Cyclotomic>> nullspace(const Matrix& m);

size_t rank_of(const Matrix& m);

}  // namespace nilrep

#endif
