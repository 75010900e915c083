#include "nilrep/matrix.hpp"

#include <algorithm>

namespace nilrep {

Matrix Matrix::identity(size_t n, long conductor) {
    Matrix m(n, n, conductor);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = Cyclotomic(Rational(1), conductor);
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_ || conductor_ != o.conductor_)
        throw ValidationError("matrix product shape/field mismatch");
    Matrix r(rows_, o.cols_, conductor_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            const Cyclotomic& a = at(i, k);
            if (a.is_zero()) continue;
            for (size_t j = 0; j < o.cols_; ++j) {
                const Cyclotomic& b = o.at(k, j);
                if (b.is_zero()) continue;
                r.at(i, j) += a * b;
            }
        }
    return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || conductor_ != o.conductor_)
        throw ValidationError("matrix sum shape/field mismatch");
    Matrix r(rows_, cols_, conductor_);
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || conductor_ != o.conductor_)
        throw ValidationError("matrix difference shape/field mismatch");
    Matrix r(rows_, cols_, conductor_);
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
    return r;
}

bool Matrix::operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && conductor_ == o.conductor_ &&
           data_ == o.data_;
}

Matrix Matrix::pow(Integer e) const {
    if (rows_ != cols_) throw ValidationError("matrix power needs square matrix");
    if (e < 0) throw ValidationError("matrix power: negative exponent");
    Matrix result = identity(rows_, conductor_);
    Matrix base = *this;
    while (e > 0) {
        if ((e & 1) != 0) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

Matrix Matrix::transpose() const {
    Matrix r(cols_, rows_, conductor_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

Matrix Matrix::inverse() const {
    if (rows_ != cols_) throw ValidationError("inverse of non-square matrix");
    size_t n = rows_;
    Matrix work = *this;
    Matrix inv = identity(n, conductor_);
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        while (pivot < n && work.at(pivot, col).is_zero()) ++pivot;
        if (pivot == n) throw ValidationError("matrix is singular");
        if (pivot != col)
            for (size_t j = 0; j < n; ++j) {
                std::swap(work.at(pivot, j), work.at(col, j));
                std::swap(inv.at(pivot, j), inv.at(col, j));
            }
        Cyclotomic scale = work.at(col, col).inverse();
        for (size_t j = 0; j < n; ++j) {
            work.at(col, j) *= scale;
            inv.at(col, j) *= scale;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == col || work.at(i, col).is_zero()) continue;
            Cyclotomic factor = work.at(i, col);
            for (size_t j = 0; j < n; ++j) {
                work.at(i, j) -= factor * work.at(col, j);
                inv.at(i, j) -= factor * inv.at(col, j);
            }
        }
    }
    return inv;
}

bool Matrix::is_invertible() const {
    return rows_ == cols_ && rank_of(*this) == rows_;
}

Cyclotomic Matrix::trace() const {
    Cyclotomic t(Rational(0), conductor_);
    for (size_t i = 0; i < std::min(rows_, cols_); ++i) t += at(i, i);
    return t;
}

Matrix Matrix::embed(long target) const {
    Matrix r(rows_, cols_, target);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j).embed(target);
    return r;
}

Matrix Matrix::block_diag(const std::vector<Matrix>& blocks) {
    if (blocks.empty()) return Matrix();
    size_t n = 0, m = 0;
    for (const auto& b : blocks) {
        n += b.rows();
        m += b.cols();
    }
    Matrix r(n, m, blocks[0].conductor());
    size_t ro = 0, co = 0;
    for (const auto& b : blocks) {
        for (size_t i = 0; i < b.rows(); ++i)
            for (size_t j = 0; j < b.cols(); ++j) r.at(ro + i, co + j) = b.at(i, j);
        ro += b.rows();
        co += b.cols();
    }
    return r;
}

void SparseRow::add(size_t col, const Cyclotomic& value) {
    if (value.is_zero()) return;
    auto it = std::lower_bound(entries.begin(), entries.end(), col,
                               [](const auto& e, size_t c) { return e.first < c; });
    if (it != entries.end() && it->first == col) {
        it->second += value;
        if (it->second.is_zero()) entries.erase(it);
    } else {
        entries.insert(it, {col, value});
    }
}

long RowEchelon::pivot_index(size_t col) const {
    if (col >= pivot_of_col_.size()) return -1;
    return pivot_of_col_[col];
}

void RowEchelon::add_row(SparseRow row) {
    while (!row.empty()) {
        size_t lead = row.entries.front().first;
        long pi = pivot_index(lead);
        if (pi < 0) {
            // normalize so the leading entry is 1
            Cyclotomic inv = row.entries.front().second.inverse();
            for (auto& e : row.entries) e.second *= inv;
            if (pivot_of_col_.size() <= lead) pivot_of_col_.resize(lead + 1, -1);
            pivot_of_col_[lead] = static_cast<long>(pivot_rows_.size());
            pivots_.push_back(lead);
            pivot_rows_.push_back(std::move(row));
            return;
        }
        // eliminate the leading entry against the stored pivot row
        Cyclotomic factor = row.entries.front().second;
        SparseRow next;
        const SparseRow& p = pivot_rows_[static_cast<size_t>(pi)];
        size_t a = 0, b = 0;
        while (a < row.entries.size() || b < p.entries.size()) {
            if (b == p.entries.size() ||
                (a < row.entries.size() && row.entries[a].first < p.entries[b].first)) {
                next.entries.push_back(row.entries[a++]);
            } else if (a == row.entries.size() || p.entries[b].first < row.entries[a].first) {
                next.entries.emplace_back(p.entries[b].first, -(factor * p.entries[b].second));
                ++b;
            } else {
                Cyclotomic v = row.entries[a].second - factor * p.entries[b].second;
                if (!v.is_zero()) next.entries.emplace_back(row.entries[a].first, v);
                ++a;
                ++b;
            }
        }
        row = std::move(next);
    }
}

std::vector<std::vector<Cyclotomic>> RowEchelon::nullspace_basis(long conductor) const {
    // back-substitution: one basis vector per free column
    // first fully reduce pivot rows against each other (upper echelon -> rref)
    std::vector<SparseRow> rref = pivot_rows_;
    // process pivots with larger leading columns first
    std::vector<size_t> order(rref.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return pivots_[a] > pivots_[b]; });
    for (size_t oi = 0; oi < order.size(); ++oi) {
        size_t i = order[oi];
        // eliminate later pivot columns from row i
        SparseRow& r = rref[i];
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t k = 1; k < r.entries.size(); ++k) {
                long pi = pivot_index(r.entries[k].first);
                if (pi < 0 || static_cast<size_t>(pi) == i) continue;
                Cyclotomic factor = r.entries[k].second;
                const SparseRow& p = rref[static_cast<size_t>(pi)];
                for (const auto& e : p.entries) r.add(e.first, -(factor * e.second));
                changed = true;
                break;
            }
        }
    }

    std::vector<bool> is_pivot(ncols_, false);
    for (size_t c : pivots_)
        if (c < ncols_) is_pivot[c] = true;

    std::vector<std::vector<Cyclotomic>> basis;
    Cyclotomic one(Rational(1), conductor);
    for (size_t free_col = 0; free_col < ncols_; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<Cyclotomic> v(ncols_, Cyclotomic(Rational(0), conductor));
        v[free_col] = one;
        for (size_t i = 0; i < rref.size(); ++i) {
            // pivot_col value = -(coefficient of free_col in row i)
            for (const auto& e : rref[i].entries) {
                if (e.first == free_col) {
                    v[pivots_[i]] = -e.second;
                    break;
                }
            }
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<std::vector<Cyclotomic>> nullspace(const Matrix& m) {
    RowEchelon ech(m.cols());
    for (size_t i = 0; i < m.rows(); ++i) {
        SparseRow row;
        for (size_t j = 0; j < m.cols(); ++j)
            if (!m.at(i, j).is_zero()) row.entries.emplace_back(j, m.at(i, j));
        ech.add_row(std::move(row));
    }
    return ech.nullspace_basis(m.conductor());
}

size_t rank_of(const Matrix& m) {
    RowEchelon ech(m.cols());
    for (size_t i = 0; i < m.rows(); ++i) {
        SparseRow row;
        for (size_t j = 0; j < m.cols(); ++j)
            if (!m.at(i, j).is_zero()) row.entries.emplace_back(j, m.at(i, j));
        ech.add_row(std::move(row));
    }
    return ech.rank();
}

}  // namespace nilrep
