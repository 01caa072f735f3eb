#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "normsurf/errors.hpp"
#include "normsurf/rat.hpp"

namespace normsurf {

/// Dense rational matrix, row major. Sizes here are tiny (one row per prime
/// divisor of a surface presentation), so no sparsity or blocking.
class QMat {
public:
    QMat() : rows_(0), cols_(0) {}
    QMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}
    QMat(std::initializer_list<std::initializer_list<long long>> m) {
        rows_ = m.size();
        cols_ = rows_ ? m.begin()->size() : 0;
        e_.reserve(rows_ * cols_);
        for (const auto& row : m) {
            if (row.size() != cols_) throw ContractViolation("QMat: ragged initializer");
            for (long long x : row) e_.emplace_back(x);
        }
    }

    static QMat identity(std::size_t n) {
        QMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Rat(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    bool is_square() const { return rows_ == cols_; }
    bool is_symmetric() const {
        if (!is_square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if (at(i, j) != at(j, i)) return false;
        return true;
    }

    friend bool operator==(const QMat& a, const QMat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

    QMat mul(const QMat& o) const {
        if (cols_ != o.rows_) throw ContractViolation("QMat: dimension mismatch in mul");
        QMat r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Rat& a = at(i, k);
                if (a.is_zero()) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
            }
        return r;
    }

    QVec mul(const QVec& v) const {
        if (cols_ != v.size()) throw ContractViolation("QMat: dimension mismatch in mul");
        QVec r(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
        return r;
    }

private:
    std::size_t rows_, cols_;
    std::vector<Rat> e_;
};

inline Rat dot(const QVec& a, const QVec& b) {
    Rat s;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Signature of a symmetric bilinear form.
struct Inertia {
    std::size_t n_plus = 0;
    std::size_t n_zero = 0;
    std::size_t n_minus = 0;

    std::size_t dim() const { return n_plus + n_zero + n_minus; }
    bool negative_definite() const { return n_plus == 0 && n_zero == 0; }
    friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// Result of the exact symmetric decomposition. Besides the signature it
/// carries, when the form is not negative semidefinite, a rational direction
/// of strictly positive square; callers use it to seed constructive searches.
struct SymmetricDiagonalization {
    Inertia inertia;
    std::optional<QVec> positive_witness; // w with w^T m w > 0, present iff n_plus >= 1
};

/// Exact inertia of a symmetric rational matrix by congruence elimination with
/// full symmetric pivoting; 2x2 pivots handle the all-zero-diagonal case, so
/// singular forms are fine.
Inertia ldlt_inertia(const QMat& m);

/// ldlt_inertia plus a positive-square witness extracted from the congruence.
SymmetricDiagonalization ldlt_diagonalize(const QMat& m);

/// Exact solution of m x = rhs for square nonsingular m; the result is checked
/// by back-substitution. Throws SingularSystem (with a kernel vector) otherwise.
QVec solve_linear(const QMat& m, const QVec& rhs);

/// Exact inverse; m.mul(inverse(m)) is the identity, exactly.
QMat inverse(const QMat& m);

} // namespace normsurf
