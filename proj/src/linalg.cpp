#include "normsurf/linalg.hpp"

namespace normsurf {

namespace {

// State for the congruence elimination T m T^T = D with D block diagonal
// (1x1 blocks and [[0,a],[a,0]] blocks).
struct Congruence {
    QMat a;             // working copy, kept symmetric
    QMat t;             // accumulated transform
    std::size_t n;

    explicit Congruence(const QMat& m) : a(m), t(QMat::identity(m.rows())), n(m.rows()) {}

    void swap_symmetric(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < n; ++k) std::swap(a.at(i, k), a.at(j, k));
        for (std::size_t k = 0; k < n; ++k) std::swap(a.at(k, i), a.at(k, j));
        for (std::size_t k = 0; k < n; ++k) std::swap(t.at(i, k), t.at(j, k));
    }

    // row_i -= f * row_k, applied symmetrically to a and plainly to t
    void eliminate(std::size_t i, std::size_t k, const Rat& f) {
        if (f.is_zero()) return;
        for (std::size_t c = 0; c < n; ++c) a.at(i, c) -= f * a.at(k, c);
        for (std::size_t c = 0; c < n; ++c) a.at(c, i) -= f * a.at(c, k);
        for (std::size_t c = 0; c < n; ++c) t.at(i, c) -= f * t.at(k, c);
    }
};

} // namespace

SymmetricDiagonalization ldlt_diagonalize(const QMat& m) {
    if (!m.is_symmetric())
        throw ContractViolation("ldlt_inertia: matrix is not symmetric");

    const std::size_t n = m.rows();
    Congruence c(m);
    SymmetricDiagonalization out;
    // (index, +1 for a 1x1 block / +2 for a 2x2 block) of each pivot
    std::vector<std::pair<std::size_t, int>> blocks;

    std::size_t k = 0;
    while (k < n) {
        // full symmetric pivoting: largest |diagonal| first
        std::size_t p = k;
        Rat best = c.a.at(k, k).abs();
        for (std::size_t i = k + 1; i < n; ++i) {
            Rat cand = c.a.at(i, i).abs();
            if (cand > best) { best = cand; p = i; }
        }
        if (!c.a.at(p, p).is_zero()) {
            c.swap_symmetric(k, p);
            const Rat d = c.a.at(k, k);
            if (d.sign() > 0) ++out.inertia.n_plus; else ++out.inertia.n_minus;
            for (std::size_t i = k + 1; i < n; ++i) c.eliminate(i, k, c.a.at(i, k) / d);
            blocks.emplace_back(k, 1);
            ++k;
            continue;
        }

        // all remaining diagonal entries vanish; look for an off-diagonal pivot
        std::size_t bi = 0, bj = 0;
        Rat babs;
        for (std::size_t i = k; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                Rat cand = c.a.at(i, j).abs();
                if (cand > babs) { babs = cand; bi = i; bj = j; }
            }
        if (babs.is_zero()) {
            out.inertia.n_zero += n - k;
            break;
        }

        c.swap_symmetric(k, bi);   // bi >= k, bj > bi, so bj is untouched here
        c.swap_symmetric(k + 1, bj);
        const Rat av = c.a.at(k, k + 1); // block is [[0,a],[a,0]], eigenvalues +-a
        ++out.inertia.n_plus;
        ++out.inertia.n_minus;
        for (std::size_t i = k + 2; i < n; ++i) {
            const Rat x = c.a.at(i, k + 1) / av;
            const Rat y = c.a.at(i, k) / av;
            // subtract x*row_k + y*row_{k+1} in one symmetric pass
            for (std::size_t col = 0; col < c.n; ++col) {
                Rat delta = x * c.a.at(k, col) + y * c.a.at(k + 1, col);
                c.a.at(i, col) -= delta;
            }
            for (std::size_t col = 0; col < c.n; ++col) {
                Rat delta = x * c.a.at(col, k) + y * c.a.at(col, k + 1);
                c.a.at(col, i) -= delta;
            }
            for (std::size_t col = 0; col < c.n; ++col)
                c.t.at(i, col) -= x * c.t.at(k, col) + y * c.t.at(k + 1, col);
        }
        blocks.emplace_back(k, 2);
        k += 2;
    }

    if (out.inertia.n_plus > 0) {
        // first block contributing a positive direction, read off the transform
        for (const auto& [idx, size] : blocks) {
            if (size == 1) {
                if (c.a.at(idx, idx).sign() > 0) {
                    QVec w(n);
                    for (std::size_t col = 0; col < n; ++col) w[col] = c.t.at(idx, col);
                    out.positive_witness = std::move(w);
                    break;
                }
            } else {
                // (t_k +- t_{k+1}) m (t_k +- t_{k+1})^T = +-2a
                const int s = c.a.at(idx, idx + 1).sign() > 0 ? 1 : -1;
                QVec w(n);
                for (std::size_t col = 0; col < n; ++col) {
                    w[col] = c.t.at(idx, col);
                    if (s > 0) w[col] += c.t.at(idx + 1, col);
                    else w[col] -= c.t.at(idx + 1, col);
                }
                out.positive_witness = std::move(w);
                break;
            }
        }
    }
    return out;
}

Inertia ldlt_inertia(const QMat& m) { return ldlt_diagonalize(m).inertia; }

namespace {

// Gauss-Jordan on [m | extra]; returns pivot column map, or a kernel vector on
// rank deficiency via the out parameter.
struct Echelon {
    QMat aug;
    std::vector<std::size_t> pivot_col_of_row;
};

QVec kernel_vector(const QMat& m) {
    // reduced row echelon of m alone, then back out a free-column vector
    const std::size_t n = m.rows();
    QMat r = m;
    std::vector<long> pivot_row_of_col(n, -1);
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < n; ++col) {
        std::size_t p = row;
        Rat best = r.at(row, col).abs();
        for (std::size_t i = row + 1; i < n; ++i) {
            Rat cand = r.at(i, col).abs();
            if (cand > best) { best = cand; p = i; }
        }
        if (best.is_zero()) continue;
        for (std::size_t c = 0; c < n; ++c) std::swap(r.at(row, c), r.at(p, c));
        const Rat d = r.at(row, col);
        for (std::size_t c = 0; c < n; ++c) r.at(row, c) /= d;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == row) continue;
            const Rat f = r.at(i, col);
            if (f.is_zero()) continue;
            for (std::size_t c = 0; c < n; ++c) r.at(i, c) -= f * r.at(row, c);
        }
        pivot_row_of_col[col] = static_cast<long>(row);
        ++row;
    }
    for (std::size_t col = 0; col < n; ++col) {
        if (pivot_row_of_col[col] >= 0) continue;
        QVec k(n);
        k[col] = Rat(1);
        for (std::size_t c = 0; c < n; ++c)
            if (pivot_row_of_col[c] >= 0)
                k[c] = -r.at(static_cast<std::size_t>(pivot_row_of_col[c]), col);
        return k;
    }
    throw std::logic_error("kernel_vector: matrix is nonsingular");
}

// Gauss-Jordan solve of m X = rhs for square m; throws SingularSystem.
QMat gauss_jordan(const QMat& m, const QMat& rhs, const char* who) {
    if (!m.is_square()) throw ContractViolation(std::string(who) + ": matrix is not square");
    const std::size_t n = m.rows();
    QMat a = m, b = rhs;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        Rat best = a.at(col, col).abs();
        for (std::size_t i = col + 1; i < n; ++i) {
            Rat cand = a.at(i, col).abs();
            if (cand > best) { best = cand; p = i; }
        }
        if (best.is_zero())
            throw SingularSystem(std::string(who) + ": singular matrix", kernel_vector(m));
        for (std::size_t c = 0; c < n; ++c) std::swap(a.at(col, c), a.at(p, c));
        for (std::size_t c = 0; c < b.cols(); ++c) std::swap(b.at(col, c), b.at(p, c));
        const Rat d = a.at(col, col);
        for (std::size_t c = 0; c < n; ++c) a.at(col, c) /= d;
        for (std::size_t c = 0; c < b.cols(); ++c) b.at(col, c) /= d;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col) continue;
            const Rat f = a.at(i, col);
            if (f.is_zero()) continue;
            for (std::size_t c = 0; c < n; ++c) a.at(i, c) -= f * a.at(col, c);
            for (std::size_t c = 0; c < b.cols(); ++c) b.at(i, c) -= f * b.at(col, c);
        }
    }
    return b;
}

} // namespace

QVec solve_linear(const QMat& m, const QVec& rhs) {
    if (m.rows() != rhs.size())
        throw ContractViolation("solve_linear: rhs length mismatch");
    QMat b(rhs.size(), 1);
    for (std::size_t i = 0; i < rhs.size(); ++i) b.at(i, 0) = rhs[i];
    QMat x = gauss_jordan(m, b, "solve_linear");
    QVec out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) out[i] = x.at(i, 0);
    // back-substitution check: elimination bugs must not escape silently
    QVec check = m.mul(out);
    for (std::size_t i = 0; i < check.size(); ++i)
        if (check[i] != rhs[i]) throw std::logic_error("solve_linear: verification failed");
    return out;
}

QMat inverse(const QMat& m) {
    QMat inv = gauss_jordan(m, QMat::identity(m.rows()), "inverse");
    if (!(m.mul(inv) == QMat::identity(m.rows())))
        throw std::logic_error("inverse: verification failed");
    return inv;
}

} // namespace normsurf
