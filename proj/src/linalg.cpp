#include "amitsur/linalg.hpp"

#include <stdexcept>

namespace amitsur {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Vec Matrix::column(std::size_t c) const {
    Vec v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

void Matrix::set_column(std::size_t c, std::span<const Coeff> v) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Matrix multiply(const Zn& zn, const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            zn.axpy(a(i, k), b.row(k), out.row(i));
    return out;
}

Vec apply(const Zn& zn, const Matrix& m, std::span<const Coeff> x) {
    if (m.cols() != x.size()) throw std::invalid_argument("matrix/vector shape mismatch");
    Vec out(m.rows(), 0);
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (x[c] == 0) continue;
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (m(r, c) != 0) out[r] = zn.add(out[r], zn.mul(m(r, c), x[c]));
    }
    return out;
}

HowellForm howell_form(const Zn& zn, const Matrix& m) {
    const std::size_t cols = m.cols();
    std::vector<Vec> rows;
    rows.reserve(m.rows() + cols);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        auto row = m.row(r);
        rows.emplace_back(row.begin(), row.end());
    }
    std::vector<std::size_t> pivots;
    std::size_t top = 0;
    for (std::size_t c = 0; c < cols && top < rows.size(); ++c) {
        // Fold every remaining row's entry in column c into row `top`.
        for (std::size_t i = top + 1; i < rows.size(); ++i) {
            Vec& a = rows[top];
            Vec& b = rows[i];
            if (b[c] == 0) continue;
            if (a[c] == 0) { std::swap(a, b); continue; }
            auto e = ext_gcd(std::int64_t(a[c]), std::int64_t(b[c]));
            const Coeff s = zn.reduce(e.s), t = zn.reduce(e.t);
            const Coeff a_g = zn.reduce(std::int64_t(a[c]) / e.g);
            const Coeff mb_g = zn.reduce(-(std::int64_t(b[c]) / e.g));
            for (std::size_t j = c; j < cols; ++j) {
                const Coeff x = a[j], y = b[j];
                a[j] = zn.add(zn.mul(s, x), zn.mul(t, y));
                b[j] = zn.add(zn.mul(mb_g, x), zn.mul(a_g, y));
            }
        }
        Vec& p = rows[top];
        if (p[c] == 0) continue;
        const Coeff w = zn.normalizing_unit(p[c]);
        if (w != 1)
            for (auto& x : p) x = zn.mul(w, x);
        for (std::size_t i = 0; i < top; ++i) {
            const Coeff q = rows[i][c] / p[c];
            if (q != 0) zn.axpy(zn.neg(q), p, rows[i]);
        }
        // The annihilator multiple of the pivot row joins the pool.
        const std::uint64_t t = zn.modulus() / p[c];
        if (t != zn.modulus()) {
            Vec ann(cols, 0);
            bool nonzero = false;
            for (std::size_t j = c + 1; j < cols; ++j) {
                ann[j] = zn.mul(Coeff(t), p[j]);
                nonzero |= ann[j] != 0;
            }
            if (nonzero) rows.push_back(std::move(ann));
        }
        pivots.push_back(c);
        ++top;
    }
    HowellForm h{Matrix(top, cols), pivots};
    for (std::size_t r = 0; r < top; ++r)
        std::copy(rows[r].begin(), rows[r].end(), h.rows.row(r).begin());
    return h;
}

boost::multiprecision::cpp_int HowellForm::span_size(const Zn& zn) const {
    boost::multiprecision::cpp_int size = 1;
    for (std::size_t r = 0; r < rows.rows(); ++r)
        size *= zn.modulus() / zn.gcd(rows(r, pivot_cols[r]));
    return size;
}

Vec HowellForm::reduce(const Zn& zn, std::span<const Coeff> v) const {
    Vec out(v.begin(), v.end());
    for (std::size_t r = 0; r < rows.rows(); ++r) {
        const std::size_t c = pivot_cols[r];
        const Coeff p = rows(r, c);
        if (out[c] % p != 0) continue;
        zn.axpy(zn.neg(out[c] / p), rows.row(r), out);
    }
    return out;
}

namespace {

// Rows [ (m e_j)^T | e_j^T ]; the span's vectors are (m x, x).
Matrix augmented_transpose(const Matrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    Matrix a(cols, rows + cols);
    for (std::size_t j = 0; j < cols; ++j) {
        for (std::size_t i = 0; i < rows; ++i) a(j, i) = m(i, j);
        a(j, rows + j) = 1;
    }
    return a;
}

}  // namespace

Matrix kernel(const Zn& zn, const Matrix& m) {
    HowellForm h = howell_form(zn, augmented_transpose(m));
    std::vector<std::size_t> keep;
    for (std::size_t r = 0; r < h.rows.rows(); ++r)
        if (h.pivot_cols[r] >= m.rows()) keep.push_back(r);
    Matrix k(keep.size(), m.cols());
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) k(i, j) = h.rows(keep[i], m.rows() + j);
    return k;
}

boost::multiprecision::cpp_int kernel_size(const Zn& zn, const Matrix& m) {
    HowellForm h = howell_form(zn, augmented_transpose(m));
    boost::multiprecision::cpp_int size = 1;
    for (std::size_t r = 0; r < h.rows.rows(); ++r)
        if (h.pivot_cols[r] >= m.rows())
            size *= zn.modulus() / zn.gcd(h.rows(r, h.pivot_cols[r]));
    return size;
}

std::optional<Vec> solve(const Zn& zn, const Matrix& m, std::span<const Coeff> b) {
    if (b.size() != m.rows()) throw std::invalid_argument("solve: shape mismatch");
    HowellForm h = howell_form(zn, augmented_transpose(m));
    Vec target(m.rows() + m.cols(), 0);
    std::copy(b.begin(), b.end(), target.begin());
    Vec rest = h.reduce(zn, target);
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (rest[i] != 0) return std::nullopt;
    Vec x(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) x[j] = zn.neg(rest[m.rows() + j]);
    return x;
}

bool is_injective(const Zn& zn, const Matrix& m) {
    // Injective iff the image (span of the columns) has n^cols elements.
    HowellForm h = howell_form(zn, m.transpose());
    bool all_unit = true;
    for (std::size_t r = 0; r < h.rows.rows(); ++r) all_unit &= h.rows(r, h.pivot_cols[r]) == 1;
    if (all_unit) return h.rows.rows() == m.cols();
    return h.span_size(zn) == boost::multiprecision::pow(boost::multiprecision::cpp_int(zn.modulus()),
                                                         unsigned(m.cols()));
}

bool is_bijective(const Zn& zn, const Matrix& m) {
    return m.rows() == m.cols() && is_injective(zn, m);
}

}  // namespace amitsur
