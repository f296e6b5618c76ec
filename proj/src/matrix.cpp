#include "mtor/matrix.hpp"

#include <cassert>
#include <utility>

namespace mtor {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool IntMatrix::is_zero() const {
    for (const Int& x : a_)
        if (x != 0) return false;
    return true;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    assert(cols_ == o.rows_);
    IntMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Int& x = at(i, k);
            if (x == 0) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) += x * o.at(k, j);
        }
    return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    IntMatrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

IntMatrix IntMatrix::pow(unsigned k) const {
    assert(square());
    IntMatrix r = identity(rows_);
    IntMatrix base = *this;
    while (k) {
        if (k & 1u) r = r * base;
        base = base * base;
        k >>= 1u;
    }
    return r;
}

Int IntMatrix::det() const {
    assert(square());
    const int n = rows_;
    if (n == 0) return 1;
    IntMatrix m = *this;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
        prev = m.at(k, k);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : -m.at(n - 1, n - 1);
}

namespace {

// Position of an entry of minimal nonzero absolute value in the trailing block.
bool find_pivot(const IntMatrix& m, int s, int& pi, int& pj) {
    Int best = 0;
    pi = pj = -1;
    for (int i = s; i < m.rows(); ++i)
        for (int j = s; j < m.cols(); ++j) {
            Int v = abs(m.at(i, j));
            if (v != 0 && (pi < 0 || v < best)) {
                best = v;
                pi = i;
                pj = j;
            }
        }
    return pi >= 0;
}

} // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
    IntMatrix m = a;
    const int r = m.rows(), c = m.cols();
    SmithForm out;
    out.v = IntMatrix::identity(c);

    auto swap_rows = [&](int i, int j) {
        for (int k = 0; k < c; ++k) std::swap(m.at(i, k), m.at(j, k));
    };
    auto swap_cols = [&](int i, int j) {
        for (int k = 0; k < r; ++k) std::swap(m.at(k, i), m.at(k, j));
        for (int k = 0; k < c; ++k) std::swap(out.v.at(k, i), out.v.at(k, j));
    };
    auto add_row = [&](int dst, int src, const Int& f) { // row dst += f * row src
        for (int k = 0; k < c; ++k) m.at(dst, k) += f * m.at(src, k);
    };
    auto add_col = [&](int dst, int src, const Int& f) {
        for (int k = 0; k < r; ++k) m.at(k, dst) += f * m.at(k, src);
        for (int k = 0; k < c; ++k) out.v.at(k, dst) += f * out.v.at(k, src);
    };

    const int steps = std::min(r, c);
    for (int s = 0; s < steps; ++s) {
        int pi, pj;
        if (!find_pivot(m, s, pi, pj)) break;
        swap_rows(s, pi);
        swap_cols(s, pj);

        for (bool clean = false; !clean;) {
            clean = true;
            for (int i = s + 1; i < r; ++i)
                if (m.at(i, s) != 0) {
                    Int q = m.at(i, s) / m.at(s, s);
                    add_row(i, s, -q);
                    if (m.at(i, s) != 0) { // remainder became the smaller pivot
                        swap_rows(s, i);
                        clean = false;
                    }
                }
            for (int j = s + 1; j < c; ++j)
                if (m.at(s, j) != 0) {
                    Int q = m.at(s, j) / m.at(s, s);
                    add_col(j, s, -q);
                    if (m.at(s, j) != 0) {
                        swap_cols(s, j);
                        clean = false;
                    }
                }
            if (!clean) continue;
            // Enforce divisibility of later entries by the pivot.
            for (int i = s + 1; i < r && clean; ++i)
                for (int j = s + 1; j < c && clean; ++j)
                    if (m.at(i, j) % m.at(s, s) != 0) {
                        add_row(s, i, 1);
                        clean = false;
                    }
        }
        if (m.at(s, s) < 0) {
            for (int k = 0; k < c; ++k) m.at(s, k) = -m.at(s, k);
        }
    }

    out.diag.resize(steps);
    for (int s = 0; s < steps; ++s) {
        out.diag[s] = m.at(s, s);
        if (out.diag[s] != 0) ++out.rank;
    }
    return out;
}

std::vector<std::vector<Int>> integer_kernel_basis(const IntMatrix& a) {
    SmithForm sf = smith_normal_form(a);
    std::vector<std::vector<Int>> basis;
    for (int j = 0; j < a.cols(); ++j) {
        bool zero_diag = j >= static_cast<int>(sf.diag.size()) || sf.diag[j] == 0;
        if (!zero_diag) continue;
        std::vector<Int> col(a.cols());
        for (int i = 0; i < a.cols(); ++i) col[i] = sf.v.at(i, j);
        basis.push_back(std::move(col));
    }
    return basis;
}

} // namespace mtor
