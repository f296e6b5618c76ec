#pragma once

#include "mtor/numeric.hpp"

#include <cstddef>
#include <vector>

namespace mtor {

/// Dense integer matrix with arbitrary-precision entries.
class IntMatrix {
  public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static IntMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Int& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Int& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    bool is_zero() const;
    bool operator==(const IntMatrix& o) const = default;

    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    IntMatrix pow(unsigned k) const;

    /// Fraction-free Bareiss determinant. Requires a square matrix.
    Int det() const;

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

/// Smith normal form S = U*A*V of an integer matrix; U, V unimodular.
/// Only the data downstream consumers need is kept.
struct SmithForm {
    std::vector<Int> diag;   // diagonal of S, length min(rows, cols), divisibility chain
    IntMatrix v;             // cols x cols column-operations accumulator
    int rank = 0;            // number of nonzero diagonal entries
};

SmithForm smith_normal_form(const IntMatrix& a);

/// Integer basis of { x : A x = 0 }, as columns read off the Smith form.
std::vector<std::vector<Int>> integer_kernel_basis(const IntMatrix& a);

} // namespace mtor
