#pragma once

#include "mtor/matrix.hpp"
#include "mtor/numeric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mtor {

/// Freely reduced word over generators x1..xn, stored as signed 1-based
/// indices (+i for xi, -i for xi^-1). The empty word is the identity.
struct Word {
    std::vector<int> letters;

    bool empty() const { return letters.empty(); }
    size_t length() const { return letters.size(); }
    bool operator==(const Word& o) const = default;

    Word inverse() const;

    /// Exponent sums per generator, 1..rank.
    std::vector<Int> exponent_vector(int rank) const;
};

/// Free reduction of a raw letter sequence. Idempotent. Throws semantic_error
/// if `rank > 0` and some index lies outside 1..rank.
Word reduce_word(const std::vector<int>& raw, int rank = 0);

/// reduce(a . b)
Word concat(const Word& a, const Word& b);

/// Cyclic reduction (conjugation-minimal length).
Word cyclically_reduce(const Word& w);

/// Automorphism of Fn given by images of the generators. Validation checks
/// the necessary condition det(abelianization) = +-1; full invertibility is
/// certified only for triangular automorphisms.
struct FreeAutomorphism {
    int rank = 0;
    std::vector<Word> images; // images[i-1] = image of xi

    static FreeAutomorphism make(int rank, std::vector<Word> images);
    static FreeAutomorphism identity(int rank);

    /// True when every image has the form xi * u with u a word in x1..x_{i-1}.
    /// On failure `offender` (if given) receives the first bad generator.
    bool is_triangular(int* offender = nullptr) const;
};

Word apply_automorphism(const FreeAutomorphism& a, const Word& w);

/// (a o b)(xi) = a(b(xi)). Ranks must match.
FreeAutomorphism compose(const FreeAutomorphism& a, const FreeAutomorphism& b);

FreeAutomorphism power(const FreeAutomorphism& a, unsigned k);

IntMatrix abelianization_matrix(const FreeAutomorphism& a);

/// Least k >= 1 with (M^k - I)^n = 0, or nullopt when no power of M is
/// unipotent (some eigenvalue is not a root of unity). The search range is
/// exact: any root-of-unity eigenvalue of an n x n integer matrix has order m
/// with phi(m) <= n, so it suffices to test divisors of lcm{m : phi(m) <= n}.
std::optional<int> least_unipotent_power(const IntMatrix& m);

/// Heuristic degree of polynomial growth, fitted from cyclically reduced
/// lengths of a^k(xi) for k = 1..iterations (iterations >= 4).
int growth_degree_estimate(const FreeAutomorphism& a, int iterations);

/// "x3", "x3^-1", "X3" (capital = inverse); used by parsers and printers.
std::string letter_to_string(int letter, const std::vector<std::string>& names);
std::string word_to_string(const Word& w, const std::vector<std::string>& names);

} // namespace mtor
