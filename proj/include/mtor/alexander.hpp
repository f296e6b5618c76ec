#pragma once

#include <map>
#include <string>
#include <vector>

#include "mtor/numeric.hpp"
#include "mtor/torus.hpp"
#include "mtor/words.hpp"

namespace mtor {

// Laurent polynomial in one variable s with integer coefficients,
// stored sparsely as exponent -> coefficient (zero coefficients dropped).
using Laurent = std::map<long long, Int>;

Laurent laurent_monomial(long long exp, Int coeff = 1);
Laurent laurent_add(const Laurent& a, const Laurent& b);
Laurent laurent_sub(const Laurent& a, const Laurent& b);
Laurent laurent_mul(const Laurent& a, const Laurent& b);
bool laurent_is_zero(const Laurent& p);
// Degree span (max exp - min exp); 0 for the zero polynomial.
long long laurent_span(const Laurent& p);
std::string laurent_to_string(const Laurent& p);

// Fox derivative d(relator)/d(generator g) with every generator h
// specialized to s^{phi(h)}. phi gives one integer per generator.
Laurent fox_derivative_specialized(const Word& relator, std::size_t gen,
                                   const std::vector<Int>& phi);

struct AlexanderResult {
    Laurent polynomial;   // normalized: lowest exponent 0, positive leading coeff
    bool degenerate = false;  // all maximal minors vanished
    long long degree = 0;     // span of the polynomial (0 when degenerate)
};

// Relative Alexander polynomial of a presentation with n+1 generators and
// n relators, specialized along the integral character phi: gcd of the
// n+1 maximal minors of the specialized Fox Jacobian.
AlexanderResult alexander_polynomial(const Presentation& pres,
                                     const std::vector<Int>& phi);

// Oracle for the fiber rank: degree of the relative Alexander polynomial.
// Throws semantic_error when the polynomial is degenerate.
Int oracle_rank(const Presentation& pres, const std::vector<Int>& phi);

}  // namespace mtor
