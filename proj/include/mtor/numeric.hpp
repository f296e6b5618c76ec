#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>
#include <vector>

namespace mtor {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Raised when an input file or flag cannot be parsed. CLI exit code 2.
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when input parses but violates a mathematical precondition.
/// CLI exit code 3.
struct semantic_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Int int_gcd(Int a, Int b) { return boost::multiprecision::gcd(a, b); }
inline Int int_lcm(Int a, Int b) { return boost::multiprecision::lcm(a, b); }

/// gcd of a vector, nonnegative; 0 for the zero vector.
inline Int vec_gcd(const std::vector<Int>& v) {
    Int g = 0;
    for (const Int& x : v) g = int_gcd(g, x);
    return g;
}

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

} // namespace mtor
