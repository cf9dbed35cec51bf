#ifndef QUILTKIT_RATIONAL_HPP
#define QUILTKIT_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace qk {

/// Exact rational scalar. GMP keeps every value in lowest terms with a
/// positive denominator.
using Scalar = mpq_class;

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Scalar& x);

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed input
/// or a zero denominator.
Scalar parse_scalar(std::string_view text);

inline Scalar sign_scalar(int parity) { return (parity & 1) ? Scalar(-1) : Scalar(1); }

inline int parity_sign(long k) { return (k % 2 == 0) ? 1 : -1; }

Scalar factorial(unsigned n);

}  // namespace qk

#endif  // QUILTKIT_RATIONAL_HPP
