#include "quiltkit/rational.hpp"

#include <stdexcept>

namespace qk {

std::string to_string(const Scalar& x) { return x.get_str(); }

Scalar parse_scalar(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty scalar");
  const auto slash = s.find('/');
  auto valid_int = [](const std::string& part) {
    if (part.empty()) return false;
    std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (start == part.size()) return false;
    for (std::size_t k = start; k < part.size(); ++k)
      if (part[k] < '0' || part[k] > '9') return false;
    return true;
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("malformed scalar: " + s);
  mpz_class n(num, 10), d(den, 10);
  if (d == 0) throw std::invalid_argument("zero denominator: " + s);
  Scalar r(n, d);
  r.canonicalize();
  return r;
}

Scalar factorial(unsigned n) {
  mpz_class f = 1;
  for (unsigned k = 2; k <= n; ++k) f *= k;
  return Scalar(f);
}

}  // namespace qk
