#include "quiltkit/chain_complex.hpp"

#include <algorithm>
#include "json.hpp"
#include <stdexcept>

namespace qk {

ChainComplex::ChainComplex(int lowest_degree, std::vector<std::size_t> dims)
    : lo_(lowest_degree), dims_(std::move(dims)) {
  diffs_.reserve(dims_.size());
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    const std::size_t next = k + 1 < dims_.size() ? dims_[k + 1] : 0;
    diffs_.emplace_back(next, dims_[k]);
  }
}

std::size_t ChainComplex::dim(int degree) const {
  if (degree < lo_ || degree > highest_degree()) return 0;
  return dims_[static_cast<std::size_t>(degree - lo_)];
}

const SparseMatrix& ChainComplex::differential(int degree) const {
  if (degree < lo_ || degree > highest_degree()) return zero_;
  return diffs_[static_cast<std::size_t>(degree - lo_)];
}

void ChainComplex::set_differential(int degree, SparseMatrix d) {
  if (degree < lo_ || degree > highest_degree())
    throw std::out_of_range("differential degree outside complex");
  if (d.cols() != dim(degree) || d.rows() != dim(degree + 1))
    throw std::invalid_argument("differential shape mismatch in degree " + std::to_string(degree));
  diffs_[static_cast<std::size_t>(degree - lo_)] = std::move(d);
}

void ChainComplex::check_square_zero() const {
  for (int d = lo_; d < highest_degree(); ++d) {
    const auto& a = differential(d);
    const auto& b = differential(d + 1);
    if (a.nonzeros() == 0 || b.nonzeros() == 0) continue;
    if (!(b * a).is_zero())
      throw std::domain_error("d∘d != 0 starting in degree " + std::to_string(d));
  }
}

BettiTable betti(const ChainComplex& c) {
  c.check_square_zero();
  BettiTable out;
  if (c.empty()) return out;
  std::vector<std::size_t> ranks;
  for (int d = c.lowest_degree(); d <= c.highest_degree(); ++d) ranks.push_back(rank(c.differential(d)));
  for (int d = c.lowest_degree(); d <= c.highest_degree(); ++d) {
    const std::size_t k = static_cast<std::size_t>(d - c.lowest_degree());
    const std::size_t out_rank = ranks[k];
    const std::size_t in_rank = k == 0 ? 0 : ranks[k - 1];
    const std::size_t h = c.dim(d) - out_rank - in_rank;
    if (h != 0) out[d] = h;
  }
  return out;
}

long euler_characteristic(const std::map<int, std::size_t>& dims) {
  long chi = 0;
  for (const auto& [d, n] : dims) chi += (d % 2 == 0 ? 1L : -1L) * static_cast<long>(n);
  return chi;
}

long euler_characteristic(const ChainComplex& c) {
  std::map<int, std::size_t> dims;
  for (int d = c.lowest_degree(); d <= c.highest_degree(); ++d) dims[d] = c.dim(d);
  return euler_characteristic(dims);
}

std::string betti_to_json(const BettiTable& table) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& [d, n] : table) j.push_back({{"degree", d}, {"dim", n}});
  return j.dump();
}

BettiTable betti_from_json(const std::string& text) {
  BettiTable out;
  for (const auto& entry : nlohmann::json::parse(text)) {
    const auto n = entry.at("dim").get<std::size_t>();
    if (n != 0) out[entry.at("degree").get<int>()] = n;
  }
  return out;
}

ChainComplex simplex_cellular_complex(int k) {
  if (k < 0) throw std::invalid_argument("simplex dimension must be non-negative");
  const int vertices = k + 1;
  // faces[j] = subsets of size j+1, as bitmasks in lexicographic order of vertex lists
  std::vector<std::vector<unsigned>> faces(static_cast<std::size_t>(vertices));
  for (int size = 1; size <= vertices; ++size) {
    std::vector<int> pick(static_cast<std::size_t>(size));
    for (int a = 0; a < size; ++a) pick[static_cast<std::size_t>(a)] = a;
    while (true) {
      unsigned mask = 0;
      for (int v : pick) mask |= 1u << v;
      faces[static_cast<std::size_t>(size - 1)].push_back(mask);
      int a = size - 1;
      while (a >= 0 && pick[static_cast<std::size_t>(a)] == vertices - size + a) --a;
      if (a < 0) break;
      ++pick[static_cast<std::size_t>(a)];
      for (int b = a + 1; b < size; ++b) pick[static_cast<std::size_t>(b)] = pick[static_cast<std::size_t>(b - 1)] + 1;
    }
  }
  std::vector<std::size_t> dims;
  for (int j = k; j >= 0; --j) dims.push_back(faces[static_cast<std::size_t>(j)].size());
  ChainComplex c(-k, dims);
  for (int j = k; j >= 1; --j) {
    const auto& src = faces[static_cast<std::size_t>(j)];
    const auto& dst = faces[static_cast<std::size_t>(j - 1)];
    SparseMatrix d(dst.size(), src.size());
    for (std::size_t col = 0; col < src.size(); ++col) {
      int position = 0;
      for (int v = 0; v < vertices; ++v) {
        if (!(src[col] & (1u << v))) continue;
        const unsigned face = src[col] & ~(1u << v);
        const auto row = static_cast<std::size_t>(std::find(dst.begin(), dst.end(), face) - dst.begin());
        d.add(row, col, position % 2 == 0 ? 1 : -1);
        ++position;
      }
    }
    c.set_differential(-j, std::move(d));
  }
  return c;
}

}  // namespace qk
