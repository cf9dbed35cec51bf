#include "quiltkit/sparse_matrix.hpp"

#include <stdexcept>
#include <unordered_map>

namespace qk {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows) {}

void SparseMatrix::add(std::size_t r, std::size_t c, const Scalar& value) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("SparseMatrix::add index");
  if (value == 0) return;
  auto& row = data_[r];
  auto [it, inserted] = row.try_emplace(c, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) row.erase(it);
  }
}

void SparseMatrix::set(std::size_t r, std::size_t c, const Scalar& value) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("SparseMatrix::set index");
  if (value == 0)
    data_[r].erase(c);
  else
    data_[r][c] = value;
}

Scalar SparseMatrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("SparseMatrix::at index");
  auto it = data_[r].find(c);
  return it == data_[r].end() ? Scalar(0) : it->second;
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& row : data_) n += row.size();
  return n;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [c, v] : data_[r]) t.data_[c].emplace(r, v);
  return t;
}

SparseMatrix SparseMatrix::permuted(const std::vector<std::size_t>& row_perm,
                                    const std::vector<std::size_t>& col_perm) const {
  if (row_perm.size() != rows_ || col_perm.size() != cols_)
    throw std::invalid_argument("SparseMatrix::permuted size mismatch");
  SparseMatrix p(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [c, v] : data_[r]) p.data_[row_perm[r]].emplace(col_perm[c], v);
  return p;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("SparseMatrix product shape mismatch");
  SparseMatrix p(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r)
    for (const auto& [k, v] : a.data_[r])
      for (const auto& [c, w] : b.data_[k]) p.add(r, c, v * w);
  return p;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

namespace {

using IntRow = std::vector<std::pair<std::size_t, mpz_class>>;

void make_primitive(IntRow& row) {
  if (row.empty()) return;
  mpz_class g = 0;
  for (const auto& [c, v] : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  if (row.front().second < 0) g = -g;
  if (g != 1)
    for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

IntRow to_int_row(const std::map<std::size_t, Scalar>& row) {
  mpz_class l = 1;
  for (const auto& [c, v] : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  IntRow out;
  out.reserve(row.size());
  for (const auto& [c, v] : row) out.emplace_back(c, mpz_class(v.get_num() * (l / v.get_den())));
  make_primitive(out);
  return out;
}

// row := p * row - a * pivot, where p and a are the leading entries.
IntRow eliminate(const IntRow& row, const IntRow& pivot) {
  const mpz_class p = pivot.front().second;
  const mpz_class a = row.front().second;
  IntRow out;
  out.reserve(row.size() + pivot.size());
  std::size_t i = 1, j = 1;
  while (i < row.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
      out.emplace_back(row[i].first, p * row[i].second);
      ++i;
    } else if (i == row.size() || pivot[j].first < row[i].first) {
      out.emplace_back(pivot[j].first, -a * pivot[j].second);
      ++j;
    } else {
      mpz_class v = p * row[i].second - a * pivot[j].second;
      if (v != 0) out.emplace_back(row[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  make_primitive(out);
  return out;
}

bool simpler(const mpz_class& a, const mpz_class& b) {
  return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()) < 0;
}

}  // namespace

std::size_t rank(const SparseMatrix& m) {
  // Feed the shorter side through the elimination.
  SparseMatrix transposed;
  const SparseMatrix* src = &m;
  if (m.rows() > m.cols()) {
    transposed = m.transpose();
    src = &transposed;
  }
  const SparseMatrix& use = *src;
  std::unordered_map<std::size_t, IntRow> pivots;
  for (std::size_t r = 0; r < use.rows(); ++r) {
    IntRow row = to_int_row(use.row(r));
    while (!row.empty()) {
      auto it = pivots.find(row.front().first);
      if (it == pivots.end()) {
        pivots.emplace(row.front().first, std::move(row));
        break;
      }
      if (simpler(row.front().second, it->second.front().second)) std::swap(row, it->second);
      row = eliminate(row, it->second);
    }
  }
  return pivots.size();
}

}  // namespace qk
