#include "quiltkit/word.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace qk {

namespace {

std::vector<int> parse_letters(const std::string& text) {
  std::vector<int> out;
  if (text.empty()) throw std::invalid_argument("empty word");
  if (text.find('.') != std::string::npos) {
    std::size_t start = 0;
    while (start <= text.size()) {
      const auto dot = text.find('.', start);
      const auto part = text.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
      if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("malformed word: " + text);
      out.push_back(std::stoi(part));
      if (dot == std::string::npos) break;
      start = dot + 1;
    }
  } else {
    for (char c : text) {
      if (c < '1' || c > '9') throw std::invalid_argument("malformed word: " + text);
      out.push_back(c - '0');
    }
  }
  return out;
}

}  // namespace

Word Word::parse(const std::string& text) {
  auto letters = parse_letters(text);
  const int n = *std::max_element(letters.begin(), letters.end());
  return Word(n, std::move(letters));
}

Word Word::parse(int n, const std::string& text) {
  auto letters = parse_letters(text);
  for (int a : letters)
    if (a < 1 || a > n) throw std::invalid_argument("letter out of range in word " + text);
  return Word(n, std::move(letters));
}

std::vector<int> Word::positions(int value) const {
  std::vector<int> out;
  for (int k = 0; k < length(); ++k)
    if (letters_[static_cast<std::size_t>(k)] == value) out.push_back(k);
  return out;
}

int Word::occurrences(int value) const {
  return static_cast<int>(std::count(letters_.begin(), letters_.end(), value));
}

bool Word::below(int u, int v) const {
  if (u == v) return false;
  const auto pu = positions(u), pv = positions(v);
  if (pu.empty() || pv.empty()) return false;
  return std::any_of(pv.begin(), pv.end(), [&](int q) { return pu.front() < q && q < pu.back(); });
}

bool Word::left_of(int u, int v) const {
  if (u == v) return false;
  const auto pu = positions(u), pv = positions(v);
  return !pu.empty() && !pv.empty() && pu.back() < pv.front();
}

std::string Word::encode() const {
  const bool wide = std::any_of(letters_.begin(), letters_.end(), [](int a) { return a > 9; });
  std::string s;
  for (std::size_t k = 0; k < letters_.size(); ++k) {
    if (wide && k) s += '.';
    s += std::to_string(letters_[k]);
  }
  return s;
}

Word Word::relabel_by_inverse(const Permutation& s) const {
  const auto inv = s.inverse();
  std::vector<int> out(letters_.size());
  for (std::size_t k = 0; k < letters_.size(); ++k) out[k] = inv(letters_[k]);
  return Word(n_, std::move(out));
}

int basis_arity(const Word& w) { return w.arity(); }
int basis_degree(const Word& w) { return w.degree(); }

bool has_adjacent_repeat(const std::vector<int>& letters) {
  for (std::size_t k = 1; k < letters.size(); ++k)
    if (letters[k] == letters[k - 1]) return true;
  return false;
}

bool has_interlacing(const std::vector<int>& letters) {
  // u..v..u..v exists iff some v occurs strictly inside the span of u and
  // also after its last occurrence (or symmetrically before the first).
  const int top = letters.empty() ? 0 : *std::max_element(letters.begin(), letters.end());
  std::vector<int> first(static_cast<std::size_t>(top + 1), -1), last(static_cast<std::size_t>(top + 1), -1);
  for (int k = 0; k < static_cast<int>(letters.size()); ++k) {
    const auto a = static_cast<std::size_t>(letters[static_cast<std::size_t>(k)]);
    if (first[a] < 0) first[a] = k;
    last[a] = k;
  }
  for (int u = 1; u <= top; ++u) {
    if (first[static_cast<std::size_t>(u)] < 0) continue;
    for (int k = first[static_cast<std::size_t>(u)] + 1; k < last[static_cast<std::size_t>(u)]; ++k) {
      const int v = letters[static_cast<std::size_t>(k)];
      if (v != u && last[static_cast<std::size_t>(v)] > last[static_cast<std::size_t>(u)]) return true;
    }
  }
  return false;
}

bool is_admissible(const Word& w) {
  const int n = w.arity();
  if (n < 1 || w.length() < 1) return false;
  std::vector<bool> seen(static_cast<std::size_t>(n + 1), false);
  for (int a : w.letters()) {
    if (a < 1 || a > n) return false;
    seen[static_cast<std::size_t>(a)] = true;
  }
  for (int a = 1; a <= n; ++a)
    if (!seen[static_cast<std::size_t>(a)]) return false;
  return !has_adjacent_repeat(w.letters()) && !has_interlacing(w.letters());
}

std::vector<Word> enumerate_words(int n) {
  if (n < 1) throw std::invalid_argument("enumerate_words: n must be at least 1");
  std::vector<Word> out;
  const int max_len = 2 * n - 1;
  std::vector<int> cur;
  std::vector<int> count(static_cast<std::size_t>(n + 1), 0);
  int distinct = 0;
  std::function<void()> rec = [&] {
    const int len = static_cast<int>(cur.size());
    if (distinct == n) out.emplace_back(n, cur);
    if (len == max_len) return;
    for (int a = 1; a <= n; ++a) {
      if (!cur.empty() && cur.back() == a) continue;
      const int new_distinct = distinct + (count[static_cast<std::size_t>(a)] == 0 ? 1 : 0);
      if (len + 1 + (n - new_distinct) > max_len) continue;
      cur.push_back(a);
      if (!has_interlacing(cur)) {
        ++count[static_cast<std::size_t>(a)];
        distinct = new_distinct;
        rec();
        --count[static_cast<std::size_t>(a)];
        distinct = new_distinct - (count[static_cast<std::size_t>(a)] == 0 ? 1 : 0);
      }
      cur.pop_back();
    }
  };
  rec();
  std::sort(out.begin(), out.end());
  return out;
}

int deletion_sign(const Word& w, int position) {
  const auto& L = w.letters();
  const int a = L[static_cast<std::size_t>(position)];
  if (w.occurrences(a) < 2) return 0;
  // caesura numbers, counted left to right
  std::vector<int> caesura(L.size(), 0);
  int k = 0;
  for (std::size_t p = 0; p < L.size(); ++p)
    if (std::find(L.begin() + static_cast<long>(p) + 1, L.end(), L[p]) != L.end()) caesura[p] = ++k;
  if (caesura[static_cast<std::size_t>(position)] > 0) return parity_sign(caesura[static_cast<std::size_t>(position)]);
  int prev = position - 1;
  while (L[static_cast<std::size_t>(prev)] != a) --prev;
  return parity_sign(caesura[static_cast<std::size_t>(prev)] + 1);
}

Element<Word> boundary(const Word& w) {
  Element<Word> out(w.arity(), w.degree() + 1);
  for (int p = 0; p < w.length(); ++p) {
    const int s = deletion_sign(w, p);
    if (s == 0) continue;
    auto letters = w.letters();
    letters.erase(letters.begin() + p);
    if (has_adjacent_repeat(letters)) continue;
    out.add(Word(w.arity(), std::move(letters)), s);
  }
  return out;
}

std::vector<int> interposed_set(const Word& w) {
  std::vector<int> out;
  const auto& L = w.letters();
  for (std::size_t q = 1; q < L.size(); ++q) {
    const int b = L[q - 1];
    if (std::find(L.begin() + static_cast<long>(q) + 1, L.end(), b) == L.end()) continue;
    if (std::find(out.begin(), out.end(), L[q]) == out.end()) out.push_back(L[q]);
  }
  // first-occurrence order
  std::sort(out.begin(), out.end(), [&](int a, int b) { return w.positions(a).front() < w.positions(b).front(); });
  return out;
}

int extension_sign(const Word& w, const Word& inner, int slot, const Word& x) {
  const int n = inner.arity();
  auto out_lab = [&](int a) { return a < slot ? a : a + n - 1; };
  auto in_lab = [&](int c) { return slot + c - 1; };
  std::vector<int> s;
  for (int v : interposed_set(w)) s.push_back(v == slot ? in_lab(inner[0]) : out_lab(v));
  for (int c : interposed_set(inner)) s.push_back(in_lab(c));
  const auto target = interposed_set(x);
  if (s.size() != target.size()) throw std::logic_error("interposed sets do not shuffle into the extension " + x.encode());
  std::vector<int> seq;
  std::vector<bool> used(target.size(), false);
  for (int v : s) {
    const auto it = std::find(target.begin(), target.end(), v);
    const auto idx = static_cast<std::size_t>(it - target.begin());
    if (it == target.end() || used[idx])
      throw std::logic_error("interposed value " + std::to_string(v) + " not matched in " + x.encode());
    used[idx] = true;
    seq.push_back(static_cast<int>(idx));
  }
  return sorting_sign(seq);
}

std::vector<WordExtension> word_extensions(const Word& w, const Word& inner, int slot) {
  const int m = w.arity(), n = inner.arity();
  if (slot < 1 || slot > m) throw std::out_of_range("word composition slot out of range");
  auto out_lab = [&](int a) { return a < slot ? a : a + n - 1; };
  auto in_lab = [&](int c) { return slot + c - 1; };
  const int r = w.occurrences(slot);
  const int last = inner.length() - 1;
  std::vector<WordExtension> out;
  std::vector<int> cuts(static_cast<std::size_t>(r > 0 ? r - 1 : 0));
  std::function<void(int, int)> rec = [&](int idx, int from) {
    if (idx == static_cast<int>(cuts.size())) {
      std::vector<int> letters;
      int block = 0;
      for (int a : w.letters()) {
        if (a != slot) {
          letters.push_back(out_lab(a));
          continue;
        }
        const int lo = block == 0 ? 0 : cuts[static_cast<std::size_t>(block - 1)];
        const int hi = block == r - 1 ? last : cuts[static_cast<std::size_t>(block)];
        for (int p = lo; p <= hi; ++p) letters.push_back(in_lab(inner[p]));
        ++block;
      }
      Word x(m + n - 1, std::move(letters));
      if (!is_admissible(x)) return;
      out.push_back({x, cuts, extension_sign(w, inner, slot, x)});
      return;
    }
    for (int c = from; c <= last; ++c) {
      cuts[static_cast<std::size_t>(idx)] = c;
      rec(idx + 1, c);
    }
  };
  rec(0, 0);
  return out;
}

std::vector<int> merge_repeats(const std::vector<int>& letters) {
  std::vector<int> out;
  for (int a : letters)
    if (out.empty() || out.back() != a) out.push_back(a);
  return out;
}

bool is_word_extension(const Word& x, const Word& w, const Word& inner, int slot) {
  const int m = w.arity(), n = inner.arity();
  if (x.arity() != m + n - 1 || x.length() != w.length() + inner.length() - 1) return false;
  const int lo = slot, hi = slot + n - 1;
  std::vector<int> collapsed, restricted;
  for (int a : x.letters()) {
    if (a >= lo && a <= hi) {
      collapsed.push_back(slot);
      restricted.push_back(a - lo + 1);
    } else {
      collapsed.push_back(a < lo ? a : a - (n - 1));
    }
  }
  return merge_repeats(collapsed) == w.letters() && merge_repeats(restricted) == inner.letters();
}

std::vector<int> word_children(const Word& w, int u) {
  std::vector<int> above;
  for (int v = 1; v <= w.arity(); ++v)
    if (w.below(u, v)) above.push_back(v);
  std::vector<int> out;
  for (int v : above) {
    bool minimal = true;
    for (int x : above) minimal = minimal && !w.below(x, v);
    if (minimal) out.push_back(v);
  }
  return out;
}

}  // namespace qk
