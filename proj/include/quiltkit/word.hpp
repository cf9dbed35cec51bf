#ifndef QUILTKIT_WORD_HPP
#define QUILTKIT_WORD_HPP

#include <compare>
#include <string>
#include <vector>

#include "quiltkit/element.hpp"
#include "quiltkit/permutation.hpp"

namespace qk {

/// A word in the letters 1..n. Membership in FWord(n) (surjective, no equal
/// neighbours, no pattern u..v..u..v) is a separate predicate so that
/// candidate words can be built and tested.
class Word {
 public:
  Word() = default;
  Word(int n, std::vector<int> letters) : n_(n), letters_(std::move(letters)) {}
  /// Digits of a decimal string ("1232"), or dot-separated values ("1.10.2").
  static Word parse(const std::string& text);
  static Word parse(int n, const std::string& text);

  int arity() const { return n_; }
  int length() const { return static_cast<int>(letters_.size()); }
  int operator[](int k) const { return letters_[static_cast<std::size_t>(k)]; }
  const std::vector<int>& letters() const { return letters_; }

  /// n - |W|, never positive for admissible words.
  int degree() const { return n_ - length(); }

  std::vector<int> positions(int value) const;
  int occurrences(int value) const;

  bool below(int u, int v) const;    ///< u <_W v: W = ..u..v..u..
  bool left_of(int u, int v) const;  ///< u ⊴_W v: every u before every v

  std::string encode() const;

  /// Right action: value a becomes s^-1(a).
  Word relabel_by_inverse(const Permutation& s) const;

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (a.n_ != b.n_) return a.n_ <=> b.n_;
    if (a.length() != b.length()) return a.length() <=> b.length();
    return a.letters_ <=> b.letters_;
  }

 private:
  int n_ = 0;
  std::vector<int> letters_;
};

int basis_arity(const Word& w);
int basis_degree(const Word& w);

bool has_adjacent_repeat(const std::vector<int>& letters);
bool has_interlacing(const std::vector<int>& letters);
bool is_admissible(const Word& w);

/// FWord(n), ordered by length then lexicographically.
std::vector<Word> enumerate_words(int n);

/// Signed one-letter deletions; terms with equal neighbours are dropped.
Element<Word> boundary(const Word& w);
/// The single deletion at a position with its caesura sign; 0 if not deletable.
int deletion_sign(const Word& w, int position);

/// Values a with W = ..ba..b.., in order of first occurrence.
std::vector<int> interposed_set(const Word& w);

struct WordExtension {
  Word result;
  std::vector<int> cuts;  // cut positions in the inner word, weakly increasing
  int sign = 1;
};

/// Ext(W, W', i) with signs. The r occurrences of i are replaced by r blocks
/// of the relabelled inner word; consecutive blocks share their cut letter.
std::vector<WordExtension> word_extensions(const Word& w, const Word& inner, int slot);

/// Sign of one extension X of W by W' at i, from the shuffle of interposed sets.
int extension_sign(const Word& w, const Word& inner, int slot, const Word& x);

/// Definitional test: collapsing the inner letters of X to i gives W, and
/// restricting X to them gives W' (repetitions merged in both cases).
bool is_word_extension(const Word& x, const Word& w, const Word& inner, int slot);

/// Merges runs of equal adjacent letters.
std::vector<int> merge_repeats(const std::vector<int>& letters);

/// The <_W-minimal values above u.
std::vector<int> word_children(const Word& w, int u);

}  // namespace qk

#endif  // QUILTKIT_WORD_HPP
