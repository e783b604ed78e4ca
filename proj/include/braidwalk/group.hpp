#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "braidwalk/errors.hpp"

namespace braidwalk {

// Walk generators a, a^-1, b, b^-1.
enum class Gen : uint8_t { A, AInv, B, BInv };

enum class Family : uint8_t { B3, B3modZ, Ak, AkmodZ };

// 0 = 'a', 1 = 'b'.
using Letter = uint8_t;

inline Letter other(Letter l) { return static_cast<Letter>(l ^ 1); }

// Which group we work in: the braid group on three strands, a dihedral
// Artin group, or their quotients by the center.  For k odd the center is
// generated by Delta^2 and conjugation by Delta swaps a and b; for k even
// Delta itself is central.
struct GroupContext {
  Family family = Family::B3modZ;
  int k = 3;

  GroupContext() = default;
  GroupContext(Family f, int kk) : family(f), k(kk) {
    if (k < 3) throw DomainError("GroupContext: k must be >= 3");
    if ((f == Family::B3 || f == Family::B3modZ) && k != 3)
      throw DomainError("GroupContext: B3 families require k = 3");
  }

  static GroupContext b3() { return {Family::B3, 3}; }
  static GroupContext b3_mod_z() { return {Family::B3modZ, 3}; }
  static GroupContext ak(int k) { return {Family::Ak, k}; }
  static GroupContext ak_mod_z(int k) { return {Family::AkmodZ, k}; }

  bool quotient() const { return family == Family::B3modZ || family == Family::AkmodZ; }
  bool delta_swaps() const { return k % 2 == 1; }

  // Order of the image of Delta in this group: 0 means infinite.
  int delta_order() const {
    if (!quotient()) return 0;
    return (k % 2 == 0) ? 1 : 2;
  }

  friend bool operator==(const GroupContext&, const GroupContext&) = default;
};

// A maximal alternating block of the positive word: (first letter, length).
struct Syllable {
  Letter first = 0;
  int length = 1;

  Letter last() const { return (length % 2 == 1) ? first : other(first); }
  Letter letter(int i) const { return (i % 2 == 0) ? first : other(first); }

  friend bool operator==(const Syllable&, const Syllable&) = default;
};

inline Syllable iota(Syllable s) { return {other(s.first), s.length}; }

// Garside normal form X-hat * Delta^e: a Delta-free chained syllable word
// (stored as its letter string; maximal alternating runs are the syllables,
// each of length <= k-1) together with the Delta exponent, reduced modulo
// the center rule of the context.  Canonical: equal group elements have
// identical (letters, delta_exp).
class GarsideNormalForm {
 public:
  GarsideNormalForm() : GarsideNormalForm(GroupContext{}) {}
  explicit GarsideNormalForm(GroupContext ctx) : ctx_(ctx) {}

  const GroupContext& context() const { return ctx_; }
  const std::vector<Letter>& letters() const { return word_; }
  long long delta_exp() const { return delta_; }
  bool is_identity() const { return word_.empty() && delta_ == 0; }
  int letter_count() const { return static_cast<int>(word_.size()); }
  int syllable_count() const { return syllables_; }

  std::vector<Syllable> syllables() const;

  // Right-multiplication by a single walk generator.  Amortized O(k).
  void append_generator(Gen g);
  // Right-multiplication by Delta^e.
  void append_delta(long long e);
  // Right-multiplication by a positive letter (as a group element).
  void append_positive(Letter base);

  // Right-multiplication by a whole syllable, letter by letter.
  void append_syllable(Syllable s);

  // Hashable canonical key.
  std::string key() const;
  std::string to_string() const;

  friend GarsideNormalForm iota(const GarsideNormalForm& x);

  friend bool operator==(const GarsideNormalForm& x, const GarsideNormalForm& y) {
    return x.ctx_ == y.ctx_ && x.delta_ == y.delta_ && x.word_ == y.word_;
  }

 private:
  GroupContext ctx_;
  std::vector<Letter> word_;
  long long delta_ = 0;
  int tail_run_ = 0;   // length of the final maximal alternating run
  int syllables_ = 0;  // number of maximal runs

  void append_raw(Letter l);
  void normalize_delta();
};

GarsideNormalForm normal_form(std::span<const Gen> word, GroupContext ctx);
// Letters 'a','A','b','B' (case = inverse); whitespace ignored.
GarsideNormalForm normal_form(const std::string& word, GroupContext ctx);

GarsideNormalForm multiply(const GarsideNormalForm& x, const GarsideNormalForm& y);
GarsideNormalForm inverse(const GarsideNormalForm& x);
GarsideNormalForm iota(const GarsideNormalForm& x);

// Graph distance from the identity in the Cayley graph of B3 or B3/Z
// over S; closed form, validated exhaustively against BFS balls.
long long geodesic_length(const GarsideNormalForm& x);

// Image of a B3 (resp. A_k) element in the quotient by the center.
GarsideNormalForm project_mod_center(const GarsideNormalForm& x);

std::vector<Gen> parse_word(const std::string& word);
Gen inverse_gen(Gen g);

// One letter of the extended alphabet Sigma = T u T.Delta used for walks on
// the quotient by the center: a syllable, optionally followed by Delta.
struct SigmaLetter {
  Syllable syl;
  bool delta = false;

  friend bool operator==(const SigmaLetter&, const SigmaLetter&) = default;
};

// Fixed enumeration of Sigma for k = 3: a, b, ab, ba, aD, bD, abD, baD.
// Index arithmetic elsewhere relies on this order.
std::vector<SigmaLetter> sigma_alphabet(const GroupContext& ctx);

void multiply_right(GarsideNormalForm& x, const SigmaLetter& s);

// Image of the four walk generators in Sigma (k = 3 quotient):
// a -> a, b -> b, a^-1 -> baD, b^-1 -> abD.
SigmaLetter sigma_image(Gen g, const GroupContext& ctx);

}  // namespace braidwalk
