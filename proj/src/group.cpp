#include "braidwalk/group.hpp"

#include <algorithm>

namespace braidwalk {

std::vector<Syllable> GarsideNormalForm::syllables() const {
  std::vector<Syllable> out;
  for (size_t i = 0; i < word_.size();) {
    size_t j = i + 1;
    while (j < word_.size() && word_[j] != word_[j - 1]) ++j;
    out.push_back({word_[i], static_cast<int>(j - i)});
    i = j;
  }
  return out;
}

void GarsideNormalForm::normalize_delta() {
  switch (ctx_.delta_order()) {
    case 0: break;
    case 1: delta_ = 0; break;
    case 2: delta_ = ((delta_ % 2) + 2) % 2; break;
  }
}

void GarsideNormalForm::append_raw(Letter l) {
  if (!word_.empty() && word_.back() != l) {
    ++tail_run_;
  } else {
    tail_run_ = 1;
    ++syllables_;
  }
  word_.push_back(l);
  if (tail_run_ == ctx_.k) {
    // The tail run spells Delta; pull it across to the exponent.
    word_.resize(word_.size() - ctx_.k);
    ++delta_;
    normalize_delta();
    --syllables_;
    tail_run_ = 0;
    const size_t n = word_.size();
    while (static_cast<size_t>(tail_run_) < n &&
           (tail_run_ == 0 ||
            word_[n - 1 - tail_run_] != word_[n - tail_run_]))
      ++tail_run_;
  }
}

void GarsideNormalForm::append_positive(Letter base) {
  const bool twist = ctx_.delta_swaps() && (((delta_ % 2) + 2) % 2 == 1);
  append_raw(twist ? other(base) : base);
}

void GarsideNormalForm::append_delta(long long e) {
  delta_ += e;
  normalize_delta();
}

void GarsideNormalForm::append_generator(Gen g) {
  switch (g) {
    case Gen::A:
      append_positive(0);
      return;
    case Gen::B:
      append_positive(1);
      return;
    case Gen::AInv:
    case Gen::BInv: {
      // a^-1 = <ba>_{k-1} Delta^-1 and b^-1 = <ab>_{k-1} Delta^-1.
      Letter l = (g == Gen::AInv) ? 1 : 0;
      for (int i = 0; i < ctx_.k - 1; ++i)
        append_positive(static_cast<Letter>(l ^ (i & 1)));
      append_delta(-1);
      return;
    }
  }
  throw DomainError("append_generator: bad generator");
}

void GarsideNormalForm::append_syllable(Syllable s) {
  for (int i = 0; i < s.length; ++i) append_positive(s.letter(i));
}

std::string GarsideNormalForm::key() const {
  std::string s;
  s.reserve(word_.size() + 8);
  for (Letter l : word_) s.push_back(l ? 'b' : 'a');
  s.push_back('^');
  s += std::to_string(delta_);
  return s;
}

std::string GarsideNormalForm::to_string() const {
  std::string s;
  int run = 0;
  for (size_t i = 0; i < word_.size(); ++i) {
    if (i > 0 && word_[i] == word_[i - 1]) {
      s.push_back('.');
      run = 0;
    }
    s.push_back(word_[i] ? 'b' : 'a');
    ++run;
  }
  if (word_.empty() && delta_ == 0) return "1";
  if (delta_ != 0) {
    if (!word_.empty()) s.push_back(' ');
    s += "D^" + std::to_string(delta_);
  }
  return s;
}

GarsideNormalForm normal_form(std::span<const Gen> word, GroupContext ctx) {
  GarsideNormalForm x(ctx);
  for (Gen g : word) x.append_generator(g);
  return x;
}

GarsideNormalForm normal_form(const std::string& word, GroupContext ctx) {
  auto gens = parse_word(word);
  return normal_form(std::span<const Gen>(gens), ctx);
}

GarsideNormalForm multiply(const GarsideNormalForm& x, const GarsideNormalForm& y) {
  if (!(x.context() == y.context()))
    throw DomainError("multiply: mismatched group contexts");
  GarsideNormalForm r = x;
  for (Letter l : y.letters()) r.append_positive(l);
  r.append_delta(y.delta_exp());
  return r;
}

GarsideNormalForm inverse(const GarsideNormalForm& x) {
  GarsideNormalForm r(x.context());
  r.append_delta(-x.delta_exp());
  const auto& w = x.letters();
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    r.append_generator(*it == 0 ? Gen::AInv : Gen::BInv);
  return r;
}

GarsideNormalForm iota(const GarsideNormalForm& x) {
  GarsideNormalForm r = x;
  for (Letter& l : r.word_) l = other(l);
  return r;
}

long long geodesic_length(const GarsideNormalForm& x) {
  const Family fam = x.context().family;
  if (fam != Family::B3modZ && fam != Family::B3)
    throw DomainError("geodesic_length: only available for B3 and B3 mod center");
  long long pairs = 0;
  for (const Syllable& s : x.syllables())
    if (s.length == 2) ++pairs;
  const long long singles = x.syllable_count() - pairs;
  const long long n = x.letter_count();
  if (fam == Family::B3) {
    // Positive part spelled as is; a negative Delta power is cheapest when
    // absorbed into the syllables, one per syllable: a two-letter syllable
    // times Delta^-1 is a single inverse letter, a one-letter syllable
    // times Delta^-1 is two, and each leftover Delta^-1 costs three.
    const long long k = x.delta_exp();
    if (k >= 0) return n + 3 * k;
    const long long m = -k;
    const long long in_pairs = std::min(m, pairs);
    const long long in_singles = std::min(m - in_pairs, singles);
    return n + 3 * m - 4 * in_pairs - 2 * in_singles;
  }
  const long long eps = x.delta_exp();
  if (x.syllable_count() == 0) return 3 * eps;
  long long len = n - pairs;
  if ((pairs & 1) != (eps & 1)) ++len;
  return len;
}

GarsideNormalForm project_mod_center(const GarsideNormalForm& x) {
  const auto& c = x.context();
  GroupContext qctx = c.quotient()
                          ? c
                          : (c.family == Family::B3 ? GroupContext::b3_mod_z()
                                                    : GroupContext::ak_mod_z(c.k));
  GarsideNormalForm y(qctx);
  for (Letter l : x.letters()) y.append_positive(l);
  y.append_delta(x.delta_exp());
  return y;
}

std::vector<Gen> parse_word(const std::string& word) {
  std::vector<Gen> out;
  for (char c : word) {
    switch (c) {
      case 'a': out.push_back(Gen::A); break;
      case 'A': out.push_back(Gen::AInv); break;
      case 'b': out.push_back(Gen::B); break;
      case 'B': out.push_back(Gen::BInv); break;
      case ' ': case '\t': case '\n': break;
      default:
        throw DomainError(std::string("parse_word: bad character '") + c + "'");
    }
  }
  return out;
}

Gen inverse_gen(Gen g) {
  switch (g) {
    case Gen::A: return Gen::AInv;
    case Gen::AInv: return Gen::A;
    case Gen::B: return Gen::BInv;
    case Gen::BInv: return Gen::B;
  }
  throw DomainError("inverse_gen: bad generator");
}

std::vector<SigmaLetter> sigma_alphabet(const GroupContext& ctx) {
  std::vector<SigmaLetter> out;
  const int reps = (ctx.delta_order() == 2) ? 2 : 1;
  for (int d = 0; d < reps; ++d)
    for (int len = 1; len <= ctx.k - 1; ++len)
      for (Letter first : {Letter{0}, Letter{1}})
        out.push_back({{first, len}, d == 1});
  return out;
}

void multiply_right(GarsideNormalForm& x, const SigmaLetter& s) {
  x.append_syllable(s.syl);
  if (s.delta) x.append_delta(1);
}

SigmaLetter sigma_image(Gen g, const GroupContext& ctx) {
  if (ctx.delta_order() == 0)
    throw DomainError("sigma_image: Sigma is defined on the quotient");
  const bool d = ctx.delta_order() == 2;
  switch (g) {
    case Gen::A: return {{0, 1}, false};
    case Gen::B: return {{1, 1}, false};
    case Gen::AInv: return {{1, ctx.k - 1}, d};
    case Gen::BInv: return {{0, ctx.k - 1}, d};
  }
  throw DomainError("sigma_image: bad generator");
}

}  // namespace braidwalk
