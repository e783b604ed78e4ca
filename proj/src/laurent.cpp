#include "braidwalk/laurent.hpp"

#include <algorithm>

namespace braidwalk {

void Laurent::trim() {
  size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
  size_t tail = coeffs_.size();
  while (tail > lead && coeffs_[tail - 1] == 0) --tail;
  if (lead > 0 || tail < coeffs_.size()) {
    coeffs_ = std::vector<Int>(coeffs_.begin() + lead, coeffs_.begin() + tail);
    low_ += static_cast<long long>(lead);
  }
  if (coeffs_.empty()) low_ = 0;
}

Laurent operator+(const Laurent& a, const Laurent& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  Laurent r;
  r.low_ = std::min(a.low_, b.low_);
  long long hi = std::max(a.high(), b.high());
  r.coeffs_.assign(static_cast<size_t>(hi - r.low_ + 1), 0);
  for (size_t i = 0; i < a.coeffs_.size(); ++i)
    r.coeffs_[static_cast<size_t>(a.low_ - r.low_) + i] += a.coeffs_[i];
  for (size_t i = 0; i < b.coeffs_.size(); ++i)
    r.coeffs_[static_cast<size_t>(b.low_ - r.low_) + i] += b.coeffs_[i];
  r.trim();
  return r;
}

Laurent operator-(const Laurent& a, const Laurent& b) {
  return a + b * Laurent(-1);
}

Laurent operator*(const Laurent& a, const Laurent& b) {
  if (a.is_zero() || b.is_zero()) return {};
  Laurent r;
  r.low_ = a.low_ + b.low_;
  r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (size_t i = 0; i < a.coeffs_.size(); ++i)
    for (size_t j = 0; j < b.coeffs_.size(); ++j)
      r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
  r.trim();
  return r;
}

std::string Laurent::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (!s.empty()) s += " + ";
    s += coeffs_[i].str() + "*t^" + std::to_string(low_ + static_cast<long long>(i));
  }
  return s;
}

}  // namespace braidwalk
