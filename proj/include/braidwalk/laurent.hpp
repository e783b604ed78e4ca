#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "braidwalk/errors.hpp"

namespace braidwalk {

// Laurent polynomial in one variable t with arbitrary-precision integer
// coefficients.  Stored as (lowest exponent, dense coefficient vector).
class Laurent {
 public:
  using Int = boost::multiprecision::cpp_int;

  Laurent() = default;
  explicit Laurent(Int c) {
    if (c != 0) coeffs_ = {std::move(c)};
  }
  static Laurent monomial(Int c, long long exp) {
    Laurent p;
    if (c != 0) {
      p.low_ = exp;
      p.coeffs_ = {std::move(c)};
    }
    return p;
  }

  bool is_zero() const { return coeffs_.empty(); }
  long long low() const { return low_; }
  long long high() const { return low_ + static_cast<long long>(coeffs_.size()) - 1; }
  const std::vector<Int>& coeffs() const { return coeffs_; }

  Int coeff(long long exp) const {
    if (is_zero() || exp < low_ || exp > high()) return 0;
    return coeffs_[static_cast<size_t>(exp - low_)];
  }

  friend Laurent operator+(const Laurent& a, const Laurent& b);
  friend Laurent operator-(const Laurent& a, const Laurent& b);
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  friend bool operator==(const Laurent& a, const Laurent& b) {
    return a.low_ == b.low_ && a.coeffs_ == b.coeffs_;
  }

  // Multiply by t^e.
  Laurent shifted(long long e) const {
    Laurent p = *this;
    if (!p.is_zero()) p.low_ += e;
    return p;
  }

  std::string to_string() const;

 private:
  long long low_ = 0;
  std::vector<Int> coeffs_;  // coeffs_[i] multiplies t^(low_+i); ends nonzero

  void trim();
};

}  // namespace braidwalk
