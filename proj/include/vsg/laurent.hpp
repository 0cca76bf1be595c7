#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace vsg {

// Integer-coefficient Laurent polynomial in the single variable A.
// Invariant: no zero coefficients stored.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  static LaurentPoly zero() { return LaurentPoly(); }
  static LaurentPoly one() { return monomial(1, 0); }
  static LaurentPoly monomial(long long coeff, int exp) {
    LaurentPoly p;
    if (coeff != 0) p.coeffs_[exp] = coeff;
    return p;
  }
  // sigma = A + 1 + A^-1
  static LaurentPoly sigma() {
    LaurentPoly p;
    p.coeffs_[-1] = p.coeffs_[0] = p.coeffs_[1] = 1;
    return p;
  }

  bool is_zero() const { return coeffs_.empty(); }
  long long coeff(int exp) const {
    auto it = coeffs_.find(exp);
    return it == coeffs_.end() ? 0 : it->second;
  }
  int min_exponent() const {
    if (coeffs_.empty()) throw std::domain_error("min_exponent of zero polynomial");
    return coeffs_.begin()->first;
  }
  int max_exponent() const {
    if (coeffs_.empty()) throw std::domain_error("max_exponent of zero polynomial");
    return coeffs_.rbegin()->first;
  }

  LaurentPoly operator-() const;
  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly shifted(long long coeff, int exp) const;  // * coeff*A^exp
  LaurentPoly pow(unsigned n) const;

  bool operator==(const LaurentPoly& o) const { return coeffs_ == o.coeffs_; }
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

  // "c*A^e" terms joined by "+", exponents descending; "0" for zero.
  std::string to_string() const;

  const std::map<int, long long>& terms() const { return coeffs_; }

 private:
  std::map<int, long long> coeffs_;
};

}  // namespace vsg
