#include "vsg/laurent.hpp"

namespace vsg {

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r;
  for (auto& [e, c] : coeffs_) r.coeffs_[e] = -c;
  return r;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  for (auto& [e, c] : o.coeffs_) {
    long long v = (r.coeffs_[e] += c);
    if (v == 0) r.coeffs_.erase(e);
  }
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly r;
  for (auto& [e1, c1] : coeffs_)
    for (auto& [e2, c2] : o.coeffs_) {
      long long v = (r.coeffs_[e1 + e2] += c1 * c2);
      if (v == 0) r.coeffs_.erase(e1 + e2);
    }
  return r;
}

LaurentPoly LaurentPoly::shifted(long long coeff, int exp) const {
  LaurentPoly r;
  if (coeff == 0) return r;
  for (auto& [e, c] : coeffs_) r.coeffs_[e + exp] = c * coeff;
  return r;
}

LaurentPoly LaurentPoly::pow(unsigned n) const {
  LaurentPoly r = one(), base = *this;
  while (n) {
    if (n & 1) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

std::string LaurentPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    if (!out.empty() && it->second > 0) out += "+";
    out += std::to_string(it->second) + "*A^" + std::to_string(it->first);
  }
  return out;
}

}  // namespace vsg
