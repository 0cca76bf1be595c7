#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vsg {

// Arbitrary-precision signed integer, little-endian base 2^32 limbs.
// Only the operations the exact-geometry code needs: ring ops, divmod,
// gcd, comparisons, decimal I/O.
class BigInt {
 public:
  BigInt() = default;
  BigInt(long long v);
  static BigInt from_string(const std::string& s);

  bool is_zero() const { return limbs_.empty(); }
  bool is_negative() const { return neg_; }
  int signum() const { return limbs_.empty() ? 0 : (neg_ ? -1 : 1); }

  BigInt operator-() const;
  BigInt operator+(const BigInt& o) const;
  BigInt operator-(const BigInt& o) const;
  BigInt operator*(const BigInt& o) const;
  BigInt operator/(const BigInt& o) const;  // truncated toward zero
  BigInt operator%(const BigInt& o) const;

  bool operator==(const BigInt& o) const { return neg_ == o.neg_ && limbs_ == o.limbs_; }
  bool operator!=(const BigInt& o) const { return !(*this == o); }
  bool operator<(const BigInt& o) const { return cmp(o) < 0; }
  bool operator<=(const BigInt& o) const { return cmp(o) <= 0; }
  bool operator>(const BigInt& o) const { return cmp(o) > 0; }
  bool operator>=(const BigInt& o) const { return cmp(o) >= 0; }

  int cmp(const BigInt& o) const;
  BigInt abs() const;
  static BigInt gcd(BigInt a, BigInt b);

  std::string to_string() const;
  // Valid only when the value fits; used by tests and SVG scaling.
  double to_double() const;

 private:
  bool neg_ = false;
  std::vector<uint32_t> limbs_;  // no trailing zero limbs; empty == 0

  void trim();
  static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
  static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
  static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
  static std::vector<uint32_t> mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
  static void divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                         std::vector<uint32_t>& q, std::vector<uint32_t>& r);
};

}  // namespace vsg
