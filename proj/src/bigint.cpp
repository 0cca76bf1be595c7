#include "vsg/bigint.hpp"

#include <algorithm>
#include <stdexcept>

namespace vsg {

BigInt::BigInt(long long v) {
  neg_ = v < 0;
  unsigned long long m = neg_ ? -static_cast<unsigned long long>(v) : static_cast<unsigned long long>(v);
  while (m) {
    limbs_.push_back(static_cast<uint32_t>(m & 0xffffffffu));
    m >>= 32;
  }
}

BigInt BigInt::from_string(const std::string& s) {
  BigInt r;
  size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
  if (i == s.size()) throw std::invalid_argument("BigInt: empty numeral");
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt: bad digit");
    r = r * BigInt(10) + BigInt(s[i] - '0');
  }
  r.neg_ = neg && !r.limbs_.empty();
  return r;
}

void BigInt::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  if (limbs_.empty()) neg_ = false;
}

int BigInt::cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

std::vector<uint32_t> BigInt::add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  std::vector<uint32_t> r;
  r.reserve(std::max(a.size(), b.size()) + 1);
  uint64_t carry = 0;
  for (size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    uint64_t s = carry;
    if (i < a.size()) s += a[i];
    if (i < b.size()) s += b[i];
    r.push_back(static_cast<uint32_t>(s & 0xffffffffu));
    carry = s >> 32;
  }
  if (carry) r.push_back(static_cast<uint32_t>(carry));
  return r;
}

std::vector<uint32_t> BigInt::sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  // requires |a| >= |b|
  std::vector<uint32_t> r = a;
  int64_t borrow = 0;
  for (size_t i = 0; i < r.size(); ++i) {
    int64_t d = static_cast<int64_t>(r[i]) - borrow - (i < b.size() ? b[i] : 0);
    if (d < 0) {
      d += (1ll << 32);
      borrow = 1;
    } else {
      borrow = 0;
    }
    r[i] = static_cast<uint32_t>(d);
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

std::vector<uint32_t> BigInt::mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<uint32_t> r(a.size() + b.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    uint64_t carry = 0;
    for (size_t j = 0; j < b.size(); ++j) {
      uint64_t cur = static_cast<uint64_t>(a[i]) * b[j] + r[i + j] + carry;
      r[i + j] = static_cast<uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
    }
    size_t k = i + b.size();
    while (carry) {
      uint64_t cur = r[k] + carry;
      r[k] = static_cast<uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
      ++k;
    }
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

// Knuth algorithm D, base 2^32.
void BigInt::divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                        std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
  if (b.empty()) throw std::domain_error("BigInt: division by zero");
  if (cmp_mag(a, b) < 0) {
    q.clear();
    r = a;
    return;
  }
  if (b.size() == 1) {
    uint64_t d = b[0], rem = 0;
    q.assign(a.size(), 0);
    for (size_t i = a.size(); i-- > 0;) {
      uint64_t cur = (rem << 32) | a[i];
      q[i] = static_cast<uint32_t>(cur / d);
      rem = cur % d;
    }
    while (!q.empty() && q.back() == 0) q.pop_back();
    r.clear();
    if (rem) r.push_back(static_cast<uint32_t>(rem));
    return;
  }

  // normalize so the top divisor limb has its high bit set
  int shift = 0;
  for (uint32_t top = b.back(); !(top & 0x80000000u); top <<= 1) ++shift;
  auto shl = [shift](const std::vector<uint32_t>& v) {
    if (shift == 0) return v;
    std::vector<uint32_t> out(v.size() + 1, 0);
    for (size_t i = 0; i < v.size(); ++i) {
      out[i] |= v[i] << shift;
      out[i + 1] = static_cast<uint32_t>(static_cast<uint64_t>(v[i]) >> (32 - shift));
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
  };
  std::vector<uint32_t> u = shl(a), v = shl(b);
  size_t n = v.size(), m = u.size() - n;
  u.push_back(0);
  q.assign(m + 1, 0);

  for (size_t j = m + 1; j-- > 0;) {
    uint64_t num = (static_cast<uint64_t>(u[j + n]) << 32) | u[j + n - 1];
    uint64_t qhat = num / v[n - 1];
    uint64_t rhat = num % v[n - 1];
    while (qhat > 0xffffffffu ||
           (n >= 2 && qhat * v[n - 2] > ((rhat << 32) | u[j + n - 2]))) {
      --qhat;
      rhat += v[n - 1];
      if (rhat > 0xffffffffu) break;
    }
    // multiply-subtract
    int64_t borrow = 0;
    uint64_t carry = 0;
    for (size_t i = 0; i < n; ++i) {
      uint64_t p = qhat * v[i] + carry;
      carry = p >> 32;
      int64_t t = static_cast<int64_t>(u[i + j]) - static_cast<int64_t>(p & 0xffffffffu) - borrow;
      if (t < 0) {
        t += (1ll << 32);
        borrow = 1;
      } else {
        borrow = 0;
      }
      u[i + j] = static_cast<uint32_t>(t);
    }
    int64_t t = static_cast<int64_t>(u[j + n]) - static_cast<int64_t>(carry) - borrow;
    if (t < 0) {
      // qhat was one too large
      t += (1ll << 32);
      --qhat;
      uint64_t c2 = 0;
      for (size_t i = 0; i < n; ++i) {
        uint64_t s = static_cast<uint64_t>(u[i + j]) + v[i] + c2;
        u[i + j] = static_cast<uint32_t>(s & 0xffffffffu);
        c2 = s >> 32;
      }
      t += static_cast<int64_t>(c2);
    }
    u[j + n] = static_cast<uint32_t>(t);
    q[j] = static_cast<uint32_t>(qhat);
  }

  while (!q.empty() && q.back() == 0) q.pop_back();
  u.resize(n);
  if (shift) {
    for (size_t i = 0; i < u.size(); ++i) {
      u[i] >>= shift;
      if (i + 1 < u.size()) u[i] |= u[i + 1] << (32 - shift);
    }
  }
  while (!u.empty() && u.back() == 0) u.pop_back();
  r = u;
}

int BigInt::cmp(const BigInt& o) const {
  if (neg_ != o.neg_) return neg_ ? -1 : 1;
  int c = cmp_mag(limbs_, o.limbs_);
  return neg_ ? -c : c;
}

BigInt BigInt::operator-() const {
  BigInt r = *this;
  if (!r.limbs_.empty()) r.neg_ = !r.neg_;
  return r;
}

BigInt BigInt::abs() const {
  BigInt r = *this;
  r.neg_ = false;
  return r;
}

BigInt BigInt::operator+(const BigInt& o) const {
  BigInt r;
  if (neg_ == o.neg_) {
    r.limbs_ = add_mag(limbs_, o.limbs_);
    r.neg_ = neg_;
  } else if (cmp_mag(limbs_, o.limbs_) >= 0) {
    r.limbs_ = sub_mag(limbs_, o.limbs_);
    r.neg_ = neg_;
  } else {
    r.limbs_ = sub_mag(o.limbs_, limbs_);
    r.neg_ = o.neg_;
  }
  r.trim();
  return r;
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + (-o); }

BigInt BigInt::operator*(const BigInt& o) const {
  BigInt r;
  r.limbs_ = mul_mag(limbs_, o.limbs_);
  r.neg_ = !r.limbs_.empty() && (neg_ != o.neg_);
  return r;
}

BigInt BigInt::operator/(const BigInt& o) const {
  std::vector<uint32_t> q, rem;
  divmod_mag(limbs_, o.limbs_, q, rem);
  BigInt r;
  r.limbs_ = q;
  r.neg_ = !q.empty() && (neg_ != o.neg_);
  return r;
}

BigInt BigInt::operator%(const BigInt& o) const {
  std::vector<uint32_t> q, rem;
  divmod_mag(limbs_, o.limbs_, q, rem);
  BigInt r;
  r.limbs_ = rem;
  r.neg_ = !rem.empty() && neg_;
  return r;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
  a.neg_ = false;
  b.neg_ = false;
  while (!b.is_zero()) {
    BigInt t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::string BigInt::to_string() const {
  if (limbs_.empty()) return "0";
  std::vector<uint32_t> cur = limbs_;
  std::string out;
  const std::vector<uint32_t> ten9 = {1000000000u};
  while (!cur.empty()) {
    std::vector<uint32_t> q, r;
    divmod_mag(cur, ten9, q, r);
    uint32_t chunk = r.empty() ? 0 : r[0];
    cur = q;
    if (cur.empty()) {
      out = std::to_string(chunk) + out;
    } else {
      char buf[16];
      snprintf(buf, sizeof(buf), "%09u", chunk);
      out = buf + out;
    }
  }
  return (neg_ ? "-" : "") + out;
}

double BigInt::to_double() const {
  double v = 0;
  for (size_t i = limbs_.size(); i-- > 0;) v = v * 4294967296.0 + limbs_[i];
  return neg_ ? -v : v;
}

}  // namespace vsg
