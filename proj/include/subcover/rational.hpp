#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace subcover {

// Exact rational on int64, always reduced, denominator > 0.
// Magnitudes here are tiny (subgroup sizes over group orders), so no
// bignum is needed; intermediate products go through __int128 anyway.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit on purpose
  Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
    if (den_ == 0) throw std::domain_error("rational with zero denominator");
    reduce();
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  Rational operator+(const Rational& o) const {
    return Rational(check(i128(num_) * o.den_ + i128(o.num_) * den_),
                    check(i128(den_) * o.den_));
  }
  Rational operator-(const Rational& o) const {
    return Rational(check(i128(num_) * o.den_ - i128(o.num_) * den_),
                    check(i128(den_) * o.den_));
  }
  Rational operator*(const Rational& o) const {
    return Rational(check(i128(num_) * o.num_), check(i128(den_) * o.den_));
  }
  Rational operator/(const Rational& o) const {
    if (o.num_ == 0) throw std::domain_error("rational division by zero");
    return Rational(check(i128(num_) * o.den_), check(i128(den_) * o.num_));
  }

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const {
    return i128(num_) * o.den_ < i128(o.num_) * den_;
  }
  bool operator<=(const Rational& o) const { return *this < o || *this == o; }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return o <= *this; }

  // Reduced "p/q" form, q always printed ("0/1", "1/1", "5/6").
  std::string str() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

 private:
  using i128 = __int128;

  static std::int64_t check(i128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("rational overflow");
    return static_cast<std::int64_t>(v);
  }

  void reduce() {
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
    if (num_ == 0) den_ = 1;
  }

  std::int64_t num_;
  std::int64_t den_;
};

}  // namespace subcover
