#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace altcantor {

// Arbitrary-precision rational kept in lowest terms with a positive denominator.
class ExactRational {
 public:
  ExactRational() = default;
  ExactRational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  explicit ExactRational(const mpz_class& value) : q_(value) {}
  ExactRational(const mpz_class& num, const mpz_class& den);
  explicit ExactRational(const mpq_class& value) : q_(value) { q_.canonicalize(); }

  // Accepts "p/q" or "p" with optional sign on p.
  static ExactRational parse(std::string_view text);

  const mpz_class& num() const { return q_.get_num(); }
  const mpz_class& den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  mpz_class floor() const;
  mpz_class ceil() const;
  ExactRational abs() const { return ExactRational(mpq_class(::abs(q_))); }
  double to_double() const { return q_.get_d(); }

  // "p/q", or "p" when the denominator is 1.
  std::string to_string() const;
  // Fixed-point decimal rendering with the given number of fractional digits (display only).
  std::string to_decimal(int digits) const;

  ExactRational operator-() const { return ExactRational(mpq_class(-q_)); }
  ExactRational& operator+=(const ExactRational& o) { q_ += o.q_; return *this; }
  ExactRational& operator-=(const ExactRational& o) { q_ -= o.q_; return *this; }
  ExactRational& operator*=(const ExactRational& o) { q_ *= o.q_; return *this; }
  ExactRational& operator/=(const ExactRational& o);

  friend ExactRational operator+(ExactRational a, const ExactRational& b) { return a += b; }
  friend ExactRational operator-(ExactRational a, const ExactRational& b) { return a -= b; }
  friend ExactRational operator*(ExactRational a, const ExactRational& b) { return a *= b; }
  friend ExactRational operator/(ExactRational a, const ExactRational& b) { return a /= b; }

  friend bool operator==(const ExactRational& a, const ExactRational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const ExactRational& a, const ExactRational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const ExactRational& r) {
    return os << r.to_string();
  }

 private:
  mpq_class q_{0};
};

ExactRational min(const ExactRational& a, const ExactRational& b);
ExactRational max(const ExactRational& a, const ExactRational& b);

// (-1)^n as a small integer.
inline long parity_sign(std::size_t n) { return (n % 2 == 0) ? 1 : -1; }

}  // namespace altcantor

template <>
struct std::hash<altcantor::ExactRational> {
  std::size_t operator()(const altcantor::ExactRational& r) const noexcept;
};
