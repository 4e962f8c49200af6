#pragma once

#include <ostream>

#include "altcantor/rational.hpp"

namespace altcantor {

// Closed interval [lo, hi] with exact endpoints; lo <= hi is enforced.
class ExactInterval {
 public:
  ExactInterval() = default;
  ExactInterval(ExactRational lo, ExactRational hi);
  static ExactInterval point(const ExactRational& x) { return {x, x}; }
  // Interval spanned by two endpoints given in either order.
  static ExactInterval hull(const ExactRational& a, const ExactRational& b);

  const ExactRational& lo() const { return lo_; }
  const ExactRational& hi() const { return hi_; }
  ExactRational width() const { return hi_ - lo_; }
  ExactRational midpoint() const { return (lo_ + hi_) / ExactRational(2); }
  bool is_point() const { return lo_ == hi_; }

  bool contains(const ExactRational& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const ExactInterval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool intersects(const ExactInterval& o) const { return !(o.hi_ < lo_ || hi_ < o.lo_); }

  ExactInterval operator-() const { return {-hi_, -lo_}; }
  friend ExactInterval operator+(const ExactInterval& a, const ExactInterval& b) {
    return {a.lo_ + b.lo_, a.hi_ + b.hi_};
  }
  friend ExactInterval operator+(const ExactInterval& a, const ExactRational& b) {
    return {a.lo_ + b, a.hi_ + b};
  }
  friend ExactInterval operator-(const ExactInterval& a, const ExactInterval& b) { return a + (-b); }
  // Scaling by a negative factor swaps the endpoints.
  friend ExactInterval operator*(const ExactInterval& a, const ExactRational& k) {
    return hull(a.lo_ * k, a.hi_ * k);
  }

  friend bool operator==(const ExactInterval&, const ExactInterval&) = default;
  friend std::ostream& operator<<(std::ostream& os, const ExactInterval& iv) {
    return os << '[' << iv.lo_ << ", " << iv.hi_ << ']';
  }

 private:
  ExactRational lo_;
  ExactRational hi_;
};

}  // namespace altcantor
