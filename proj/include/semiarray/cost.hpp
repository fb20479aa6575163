#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace semiarray {

// Nonnegative extended real in [0, inf]. Used as the value type for the
// min-plus and max-min semirings and for path weights. Construction rejects
// negatives and NaN so a Cost is always a valid element of the carrier.
class Cost {
 public:
  Cost() : v_(0.0) {}
  explicit Cost(double v) : v_(v) {
    if (std::isnan(v) || v < 0.0) {
      throw std::invalid_argument("Cost must be in [0, inf], got " +
                                  std::to_string(v));
    }
  }

  static Cost infinity() { return Cost(std::numeric_limits<double>::infinity()); }

  double value() const { return v_; }
  bool is_infinite() const { return std::isinf(v_); }

  friend auto operator<=>(const Cost&, const Cost&) = default;
  friend bool operator==(const Cost&, const Cost&) = default;

  friend Cost operator+(const Cost& a, const Cost& b) { return Cost(a.v_ + b.v_); }

  std::string to_string() const {
    if (is_infinite()) return "inf";
    if (v_ == std::floor(v_) && std::abs(v_) < 1e15) {
      return std::to_string(static_cast<std::int64_t>(v_));
    }
    return std::to_string(v_);
  }

  // Parses "inf" or a nonnegative decimal. Throws on anything else.
  static Cost parse(const std::string& token) {
    if (token == "inf") return infinity();
    std::size_t pos = 0;
    double v = std::stod(token, &pos);
    if (pos != token.size()) {
      throw std::invalid_argument("bad cost token: " + token);
    }
    return Cost(v);
  }

 private:
  double v_;
};

}  // namespace semiarray
