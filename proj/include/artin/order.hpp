#pragma once

#include <compare>
#include <string>

namespace artin {

/// Order of a truncated series: either an exact value, or the marker
/// AtLeast(N) when nothing survives below the truncation N.
class Order {
 public:
  static Order exactly(int value) { return Order(value, true); }
  static Order at_least(int bound) { return Order(bound, false); }

  bool is_exact() const { return exact_; }
  /// Exact order, or the certified lower bound for AtLeast.
  int value() const { return value_; }

  /// True when the order is certified to be >= k.
  bool reaches(int k) const { return value_ >= k; }

  std::string to_string() const {
    return exact_ ? std::to_string(value_) : ">=" + std::to_string(value_);
  }

  bool operator==(const Order&) const = default;

  /// Total order for max-reductions: by lower bound, AtLeast after an exact
  /// value of the same number.
  std::strong_ordering operator<=>(const Order& other) const {
    if (auto c = value_ <=> other.value_; c != 0) return c;
    return (!exact_) <=> (!other.exact_);
  }

 private:
  Order(int value, bool exact) : value_(value), exact_(exact) {}
  int value_;
  bool exact_;
};

}  // namespace artin
