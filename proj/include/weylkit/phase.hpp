#pragma once

#include <compare>
#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace weylkit {

/// Exact element of Q/Z, read as the circle value e^{2 pi i q}.
///
/// The circle group is written additively: `+` multiplies circle values,
/// unary `-` is complex conjugation, and the zero phase is 1 in the circle.
/// The stored fraction is always reduced with 0 <= num < den.
class Phase {
 public:
  constexpr Phase() = default;

  /// q = num/den taken mod 1. `den` must be nonzero.
  static Phase of(std::int64_t num, std::int64_t den = 1);

  /// Parses the "a/b" wire form (b >= 1, 0 <= a < b). Throws Error(Schema).
  static Phase parse(std::string_view text);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_ == 0; }

  /// Order of e^{2 pi i q} in the circle group (= reduced denominator).
  std::int64_t order() const noexcept { return den_; }

  double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::complex<double> to_complex() const;

  std::string to_string() const;

  Phase operator-() const;
  Phase& operator+=(const Phase& other);
  Phase& operator-=(const Phase& other) { return *this += -other; }
  friend Phase operator+(Phase a, const Phase& b) { return a += b; }
  friend Phase operator-(Phase a, const Phase& b) { return a -= b; }
  friend Phase operator*(std::int64_t k, const Phase& p);

  friend bool operator==(const Phase&, const Phase&) = default;
  friend std::strong_ordering operator<=>(const Phase& a, const Phase& b);

 private:
  constexpr Phase(std::int64_t num, std::int64_t den) : num_(num), den_(den) {}

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace weylkit

template <>
struct std::hash<weylkit::Phase> {
  std::size_t operator()(const weylkit::Phase& p) const noexcept {
    return std::hash<std::int64_t>{}(p.num() * 1000003 + p.den());
  }
};
