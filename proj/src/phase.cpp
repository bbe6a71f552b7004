#include "weylkit/phase.hpp"

#include <charconv>
#include <numbers>
#include <numeric>

#include "weylkit/error.hpp"

namespace weylkit {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

Phase Phase::of(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorCode::Schema, "phase with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  num = floor_mod(num, den);
  const std::int64_t g = std::gcd(num, den);
  return Phase(num / g, den / g);
}

Phase Phase::parse(std::string_view text) {
  const auto slash = text.find('/');
  auto bad = [&] { return Error(ErrorCode::Schema, "malformed phase \"" + std::string(text) + "\""); };
  if (slash == std::string_view::npos) throw bad();
  std::int64_t a = 0;
  std::int64_t b = 0;
  const auto num_text = text.substr(0, slash);
  const auto den_text = text.substr(slash + 1);
  auto r1 = std::from_chars(num_text.data(), num_text.data() + num_text.size(), a);
  auto r2 = std::from_chars(den_text.data(), den_text.data() + den_text.size(), b);
  if (r1.ec != std::errc() || r1.ptr != num_text.data() + num_text.size()) throw bad();
  if (r2.ec != std::errc() || r2.ptr != den_text.data() + den_text.size()) throw bad();
  if (b < 1 || a < 0 || a >= b) throw bad();
  return of(a, b);
}

std::complex<double> Phase::to_complex() const {
  if (num_ == 0) return {1.0, 0.0};
  if (2 * num_ == den_) return {-1.0, 0.0};
  if (4 * num_ == den_) return {0.0, 1.0};
  if (4 * num_ == 3 * den_) return {0.0, -1.0};
  return std::polar(1.0, 2.0 * std::numbers::pi * value());
}

std::string Phase::to_string() const { return std::to_string(num_) + "/" + std::to_string(den_); }

Phase Phase::operator-() const { return num_ == 0 ? *this : Phase(den_ - num_, den_); }

Phase& Phase::operator+=(const Phase& other) {
  const std::int64_t g = std::gcd(den_, other.den_);
  const std::int64_t lcm = den_ / g * other.den_;
  const std::int64_t n = num_ * (lcm / den_) + other.num_ * (lcm / other.den_);
  *this = of(n, lcm);
  return *this;
}

Phase operator*(std::int64_t k, const Phase& p) {
  const std::int64_t reduced = floor_mod(k, p.den_);
  return Phase::of(reduced * p.num_, p.den_);
}

std::strong_ordering operator<=>(const Phase& a, const Phase& b) {
  // Cross-multiplication is exact for the denominators this library produces.
  return (a.num_ * b.den_) <=> (b.num_ * a.den_);
}

}  // namespace weylkit
