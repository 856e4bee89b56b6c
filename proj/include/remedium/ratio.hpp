#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace remedium {

// Exact non-negative fraction, kept reduced.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Ratio of(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::domain_error("zero denominator");
    __int128 g = std::gcd(n, d);
    return {static_cast<std::int64_t>(n / g), static_cast<std::int64_t>(d / g)};
  }
  Ratio operator+(const Ratio& o) const {
    __int128 n = static_cast<__int128>(num) * o.den + static_cast<__int128>(o.num) * den;
    __int128 d = static_cast<__int128>(den) * o.den;
    return reduce(n, d);
  }
  Ratio operator/(std::int64_t k) const { return reduce(num, static_cast<__int128>(den) * k); }
  bool operator==(const Ratio&) const = default;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

 private:
  static Ratio reduce(__int128 n, __int128 d) {
    __int128 a = n < 0 ? -n : n, b = d;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a == 0) a = 1;
    n /= a;
    d /= a;
    if (n > INT64_MAX || d > INT64_MAX) throw std::overflow_error("ratio overflow");
    return {static_cast<std::int64_t>(n), static_cast<std::int64_t>(d)};
  }
};

}  // namespace remedium
