#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace gmmn {

/// Exact rational number in canonical reduced form (positive denominator).
///
/// Values whose numerator and denominator fit in 64 bits are stored inline;
/// anything larger is promoted to a GMP rational and demoted again as soon
/// as a result fits. Arithmetic never rounds.
class Rational {
 public:
  Rational() = default;
  Rational(long long value) : num_(value) {}  // NOLINT: implicit by intent
  Rational(int value) : num_(value) {}        // NOLINT
  Rational(long long num, long long den);
  explicit Rational(const mpq_class& value);

  Rational(const Rational& other);
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& other);
  Rational& operator=(Rational&&) noexcept = default;
  ~Rational() = default;

  /// Parses "a", "-a" or "a/b" (b nonzero). Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  bool is_integer() const;
  int sign() const;
  bool is_zero() const { return sign() == 0; }

  /// "n" for integers, "n/d" otherwise.
  std::string to_string() const;
  double to_double() const;
  mpq_class to_mpq() const;
  std::size_t hash() const;

  Rational operator-() const;
  Rational abs() const { return sign() < 0 ? -*this : *this; }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  static Rational from_wide(__int128 num, __int128 den);
  bool small() const { return big_ == nullptr; }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// Median of three values.
const Rational& median3(const Rational& a, const Rational& b, const Rational& c);

/// Smallest k with 2^k >= n (0 for n <= 1).
int ceil_log2(std::size_t n);

}  // namespace gmmn

template <>
struct std::hash<gmmn::Rational> {
  std::size_t operator()(const gmmn::Rational& r) const { return r.hash(); }
};
