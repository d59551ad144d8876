#include "gmmn/rational.hpp"

#include <bit>
#include <charconv>
#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace gmmn {
namespace {

using i128 = __int128;
using u128 = unsigned __int128;

u128 uabs(i128 v) { return v < 0 ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v); }

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    if ((a >> 64) == 0 && (b >> 64) == 0) {
      std::uint64_t x = static_cast<std::uint64_t>(a), y = static_cast<std::uint64_t>(b);
      while (y != 0) {
        std::uint64_t t = x % y;
        x = y;
        y = t;
      }
      return x;
    }
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits64(i128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

mpz_class mpz_from(i128 v) {
  const bool neg = v < 0;
  const u128 mag = uabs(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(mag >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(mag)));
  mpz_class out = (hi << 64) + lo;
  return neg ? mpz_class(-out) : out;
}

}  // namespace

Rational::Rational(long long num, long long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  *this = from_wide(num, den);
}

Rational::Rational(const mpq_class& value) {
  mpq_class v(value);
  v.canonicalize();
  if (mpz_fits_slong_p(v.get_num_mpz_t()) && mpz_fits_slong_p(v.get_den_mpz_t())) {
    num_ = mpz_get_si(v.get_num_mpz_t());
    den_ = mpz_get_si(v.get_den_mpz_t());
  } else {
    big_ = std::make_unique<mpq_class>(std::move(v));
  }
}

Rational::Rational(const Rational& other) : num_(other.num_), den_(other.den_) {
  if (other.big_) big_ = std::make_unique<mpq_class>(*other.big_);
}

Rational& Rational::operator=(const Rational& other) {
  if (this == &other) return *this;
  num_ = other.num_;
  den_ = other.den_;
  big_ = other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr;
  return *this;
}

Rational Rational::from_wide(i128 num, i128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (den != 1) {
    const u128 g = gcd128(uabs(num), static_cast<u128>(den));
    if (g > 1) {
      num /= static_cast<i128>(g);
      den /= static_cast<i128>(g);
    }
  }
  Rational r;
  if (fits64(num) && fits64(den)) {
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }
  mpq_class q(mpz_from(num), mpz_from(den));
  q.canonicalize();
  r.big_ = std::make_unique<mpq_class>(std::move(q));
  return r;
}

Rational Rational::parse(std::string_view text) {
  auto parse_int = [&](std::string_view s) -> mpz_class {
    if (s.empty()) throw std::invalid_argument("empty number in '" + std::string(text) + "'");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw std::invalid_argument("bad number '" + std::string(text) + "'");
    for (std::size_t i = start; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') {
        throw std::invalid_argument("bad number '" + std::string(text) + "'");
      }
    }
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return mpz_class(digits, 10);
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(mpq_class(parse_int(text)));
  mpz_class num = parse_int(text.substr(0, slash));
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && den_text[0] == '-') {
    throw std::invalid_argument("negative denominator in '" + std::string(text) + "'");
  }
  mpz_class den = parse_int(den_text);
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(mpq_class(num, den));
}

bool Rational::is_integer() const {
  return small() ? den_ == 1 : big_->get_den() == 1;
}

int Rational::sign() const {
  if (small()) return (num_ > 0) - (num_ < 0);
  return sgn(*big_);
}

std::string Rational::to_string() const {
  if (small()) {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }
  if (big_->get_den() == 1) return big_->get_num().get_str();
  return big_->get_num().get_str() + "/" + big_->get_den().get_str();
}

double Rational::to_double() const {
  if (small()) return static_cast<double>(num_) / static_cast<double>(den_);
  return big_->get_d();
}

mpq_class Rational::to_mpq() const {
  if (!small()) return *big_;
  mpq_class q(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
  return q;
}

std::size_t Rational::hash() const {
  if (small()) {
    const std::size_t h = std::hash<std::int64_t>{}(num_);
    return h ^ (std::hash<std::int64_t>{}(den_) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }
  return std::hash<std::string>{}(to_string());
}

Rational Rational::operator-() const {
  if (small()) {
    if (num_ == std::numeric_limits<std::int64_t>::min()) return from_wide(-static_cast<i128>(num_), den_);
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  return Rational(mpq_class(-*big_));
}

Rational operator+(const Rational& a, const Rational& b) {
  if (a.small() && b.small()) {
    if (a.den_ == 1 && b.den_ == 1) {
      std::int64_t out;
      if (!__builtin_add_overflow(a.num_, b.num_, &out)) return Rational(static_cast<long long>(out));
      return Rational::from_wide(static_cast<i128>(a.num_) + b.num_, 1);
    }
    if (a.den_ == b.den_) return Rational::from_wide(static_cast<i128>(a.num_) + b.num_, a.den_);
    return Rational::from_wide(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                               static_cast<i128>(a.den_) * b.den_);
  }
  return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
}

Rational operator-(const Rational& a, const Rational& b) {
  if (a.small() && b.small()) {
    if (a.den_ == 1 && b.den_ == 1) {
      std::int64_t out;
      if (!__builtin_sub_overflow(a.num_, b.num_, &out)) return Rational(static_cast<long long>(out));
      return Rational::from_wide(static_cast<i128>(a.num_) - b.num_, 1);
    }
    if (a.den_ == b.den_) return Rational::from_wide(static_cast<i128>(a.num_) - b.num_, a.den_);
    return Rational::from_wide(static_cast<i128>(a.num_) * b.den_ - static_cast<i128>(b.num_) * a.den_,
                               static_cast<i128>(a.den_) * b.den_);
  }
  return Rational(mpq_class(a.to_mpq() - b.to_mpq()));
}

Rational operator*(const Rational& a, const Rational& b) {
  if (a.small() && b.small()) {
    if (a.den_ == 1 && b.den_ == 1) {
      std::int64_t out;
      if (!__builtin_mul_overflow(a.num_, b.num_, &out)) return Rational(static_cast<long long>(out));
    }
    return Rational::from_wide(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
  }
  return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (a.small() && b.small()) {
    return Rational::from_wide(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
  }
  return Rational(mpq_class(a.to_mpq() / b.to_mpq()));
}

bool operator==(const Rational& a, const Rational& b) {
  if (a.small() != b.small()) return false;  // both canonical: big never equals small
  if (a.small()) return a.num_ == b.num_ && a.den_ == b.den_;
  return *a.big_ == *b.big_;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (a.small() && b.small()) {
    if (a.den_ == b.den_) return a.num_ <=> b.num_;
    const i128 lhs = static_cast<i128>(a.num_) * b.den_;
    const i128 rhs = static_cast<i128>(b.num_) * a.den_;
    return lhs < rhs ? std::strong_ordering::less
                     : (lhs > rhs ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  const int c = cmp(a.to_mpq(), b.to_mpq());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

const Rational& median3(const Rational& a, const Rational& b, const Rational& c) {
  if (a < b) {
    if (b < c) return b;
    return a < c ? c : a;
  }
  if (a < c) return a;
  return b < c ? c : b;
}

int ceil_log2(std::size_t n) {
  if (n <= 1) return 0;
  return static_cast<int>(std::bit_width(n - 1));
}

}  // namespace gmmn
