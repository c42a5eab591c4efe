#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace binpack {

// Exact rational arithmetic over arbitrary-precision integers (GMP mpq).
// Invariants: gcd(num, den) == 1 and den > 0 after every operation.
// Floating point appears only in explicit reporting conversions.
class Rational {
public:
  Rational() : v_(0) {}
  Rational(long n) : v_(static_cast<signed long>(n)) {}  // NOLINT: implicit by design
  Rational(int n) : v_(n) {}                             // NOLINT: implicit by design

  Rational(long num, long den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }

  Rational(mpz_class num, mpz_class den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_ = mpq_class(std::move(num), std::move(den));
    v_.canonicalize();
  }

  // Accepts "p/q" (q != 0), integers, and exact decimals with optional
  // exponent ("0.25", "1.5815", "1e-7"). Conversion is exact via powers of
  // ten. Throws std::invalid_argument on anything else.
  static Rational parse(const std::string& text);

  const mpq_class& raw() const { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }

  Rational operator-() const { return Rational(mpq_class(-v_), canonical_tag{}); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
  friend bool operator!=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) != 0; }
  friend bool operator<(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) < 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) <= 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) > 0; }
  friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) >= 0; }

  Rational abs() const { return Rational(mpq_class(::abs(v_)), canonical_tag{}); }

  // Largest integer <= value.
  mpz_class floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
  }

  // Smallest integer >= value.
  mpz_class ceil() const {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
  }

  // Largest multiple of 2^-bits that is <= value. Used to keep denominators
  // bounded in long iterative computations; always rounds toward -inf so
  // the result never exceeds the exact value.
  Rational floor_to_bits(unsigned bits) const {
    mpz_class scaled;
    mpz_mul_2exp(scaled.get_mpz_t(), v_.get_num_mpz_t(), bits);
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), v_.get_den_mpz_t());
    mpz_class den(1);
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), bits);
    return Rational(std::move(q), std::move(den));
  }

  std::size_t den_bits() const { return mpz_sizeinbase(v_.get_den_mpz_t(), 2); }

  double to_double() const { return v_.get_d(); }

  // Canonical text form: "p/q", or just "p" when the denominator is 1.
  std::string str() const { return v_.get_str(); }

  // Always "p/q", even for integers ("3/1"). Used for machine-readable CSV.
  std::string str_pq() const { return num().get_str() + "/" + den().get_str(); }

  // Decimal string with `places` digits, rounded UP (toward +inf). Exact
  // integer arithmetic; no floating point involved.
  std::string decimal_ceil(unsigned places) const {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
    mpz_class n = num() * scale;
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), n.get_mpz_t(), v_.get_den_mpz_t());
    bool neg = q < 0;
    mpz_class a = ::abs(q);
    mpz_class ip = a / scale;
    mpz_class fp = a % scale;
    std::string frac = fp.get_str();
    if (frac.size() < places) frac.insert(0, places - frac.size(), '0');
    std::string out = ip.get_str();
    if (places > 0) out += "." + frac;
    if (neg && (ip != 0 || fp != 0)) out.insert(0, 1, '-');
    return out;
  }

private:
  struct canonical_tag {};
  Rational(mpq_class v, canonical_tag) : v_(std::move(v)) {}

  mpq_class v_;
};

inline Rational Rational::parse(const std::string& text) {
  // Trim surrounding whitespace.
  std::size_t b = text.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) throw std::invalid_argument("Rational::parse: empty input");
  std::size_t e = text.find_last_not_of(" \t\r\n");
  std::string s = text.substr(b, e - b + 1);

  auto is_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };

  std::size_t slash = s.find('/');
  if (slash != std::string::npos) {
    std::string ns = s.substr(0, slash);
    std::string ds = s.substr(slash + 1);
    if (!is_int(ns) || !is_int(ds))
      throw std::invalid_argument("Rational::parse: malformed fraction '" + s + "'");
    // Base 10 explicitly: the default base-0 constructor reads leading zeros
    // as octal. A leading '+' is not accepted by mpz_set_str, so drop it.
    if (ns[0] == '+') ns.erase(0, 1);
    if (ds[0] == '+') ds.erase(0, 1);
    mpz_class n(ns, 10), d(ds, 10);
    if (d == 0) throw std::invalid_argument("Rational::parse: zero denominator in '" + s + "'");
    return Rational(std::move(n), std::move(d));
  }

  // Decimal form: [+-]? digits [. digits]? ([eE] [+-]? digits)?
  std::string m = s;
  long exp10 = 0;
  std::size_t epos = m.find_first_of("eE");
  if (epos != std::string::npos) {
    std::string es = m.substr(epos + 1);
    if (!is_int(es)) throw std::invalid_argument("Rational::parse: malformed exponent in '" + s + "'");
    exp10 = std::stol(es);
    m = m.substr(0, epos);
  }
  bool neg = false;
  if (!m.empty() && (m[0] == '+' || m[0] == '-')) {
    neg = (m[0] == '-');
    m = m.substr(1);
  }
  std::size_t dot = m.find('.');
  std::string digits;
  long frac_len = 0;
  if (dot == std::string::npos) {
    digits = m;
  } else {
    digits = m.substr(0, dot) + m.substr(dot + 1);
    frac_len = static_cast<long>(m.size() - dot - 1);
  }
  if (digits.empty()) throw std::invalid_argument("Rational::parse: no digits in '" + s + "'");
  for (char c : digits)
    if (c < '0' || c > '9')
      throw std::invalid_argument("Rational::parse: malformed number '" + s + "'");

  mpz_class n(digits, 10);  // base 10 explicitly; see fraction path above
  if (neg) n = -n;
  long net = exp10 - frac_len;  // value = n * 10^net
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(net < 0 ? -net : net));
  if (net >= 0) return Rational(n * scale, mpz_class(1));
  return Rational(std::move(n), std::move(scale));
}

}  // namespace binpack
