#include "ufg/rational.hpp"

#include <cctype>
#include <cmath>

#include "ufg/errors.hpp"

namespace ufg {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

std::string strip_plus(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return std::string(s);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
    throw InvalidInput("invalid rational '" + std::string(text) + "'");
  }
  mpz_class n(strip_plus(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::size_t bit_size(const Rational& q) {
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

std::size_t limb_bytes(const Rational& q) {
  return (mpz_size(q.get_num_mpz_t()) + mpz_size(q.get_den_mpz_t())) * sizeof(mp_limb_t);
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

std::uint64_t hash_mpz(mpz_srcptr z, std::uint64_t h) {
  const std::size_t n = mpz_size(z);
  const int sign = mpz_sgn(z);
  h ^= static_cast<std::uint64_t>(sign + 2);
  h *= 0x100000001b3ULL;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t limb = mpz_getlimbn(z, static_cast<mp_size_t>(i));
    h ^= limb;
    h *= 0x100000001b3ULL;
    h ^= h >> 29;
  }
  return h;
}

}  // namespace

std::uint64_t hash_value(const Rational& q, std::uint64_t seed) {
  return hash_mpz(q.get_den_mpz_t(), hash_mpz(q.get_num_mpz_t(), seed));
}

ScaledValue to_scaled(const Rational& q) {
  if (q == 0) return {};
  long en = 0;
  long ed = 0;
  const double mn = mpz_get_d_2exp(&en, q.get_num_mpz_t());
  const double md = mpz_get_d_2exp(&ed, q.get_den_mpz_t());
  int e = 0;
  const double m = std::frexp(mn / md, &e);
  return {m, en - ed + e};
}

double log_abs(const Rational& q) {
  if (q == 0) return -INFINITY;
  const ScaledValue s = to_scaled(q);
  return std::log(std::fabs(s.mantissa)) + static_cast<double>(s.exponent) * M_LN2;
}

}  // namespace ufg
