#include "jetlc/rational.hpp"

#include <cctype>

namespace jetlc {

std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  s = trim(s);
  std::string_view digits = s;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (digits.empty()) throw ParseError("malformed rational: '" + std::string(whole) + "'");
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError("malformed rational: '" + std::string(whole) + "'");
    }
  }
  std::string text(s);
  if (text.front() == '+') text.erase(0, 1);
  return mpz_class(text, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  mpz_class num = parse_integer(text.substr(0, slash), text);
  mpz_class den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("Rng::uniform_int: empty range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(engine_() % span);
}

Rational Rng::uniform_rational(const Rational& lo, const Rational& hi, int max_den) {
  const std::int64_t den = uniform_int(1, max_den);
  // smallest and largest numerators keeping num/den inside [lo, hi]
  mpz_class lo_num, hi_num;
  mpz_class scaled_lo = lo.get_num() * den;
  mpz_class scaled_hi = hi.get_num() * den;
  mpz_cdiv_q(lo_num.get_mpz_t(), scaled_lo.get_mpz_t(), lo.get_den().get_mpz_t());
  mpz_fdiv_q(hi_num.get_mpz_t(), scaled_hi.get_mpz_t(), hi.get_den().get_mpz_t());
  const std::int64_t num = uniform_int(lo_num.get_si(), hi_num.get_si());
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace jetlc
