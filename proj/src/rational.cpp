#include "typesched/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace typesched {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return std::invalid_argument("malformed rational: '" + s + "'"); };
  if (s.empty()) throw bad();
  auto slash = s.find('/');
  auto check_int = [&](const std::string& part) {
    std::size_t start = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (part.size() == start) throw bad();
    for (std::size_t i = start; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') throw bad();
  };
  Rational r;
  if (slash == std::string::npos) {
    check_int(s);
    if (s[0] == '+') s.erase(0, 1);
    r = Rational(mpz_class(s, 10));
  } else {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    check_int(num);
    if (den.empty() || den[0] == '-' || den[0] == '+') throw bad();
    check_int(den);
    if (num[0] == '+') num.erase(0, 1);
    mpz_class d(den, 10);
    if (d == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
    r = Rational(mpz_class(num, 10), d);
    r.canonicalize();
  }
  return r;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

Rational pow(const Rational& base, unsigned exponent) {
  Rational result(1);
  Rational b = base;
  while (exponent > 0) {
    if (exponent & 1u) result *= b;
    exponent >>= 1;
    if (exponent > 0) b *= b;
  }
  return result;
}

Rational from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite double");
  Rational r;
  mpq_set_d(r.get_mpq_t(), value);
  return r;
}

long ceil_to_long(const Rational& value) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  if (!q.fits_slong_p()) throw std::overflow_error("rational ceiling out of range");
  return q.get_si();
}

long floor_to_long(const Rational& value) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  if (!q.fits_slong_p()) throw std::overflow_error("rational floor out of range");
  return q.get_si();
}

}  // namespace typesched
