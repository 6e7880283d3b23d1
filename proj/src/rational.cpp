#include "aztec/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace aztec {

namespace {

std::string trimmed(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool is_integer_literal(const std::string& s) {
  size_t i = (!s.empty() && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rational parse_rational(const std::string& raw) {
  const std::string s = trimmed(raw);
  if (s.empty()) throw std::invalid_argument("parse_rational: empty literal");

  if (auto slash = s.find('/'); slash != std::string::npos) {
    const std::string num = trimmed(s.substr(0, slash));
    const std::string den = trimmed(s.substr(slash + 1));
    if (!is_integer_literal(num) || !is_integer_literal(den))
      throw std::invalid_argument("parse_rational: bad fraction '" + raw + "'");
    BigInt d(den);
    if (d == 0) throw std::invalid_argument("parse_rational: zero denominator");
    Rational r(BigInt(num), d);
    r.canonicalize();
    return r;
  }

  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    bool neg = false;
    if (!ip.empty() && (ip[0] == '+' || ip[0] == '-')) {
      neg = ip[0] == '-';
      ip.erase(ip.begin());
    }
    if (ip.empty()) ip = "0";
    if (fp.empty()) fp = "0";
    if (!is_integer_literal(ip) || !is_integer_literal(fp) || fp[0] == '+' || fp[0] == '-')
      throw std::invalid_argument("parse_rational: bad decimal '" + raw + "'");
    BigInt den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, s.size() - dot - 1);
    BigInt num(ip + fp);
    if (neg) num = -num;
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

  if (!is_integer_literal(s))
    throw std::invalid_argument("parse_rational: bad literal '" + raw + "'");
  return Rational(BigInt(s));
}

std::string to_fraction_string(const Rational& r) { return r.get_str(); }

Rational pow_rational(const Rational& r, long e) {
  if (e == 0) return Rational(1);
  const bool neg = e < 0;
  if (neg && r == 0) throw std::domain_error("pow_rational: 0 to a negative power");
  const unsigned long ue = neg ? 0UL - static_cast<unsigned long>(e) : static_cast<unsigned long>(e);
  Rational out;
  mpz_pow_ui(mpq_numref(out.get_mpq_t()), mpq_numref(r.get_mpq_t()), ue);
  mpz_pow_ui(mpq_denref(out.get_mpq_t()), mpq_denref(r.get_mpq_t()), ue);
  // num/den coprime with positive den stays canonical under powers
  if (neg) {
    Rational inv;
    mpq_inv(inv.get_mpq_t(), out.get_mpq_t());
    return inv;
  }
  return out;
}

BigInt factorial(unsigned long n) {
  BigInt f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

}  // namespace aztec
