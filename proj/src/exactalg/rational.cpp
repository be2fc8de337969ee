#include "kha/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace kha {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  auto check = [&](const std::string& part) {
    std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i >= part.size()) throw std::invalid_argument("bad rational: " + s);
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i])))
        throw std::invalid_argument("bad rational: " + s);
  };
  if (slash == std::string::npos) {
    check(s);
    return Rational(mpz_class(s[0] == '+' ? s.substr(1) : s));
  }
  std::string n = s.substr(0, slash), d = s.substr(slash + 1);
  check(n);
  check(d);
  mpz_class den(d[0] == '+' ? d.substr(1) : d);
  if (den == 0) throw std::invalid_argument("zero denominator: " + s);
  Rational r(mpz_class(n[0] == '+' ? n.substr(1) : n), den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational binomial(long n, long k) {
  if (k < 0 || n < k) return 0;
  mpz_class out;
  mpz_bin_ui(out.get_mpz_t(), mpz_class(n).get_mpz_t(), static_cast<unsigned long>(k));
  return Rational(out);
}

}  // namespace kha
