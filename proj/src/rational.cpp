#include "taut/rational.hpp"

#include <cctype>

#include "taut/errors.hpp"

namespace taut {

std::string to_string(const Rational& r) { return r.get_str(); }

Rational parse_rational(std::string_view text) {
  std::size_t at = 0;
  bool negative = false;
  if (at < text.size() && text[at] == '-') {
    negative = true;
    ++at;
  }
  auto digits = [&](std::string& out) {
    const std::size_t start = at;
    while (at < text.size() && std::isdigit(static_cast<unsigned char>(text[at]))) ++at;
    out.assign(text.substr(start, at - start));
    return !out.empty();
  };
  std::string num;
  std::string den = "1";
  if (!digits(num)) throw InputError("malformed rational '" + std::string(text) + "'");
  if (at < text.size() && text[at] == '/') {
    ++at;
    if (!digits(den)) throw InputError("malformed rational '" + std::string(text) + "'");
  }
  if (at != text.size()) throw InputError("malformed rational '" + std::string(text) + "'");
  mpz_class n(num, 10);
  mpz_class d(den, 10);
  if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  Rational r(negative ? mpz_class(-n) : n, d);
  r.canonicalize();
  return r;
}

}  // namespace taut
