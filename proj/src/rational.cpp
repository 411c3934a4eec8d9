#include "sgsolve/rational.hpp"

#include <stdexcept>

namespace sgsolve {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || (c == '-' && i == 0)))
      throw std::invalid_argument("bad rational '" + text + "'");
  }
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      Rational r(mpz_class(text));
      return r;
    }
    mpz_class num(text.substr(0, slash));
    mpz_class den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw;
  } catch (...) {
    throw std::invalid_argument("bad rational '" + text + "'");
  }
}

std::string rational_to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace sgsolve
