#include "loopmot/rational.hpp"

#include <cctype>

#include "loopmot/errors.hpp"

namespace loopmot {

Rational parse_rational(const std::string& text) {
  if (text.empty()) fail("BadRational", "empty rational literal");
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != '-' && c != '+' && c != '/')
      fail("BadRational", "invalid character in rational literal '" + text + "'");
  }
  mpq_class q;
  if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
    fail("BadRational", "cannot parse rational literal '" + text + "'");
  if (q.get_den() == 0) fail("BadRational", "zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

std::string rational_string(const Rational& q) { return q.get_str(); }

int sign(const Rational& q) { return sgn(q); }

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace loopmot
