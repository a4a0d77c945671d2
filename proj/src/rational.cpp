#include "stripconf/rational.hpp"

#include "stripconf/errors.hpp"

#include <cctype>

namespace stripconf {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw InvalidInput("empty rational");
  Rational q;
  if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw InvalidInput("bad rational: " + s);
  q.canonicalize();
  return q;
}

}  // namespace stripconf
