#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace stripconf {

using Rational = mpq_class;
using Integer = mpz_class;

std::string to_string(const Rational& q);
Rational parse_rational(std::string_view text);

}  // namespace stripconf
