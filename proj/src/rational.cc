// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "malleable/rational.h"

#include <algorithm>
#include <cctype>
#include <limits>
#include <string>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/string_view.h"

namespace malleable {

using boost::multiprecision::cpp_int;

absl::StatusOr<Rational> ParseDecimal(absl::string_view text,
                                      int max_fraction_digits) {
  absl::string_view rest = text;
  bool negative = false;
  if (!rest.empty() && rest.front() == '-') {
    negative = true;
    rest.remove_prefix(1);
  }
  const size_t dot = rest.find('.');
  absl::string_view whole = rest.substr(0, dot);
  absl::string_view frac = dot == absl::string_view::npos
                               ? absl::string_view()
                               : rest.substr(dot + 1);
  if (whole.empty() || (dot != absl::string_view::npos && frac.empty())) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed decimal \"", text, "\""));
  }
  for (absl::string_view part : {whole, frac}) {
    for (char c : part) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        return absl::InvalidArgumentError(
            absl::StrCat("malformed decimal \"", text, "\""));
      }
    }
  }
  if (frac.size() > static_cast<size_t>(max_fraction_digits)) {
    return absl::InvalidArgumentError(
        absl::StrCat("decimal \"", text, "\" has more than ",
                     max_fraction_digits, " fractional digits"));
  }
  // cpp_int reads a leading zero as an octal prefix.
  std::string digits = std::string(whole) + std::string(frac);
  const size_t first =
      std::min(digits.find_first_not_of('0'), digits.size() - 1);
  cpp_int num(digits.substr(first));
  cpp_int den = boost::multiprecision::pow(cpp_int(10),
                                           static_cast<unsigned>(frac.size()));
  Rational value(num, den);
  return negative ? Rational(-value) : value;
}

absl::StatusOr<Rational> ParseRationalText(absl::string_view text) {
  const size_t slash = text.find('/');
  if (slash == absl::string_view::npos) {
    return ParseDecimal(text, std::numeric_limits<int>::max());
  }
  absl::StatusOr<Rational> num = ParseDecimal(text.substr(0, slash), 0);
  absl::StatusOr<Rational> den = ParseDecimal(text.substr(slash + 1), 0);
  if (!num.ok() || !den.ok() || *den <= 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed rational \"", text, "\""));
  }
  return Rational(*num / *den);
}

std::string FormatDecimal(const Rational& value) {
  cpp_int num = boost::multiprecision::numerator(value);
  cpp_int den = boost::multiprecision::denominator(value);
  cpp_int rest = den;
  int twos = 0;
  int fives = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  if (rest != 1) return num.str() + "/" + den.str();

  const int digits = std::max(twos, fives);
  const bool negative = num < 0;
  if (negative) num = -num;
  cpp_int scaled = num * boost::multiprecision::pow(cpp_int(10), digits) / den;
  std::string repr = scaled.str();
  if (digits > 0) {
    if (repr.size() <= static_cast<size_t>(digits)) {
      repr.insert(0, digits - repr.size() + 1, '0');
    }
    repr.insert(repr.size() - digits, ".");
  }
  return negative ? "-" + repr : repr;
}

int64_t Floor(const Rational& value) {
  cpp_int num = boost::multiprecision::numerator(value);
  cpp_int den = boost::multiprecision::denominator(value);
  cpp_int q = num / den;
  if (num % den != 0 && num < 0) q -= 1;
  return static_cast<int64_t>(q);
}

Rational MakeRational(int64_t num, int64_t den) {
  return Rational(cpp_int(num), cpp_int(den));
}

double ToDouble(const Rational& value) { return static_cast<double>(value); }

}  // namespace malleable
