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

#ifndef MALLEABLE_RATIONAL_H_
#define MALLEABLE_RATIONAL_H_

#include <cstdint>
#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "boost/multiprecision/cpp_int.hpp"

namespace malleable {

// Exact rational used for task values and every quantity derived from them.
using Rational = boost::multiprecision::cpp_rational;

// Maximum number of fractional digits accepted by ParseDecimal.
inline constexpr int kMaxFractionDigits = 9;

// Parses "[-]digits[.digits]" with at most `max_fraction_digits` fractional
// digits. Exponents and whitespace are rejected.
absl::StatusOr<Rational> ParseDecimal(
    absl::string_view text, int max_fraction_digits = kMaxFractionDigits);

// Inverse of FormatDecimal: any-length decimal or "[-]p/q" with q > 0.
absl::StatusOr<Rational> ParseRationalText(absl::string_view text);

// Shortest exact decimal rendering ("8.2", "-3", "0.001"). Values whose
// reduced denominator has a prime factor other than 2 or 5 are rendered as
// "p/q".
std::string FormatDecimal(const Rational& value);

// Largest integer not exceeding value.
int64_t Floor(const Rational& value);

Rational MakeRational(int64_t num, int64_t den = 1);

double ToDouble(const Rational& value);

}  // namespace malleable

#endif  // MALLEABLE_RATIONAL_H_
