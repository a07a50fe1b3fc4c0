// Copyright 2026 The fairassign Authors
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

#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fairassign {

// Arbitrary-precision rational, always kept in canonical reduced form.
using Rational = mpq_class;

// A dense per-item share vector (one entry per item, file order).
using ShareVector = std::vector<Rational>;

// Renders "p/q", or just "p" when the denominator is 1.
std::string to_string(const Rational& value);

// Accepts "p/q" or an integer; the result is canonicalized. Throws
// InputError on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

Rational sum(std::span<const Rational> values);

}  // namespace fairassign
