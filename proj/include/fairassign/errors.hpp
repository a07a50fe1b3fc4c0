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

#include <stdexcept>
#include <string>

namespace fairassign {

// Malformed or inconsistent caller input.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exact computation or enumeration would exceed its configured cap.
class SizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A structural invariant was violated inside the library.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace fairassign
