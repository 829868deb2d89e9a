// Copyright (c) 2026 The laughcorpus Authors
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

#ifndef LAUGHCORPUS_ERROR_H_
#define LAUGHCORPUS_ERROR_H_

#include <stdexcept>
#include <string>

namespace laughcorpus {

// Runtime or data error. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file (JSON, CSV, WAV, feature file).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace laughcorpus

#endif  // LAUGHCORPUS_ERROR_H_
