// Copyright 2026 The pgrand authors
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

#ifndef PGRAND_ERRORS_HPP
#define PGRAND_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pgrand {

/// Thrown when a lookup-table build would exceed the configured memory budget.
struct resource_limit_error : std::runtime_error {
    explicit resource_limit_error(const std::string &msg) : std::runtime_error(msg) {}
};

/// Thrown on malformed files (circuit text, LUT binaries, checkpoints).
struct io_error : std::runtime_error {
    explicit io_error(const std::string &msg) : std::runtime_error(msg) {}
};

}  // namespace pgrand

#endif
