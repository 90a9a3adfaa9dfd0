// Copyright 2026 The EMMS Emulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "emms/scalar.hpp"

#include <stdexcept>
#include <string>

namespace emms {

std::string_view to_string(ScalarMode mode) { return mode == ScalarMode::kFloat ? "float" : "fixed"; }

ScalarMode parse_scalar_mode(std::string_view text) {
    if (text == "float") {
        return ScalarMode::kFloat;
    }
    if (text == "fixed") {
        return ScalarMode::kFixed;
    }
    throw std::invalid_argument("unknown scalar mode '" + std::string(text) + "' (expected float or fixed)");
}

}  // namespace emms
