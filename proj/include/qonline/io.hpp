// Copyright 2026 The qonline Authors
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

#ifndef QONLINE_IO_HPP
#define QONLINE_IO_HPP

#include <string>
#include <vector>

#include "json.hpp"
#include "qonline/channels.hpp"
#include "qonline/combs.hpp"

namespace qonline {

std::string base64_encode(const std::vector<unsigned char> &bytes);
std::vector<unsigned char> base64_decode(const std::string &text);

/// {"rows": r, "cols": c, "data": base64 of little-endian f64 re, im pairs in
/// row-major order}.
nlohmann::json matrix_to_json(const Matrix &m);
Matrix matrix_from_json(const nlohmann::json &j);

nlohmann::json channel_to_json(const Channel &ch);
Channel channel_from_json(const nlohmann::json &j);

nlohmann::json test_operator_to_json(const TestOperator &e);
TestOperator test_operator_from_json(const nlohmann::json &j);

nlohmann::json comb_to_json(const Comb &c);
Comb comb_from_json(const nlohmann::json &j);

}  // namespace qonline

#endif  // QONLINE_IO_HPP
