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

#include "qonline/transcript.hpp"

#include <cstdio>
#include <cstring>

#include "qonline/rng.hpp"

namespace qonline {

std::string digest(const Matrix &m) {
    uint64_t h = 0xcbf29ce484222325ULL ^ static_cast<uint64_t>(m.rows() * 1315423911u + m.cols());
    for (Eigen::Index j = 0; j < m.cols(); j++) {
        for (Eigen::Index i = 0; i < m.rows(); i++) {
            double parts[2] = {m(i, j).real(), m(i, j).imag()};
            uint64_t bits[2];
            std::memcpy(bits, parts, sizeof(bits));
            h = (h ^ bits[0]) * 0x100000001b3ULL;
            h = (h ^ bits[1]) * 0x100000001b3ULL;
        }
    }
    h = mix64(h);
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace qonline
