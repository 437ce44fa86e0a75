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

#ifndef QONLINE_TRANSCRIPT_HPP
#define QONLINE_TRANSCRIPT_HPP

#include <string>
#include <vector>

#include "qonline/linalg.hpp"

namespace qonline {

struct TranscriptRow {
    long t = 0;
    std::string challenge_digest;
    double prediction = 0;
    double feedback = 0;
    double loss = 0;
    bool mistake = false;
    double cumulative_regret = 0;
    double entropy = 0;
};

struct Transcript {
    std::vector<TranscriptRow> rows;
    long mistakes = 0;
    std::string bound_name;
    double bound_value = 0;
    bool bound_satisfied = true;
};

/// Short hex digest of a matrix's bytes, used to identify challenges.
std::string digest(const Matrix &m);

}  // namespace qonline

#endif  // QONLINE_TRANSCRIPT_HPP
