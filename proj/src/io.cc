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

#include "qonline/io.hpp"

#include <bit>
#include <cstring>
#include <stdexcept>

namespace qonline {

namespace {

constexpr char kAlphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

int decode_char(char c) {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    return -1;
}

void put_f64(std::vector<unsigned char> &out, double v) {
    uint64_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    for (int k = 0; k < 8; k++) {
        out.push_back(static_cast<unsigned char>((bits >> (8 * k)) & 0xff));
    }
}

double get_f64(const std::vector<unsigned char> &in, std::size_t offset) {
    uint64_t bits = 0;
    for (int k = 0; k < 8; k++) {
        bits |= static_cast<uint64_t>(in[offset + k]) << (8 * k);
    }
    double v;
    std::memcpy(&v, &bits, sizeof(v));
    return v;
}

}  // namespace

std::string base64_encode(const std::vector<unsigned char> &bytes) {
    std::string out;
    out.reserve((bytes.size() + 2) / 3 * 4);
    std::size_t i = 0;
    for (; i + 2 < bytes.size(); i += 3) {
        uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8) | bytes[i + 2];
        out += kAlphabet[(v >> 18) & 63];
        out += kAlphabet[(v >> 12) & 63];
        out += kAlphabet[(v >> 6) & 63];
        out += kAlphabet[v & 63];
    }
    if (i < bytes.size()) {
        uint32_t v = bytes[i] << 16;
        if (i + 1 < bytes.size()) {
            v |= bytes[i + 1] << 8;
        }
        out += kAlphabet[(v >> 18) & 63];
        out += kAlphabet[(v >> 12) & 63];
        out += i + 1 < bytes.size() ? kAlphabet[(v >> 6) & 63] : '=';
        out += '=';
    }
    return out;
}

std::vector<unsigned char> base64_decode(const std::string &text) {
    std::vector<unsigned char> out;
    uint32_t acc = 0;
    int bits = 0;
    for (char c : text) {
        if (c == '=') {
            break;
        }
        int v = decode_char(c);
        if (v < 0) {
            throw std::invalid_argument("base64_decode: invalid character");
        }
        acc = (acc << 6) | static_cast<uint32_t>(v);
        bits += 6;
        if (bits >= 8) {
            bits -= 8;
            out.push_back(static_cast<unsigned char>((acc >> bits) & 0xff));
        }
    }
    return out;
}

nlohmann::json matrix_to_json(const Matrix &m) {
    std::vector<unsigned char> bytes;
    bytes.reserve(static_cast<std::size_t>(m.size()) * 16);
    for (Eigen::Index i = 0; i < m.rows(); i++) {
        for (Eigen::Index j = 0; j < m.cols(); j++) {
            put_f64(bytes, m(i, j).real());
            put_f64(bytes, m(i, j).imag());
        }
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", base64_encode(bytes)}};
}

Matrix matrix_from_json(const nlohmann::json &j) {
    const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
    const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
    std::vector<unsigned char> bytes = base64_decode(j.at("data").get<std::string>());
    if (bytes.size() != static_cast<std::size_t>(rows * cols) * 16) {
        throw std::invalid_argument("matrix_from_json: data length does not match dimensions");
    }
    Matrix m(rows, cols);
    std::size_t off = 0;
    for (Eigen::Index i = 0; i < rows; i++) {
        for (Eigen::Index j2 = 0; j2 < cols; j2++) {
            m(i, j2) = Complex(get_f64(bytes, off), get_f64(bytes, off + 8));
            off += 16;
        }
    }
    return m;
}

nlohmann::json channel_to_json(const Channel &ch) {
    nlohmann::json j = {{"n_in", ch.n_in}, {"n_out", ch.n_out}};
    if (ch.kraus) {
        j["kraus"] = nlohmann::json::array();
        for (const auto &k : *ch.kraus) {
            j["kraus"].push_back(matrix_to_json(k));
        }
    }
    if (ch.choi) {
        j["choi"] = matrix_to_json(*ch.choi);
    }
    return j;
}

Channel channel_from_json(const nlohmann::json &j) {
    Channel ch;
    ch.n_in = j.at("n_in").get<int>();
    ch.n_out = j.at("n_out").get<int>();
    if (j.contains("kraus")) {
        std::vector<Matrix> ks;
        for (const auto &k : j.at("kraus")) {
            ks.push_back(matrix_from_json(k));
        }
        ch.kraus = std::move(ks);
    }
    if (j.contains("choi")) {
        ch.choi = matrix_from_json(j.at("choi"));
    }
    validate_channel(ch);
    return ch;
}

nlohmann::json test_operator_to_json(const TestOperator &e) {
    nlohmann::json j = {{"op", matrix_to_json(e.op)}};
    if (e.certificate) {
        j["certificate"] = matrix_to_json(*e.certificate);
    }
    return j;
}

TestOperator test_operator_from_json(const nlohmann::json &j) {
    TestOperator e;
    e.op = matrix_from_json(j.at("op"));
    if (j.contains("certificate")) {
        e.certificate = matrix_from_json(j.at("certificate"));
    }
    validate_test_operator(e);
    return e;
}

nlohmann::json comb_to_json(const Comb &c) {
    nlohmann::json j = {{"in_qubits", c.in_qubits}, {"out_qubits", c.out_qubits}, {"op", matrix_to_json(c.op)}};
    j["ladder"] = nlohmann::json::array();
    for (int k = 1; k < c.steps(); k++) {
        Matrix m = comb_marginal(c, k);
        j["ladder"].push_back({{"step", k}, {"dim", m.rows()}});
    }
    return j;
}

Comb comb_from_json(const nlohmann::json &j) {
    Comb c;
    c.in_qubits = j.at("in_qubits").get<std::vector<int>>();
    c.out_qubits = j.at("out_qubits").get<std::vector<int>>();
    c.op = matrix_from_json(j.at("op"));
    if (!check_comb(c).valid()) {
        throw std::invalid_argument("comb_from_json: operator fails the comb ladder checks");
    }
    return c;
}

}  // namespace qonline
