// Copyright 2026 The qcut Authors
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

#pragma once

// Run reports (JSON), per-shot CSV traces and the binary shot log.
//
// Shot log layout, all integers little-endian:
//   header  8 bytes  magic "QCUTSHOT"
//           4 bytes  u32 format version (1)
//           4 bytes  u32 record size in bytes (32)
//   record  8 bytes  u64 term selection index (mixed radix, cut 0 most significant)
//           4 bytes  u32 number of cut signs in the shot
//           4 bytes  u32 sign bits, bit k set when sign k was -1 (first 32 signs)
//           8 bytes  u64 output bits y, circuit qubit q at bit n-1-q
//           8 bytes  f64 (IEEE 754) the shot's estimator value X

#include <json.hpp>

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "qcut/errors.hpp"
#include "qcut/estimator.hpp"
#include "qcut/fragment.hpp"

namespace qcut {

inline constexpr char kShotLogMagic[8] = {'Q', 'C', 'U', 'T', 'S', 'H', 'O', 'T'};
inline constexpr std::uint32_t kShotLogVersion = 1;
inline constexpr std::uint32_t kShotRecordSize = 32;

namespace detail {

template <typename T>
void put_le(std::string& buf, T v) {
  std::uint64_t bits;
  if constexpr (std::is_same_v<T, double>) {
    bits = std::bit_cast<std::uint64_t>(v);
  } else {
    bits = static_cast<std::uint64_t>(v);
  }
  for (std::size_t i = 0; i < sizeof(T); ++i) buf.push_back(static_cast<char>((bits >> (8 * i)) & 0xFFU));
}

inline std::uint64_t get_le(const unsigned char* p, std::size_t n) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < n; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return v;
}

}  // namespace detail

inline std::string encode_shot_log(const std::vector<ShotRecord>& records) {
  std::string buf(kShotLogMagic, sizeof(kShotLogMagic));
  detail::put_le(buf, kShotLogVersion);
  detail::put_le(buf, kShotRecordSize);
  for (const ShotRecord& r : records) {
    detail::put_le(buf, r.term);
    detail::put_le(buf, r.sign_count);
    detail::put_le(buf, r.sign_bits);
    detail::put_le(buf, r.y);
    detail::put_le(buf, r.value);
  }
  return buf;
}

inline std::vector<ShotRecord> decode_shot_log(const std::string& buf) {
  if (buf.size() < 16 || std::memcmp(buf.data(), kShotLogMagic, 8) != 0) throw ValidationError("not a shot log");
  const auto* p = reinterpret_cast<const unsigned char*>(buf.data());
  if (detail::get_le(p + 8, 4) != kShotLogVersion) throw ValidationError("unsupported shot log version");
  if (detail::get_le(p + 12, 4) != kShotRecordSize) throw ValidationError("unexpected shot record size");
  if ((buf.size() - 16) % kShotRecordSize != 0) throw ValidationError("truncated shot log");
  std::vector<ShotRecord> out;
  for (std::size_t off = 16; off < buf.size(); off += kShotRecordSize) {
    ShotRecord r;
    r.term = detail::get_le(p + off, 8);
    r.sign_count = static_cast<std::uint32_t>(detail::get_le(p + off + 8, 4));
    r.sign_bits = static_cast<std::uint32_t>(detail::get_le(p + off + 12, 4));
    r.y = detail::get_le(p + off + 16, 8);
    r.value = std::bit_cast<double>(detail::get_le(p + off + 24, 8));
    out.push_back(r);
  }
  return out;
}

inline void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigurationError("cannot open '" + path + "' for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw ConfigurationError("failed writing '" + path + "'");
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

/// CSV of per-shot values with a running mean (convergence trace).
inline std::string shot_csv(const std::vector<ShotRecord>& records) {
  std::string out = "shot,term,value,running_mean\n";
  long double sum = 0;
  char line[128];
  for (std::size_t i = 0; i < records.size(); ++i) {
    sum += records[i].value;
    std::snprintf(line, sizeof line, "%zu,%llu,%.17g,%.17g\n", i, static_cast<unsigned long long>(records[i].term),
                  records[i].value, static_cast<double>(sum / static_cast<long double>(i + 1)));
    out += line;
  }
  return out;
}

inline nlohmann::json budget_to_json(const SampleBudget& b) {
  return {{"ms", b.ms},
          {"mt", b.mt},
          {"epsilon", b.epsilon},
          {"delta", b.delta},
          {"magnitude_bound", b.magnitude},
          {"shots", b.n},
          {"formula", "ceil(2 * B^2 / epsilon^2 * ln(1 / (2 * delta))), B = 3^Ms * 4^Mt"}};
}

inline nlohmann::json term_stats_to_json(const TermStats& t) {
  return {{"index", t.index},
          {"selection", t.selection},
          {"coefficient", t.coefficient},
          {"count", t.count},
          {"mean", t.mean},
          {"variance", t.variance}};
}

inline nlohmann::json estimate_to_json(const Estimate& e) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : e.per_term) terms.push_back(term_stats_to_json(t));
  return {{"method", e.method},     {"mean", e.mean},   {"stderr", e.std_error},
          {"variance", e.variance}, {"shots", e.shots}, {"per_term", std::move(terms)}};
}

inline nlohmann::json fragments_to_json(const CutCircuit& cc) {
  nlohmann::json frags = nlohmann::json::array();
  for (const Fragment& f : cc.fragments().fragments) {
    frags.push_back({{"width", f.width},
                     {"width_without_reuse", f.width_no_reuse},
                     {"output_qubits", f.output_qubits},
                     {"cuts", f.cuts}});
  }
  nlohmann::json decs = nlohmann::json::array();
  for (const auto& d : cc.decompositions()) {
    decs.push_back({{"target", describe(d.target)}, {"terms", d.size()}, {"gamma", d.gamma}});
  }
  return {{"spec", cut_spec_to_json(cc.spec())},
          {"ms", cc.spec().ms()},
          {"mt", cc.spec().mt()},
          {"fragments", std::move(frags)},
          {"max_width", cc.fragments().max_width},
          {"decompositions", std::move(decs)},
          {"term_selections", cc.combinations()}};
}

}  // namespace qcut
