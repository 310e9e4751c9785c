#pragma once

#include <array>
#include <string>
#include <string_view>

#include "sodsim/errors.hpp"
#include "sodsim/membership.hpp"

namespace sodsim {

// The importance matrix collapses open/closed dynamic swarms into one row
// group, matching the source table's granularity.
enum class MatrixSodType { Static, Dynamic, Hybrid };

enum class Challenge { SP1, SP2, SP3, SP4, PE1, PE2 };

inline const char* to_string(MatrixSodType t) {
  switch (t) {
    case MatrixSodType::Static: return "static";
    case MatrixSodType::Dynamic: return "dynamic";
    case MatrixSodType::Hybrid: return "hybrid";
  }
  return "unknown";
}

inline const char* to_string(Challenge c) {
  switch (c) {
    case Challenge::SP1: return "SP1";
    case Challenge::SP2: return "SP2";
    case Challenge::SP3: return "SP3";
    case Challenge::SP4: return "SP4";
    case Challenge::PE1: return "PE1";
    case Challenge::PE2: return "PE2";
  }
  return "unknown";
}

inline MatrixSodType matrix_type(SodType t) {
  switch (t) {
    case SodType::Static: return MatrixSodType::Static;
    case SodType::DynamicClosed:
    case SodType::DynamicOpen: return MatrixSodType::Dynamic;
    case SodType::Hybrid: return MatrixSodType::Hybrid;
  }
  return MatrixSodType::Static;
}

namespace importance_detail {

// Importance 1..5 per (sod type, topology) row, challenge-major columns
// SP1, SP2, SP3, SP4, PE1, PE2. Row order: static/dynamic/hybrid, each with
// centralised, decentralised, distributed.
inline constexpr std::array<std::array<int, 6>, 9> kMatrix{{
    {2, 1, 4, 1, 3, 4},  // static centralised
    {3, 1, 5, 1, 4, 5},  // static decentralised
    {3, 1, 5, 1, 4, 5},  // static distributed
    {4, 2, 5, 4, 4, 4},  // dynamic centralised
    {4, 3, 5, 5, 5, 5},  // dynamic decentralised
    {4, 3, 5, 5, 5, 5},  // dynamic distributed
    {4, 2, 5, 4, 4, 4},  // hybrid centralised
    {4, 3, 5, 5, 5, 5},  // hybrid decentralised
    {4, 3, 5, 5, 5, 5},  // hybrid distributed
}};

}  // namespace importance_detail

inline int challenge_importance(MatrixSodType sod, Topology topology, Challenge challenge) {
  std::size_t row = static_cast<std::size_t>(sod) * 3 + static_cast<std::size_t>(topology);
  return importance_detail::kMatrix[row][static_cast<std::size_t>(challenge)];
}

inline int challenge_importance(SodType sod, Topology topology, Challenge challenge) {
  return challenge_importance(matrix_type(sod), topology, challenge);
}

inline MatrixSodType parse_matrix_sod_type(std::string_view s) {
  if (s == "static") return MatrixSodType::Static;
  if (s == "dynamic") return MatrixSodType::Dynamic;
  if (s == "hybrid") return MatrixSodType::Hybrid;
  throw UnknownKeyError("unknown sod type: " + std::string(s));
}

inline Topology parse_topology(std::string_view s) {
  if (s == "centralised") return Topology::Centralised;
  if (s == "decentralised") return Topology::Decentralised;
  if (s == "distributed") return Topology::Distributed;
  throw UnknownKeyError("unknown topology: " + std::string(s));
}

inline Challenge parse_challenge(std::string_view s) {
  if (s == "SP1") return Challenge::SP1;
  if (s == "SP2") return Challenge::SP2;
  if (s == "SP3") return Challenge::SP3;
  if (s == "SP4") return Challenge::SP4;
  if (s == "PE1") return Challenge::PE1;
  if (s == "PE2") return Challenge::PE2;
  throw UnknownKeyError("unknown challenge: " + std::string(s));
}

// 54 data rows under a header, comma separated.
inline std::string dump_matrix() {
  std::string out = "sod_type,topology,challenge,importance\n";
  for (auto sod : {MatrixSodType::Static, MatrixSodType::Dynamic, MatrixSodType::Hybrid}) {
    for (auto topo : {Topology::Centralised, Topology::Decentralised, Topology::Distributed}) {
      for (auto ch : {Challenge::SP1, Challenge::SP2, Challenge::SP3, Challenge::SP4,
                      Challenge::PE1, Challenge::PE2}) {
        out += to_string(sod);
        out += ',';
        out += to_string(topo);
        out += ',';
        out += to_string(ch);
        out += ',';
        out += std::to_string(challenge_importance(sod, topo, ch));
        out += '\n';
      }
    }
  }
  return out;
}

}  // namespace sodsim
