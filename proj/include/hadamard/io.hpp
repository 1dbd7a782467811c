#pragma once

// JSON file formats.
//
// Matrix: {"n": N, "repr": "phase"|"complex", "entries": [...], "provenance": "..."}
// with row-major entries, [num, den] turn pairs for "phase" and [re, im] for
// "complex".

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hadamard/errors.hpp"
#include "hadamard/matrix.hpp"

namespace hadamard {

inline nlohmann::json matrix_to_json(const HadamardMatrix& h) {
  nlohmann::json j;
  j["n"] = h.size();
  nlohmann::json entries = nlohmann::json::array();
  if (h.is_exact()) {
    j["repr"] = "phase";
    for (const auto& t : h.entries().turns()) entries.push_back({t.num(), t.den()});
  } else {
    j["repr"] = "complex";
    for (const auto& c : h.entries().complex_entries()) entries.push_back({c.real(), c.imag()});
  }
  j["entries"] = std::move(entries);
  j["provenance"] = h.provenance();
  return j;
}

inline HadamardMatrix matrix_from_json(const nlohmann::json& j) {
  try {
    const auto n = j.at("n").get<std::size_t>();
    const auto repr = j.at("repr").get<std::string>();
    const auto& entries = j.at("entries");
    const std::string prov = j.value("provenance", std::string("file"));
    if (!entries.is_array() || entries.size() != n * n) throw DomainError("matrix file: entries must hold n*n items");
    if (repr == "phase") {
      std::vector<Turn> turns;
      turns.reserve(n * n);
      for (const auto& e : entries) turns.emplace_back(e.at(0).get<std::int64_t>(), e.at(1).get<std::int64_t>());
      return HadamardMatrix::from_turns(n, std::move(turns), prov);
    }
    if (repr == "complex") {
      std::vector<Complex> values;
      values.reserve(n * n);
      for (const auto& e : entries) values.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
      return HadamardMatrix::from_complex(n, std::move(values), prov);
    }
    throw DomainError("matrix file: unknown repr '" + repr + "'");
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("matrix file: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DomainError(std::string("matrix file: ") + e.what());
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path);
  out << text;
}

inline HadamardMatrix read_matrix_file(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(path + ": " + e.what());
  }
  return matrix_from_json(j);
}

inline void write_matrix_file(const std::string& path, const HadamardMatrix& h) {
  write_text_file(path, matrix_to_json(h).dump(2) + "\n");
}

}  // namespace hadamard
