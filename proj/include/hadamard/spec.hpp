#pragma once

// Textual matrix constructors:
//
//   spec   := fourier:<orders> | tensor:(<spec>,<spec>) | deformed:(<spec>,<L>,<spec>)
//           | haagerup:<turn> | tao | circulant:<turn>,<turn>,... | file:<path>
//   L      := [[<turn>,...],...] | <path of a JSON file>
//   turn   := <int> | <int>/<int> | <decimal>, optionally suffixed by "turn"
//
// Integer and fractional turns are exact roots of unity; decimal turns give
// floating phases.

#include <cctype>
#include <charconv>
#include <cstdio>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "hadamard/construct.hpp"
#include "hadamard/errors.hpp"
#include "hadamard/group.hpp"
#include "hadamard/io.hpp"
#include "hadamard/phase.hpp"

namespace hadamard {

/// A phase as written: exact turn fraction or a decimal number of turns.
using SpecPhase = std::variant<Turn, double>;

inline Phase to_phase(const SpecPhase& p) {
  if (const auto* t = std::get_if<Turn>(&p)) return *t;
  return phase_from_turns(std::get<double>(p));
}

inline std::string to_string(const SpecPhase& p) {
  if (const auto* t = std::get_if<Turn>(&p)) return t->to_string();
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", std::get<double>(p));
  std::string s = buf;
  // keep decimals recognizable as floating phases
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

struct MatrixSpec {
  enum class Kind { kFourier, kTensor, kDeformed, kHaagerup, kTao, kCirculant, kFile };

  Kind kind = Kind::kTao;
  FiniteAbelianGroup group;                      // kFourier
  std::vector<MatrixSpec> children;              // kTensor: {H, K}; kDeformed: {H, K}
  std::vector<std::vector<SpecPhase>> deformation;  // kDeformed, inline L
  std::string path;                              // kFile, or kDeformed with an L file
  std::vector<SpecPhase> phases;                 // kHaagerup: {q}; kCirculant: Q

  friend bool operator==(const MatrixSpec&, const MatrixSpec&) = default;
};

namespace detail {

class SpecParser {
 public:
  explicit SpecParser(const std::string& text) : s_(text) {}

  MatrixSpec parse_all() {
    MatrixSpec spec = parse_spec(false);
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return spec;
  }

  SpecPhase parse_phase_only() {
    SpecPhase p = parse_phase();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  bool consume(const std::string& tok) {
    if (s_.compare(pos_, tok.size(), tok) == 0) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool at_phase_start() const {
    return pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-' || s_[pos_] == '.');
  }

  std::int64_t parse_int() {
    const std::size_t start = pos_;
    if (pos_ < s_.size() && s_[pos_] == '-') ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, v);
    if (ec != std::errc() || ptr != s_.data() + pos_) {
      pos_ = start;
      fail("expected an integer");
    }
    return v;
  }

  SpecPhase parse_phase() {
    const std::size_t start = pos_;
    if (!at_phase_start()) fail("expected a turn fraction");
    std::size_t end = pos_;
    if (end < s_.size() && s_[end] == '-') ++end;
    bool decimal = false;
    while (end < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[end])) || s_[end] == '.' || s_[end] == 'e' ||
                               s_[end] == 'E' || ((s_[end] == '-' || s_[end] == '+') && (s_[end - 1] == 'e' || s_[end - 1] == 'E')))) {
      decimal = decimal || s_[end] == '.' || s_[end] == 'e' || s_[end] == 'E';
      ++end;
    }
    SpecPhase out;
    if (decimal) {
      double v = 0.0;
      try {
        std::size_t used = 0;
        v = std::stod(s_.substr(start, end - start), &used);
        if (used != end - start) fail("malformed decimal turn");
      } catch (const std::logic_error&) {
        fail("malformed decimal turn");
      }
      pos_ = end;
      out = v;
    } else {
      const std::int64_t num = parse_int();
      std::int64_t den = 1;
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        den = parse_int();
        if (den <= 0) fail("turn denominator must be positive");
      }
      out = Turn(num, den);
    }
    consume("turn");
    return out;
  }

  std::string parse_path() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != ')') ++pos_;
    if (pos_ == start) fail("expected a path");
    return s_.substr(start, pos_ - start);
  }

  FiniteAbelianGroup parse_orders() {
    std::vector<std::int64_t> orders;
    do {
      const std::size_t at = pos_;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected a cycle order");
      const std::int64_t v = parse_int();
      if (v < 1) {
        pos_ = at;
        fail("cycle order must be >= 1");
      }
      orders.push_back(v);
    } while (consume("x"));
    return FiniteAbelianGroup(std::move(orders));
  }

  std::vector<std::vector<SpecPhase>> parse_rows() {
    std::vector<std::vector<SpecPhase>> rows;
    expect('[');
    do {
      expect('[');
      std::vector<SpecPhase> row;
      do {
        row.push_back(parse_phase());
      } while (consume(","));
      expect(']');
      if (!rows.empty() && rows.front().size() != row.size()) fail("ragged parameter matrix");
      rows.push_back(std::move(row));
    } while (consume(","));
    expect(']');
    return rows;
  }

  MatrixSpec parse_spec(bool nested) {
    MatrixSpec spec;
    if (consume("fourier:")) {
      spec.kind = MatrixSpec::Kind::kFourier;
      spec.group = parse_orders();
    } else if (consume("tensor:")) {
      spec.kind = MatrixSpec::Kind::kTensor;
      expect('(');
      spec.children.push_back(parse_spec(true));
      expect(',');
      spec.children.push_back(parse_spec(true));
      expect(')');
    } else if (consume("deformed:")) {
      spec.kind = MatrixSpec::Kind::kDeformed;
      expect('(');
      spec.children.push_back(parse_spec(true));
      expect(',');
      if (pos_ < s_.size() && s_[pos_] == '[') {
        spec.deformation = parse_rows();
      } else {
        spec.path = parse_path();
      }
      expect(',');
      spec.children.push_back(parse_spec(true));
      expect(')');
    } else if (consume("haagerup:")) {
      spec.kind = MatrixSpec::Kind::kHaagerup;
      spec.phases.push_back(parse_phase());
    } else if (consume("tao")) {
      spec.kind = MatrixSpec::Kind::kTao;
    } else if (consume("circulant:")) {
      spec.kind = MatrixSpec::Kind::kCirculant;
      spec.phases.push_back(parse_phase());
      while (pos_ + 1 < s_.size() && s_[pos_] == ',') {
        ++pos_;
        if (!at_phase_start()) {
          --pos_;
          break;
        }
        spec.phases.push_back(parse_phase());
      }
    } else if (consume("file:")) {
      spec.kind = MatrixSpec::Kind::kFile;
      if (nested) {
        spec.path = parse_path();
      } else {
        spec.path = s_.substr(pos_);
        if (spec.path.empty()) fail("expected a path");
        pos_ = s_.size();
      }
    } else {
      fail("unknown constructor");
    }
    return spec;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline MatrixSpec parse_matrix_spec(const std::string& text) { return detail::SpecParser(text).parse_all(); }

/// A single phase in CLI syntax ("1/8", "1/8turn", "0.125").
inline SpecPhase parse_spec_phase(const std::string& text) { return detail::SpecParser(text).parse_phase_only(); }

/// Canonical text form; parse_matrix_spec(to_string(s)) == s.
inline std::string to_string(const MatrixSpec& spec) {
  using K = MatrixSpec::Kind;
  switch (spec.kind) {
    case K::kFourier: return "fourier:" + spec.group.to_string();
    case K::kTensor: return "tensor:(" + to_string(spec.children[0]) + "," + to_string(spec.children[1]) + ")";
    case K::kDeformed: {
      std::string l;
      if (spec.deformation.empty()) {
        l = spec.path;
      } else {
        l = "[";
        for (std::size_t a = 0; a < spec.deformation.size(); ++a) {
          l += a ? ",[" : "[";
          for (std::size_t j = 0; j < spec.deformation[a].size(); ++j) l += (j ? "," : "") + to_string(spec.deformation[a][j]);
          l += "]";
        }
        l += "]";
      }
      return "deformed:(" + to_string(spec.children[0]) + "," + l + "," + to_string(spec.children[1]) + ")";
    }
    case K::kHaagerup: return "haagerup:" + to_string(spec.phases[0]);
    case K::kTao: return "tao";
    case K::kCirculant: {
      std::string s = "circulant:";
      for (std::size_t l = 0; l < spec.phases.size(); ++l) s += (l ? "," : "") + to_string(spec.phases[l]);
      return s;
    }
    case K::kFile: return "file:" + spec.path;
  }
  return {};
}

/// Parameter matrix from rows of spec phases; exact when every entry is.
inline DeformationParameters make_deformation(const std::vector<std::vector<SpecPhase>>& rows) {
  if (rows.empty() || rows.front().empty()) throw std::invalid_argument("empty parameter matrix");
  const std::size_t m = rows.size();
  const std::size_t n = rows.front().size();
  bool exact = true;
  for (const auto& r : rows) {
    if (r.size() != n) throw std::invalid_argument("ragged parameter matrix");
    for (const auto& p : r) exact = exact && std::holds_alternative<Turn>(p);
  }
  if (exact) {
    std::vector<Turn> out;
    for (const auto& r : rows)
      for (const auto& p : r) out.push_back(std::get<Turn>(p));
    return {PhaseArray(m, n, std::move(out))};
  }
  std::vector<Complex> out;
  for (const auto& r : rows)
    for (const auto& p : r) out.push_back(phase_value(to_phase(p)));
  return {PhaseArray(m, n, std::move(out))};
}

/// Reads an L file: a JSON array of rows, each entry a turn string ("1/8")
/// or a number of turns.
inline DeformationParameters read_deformation_file(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(path + ": " + e.what());
  }
  if (!j.is_array()) throw DomainError(path + ": parameter file must hold an array of rows");
  std::vector<std::vector<SpecPhase>> rows;
  for (const auto& r : j) {
    if (!r.is_array()) throw DomainError(path + ": parameter rows must be arrays");
    std::vector<SpecPhase> row;
    for (const auto& e : r) {
      if (e.is_string()) {
        row.push_back(parse_spec_phase(e.get<std::string>()));
      } else if (e.is_number_integer()) {
        row.emplace_back(Turn(e.get<std::int64_t>(), 1));
      } else if (e.is_number()) {
        row.emplace_back(e.get<double>());
      } else {
        throw DomainError(path + ": parameter entries must be strings or numbers");
      }
    }
    rows.push_back(std::move(row));
  }
  return make_deformation(rows);
}

inline HadamardMatrix build_matrix(const MatrixSpec& spec) {
  using K = MatrixSpec::Kind;
  switch (spec.kind) {
    case K::kFourier: return fourier_matrix(spec.group);
    case K::kTensor: return tensor_product(build_matrix(spec.children[0]), build_matrix(spec.children[1]));
    case K::kDeformed: {
      const auto l = spec.deformation.empty() ? read_deformation_file(spec.path) : make_deformation(spec.deformation);
      return deformed_tensor(build_matrix(spec.children[0]), l, build_matrix(spec.children[1]));
    }
    case K::kHaagerup: return haagerup_matrix(to_phase(spec.phases[0]));
    case K::kTao: return tao_matrix();
    case K::kCirculant: {
      std::vector<Phase> q;
      for (const auto& p : spec.phases) q.push_back(to_phase(p));
      return circulant_from_eigenvalues(q);
    }
    case K::kFile: return read_matrix_file(spec.path);
  }
  throw std::logic_error("unhandled matrix spec kind");
}

}  // namespace hadamard
