#pragma once

// Command-line front end. run() is separate from main() so tests can drive it
// with captured streams.
//
// Exit status: 0 success, 1 domain error (non-Hadamard input, ambiguous rank,
// cap exceeded, inconsistency), 2 usage or parse error.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hadamard/hadamard.hpp"

namespace hadamard::cli {

using nlohmann::json;

namespace detail {

inline json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

/// A spec string, or the path of a matrix file when the text is not a spec.
inline HadamardMatrix load_matrix(const std::string& arg) {
  try {
    return build_matrix(parse_matrix_spec(arg));
  } catch (const ParseError&) {
    if (std::filesystem::is_regular_file(arg)) return read_matrix_file(arg);
    throw;
  }
}

inline json certification_json(const DefectReport& rep) {
  return {{"rel_tol", rep.rel_tol},
          {"gap_threshold", rep.gap_threshold},
          {"gap_ratio", finite_or_null(rep.gap_ratio)},
          {"certified", rep.certified}};
}

inline void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

struct Options {
  // gen
  std::string gen_orders, gen_h, gen_k, gen_l, gen_q, gen_spec, gen_tensor_a, gen_tensor_b;
  std::string out_path;
  bool scramble = false;
  std::uint64_t seed = 0;
  // shared
  std::string matrix;
  double tol = 1e-9;
  double gap = 1e6;
  // defect
  bool dephased = false;
  bool spectrum = false;
  std::string basis_path;
  // formula / ds
  std::string group;
  std::int64_t k = 1;
  std::int64_t l = 0;
  bool exact = false;
  // scan
  std::string scan_h, scan_k, grid;
  unsigned jobs = 1;
  // conjecture
  std::string report_path;
  std::size_t degree_cap = kDefaultCyclotomicCap;
};

inline DefectOptions defect_options(const Options& o) {
  if (!(o.tol > 0.0 && o.tol < 1.0)) throw CLI::ValidationError("--tol", "must lie in (0, 1)");
  if (!(o.gap > 1.0)) throw CLI::ValidationError("--gap", "must exceed 1");
  return {o.tol, o.gap};
}

inline int cmd_gen(const std::string& which, const Options& o, std::ostream& out) {
  std::string text;
  if (which == "fourier") text = "fourier:" + o.gen_orders;
  if (which == "tensor") text = "tensor:(" + o.gen_tensor_a + "," + o.gen_tensor_b + ")";
  if (which == "deformed") text = "deformed:(" + o.gen_h + "," + o.gen_l + "," + o.gen_k + ")";
  if (which == "haagerup") text = "haagerup:" + o.gen_q;
  if (which == "tao") text = "tao";
  if (which == "circulant") text = "circulant:" + o.gen_q;
  if (which == "spec") text = o.gen_spec;
  HadamardMatrix h = load_matrix(text);
  const auto check = verify_hadamard(h);
  if (!check.passed) throw NotHadamard(h.provenance() + " is not a Hadamard matrix");
  if (o.scramble) {
    std::mt19937_64 rng(o.seed);
    h = apply_equivalence(h, random_equivalence(h.size(), rng));
  }
  const std::string text_out = matrix_to_json(h).dump(2) + "\n";
  if (o.out_path.empty()) {
    out << text_out;
  } else {
    write_text_file(o.out_path, text_out);
  }
  return 0;
}

inline int cmd_verify(const Options& o, std::ostream& out) {
  const HadamardMatrix h = load_matrix(o.matrix);
  const auto r = verify_hadamard(h);
  emit(out, {{"matrix", h.provenance()},
             {"n", h.size()},
             {"exact", r.exact},
             {"max_modulus_error", r.max_modulus_error},
             {"max_inner_product", r.max_inner_product},
             {"tolerance", r.tolerance},
             {"result", r.passed ? "pass" : "fail"}});
  return r.passed ? 0 : 1;
}

inline json basis_json(const std::vector<Eigen::MatrixXd>& basis) {
  json arr = json::array();
  for (const auto& a : basis) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back(a(i, j));
      rows.push_back(std::move(row));
    }
    arr.push_back(std::move(rows));
  }
  return arr;
}

inline int cmd_defect(const Options& o, std::ostream& out, std::ostream& err) {
  const HadamardMatrix h = load_matrix(o.matrix);
  const auto check = verify_hadamard(h);
  if (!check.passed) throw NotHadamard(h.provenance() + " is not a Hadamard matrix");
  const DefectOptions opts = defect_options(o);
  const DefectReport rep = assess_defect(h, opts);
  json j = {{"matrix", h.provenance()},
            {"n", h.size()},
            {"defect", rep.undephased},
            {"dephased_defect", rep.dephased},
            {"certification", certification_json(rep)}};
  if (o.spectrum) j["singular_values"] = rep.singular_values;
  if (rep.certified && o.dephased) {
    j["dephased_defect"] = dephased_defect(h, opts);
    j["isolated"] = j["dephased_defect"] == 0;
  }
  if (rep.certified && !o.basis_path.empty()) {
    write_text_file(o.basis_path, json{{"matrix", h.provenance()}, {"basis", basis_json(tangent_basis(h, opts))}}.dump(2) + "\n");
  }
  emit(out, j);
  if (!rep.certified) {
    err << "error: ambiguous rank (gap ratio " << rep.gap_ratio << " below " << rep.gap_threshold << ")\n";
    return 1;
  }
  return 0;
}

inline int cmd_formula(const Options& o, std::ostream& out) {
  const FiniteAbelianGroup g = parse_group(o.group);
  emit(out, {{"group", g.to_string()},
             {"order", to_string(BigInt(g.order()))},
             {"delta", to_string(delta_closed(g))},
             {"defect", static_cast<std::int64_t>(fourier_defect(g))}});
  return 0;
}

inline int cmd_scan(const Options& o, std::ostream& out) {
  const HadamardMatrix h = load_matrix(o.scan_h);
  const HadamardMatrix k = load_matrix(o.scan_k);
  const ScanGrid grid = parse_scan_grid(o.grid);
  const auto rows = deformation_scan(h, k, grid, defect_options(o), o.jobs);
  if (o.out_path.empty()) {
    write_scan_csv(out, rows);
  } else {
    std::ostringstream ss;
    write_scan_csv(ss, rows);
    write_text_file(o.out_path, ss.str());
  }
  return 0;
}

inline int cmd_conjecture(const Options& o, std::ostream& out) {
  const HadamardMatrix h = load_matrix(o.matrix);
  const auto check = verify_hadamard(h);
  if (!check.passed) throw NotHadamard(h.provenance() + " is not a Hadamard matrix");
  const auto v = conjecture_check(h, defect_options(o), o.degree_cap);
  const json j = {{"matrix", h.provenance()},
                  {"q", v.root_order},
                  {"phi_q", v.degree},
                  {"rational_nullity", v.rational_nullity},
                  {"numeric_defect", v.numeric_defect},
                  {"verdict", to_string(v.status)}};
  if (!o.report_path.empty()) write_text_file(o.report_path, j.dump(2) + "\n");
  emit(out, j);
  return 0;
}

inline int cmd_ds(const Options& o, std::ostream& out) {
  const FiniteAbelianGroup g = parse_group(o.group);
  if (o.k < 1) throw CLI::ValidationError("--k", "must be >= 1");
  if (o.l < 0) throw CLI::ValidationError("--l", "must be >= 1");
  const std::int64_t exponent = group_exponent(g);
  const std::int64_t l = o.l == 0 ? exponent : o.l;
  const BigInt reference = fourier_defect(g);
  json j = {{"group", g.to_string()}, {"k", o.k}, {"l", l}};
  if (o.exact) {
    const PermutationGroup reg = regular_representation(g);
    const Rational est = ds_delta_exact(reg, o.k) * Rational(static_cast<std::int64_t>(reg.order()));
    j["l"] = reg.exponent();
    j["estimate"] = to_string(est);
    j["exact_flag"] = true;
  } else {
    j["estimate"] = to_string(ds_defect_estimate(g, o.k, l));
    j["exact_flag"] = l % exponent == 0;
  }
  j["reference"] = to_string(reference);
  emit(out, j);
  return 0;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  detail::Options o;
  CLI::App app{"Defect of complex Hadamard matrices"};
  app.require_subcommand(1);

  auto add_defect_flags = [&](CLI::App* sub) {
    sub->add_option("--tol", o.tol, "relative rank tolerance")->capture_default_str();
    sub->add_option("--gap", o.gap, "certification gap ratio")->capture_default_str();
  };

  auto* gen = app.add_subcommand("gen", "construct a matrix and write it as JSON");
  gen->require_subcommand(1);
  gen->add_option("--out", o.out_path, "output file (default stdout)");
  gen->add_flag("--scramble", o.scramble, "apply a random equivalence");
  gen->add_option("--seed", o.seed, "seed for --scramble")->capture_default_str();
  auto* gen_fourier = gen->add_subcommand("fourier", "Fourier matrix of Z_N1 x ... x Z_Nr");
  gen_fourier->add_option("orders", o.gen_orders, "cycle orders, e.g. 2x3x4")->required();
  auto* gen_tensor = gen->add_subcommand("tensor", "tensor product");
  gen_tensor->add_option("--a", o.gen_tensor_a, "left factor spec")->required();
  gen_tensor->add_option("--b", o.gen_tensor_b, "right factor spec")->required();
  auto* gen_deformed = gen->add_subcommand("deformed", "deformed tensor product H (x)_L K");
  gen_deformed->set_help_flag("--help", "print this help message and exit");
  gen_deformed->add_option("--h", o.gen_h, "spec of H")->required();
  gen_deformed->add_option("--k", o.gen_k, "spec of K")->required();
  gen_deformed->add_option("--l", o.gen_l, "inline [[..],..] parameters or a JSON file")->required();
  auto* gen_haagerup = gen->add_subcommand("haagerup", "Haagerup family H_6^q");
  gen_haagerup->add_option("--q", o.gen_q, "phase in turns, e.g. 1/8turn")->required();
  gen->add_subcommand("tao", "Tao matrix T_6");
  auto* gen_circulant = gen->add_subcommand("circulant", "circulant matrix from eigenvalue phases");
  gen_circulant->add_option("--q", o.gen_q, "comma-separated phases in turns")->required();
  auto* gen_spec = gen->add_subcommand("spec", "any matrix spec");
  gen_spec->add_option("spec", o.gen_spec, "matrix spec")->required();

  auto* verify = app.add_subcommand("verify", "check unimodularity and orthogonality");
  verify->add_option("matrix", o.matrix, "matrix spec or file")->required();

  auto* defect = app.add_subcommand("defect", "numeric defect with certification");
  defect->add_option("matrix", o.matrix, "matrix spec or file")->required();
  add_defect_flags(defect);
  defect->add_flag("--dephased", o.dephased, "cross-check the dephased defect by restriction");
  defect->add_flag("--spectrum", o.spectrum, "include the singular values");
  defect->add_option("--basis", o.basis_path, "write a tangent basis to this JSON file");

  auto* formula = app.add_subcommand("formula", "closed-form defect of a Fourier matrix");
  formula->add_option("--group", o.group, "cycle orders, e.g. 2x2")->required();

  auto* scan = app.add_subcommand("scan", "defect over a grid of deformation parameters");
  scan->set_help_flag("--help", "print this help message and exit");
  scan->add_option("--h", o.scan_h, "spec of H")->required();
  scan->add_option("--k", o.scan_k, "spec of K")->required();
  scan->add_option("--grid", o.grid, "grid, e.g. 16 or 8@1,3;4+r")->required();
  scan->add_option("--out", o.out_path, "CSV file (default stdout)");
  scan->add_option("--jobs", o.jobs, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  add_defect_flags(scan);

  auto* conjecture = app.add_subcommand("conjecture", "rational nullity against numeric defect");
  conjecture->add_option("matrix", o.matrix, "matrix spec or file")->required();
  conjecture->add_option("--report", o.report_path, "write the verdict to this JSON file");
  conjecture->add_option("--cap", o.degree_cap, "largest phi(q) accepted")->capture_default_str();
  add_defect_flags(conjecture);

  auto* ds = app.add_subcommand("ds", "fixed-point statistics estimate of the Fourier defect");
  ds->add_option("--group", o.group, "cycle orders, e.g. 2x3x4")->required();
  ds->add_option("--k", o.k, "moment order")->capture_default_str();
  ds->add_option("--l", o.l, "number of powers averaged (default: group exponent)");
  ds->add_flag("--exact", o.exact, "use one full period over the regular representation");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
    if (gen->parsed()) {
      for (auto* sub : gen->get_subcommands()) return detail::cmd_gen(sub->get_name(), o, out);
    }
    if (verify->parsed()) return detail::cmd_verify(o, out);
    if (defect->parsed()) return detail::cmd_defect(o, out, err);
    if (formula->parsed()) return detail::cmd_formula(o, out);
    if (scan->parsed()) return detail::cmd_scan(o, out);
    if (conjecture->parsed()) return detail::cmd_conjecture(o, out);
    if (ds->parsed()) return detail::cmd_ds(o, out);
    return 2;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace hadamard::cli
