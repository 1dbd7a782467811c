#pragma once

// Defect of deformed tensor products H (x)_L K over a finite grid of
// parameter matrices L. L is kept dephased: its first row and column are 1,
// the remaining (M-1)(N-1) entries are the scanned parameters.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hadamard/construct.hpp"
#include "hadamard/defect.hpp"
#include "hadamard/errors.hpp"

namespace hadamard {

/// Values of one parameter: numerators k of k/denominator turns (all of
/// 0..denominator-1 when `numerators` is empty).
struct ParameterGrid {
  std::int64_t denominator = 1;
  std::vector<std::int64_t> numerators;

  /// Sorted, deduplicated turns including the flat point 0.
  std::vector<Turn> values() const {
    if (denominator < 1) throw std::invalid_argument("grid denominator must be >= 1");
    std::vector<Turn> out;
    if (numerators.empty()) {
      for (std::int64_t k = 0; k < denominator; ++k) out.emplace_back(k, denominator);
    } else {
      out.emplace_back(0, 1);
      for (auto k : numerators) out.emplace_back(k, denominator);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
};

struct ScanGrid {
  /// One entry per free parameter, or a single entry applied to all of them.
  std::vector<ParameterGrid> parameters;
  /// Append the cell L_{aj} = w^{aj}, w = e^{2 pi i/NM}, unless already on the grid.
  bool include_recombination = false;
};

/// Grammar: `m` | `m@k1,k2,...`, several separated by ';'. A trailing `+r`
/// on the whole string requests the recombination cell.
inline ScanGrid parse_scan_grid(const std::string& text) {
  ScanGrid grid;
  std::string body = text;
  if (!body.empty() && body.size() >= 2 && body.substr(body.size() - 2) == "+r") {
    grid.include_recombination = true;
    body.resize(body.size() - 2);
  }
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t end = body.find(';', pos);
    if (end == std::string::npos) end = body.size();
    const std::string part = body.substr(pos, end - pos);
    ParameterGrid pg;
    const auto at = part.find('@');
    const std::string den = part.substr(0, at);
    if (den.empty() || den.find_first_not_of("0123456789") != std::string::npos) {
      throw ParseError("malformed grid denominator '" + den + "'", pos);
    }
    pg.denominator = std::stoll(den);
    if (pg.denominator < 1) throw ParseError("grid denominator must be >= 1", pos);
    if (at != std::string::npos) {
      std::stringstream ss(part.substr(at + 1));
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
          throw ParseError("malformed grid numerator '" + item + "'", pos + at + 1);
        }
        pg.numerators.push_back(std::stoll(item));
      }
    }
    grid.parameters.push_back(std::move(pg));
    pos = end + 1;
  }
  return grid;
}

struct ScanRow {
  std::size_t cell_id = 0;
  /// M x N parameter matrix, row-major.
  std::vector<Turn> parameters;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::int64_t defect = -1;
  std::int64_t dephased_defect = 0;
  double gap_ratio = 0.0;
  bool certified = false;
  bool recombination = false;
  /// Non-empty when the cell failed (e.g. non-Hadamard); other fields are then unset.
  std::string error;
};

namespace detail {

inline ScanRow evaluate_cell(const HadamardMatrix& h, const HadamardMatrix& k, ScanRow row,
                             const DefectOptions& opts) {
  try {
    const DeformationParameters l{PhaseArray(row.rows, row.cols, row.parameters)};
    const auto rep = assess_defect(deformed_tensor(h, l, k), opts);
    row.defect = rep.undephased;
    row.dephased_defect = rep.dephased;
    row.gap_ratio = rep.gap_ratio;
    row.certified = rep.certified;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace detail

/// Cells in odometer order over the parameters (last fastest), then the
/// optional recombination cell. Cells are evaluated on `jobs` threads and
/// merged in grid order.
inline std::vector<ScanRow> deformation_scan(const HadamardMatrix& h, const HadamardMatrix& k, const ScanGrid& grid,
                                             const DefectOptions& opts = {}, unsigned jobs = 1) {
  const std::size_t n = h.size();
  const std::size_t m = k.size();
  const std::size_t free_count = (m - 1) * (n - 1);
  if (free_count > 0 && grid.parameters.size() != 1 && grid.parameters.size() != free_count) {
    throw std::invalid_argument("grid has " + std::to_string(grid.parameters.size()) + " parameter specs, expected 1 or " +
                                std::to_string(free_count));
  }
  std::vector<std::vector<Turn>> axes;
  for (std::size_t p = 0; p < free_count; ++p) {
    axes.push_back(grid.parameters[grid.parameters.size() == 1 ? 0 : p].values());
  }

  std::vector<ScanRow> cells;
  std::vector<std::size_t> counter(free_count, 0);
  for (bool done = false; !done;) {
    ScanRow row;
    row.rows = m;
    row.cols = n;
    row.parameters.assign(m * n, Turn());
    std::size_t p = 0;
    for (std::size_t a = 1; a < m; ++a)
      for (std::size_t j = 1; j < n; ++j, ++p) row.parameters[a * n + j] = axes[p][counter[p]];
    row.cell_id = cells.size();
    cells.push_back(std::move(row));
    done = true;
    for (std::size_t d = free_count; d-- > 0;) {
      if (++counter[d] < axes[d].size()) {
        done = false;
        break;
      }
      counter[d] = 0;
    }
  }

  if (grid.include_recombination) {
    const auto recomb = recombination_parameters(static_cast<std::int64_t>(n), static_cast<std::int64_t>(m));
    const auto& turns = recomb.values.turns();
    auto it = std::find_if(cells.begin(), cells.end(), [&](const ScanRow& r) { return r.parameters == turns; });
    if (it != cells.end()) {
      it->recombination = true;
    } else {
      ScanRow row;
      row.rows = m;
      row.cols = n;
      row.parameters = turns;
      row.recombination = true;
      row.cell_id = cells.size();
      cells.push_back(std::move(row));
    }
  }

  std::vector<ScanRow> results(cells.size());
  jobs = std::max(1u, jobs);
  if (jobs == 1 || cells.size() < 2) {
    for (std::size_t c = 0; c < cells.size(); ++c) results[c] = detail::evaluate_cell(h, k, cells[c], opts);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  for (unsigned t = 0; t < jobs; ++t) {
    workers.emplace_back([&] {
      for (std::size_t c = next++; c < cells.size(); c = next++) results[c] = detail::evaluate_cell(h, k, cells[c], opts);
    });
  }
  for (auto& w : workers) w.join();
  return results;
}

inline void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows) {
  os << "cell-id,L,defect,dephased-defect,gap-ratio,certified\n";
  for (const auto& r : rows) {
    os << r.cell_id << ',';
    for (std::size_t e = 0; e < r.parameters.size(); ++e) os << (e ? " " : "") << r.parameters[e].to_string();
    os << ',';
    if (!r.error.empty()) {
      os << ",,,error\n";
      continue;
    }
    char gap[32];
    std::snprintf(gap, sizeof gap, "%.6e", r.gap_ratio);
    os << r.defect << ',' << r.dephased_defect << ',' << (std::isinf(r.gap_ratio) ? "inf" : gap) << ','
       << (r.certified ? "true" : "false") << '\n';
  }
}

}  // namespace hadamard
