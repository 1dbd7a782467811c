// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hadamard/hadamard.hpp"
#include "oracles.hpp"

using namespace hadamard;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Check {
 public:
  void expect(bool cond, const std::string& what) {
    ++count_;
    if (!cond && failures_.size() < 5) failures_.push_back(what);
    ok_ = ok_ && cond;
  }

  Outcome outcome(const std::string& summary) const {
    std::string detail = summary + " (" + std::to_string(count_) + " checks)";
    for (const auto& f : failures_) detail += "; failed: " + f;
    return {ok_, detail};
  }

 private:
  bool ok_ = true;
  std::size_t count_ = 0;
  std::vector<std::string> failures_;
};

HadamardMatrix fourier(std::vector<std::int64_t> orders) { return fourier_matrix(make_group(std::move(orders))); }

HadamardMatrix f22(const Turn& q) {
  const auto f2 = fourier({2});
  return deformed_tensor(f2, DeformationParameters{PhaseArray(2, 2, {Turn(), Turn(), Turn(), q})}, f2);
}

std::vector<std::vector<std::int64_t>> groups_up_to(std::int64_t n) {
  std::vector<std::vector<std::int64_t>> out;
  for (std::int64_t k = 1; k <= n; ++k)
    for (auto& g : oracle::abelian_groups(k)) out.push_back(std::move(g));
  return out;
}

std::vector<Phase> haagerup_samples() {
  return {Turn(1, 8), Turn(1, 5), Turn(2, 7), Turn(3, 8), phase_from_turns(0.0731), phase_from_turns(0.1234),
          phase_from_turns(0.3019), phase_from_turns(0.4567)};
}

Outcome fourier_concordance() {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  for (std::int64_t n = 2; n <= 20; ++n) {
    const auto rep = assess_defect(fourier({n}));
    c.expect(rep.certified && rep.gap_ratio >= 1e6, "F_" + std::to_string(n) + " certified");
    c.expect(BigInt(rep.undephased) == fourier_defect_cyclic(n), "F_" + std::to_string(n) + " = closed form");
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(secs < 30.0, "runtime under 30 s");
  std::ostringstream os;
  os << "N = 2..20 in " << secs << " s";
  return c.outcome(os.str());
}

Outcome abelian_concordance() {
  Check c;
  auto groups = groups_up_to(16);
  groups.push_back({2, 12});
  groups.push_back({3, 9});
  groups.push_back({2, 2, 6});
  for (const auto& orders : groups) {
    const auto g = make_group(orders);
    const std::string name = g.to_string();
    const BigInt formula = fourier_defect(g);
    const auto rep = undephased_defect(fourier_matrix(g));
    c.expect(BigInt(rep.undephased) == formula, name + " numeric = formula");
    c.expect(delta_bruteforce(g) * Rational(g.order()) == Rational(formula), name + " brute-force sum = formula");
    c.expect(BigInt(p_space_dimension(g)) == formula, name + " P-space = formula");
  }
  return c.outcome(std::to_string(groups.size()) + " groups");
}

Outcome deformed_klein_scan() {
  Check c;
  const auto f2 = fourier({2});
  const auto rows = deformation_scan(f2, f2, parse_scan_grid("16"));
  c.expect(rows.size() == 16, "16 grid points");
  for (const auto& r : rows) {
    const Turn q = r.parameters[3];
    const bool real = q == Turn() || q == Turn(1, 2);
    c.expect(r.error.empty() && r.certified, "q=" + q.to_string() + " certified");
    c.expect(r.defect == (real ? 10 : 8), "q=" + q.to_string() + " defect " + std::to_string(r.defect));
  }
  return c.outcome("q over 16th roots of unity");
}

Outcome klein_anchor() {
  Check c;
  const auto f2 = fourier({2});
  const auto d = undephased_defect(tensor_product(f2, f2)).undephased;
  const auto d2 = undephased_defect(f2).undephased;
  c.expect(d == 10, "d(F2 x F2) = 10");
  c.expect(d2 * d2 == 9, "d(F2)^2 = 9");
  c.expect(d > d2 * d2, "strict inequality");
  return c.outcome("d(F2 x F2) = " + std::to_string(d) + ", d(F2)^2 = " + std::to_string(d2 * d2));
}

std::vector<HadamardMatrix> relation_corpus() {
  std::vector<HadamardMatrix> corpus;
  for (const auto& orders : groups_up_to(16)) corpus.push_back(fourier(orders));
  for (std::int64_t k = 0; k < 16; ++k) corpus.push_back(f22(Turn(k, 16)));
  for (const auto& q : haagerup_samples()) corpus.push_back(haagerup_matrix(q));
  corpus.push_back(tao_matrix());
  corpus.push_back(circulant_from_eigenvalues({Turn(), Turn(1, 4)}));
  corpus.push_back(circulant_from_eigenvalues({Turn(), Turn(1, 2), Turn(1, 2), Turn(1, 2)}));
  return corpus;
}

Outcome dephased_relation() {
  Check c;
  const auto corpus = relation_corpus();
  for (const auto& h : corpus) {
    try {
      const auto d = undephased_defect(h).undephased;
      const auto dp = dephased_defect(h);
      c.expect(dp == d - 2 * static_cast<std::int64_t>(h.size()) + 1, h.provenance());
    } catch (const std::exception& e) {
      c.expect(false, h.provenance() + ": " + e.what());
    }
  }
  return c.outcome(std::to_string(corpus.size()) + " corpus matrices");
}

Outcome recombination() {
  Check c;
  std::ostringstream os;
  for (auto [n, m] : std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 2}, {2, 3}, {3, 3}}) {
    const auto h = deformed_tensor(fourier({n}), recombination_parameters(n, m), fourier({m}));
    const auto d = undephased_defect(h).undephased;
    const auto ref = undephased_defect(fourier({n * m})).undephased;
    c.expect(d == ref, "(" + std::to_string(n) + "," + std::to_string(m) + ")");
    os << "(" << n << "," << m << "): " << d << "=" << ref << " ";
  }
  return c.outcome(os.str());
}

Outcome p_correspondence() {
  Check c;
  double worst = 0.0;
  const auto groups = groups_up_to(12);
  for (const auto& orders : groups) {
    const auto g = make_group(orders);
    try {
      const auto r = fourier_P_check(g);
      worst = std::max({worst, r.max_translation_residual, r.max_conjugation_residual, r.max_realness_residual,
                        r.max_equation_residual});
      c.expect(r.passed, g.to_string() + " residuals");
      c.expect(r.max_translation_residual <= 1e-8 && r.max_conjugation_residual <= 1e-8 && r.max_equation_residual <= 1e-8,
               g.to_string() + " residual bound");
      c.expect(BigInt(r.tangent_dimension) == fourier_defect(g) && BigInt(r.p_space_dimension) == fourier_defect(g) &&
                   r.mapped_rank == r.tangent_dimension,
               g.to_string() + " dimensions");
    } catch (const std::exception& e) {
      c.expect(false, g.to_string() + ": " + e.what());
    }
  }
  std::ostringstream os;
  os << groups.size() << " groups, worst residual " << worst;
  return c.outcome(os.str());
}

Outcome character_statistics() {
  Check c;
  for (const auto& orders : groups_up_to(24)) {
    const auto g = make_group(orders);
    for (std::int64_t k = 1; k <= 3; ++k) {
      c.expect(ds_defect_estimate(g, k, group_exponent(g)) == Rational(fourier_defect(g)), g.to_string() + " k=" + std::to_string(k));
    }
  }
  for (std::int64_t n = 1; n <= 10; ++n) {
    const Rational expected = Rational(n, 2) + delta_closed(make_group({n}));
    c.expect(ds_delta_exact(regular_representation(dihedral_group(n))) == expected, "D_" + std::to_string(n));
  }
  return c.outcome("abelian |G| <= 24, k = 1..3; dihedral N <= 10");
}

Outcome conjecture_evidence() {
  Check c;
  std::vector<HadamardMatrix> equal;
  for (std::int64_t n = 2; n <= 9; ++n) equal.push_back(fourier({n}));
  equal.push_back(fourier({2, 2}));
  equal.push_back(fourier({2, 4}));
  equal.push_back(tao_matrix());
  std::ostringstream os;
  for (const auto& h : equal) {
    const auto v = conjecture_check(h);
    c.expect(static_cast<std::int64_t>(v.rational_nullity) == v.numeric_defect, h.provenance());
  }
  std::size_t butson = 0;
  std::size_t refuted = 0;
  for (const auto& h : relation_corpus()) {
    if (!h.is_exact() || cyclotomic_degree(h.common_order()) > kDefaultCyclotomicCap) continue;
    try {
      const auto v = conjecture_check(h);
      ++butson;
      refuted += v.status == ConjectureStatus::kRefutedAtInstance;
      c.expect(static_cast<std::int64_t>(v.rational_nullity) <= v.numeric_defect, h.provenance() + " soundness");
    } catch (const std::exception& e) {
      c.expect(false, h.provenance() + ": " + e.what());
    }
  }
  os << equal.size() << " equality instances; soundness on " << butson << " Butson matrices, " << refuted
     << " REFUTED-at-this-instance";
  return c.outcome(os.str());
}

Outcome isolation() {
  Check c;
  const auto t = assess_defect(tao_matrix());
  c.expect(t.certified, "T6 certified");
  c.expect(dephased_defect(tao_matrix()) == 0, "d'(T6) = 0");
  std::ostringstream os;
  os << "d'(T6) = " << t.dephased << ", d'(H6^q) =";
  for (const auto& q : haagerup_samples()) {
    const auto h = haagerup_matrix(q);
    const auto r = assess_defect(h);
    c.expect(r.certified && r.dephased >= 1, h.provenance());
    os << ' ' << r.dephased;
  }
  return c.outcome(os.str());
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 Fourier defect concordance", fourier_concordance},
      {"2 abelian group concordance", abelian_concordance},
      {"3 deformed Klein scan", deformed_klein_scan},
      {"4 Klein anchor", klein_anchor},
      {"5 dephased relation", dephased_relation},
      {"6 recombination", recombination},
      {"7 P-matrix correspondence", p_correspondence},
      {"8 character statistics", character_statistics},
      {"9 rational nullity evidence", conjecture_evidence},
      {"10 isolation", isolation},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  }
  std::cout << (10 - failed) << "/10 criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
