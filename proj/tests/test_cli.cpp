#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "hadamard/spec.hpp"
#include "oracles.hpp"

using namespace hadamard;
using nlohmann::json;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("hadamard_test_" + name)).string();
}

}  // namespace

TEST(Spec, ParseExamples) {
  const auto s = parse_matrix_spec("fourier:2x2");
  EXPECT_EQ(s.kind, MatrixSpec::Kind::kFourier);
  EXPECT_EQ(s.group, make_group({2, 2}));
  const auto h = parse_matrix_spec("haagerup:1/8");
  EXPECT_EQ(h.kind, MatrixSpec::Kind::kHaagerup);
  EXPECT_EQ(std::get<Turn>(h.phases[0]), Turn(1, 8));
  const auto d = parse_matrix_spec("deformed:(fourier:2,[[0,0],[0,1/8]],fourier:2)");
  ASSERT_EQ(d.kind, MatrixSpec::Kind::kDeformed);
  const auto m = build_matrix(d);
  const auto f2 = fourier_matrix(make_group({2}));
  const auto ref = deformed_tensor(f2, DeformationParameters{PhaseArray(2, 2, {Turn(), Turn(), Turn(), Turn(1, 8)})}, f2);
  EXPECT_EQ(m.entries().turns(), ref.entries().turns());
}

TEST(Spec, Phases) {
  EXPECT_EQ(std::get<Turn>(parse_spec_phase("1/8turn")), Turn(1, 8));
  EXPECT_EQ(std::get<Turn>(parse_spec_phase("3")), Turn());
  EXPECT_EQ(std::get<Turn>(parse_spec_phase("-1/4")), Turn(3, 4));
  EXPECT_DOUBLE_EQ(std::get<double>(parse_spec_phase("0.125")), 0.125);
  EXPECT_DOUBLE_EQ(std::get<double>(parse_spec_phase("1e-3turn")), 1e-3);
  EXPECT_THROW(parse_spec_phase("1/0"), ParseError);
  EXPECT_THROW(parse_spec_phase("x"), ParseError);
  EXPECT_THROW(parse_spec_phase("1/"), ParseError);
}

TEST(Spec, Errors) {
  try {
    parse_matrix_spec("fourier:2xq");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 10u);
  }
  EXPECT_THROW(parse_matrix_spec("nope:3"), ParseError);
  EXPECT_THROW(parse_matrix_spec("tensor:(fourier:2,fourier:3"), ParseError);
  EXPECT_THROW(parse_matrix_spec("haagerup:1/0"), ParseError);
  EXPECT_THROW(parse_matrix_spec("deformed:(fourier:2,[[0,0],[0]],fourier:2)"), ParseError);
  EXPECT_THROW(parse_matrix_spec("tao extra"), ParseError);
  EXPECT_THROW(parse_matrix_spec("fourier:0"), ParseError);
}

TEST(Spec, RoundTrip) {
  for (const std::string text : {"fourier:2x3x4", "tensor:(fourier:2,tao)", "deformed:(fourier:2,[[0,0],[0,1/8]],fourier:2)",
                                 "haagerup:0.1234", "haagerup:1/8", "tao", "circulant:0,1/2,1/2,1/2", "file:/tmp/x.json",
                                 "tensor:(circulant:0,1/4,haagerup:1/3)", "deformed:(fourier:3,params.json,fourier:2)",
                                 "circulant:0.25,0.5"}) {
    const auto s = parse_matrix_spec(text);
    const auto canonical = to_string(s);
    EXPECT_EQ(parse_matrix_spec(canonical), s) << text;
    EXPECT_EQ(to_string(parse_matrix_spec(canonical)), canonical);
  }
  EXPECT_EQ(to_string(parse_matrix_spec("haagerup:2/16turn")), "haagerup:1/8");
  EXPECT_EQ(to_string(parse_matrix_spec("haagerup:0.1")), "haagerup:0.10000000000000001");
}

TEST(Io, MatrixRoundTrip) {
  for (const auto& h : {tao_matrix(), haagerup_matrix(phase_from_turns(0.377)), fourier_matrix(make_group({2, 3}))}) {
    const auto back = matrix_from_json(json::parse(matrix_to_json(h).dump()));
    EXPECT_EQ(back.is_exact(), h.is_exact());
    EXPECT_EQ(back.provenance(), h.provenance());
    for (std::size_t i = 0; i < h.size(); ++i)
      for (std::size_t j = 0; j < h.size(); ++j) EXPECT_EQ(back(i, j), h(i, j));
  }
  EXPECT_THROW(matrix_from_json(json::parse(R"({"n":2,"repr":"phase","entries":[[0,1]]})")), DomainError);
  EXPECT_THROW(matrix_from_json(json::parse(R"({"n":1,"repr":"polar","entries":[[0,1]]})")), DomainError);
}

TEST(Cli, Formula) {
  const auto r = run({"formula", "--group", "2x2"});
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(json::parse(r.out)["defect"], 10);
}

TEST(Cli, DefectFourier6) {
  const auto r = run({"defect", "fourier:6"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["defect"], 15);
  EXPECT_EQ(j["dephased_defect"], 4);
  EXPECT_TRUE(j["certification"]["certified"].get<bool>());
  EXPECT_EQ(j["certification"]["rel_tol"], 1e-9);
  EXPECT_EQ(j["certification"]["gap_threshold"], 1e6);
}

TEST(Cli, DefectAgreesWithFormula) {
  for (std::int64_t n = 1; n <= 24; ++n) {
    for (const auto& orders : oracle::abelian_groups(n)) {
      const std::string g = make_group(orders).to_string();
      const auto a = run({"defect", "fourier:" + g});
      const auto b = run({"formula", "--group", g});
      ASSERT_EQ(a.status, 0) << a.err;
      ASSERT_EQ(b.status, 0) << b.err;
      EXPECT_EQ(json::parse(a.out)["defect"], json::parse(b.out)["defect"]) << g;
    }
  }
}

TEST(Cli, VerifyTao) {
  const auto r = run({"verify", "tao"});
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(json::parse(r.out)["result"], "pass");
  const auto bad = run({"verify", "circulant:0,0"});
  EXPECT_EQ(bad.status, 1);
  EXPECT_EQ(json::parse(bad.out)["result"], "fail");
}

TEST(Cli, GenAndFileRoundTrip) {
  const std::string path = temp_path("haagerup.json");
  ASSERT_EQ(run({"gen", "--out", path, "haagerup", "--q", "0.3"}).status, 0);
  const auto direct = run({"defect", "haagerup:0.3"});
  const auto from_file = run({"defect", "file:" + path});
  const auto bare_path = run({"defect", path});
  ASSERT_EQ(from_file.status, 0) << from_file.err;
  EXPECT_EQ(json::parse(direct.out)["defect"], json::parse(from_file.out)["defect"]);
  EXPECT_EQ(json::parse(direct.out)["defect"], json::parse(bare_path.out)["defect"]);
  std::filesystem::remove(path);
}

TEST(Cli, GenVariants) {
  EXPECT_EQ(json::parse(run({"gen", "fourier", "2x3"}).out)["n"], 6);
  EXPECT_EQ(json::parse(run({"gen", "tao"}).out)["repr"], "phase");
  EXPECT_EQ(json::parse(run({"gen", "deformed", "--h", "fourier:2", "--k", "fourier:2", "--l", "[[0,0],[0,1/8]]"}).out)["n"], 4);
  EXPECT_EQ(json::parse(run({"gen", "circulant", "--q", "0,1/4"}).out)["repr"], "complex");
  EXPECT_EQ(json::parse(run({"gen", "tensor", "--a", "fourier:2", "--b", "tao"}).out)["n"], 12);
  EXPECT_EQ(run({"gen", "circulant", "--q", "0,0"}).status, 1);
  const auto a = run({"gen", "--scramble", "--seed", "5", "tao"});
  const auto b = run({"gen", "--scramble", "--seed", "5", "tao"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, run({"gen", "tao"}).out);
}

TEST(Cli, DeformationFromFile) {
  const std::string path = temp_path("params.json");
  write_text_file(path, R"([["0","0"],["0","1/8"]])");
  const auto r = run({"defect", "deformed:(fourier:2," + path + ",fourier:2)"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["defect"], 8);
  std::filesystem::remove(path);
}

TEST(Cli, DefectOptions) {
  const std::string basis = temp_path("basis.json");
  const auto r = run({"defect", "tao", "--dephased", "--basis", basis, "--spectrum"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["dephased_defect"], 0);
  EXPECT_TRUE(j["isolated"].get<bool>());
  EXPECT_EQ(j["singular_values"].size(), 30u);
  EXPECT_EQ(json::parse(read_text_file(basis))["basis"].size(), 11u);
  std::filesystem::remove(basis);
  const auto strict = run({"defect", "fourier:5", "--gap", "1e300"});
  EXPECT_EQ(strict.status, 1);
  EXPECT_FALSE(strict.err.empty());
  EXPECT_EQ(run({"defect", "fourier:5", "--tol", "2"}).status, 2);
}

TEST(Cli, Scan) {
  const auto r = run({"scan", "--h", "fourier:2", "--k", "fourier:2", "--grid", "16", "--jobs", "3"});
  ASSERT_EQ(r.status, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "cell-id,L,defect,dephased-defect,gap-ratio,certified");
  int count = 0;
  while (std::getline(lines, line)) ++count;
  EXPECT_EQ(count, 16);
  const std::string path = temp_path("scan.csv");
  EXPECT_EQ(run({"scan", "--h", "fourier:2", "--k", "fourier:2", "--grid", "16", "--out", path}).status, 0);
  EXPECT_EQ(read_text_file(path), r.out);
  std::filesystem::remove(path);
}

TEST(Cli, Conjecture) {
  const std::string path = temp_path("report.json");
  const auto r = run({"conjecture", "fourier:5", "--report", path});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto j = json::parse(read_text_file(path));
  EXPECT_EQ(j["q"], 5);
  EXPECT_EQ(j["phi_q"], 4);
  EXPECT_EQ(j["rational_nullity"], 9);
  EXPECT_EQ(j["numeric_defect"], 9);
  EXPECT_EQ(j["verdict"], "SUPPORTED");
  std::filesystem::remove(path);
  EXPECT_EQ(run({"conjecture", "haagerup:0.3"}).status, 1);
  EXPECT_EQ(run({"conjecture", "fourier:67", "--cap", "10"}).status, 1);
}

TEST(Cli, Ds) {
  const auto r = run({"ds", "--group", "2x3x4"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["estimate"], "140");
  EXPECT_EQ(j["reference"], "140");
  EXPECT_TRUE(j["exact_flag"].get<bool>());
  const auto partial = json::parse(run({"ds", "--group", "2", "--l", "1"}).out);
  EXPECT_EQ(partial["estimate"], "2");
  EXPECT_FALSE(partial["exact_flag"].get<bool>());
  EXPECT_EQ(json::parse(run({"ds", "--group", "6", "--exact", "--k", "3"}).out)["estimate"], "15");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).status, 2);
  EXPECT_EQ(run({"bogus"}).status, 2);
  EXPECT_EQ(run({"defect"}).status, 2);
  EXPECT_EQ(run({"defect", "fourier:2xz"}).status, 2);
  EXPECT_EQ(run({"formula", "--group", "2x"}).status, 2);
  EXPECT_EQ(run({"defect", "file:/nonexistent/matrix.json"}).status, 1);
  EXPECT_EQ(run({"defect", "circulant:0,0"}).status, 1);
  EXPECT_EQ(run({"defect", "--help"}).status, 0);
}

TEST(Cli, CapFromEnvironment) {
  ::setenv("HD_CAP", "4", 1);
  EXPECT_EQ(run({"ds", "--group", "2x3"}).status, 1);
  ::unsetenv("HD_CAP");
  EXPECT_EQ(run({"ds", "--group", "2x3"}).status, 0);
}
