#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "projlat/cli.hpp"
#include "projlat/io.hpp"
#include "projlat/projection.hpp"
#include "projlat/rng.hpp"
#include "projlat/types.hpp"

using namespace projlat;
using projlat::io::json;

namespace {

const ToleranceConfig cfg;

Projection line(double theta) {
  Vector v(2);
  v << Complex(std::cos(theta), 0), Complex(std::sin(theta), 0);
  return Projection::from_matrix(v * v.adjoint(), cfg);
}

Projection diag_pattern(std::initializer_list<int> bits) {
  const int d = static_cast<int>(bits.size());
  Matrix m = Matrix::Zero(d, d);
  int i = 0;
  for (int b : bits) m(i, i) = b, ++i;
  return Projection::from_matrix(m, cfg);
}

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  CliResult r;
  r.code = cli::run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// Scratch inputs live next to the test binary run, one file per label.
std::string write_input(const std::string& label, const json& j) {
  const std::string path = "/tmp/projlat_io_test_" + label + ".json";
  std::ofstream f(path, std::ios::binary);
  f << j.dump(2) << "\n";
  return path;
}

}  // namespace

TEST_CASE("matrix json round trip") {
  SeededRng rng(51);
  const Matrix m = rng.gaussian_matrix(3, 3);
  const Matrix back = io::matrix_from_json(io::matrix_to_json(m));
  CHECK(frobenius(back - m) == doctest::Approx(0.0));

  CHECK_THROWS_AS(io::matrix_from_json(io::matrix_to_json(m), 2), ConfigError);
  CHECK_THROWS_AS(io::matrix_from_json(json::object()), ArgumentError);
  json short_entries{{"dim", 2}, {"entries", json::array({json::array({1.0, 0.0})})}};
  CHECK_THROWS_AS(io::matrix_from_json(short_entries), ArgumentError);
}

TEST_CASE("vector json round trip") {
  Vector v(3);
  v << Complex(0.5, -1.0), Complex(0.0, 2.0), Complex(-3.0, 0.25);
  const Vector back = io::vector_from_json(io::vector_to_json(v));
  CHECK((back - v).norm() == doctest::Approx(0.0));
  CHECK_THROWS_AS(io::vector_from_json(json::array()), ArgumentError);
}

TEST_CASE("projection json round trip, both encodings") {
  const Projection p = line(M_PI / 4.0);
  const Projection back = io::projection_from_json(io::projection_to_json(p), cfg);
  CHECK(frobenius(back.matrix() - p.matrix()) < 1e-12);

  json basis_form{{"dim", 2},
                  {"range_basis",
                   json::array({json::array({json::array({1.0, 0.0}),
                                             json::array({0.0, 0.0})})})}};
  const Projection e = io::projection_from_json(basis_form, cfg);
  CHECK(e == diag_pattern({1, 0}));

  CHECK_THROWS_AS(io::projection_from_json(io::projection_to_json(p), cfg, 1),
                  ConfigError);
}

TEST_CASE("element and morphism json round trips") {
  SeededRng rng(52);
  const BlockAlgebra alg{{2, 3}};
  const AlgebraElement x(alg,
                         {rng.gaussian_matrix(2, 2), rng.gaussian_matrix(3, 3)});
  const AlgebraElement back = io::element_from_json(io::element_to_json(x), cfg);
  REQUIRE(back.algebra() == alg);
  for (int i = 0; i < x.block_count(); ++i) {
    CHECK(frobenius(back.block(i) - x.block(i)) < 1e-14);
  }

  std::vector<Morphism::BlockAssignment> a;
  a.push_back({1, rng.random_unitary(3)});
  const Morphism m = Morphism::from_assignment(alg, std::move(a));
  const Morphism mb = io::morphism_from_json(io::morphism_to_json(m), alg);
  const AlgebraElement lhs = m.apply(x);
  const AlgebraElement rhs = mb.apply(x);
  for (int i = 0; i < lhs.block_count(); ++i) {
    CHECK(frobenius(lhs.block(i) - rhs.block(i)) < 1e-12);
  }

  json bad{{"block_dims", json::array({2})},
           {"blocks", json::array({io::matrix_to_json(Matrix::Identity(3, 3))})}};
  CHECK_THROWS_AS(io::element_from_json(bad, cfg), ArgumentError);
}

TEST_CASE("cli glb check on the tilted pair") {
  const json in{{"ps", json::array({io::projection_to_json(diag_pattern({1, 0})),
                                    io::projection_to_json(line(M_PI / 4.0))})}};
  const auto r = run({"glb-check", "--in", write_input("glb", in)});
  REQUIRE(r.code == 0);
  const json report = json::parse(r.out);
  CHECK(report["criterion_holds"].get<bool>());
  CHECK(report["sup_sigma_excl_one"].get<double>() ==
        doctest::Approx(0.5).epsilon(1e-9));
  CHECK(report["meet"]["dim"].get<int>() == 2);
}

TEST_CASE("cli reports are byte deterministic") {
  const std::vector<std::string> args{"verify", "--seed", "42", "--count", "3"};
  const auto first = run(args);
  const auto second = run(args);
  REQUIRE(first.code == 0);
  CHECK(first.code == second.code);
  CHECK(first.out == second.out);
  const json report = json::parse(first.out);
  CHECK(report["passed"].get<bool>());
  CHECK(report["seed"].get<std::uint64_t>() == 42);
}

TEST_CASE("cli worked compression bound") {
  Matrix s(2, 2);
  s << 1, 0, 0, 0;
  const json in{{"s", io::matrix_to_json(s)},
                {"p", io::projection_to_json(line(M_PI / 4.0))},
                {"cut_s", 0.25},
                {"cut_t", 0.0}};
  const auto r = run({"ee-check", "--in", write_input("ee", in)});
  REQUIRE(r.code == 0);
  const json report = json::parse(r.out);
  CHECK(report["lhs"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(report["rhs"].get<double>() == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(report["holds"].get<bool>());
}

TEST_CASE("cli violation reports echo a runnable instance") {
  const json in{{"ps", json::array({io::projection_to_json(
                                        diag_pattern({1, 1, 1, 0})),
                                    io::projection_to_json(
                                        diag_pattern({1, 1, 0, 0}))})},
                {"r", io::projection_to_json(diag_pattern({1, 0, 0, 0}))}};
  const auto first = run({"norm-check", "--in", write_input("norm1", in)});
  REQUIRE(first.code == 1);
  const json report = json::parse(first.out);
  CHECK_FALSE(report["is_glb"].get<bool>());
  CHECK(report["violated"].get<std::string>() == "greatest lower bound norm test");
  REQUIRE(report.contains("instance"));

  const auto second =
      run({"norm-check", "--in", write_input("norm2", report["instance"])});
  CHECK(second.code == 1);
  const json again = json::parse(second.out);
  CHECK(again["violated"] == report["violated"]);
}

TEST_CASE("cli calkin demo") {
  const auto r = run({"calkin-demo", "--family", "badpq", "--N", "64"});
  REQUIRE(r.code == 0);
  const json report = json::parse(r.out);
  CHECK(report["essential_norm_p_minus_q"]["estimate"].get<double>() <=
        2.0 / 64.0);
  CHECK(report["block_overlap_sq"][0].get<double>() ==
        doctest::Approx(0.5).epsilon(1e-12));
  for (const auto& rank : report["truncated_meet_ranks"]) {
    CHECK(rank.get<int>() == 0);
  }

  const auto pom = run({"calkin-demo", "--family", "pomega", "--N", "128"});
  REQUIRE(pom.code == 0);
  CHECK(json::parse(pom.out)["contains_displayed_values"].get<bool>());
}

TEST_CASE("cli text format and file output") {
  const json in{{"ps", json::array({io::projection_to_json(diag_pattern({1, 0})),
                                    io::projection_to_json(line(M_PI / 4.0))})}};
  const std::string in_path = write_input("text", in);
  const auto r = run({"glb-check", "--in", in_path, "--format", "text"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("criterion_holds: true") != std::string::npos);

  const std::string out_path = "/tmp/projlat_io_test_report.json";
  std::remove(out_path.c_str());
  const auto w = run({"glb-check", "--in", in_path, "--out", out_path});
  REQUIRE(w.code == 0);
  CHECK(w.out.empty());
  std::ifstream f(out_path);
  REQUIRE(f.good());
  const json report = json::parse(f);
  CHECK(report["criterion_holds"].get<bool>());
}

TEST_CASE("cli error paths") {
  const std::string mangled = "/tmp/projlat_io_test_mangled.json";
  {
    std::ofstream f(mangled, std::ios::binary);
    f << "{\"ps\": [";
  }
  const auto parse_fail = run({"meet", "--in", mangled});
  CHECK(parse_fail.code == 2);
  CHECK_FALSE(parse_fail.err.empty());

  const auto missing = run({"meet", "--in", "/tmp/projlat_io_test_absent.json"});
  CHECK(missing.code == 2);

  const json commuting{{"p", io::projection_to_json(diag_pattern({1, 0}))},
                       {"q", io::projection_to_json(diag_pattern({0, 1}))}};
  const auto gap_fail = run({"gap", "--in", write_input("gap", commuting)});
  CHECK(gap_fail.code == 2);
  CHECK(gap_fail.err.find("non-commuting") != std::string::npos);

  const auto no_seed = run({"verify"});
  CHECK(no_seed.code == 2);

  const json big{{"ps", json::array({io::projection_to_json(
                      diag_pattern({1, 0, 0}))})}};
  const auto capped = run({"meet", "--in", write_input("cap", big), "--max-dim", "2"});
  CHECK(capped.code == 2);
  CHECK(capped.err.find("cap") != std::string::npos);

  const auto unknown = run({"frobnicate"});
  CHECK(unknown.code == 2);
}
