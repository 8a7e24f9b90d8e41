#include <gtest/gtest.h>

#include <cmath>

#include "gcyc/error.hpp"
#include "gcyc/examples_corpus.hpp"
#include "support/oracles.hpp"

using namespace gcyc;
using nlohmann::json;

namespace {

double alpha_of(const std::string& label) {
  const auto slash = label.find('/');
  if (slash == std::string::npos) return std::stod(label);
  return std::stod(label.substr(0, slash)) / std::stod(label.substr(slash + 1));
}

}  // namespace

TEST(Ex22, DistanceTableMatchesSampledFunctions) {
  const GraphBundle b = build_ex22(6);
  const auto& s = b.space;
  for (Vertex i = 0; i < s.size(); ++i)
    for (Vertex j = 0; j < s.size(); ++j) {
      const double a = alpha_of(s.id(i).substr(2));
      const double c = alpha_of(s.id(j).substr(2));
      auto fn = [](bool on_a, double p) {
        return [on_a, p](double t) { return on_a ? oracle::f_alpha(p, t) : oracle::g_alpha(p, t); };
      };
      const double sampled = oracle::sampled_norm(fn(s.in_a(i), a), fn(s.in_a(j), c));
      EXPECT_NEAR(s.dist(i, j), sampled, 1e-12) << s.id(i) << " " << s.id(j);
    }
}

TEST(Ex22, CounterexamplePair) {
  const GraphBundle b = build_ex22(16);
  const Vertex f = b.space.index_of("f@0.49");
  const Vertex g = b.space.index_of("g@0.51");
  EXPECT_EQ(b.space.id((*b.map)(f)), "g@1/3");
  EXPECT_EQ(b.space.id((*b.map)(g)), "f@1/2");
  EXPECT_NEAR(b.space.dist((*b.map)(f), (*b.map)(g)), 1.0 + 1.0 / 6.0, 1e-12);
  EXPECT_NEAR(b.space.dist(f, g), 1.02, 1e-12);
  // f@0.49 and g@0.51 lie in different kappa classes, so no edge joins them
  EXPECT_FALSE(b.space.has_edge(f, g));
  EXPECT_FALSE(b.space.has_edge(f, (*b.map)(g)));
}

TEST(Ex33, Claims) {
  const GraphBundle b = build_ex33(12);
  EXPECT_EQ(b.space.size(), 26u);
  EXPECT_EQ(b.seed, "(0,1/2)");
  EXPECT_EQ(b.space.id((*b.map)(b.space.index_of("(0,1/2)"))), "(1,1/4)");
}

TEST(Ex35, TwoBppsInSeparateClasses) {
  const GraphBundle b = build_ex35(12);
  const auto labels = component_labels(b.space);
  EXPECT_NE(labels[b.space.index_of("(0,0)")], labels[b.space.index_of("(0,1)")]);
}

TEST(Ex53, Problem) {
  const PbvpProblem p = build_ex53(201);
  EXPECT_NEAR(p.alpha, std::exp(2.0), 1e-15);
  EXPECT_NEAR(p.h(0.0), std::exp(2.0) - 1.0, 1e-12);
  EXPECT_EQ(p.grid.size(), 201u);
}

TEST(Reproduce, ReportsStructure) {
  const ReproduceReport r = reproduce("ex33_dyadic_l1");
  const json j = r.to_json();
  EXPECT_EQ(j["schema"], "1");
  EXPECT_EQ(j["example"], "ex33_dyadic_l1");
  EXPECT_EQ(j["total"], r.checks.size());
  for (const auto& c : j["checks"]) {
    EXPECT_TRUE(c.contains("provenance"));
    const std::string prov = c["provenance"];
    EXPECT_TRUE(prov == "stated" || prov == "derived" || prov == "trivial") << prov;
  }
}

TEST(Reproduce, PassingExamples) {
  for (const char* id : {"ex22_kappa", "ex33_dyadic_l1", "ex41_fixed_point", "ex53_pbvp"}) {
    const ReproduceReport r = reproduce(id);
    for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << id << ": " << c.name << " observed " << c.observed.dump();
  }
}

TEST(Reproduce, NotBpoComponentClaimFails) {
  // (0,1) sits in the class of (0,1/2) on the discrete instance; see the README
  const ReproduceReport r = reproduce("ex35_not_bpo");
  std::size_t failed = 0;
  for (const auto& c : r.checks)
    if (!c.pass) {
      ++failed;
      EXPECT_EQ(c.name, "class of (0,1/2) meets no best proximity point");
      EXPECT_EQ(c.observed, json::array({"(0,1)"}));
    }
  EXPECT_EQ(failed, 1u);
}

TEST(Reproduce, Deterministic) {
  EXPECT_EQ(reproduce("ex22_kappa").to_json().dump(), reproduce("ex22_kappa").to_json().dump());
}

TEST(Reproduce, ParamErrors) {
  auto code = [](const char* id, json params) {
    try {
      (void)reproduce(id, params);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidInput;
  };
  EXPECT_EQ(code("ex99", json::object()), ErrorCode::ParamOutOfRange);
  EXPECT_EQ(code("ex22_kappa", json{{"n", 2}}), ErrorCode::ParamOutOfRange);
  EXPECT_EQ(code("ex22_kappa", json{{"depth", 4}}), ErrorCode::ParamOutOfRange);
  EXPECT_EQ(code("ex33_dyadic_l1", json{{"depth", 41}}), ErrorCode::ParamOutOfRange);
  EXPECT_EQ(code("ex53_pbvp", json{{"n", "many"}}), ErrorCode::ParamOutOfRange);
}

TEST(Emit, FileSets) {
  EXPECT_EQ(emit_example("ex22_kappa").size(), 3u);
  const auto fp = emit_example("ex41_fixed_point", json{{"levels", 4}, {"nodes", 8}});
  EXPECT_TRUE(fp.count("t1.json") && fp.count("t2.json") && fp.count("psi.json"));
  const auto pb = emit_example("ex53_pbvp");
  ASSERT_TRUE(pb.count("problem.json"));
  EXPECT_EQ(pb.at("problem.json")["N"], 201);
}
