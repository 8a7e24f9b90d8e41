// Exercises the shared library through the C header only.
#include <gtest/gtest.h>

#include <string>

#include "gcyc/gcyc.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Ctx {
  gcyc_context* p = gcyc_context_new();
  ~Ctx() { gcyc_context_free(p); }
};

json report_json(gcyc_report* r) { return json::parse(gcyc_report_json(r)); }

std::string emitted(gcyc_context* ctx, const char* id, const char* file) {
  gcyc_report* r = nullptr;
  EXPECT_EQ(gcyc_emit_example(ctx, id, nullptr, &r), GCYC_OK);
  const std::string text = report_json(r)[file].dump();
  gcyc_report_free(r);
  return text;
}

}  // namespace

TEST(CApi, VersionAndNames) {
  EXPECT_STREQ(gcyc_version(), "1.0.0");
  EXPECT_STREQ(gcyc_status_name(GCYC_VIOLATION), "violation");
  const json ids = json::parse(gcyc_example_ids());
  EXPECT_EQ(ids.size(), 5u);
}

TEST(CApi, Kappa) {
  Ctx c;
  int64_t k = 0;
  EXPECT_EQ(gcyc_kappa(c.p, 0.49, &k), GCYC_OK);
  EXPECT_EQ(k, 3);
  EXPECT_EQ(gcyc_kappa(c.p, 1.5, &k), GCYC_INPUT_ERROR);
  EXPECT_EQ(json::parse(gcyc_last_error_json(c.p))["code"], "OutOfDomain");
}

TEST(CApi, NullArguments) {
  Ctx c;
  gcyc_space* s = nullptr;
  EXPECT_EQ(gcyc_space_load(c.p, nullptr, &s), GCYC_INPUT_ERROR);
  EXPECT_EQ(gcyc_space_load(c.p, "{", &s), GCYC_INPUT_ERROR);
  EXPECT_EQ(s, nullptr);
  EXPECT_NE(std::string(gcyc_last_error(c.p)).find("malformed"), std::string::npos);
}

TEST(CApi, VerifyAndSolveDyadic) {
  Ctx c;
  gcyc_space* s = nullptr;
  ASSERT_EQ(gcyc_space_load(c.p, emitted(c.p, "ex33_dyadic_l1", "instance.json").c_str(), &s), GCYC_OK);
  EXPECT_EQ(gcyc_space_size(s), 26u);
  gcyc_map* t = nullptr;
  ASSERT_EQ(gcyc_map_load(c.p, s, emitted(c.p, "ex33_dyadic_l1", "map.json").c_str(), GCYC_MAP_CYCLIC, &t), GCYC_OK);

  gcyc_report* r = nullptr;
  ASSERT_EQ(gcyc_verify(c.p, s, nullptr, nullptr, nullptr, nullptr, &r), GCYC_OK);
  EXPECT_EQ(report_json(r)["predicates"]["property_uc"]["holds"], true);
  gcyc_report_free(r);

  gcyc_solve_options opt;
  gcyc_solve_options_default(&opt);
  ASSERT_EQ(gcyc_solve_bpp(c.p, s, t, "(0,1/2)", &opt, &r), GCYC_OK);
  EXPECT_EQ(report_json(r)["bpp"], "(0,0)");
  gcyc_report_free(r);
  EXPECT_EQ(gcyc_solve_bpp(c.p, s, t, "(1,1/2)", &opt, &r), GCYC_INPUT_ERROR);
  EXPECT_EQ(gcyc_solve_bpp(c.p, s, t, "nowhere", &opt, &r), GCYC_INPUT_ERROR);
  gcyc_map_free(t);
  gcyc_space_free(s);
}

TEST(CApi, NotBpoSeedIsHypothesisViolation) {
  Ctx c;
  gcyc_space* s = nullptr;
  ASSERT_EQ(gcyc_space_load(c.p, emitted(c.p, "ex35_not_bpo", "instance.json").c_str(), &s), GCYC_OK);
  gcyc_map* t = nullptr;
  ASSERT_EQ(gcyc_map_load(c.p, s, emitted(c.p, "ex35_not_bpo", "map.json").c_str(), GCYC_MAP_CYCLIC, &t), GCYC_OK);
  gcyc_report* r = nullptr;
  EXPECT_EQ(gcyc_solve_bpp(c.p, s, t, "(0,1/2)", nullptr, &r), GCYC_HYPOTHESIS_VIOLATED);
  EXPECT_EQ(json::parse(gcyc_last_error_json(c.p))["detail"]["predicate"], "seed_in_x_t2_a");
  gcyc_map_free(t);
  gcyc_space_free(s);
}

TEST(CApi, Ex22AllPairsViolation) {
  Ctx c;
  gcyc_space* s = nullptr;
  ASSERT_EQ(gcyc_space_load(c.p, emitted(c.p, "ex22_kappa", "instance.json").c_str(), &s), GCYC_OK);
  gcyc_map* t = nullptr;
  ASSERT_EQ(gcyc_map_load(c.p, s, emitted(c.p, "ex22_kappa", "map.json").c_str(), GCYC_MAP_CYCLIC, &t), GCYC_OK);
  gcyc_gauge* phi1 = nullptr;
  gcyc_gauge* phi2 = nullptr;
  ASSERT_EQ(gcyc_gauge_pair_load(c.p, emitted(c.p, "ex22_kappa", "gauges.json").c_str(), &phi1, &phi2), GCYC_OK);
  double v = 0.0;
  ASSERT_EQ(gcyc_gauge_eval(c.p, phi1, 0.49, &v), GCYC_OK);
  EXPECT_NEAR(v, 0.49 / 3.0, 1e-15);

  gcyc_verify_options opt;
  gcyc_verify_options_default(&opt);
  gcyc_report* r = nullptr;
  EXPECT_EQ(gcyc_verify(c.p, s, t, phi1, phi2, &opt, &r), GCYC_OK);
  gcyc_report_free(r);
  opt.all_pairs = 1;
  EXPECT_EQ(gcyc_verify(c.p, s, t, phi1, phi2, &opt, &r), GCYC_VIOLATION);
  EXPECT_FALSE(report_json(r)["contraction"]["violations"].empty());
  gcyc_report_free(r);
  gcyc_gauge_free(phi1);
  gcyc_gauge_free(phi2);
  gcyc_map_free(t);
  gcyc_space_free(s);
}

TEST(CApi, StrictModeAndWarnings) {
  Ctx c;
  json doc = json::parse(emitted(c.p, "ex33_dyadic_l1", "instance.json"));
  doc["extra"] = 1;
  gcyc_space* s = nullptr;
  ASSERT_EQ(gcyc_space_load(c.p, doc.dump().c_str(), &s), GCYC_OK);
  EXPECT_EQ(gcyc_warning_count(c.p), 1u);
  gcyc_space_free(s);
  gcyc_clear_warnings(c.p);
  EXPECT_EQ(gcyc_warning_count(c.p), 0u);
  gcyc_context_set_strict(c.p, 1);
  s = nullptr;
  EXPECT_EQ(gcyc_space_load(c.p, doc.dump().c_str(), &s), GCYC_INPUT_ERROR);
  EXPECT_EQ(s, nullptr);
}

TEST(CApi, PbvpReportAndCsv) {
  Ctx c;
  gcyc_report* e = nullptr;
  ASSERT_EQ(gcyc_emit_example(c.p, "ex53_pbvp", nullptr, &e), GCYC_OK);
  const std::string problem = report_json(e)["problem.json"].dump();
  gcyc_report_free(e);
  gcyc_report* r = nullptr;
  ASSERT_EQ(gcyc_solve_pbvp(c.p, problem.c_str(), nullptr, &r), GCYC_OK);
  const json j = report_json(r);
  EXPECT_LE(j["sup_norm"].get<double>(), 1e-6);
  const std::string csv = gcyc_report_csv(r);
  EXPECT_EQ(csv.rfind("t,u\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 202);
  gcyc_report_free(r);
}

TEST(CApi, ReproduceStatuses) {
  Ctx c;
  gcyc_report* r = nullptr;
  EXPECT_EQ(gcyc_reproduce(c.p, "ex33_dyadic_l1", nullptr, &r), GCYC_OK);
  EXPECT_EQ(report_json(r)["all_pass"], true);
  gcyc_report_free(r);
  EXPECT_EQ(gcyc_reproduce(c.p, "ex35_not_bpo", nullptr, &r), GCYC_VIOLATION);
  EXPECT_EQ(report_json(r)["all_pass"], false);
  gcyc_report_free(r);
  EXPECT_EQ(gcyc_reproduce(c.p, "ex33_dyadic_l1", "{\"depth\": 99}", &r), GCYC_INPUT_ERROR);
}
