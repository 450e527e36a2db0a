#include <gtest/gtest.h>

#include "hqx/pipeline.hpp"
#include "hqx/suites.hpp"

using namespace hqx;

namespace {

Json spec_with(const Json& ops, const Json& source) {
  Json j;
  j["field"] = {{"D", 5}};
  j["prime"] = {{"p", 11}, {"prec", 3}};
  j["source"] = source;
  j["ops"] = ops;
  return j;
}

Json eigen_source(long bound) {
  return Json{{"eigenform", {{"a_pi", 3}, {"a_pi_prime", 5}, {"k", 2}, {"bound", bound}}}};
}

}  // namespace

TEST(Pipeline, ParseOp) {
  PipelineOp a = parse_op(Json("theta_inverse"));
  EXPECT_EQ(a.name, "theta_inverse");
  EXPECT_FALSE(a.has_arg);
  PipelineOp b = parse_op(Json("theta_prime_inverse:2"));
  EXPECT_TRUE(b.has_arg);
  EXPECT_EQ(b.arg, 2);
  PipelineOp c = parse_op(Json::parse(R"({"op": "e_ord", "arg": 3})"));
  EXPECT_EQ(c.name, "e_ord");
  EXPECT_EQ(c.arg, 3);
  EXPECT_THROW(parse_op(Json("truncate:x")), DomainError);
  EXPECT_THROW(parse_op(Json("truncate:4z")), DomainError);
  EXPECT_THROW(parse_op(Json(7)), DomainError);
  EXPECT_THROW(parse_op(Json::parse(R"({"op": "e_ord", "arg": "3"})")), DomainError);
}

TEST(Pipeline, Typecheck) {
  auto check = [](const Json& ops) { typecheck_pipeline(parse_pipeline(spec_with(ops, eigen_source(30)))); };
  EXPECT_NO_THROW(check(Json::parse(R"(["v_p", "u_p", "restrict", "e_ord:1", "u_p"])")));
  EXPECT_THROW(check(Json::parse(R"(["frobnicate"])")), DomainError);
  // Modular-only op on a Hilbert expansion, and a Hilbert op after restrict.
  EXPECT_THROW(check(Json::parse(R"(["e_ord:1"])")), DomainError);
  EXPECT_THROW(check(Json::parse(R"(["restrict", "theta"])")), DomainError);
  EXPECT_THROW(check(Json::parse(R"(["truncate"])")), DomainError);
  EXPECT_THROW(check(Json::parse(R"(["u_pi:2"])")), DomainError);
  EXPECT_THROW(check(Json::parse(R"(["theta_inverse:0"])")), DomainError);
  EXPECT_THROW(parse_pipeline(Json::parse(R"({"field": {"D": 5}, "prime": {"p": 11}})")), DomainError);
}

TEST(Pipeline, EmptyChainIsIdentity) {
  PipelineSpec spec = parse_pipeline(spec_with(Json::array(), eigen_source(30)));
  PipelineResult r = run_pipeline(spec);
  EXPECT_TRUE(r.log.empty());
  const HilbertQExp& f = std::get<HilbertQExp>(r.value);
  HilbertQExp g = hilbert_from_json(to_json(r.value));
  EXPECT_TRUE(identical_within(f, g, f.bound));
  EXPECT_EQ(f.bound, 30);
}

TEST(Pipeline, VThenURestores) {
  PipelineSpec spec = parse_pipeline(spec_with(Json::parse(R"(["v_p", "u_p"])"), eigen_source(40)));
  PipelineResult r = run_pipeline(spec);
  const HilbertQExp f = std::get<HilbertQExp>(build_source(spec));
  const HilbertQExp& g = std::get<HilbertQExp>(r.value);
  EXPECT_LE(g.bound, f.bound);
  EXPECT_TRUE(identical_within(f, g, g.bound));
  ASSERT_EQ(r.log.size(), 2u);
  EXPECT_EQ(r.log[0].input_bound, 40);
  EXPECT_EQ(r.log[1].output_bound, g.bound);
  EXPECT_EQ(to_json(r.log[1]).at("op"), "u_p");
}

TEST(Pipeline, HalvesOfTheIntegrand) {
  const Json src = eigen_source(40);
  auto run = [&](const char* ops) {
    return std::get<ModularQExp>(run_pipeline(parse_pipeline(spec_with(Json::parse(ops), src))).value);
  };
  ModularQExp a = run(R"(["deplete_pi_prime", "theta_prime_inverse:1", "restrict"])");
  ModularQExp b = run(R"(["deplete_pi", {"op": "theta_inverse", "arg": 1}, "restrict"])");
  const HilbertQExp f = std::get<HilbertQExp>(build_source(parse_pipeline(spec_with(Json::array(), src))));
  ModularQExp aj = aj_integrand(f, 0);
  const long bound = std::min(a.bound, b.bound);
  for (long n = 1; n <= bound; ++n) {
    PadicNum half = (a.coeff(n) - b.coeff(n)).scaled(mpq_class(1, 2));
    EXPECT_TRUE(agrees(half, aj.coeff(n))) << n;
  }
}

TEST(Pipeline, BoundErrorCarriesIndex) {
  PipelineSpec spec = parse_pipeline(spec_with(Json::parse(R"(["v_p", "u_p", "u_p", "u_p"])"), eigen_source(30)));
  try {
    run_pipeline(spec);
    FAIL() << "expected a bound error";
  } catch (const PipelineBoundError& e) {
    EXPECT_GE(e.op_index(), 2u);
    EXPECT_EQ(e.op(), "u_p");
    EXPECT_EQ(error_json(e).at("error").at("type"), "BoundError");
  }
}

TEST(Pipeline, SourceErrors) {
  EXPECT_THROW(build_source(parse_pipeline(spec_with(Json::array(), Json{{"nothing", 1}}))), DomainError);
  Json no_bound{{"eigenform", {{"a_pi", 3}, {"a_pi_prime", 5}}}};
  EXPECT_THROW(build_source(parse_pipeline(spec_with(Json::array(), no_bound))), DomainError);
  EXPECT_THROW(read_json_file("/nonexistent/path.json"), DomainError);
}

TEST(Pipeline, Metamorphic) {
  Rng rng(11);
  SplitPtr s = split_prime(make_field(5), 11, 5);
  int ran = 0;
  for (int i = 0; i < 8; ++i) {
    HilbertQExp f = random_hilbert_form(s, 5, 2, 60, rng, 0.8);
    auto ops = random_pipeline(rng, 3);
    MetamorphicOutcome m = metamorphic_compare(f, 3, 30, ops);
    if (!m.ran) continue;
    ++ran;
    EXPECT_TRUE(m.exact) << m.detail;
  }
  EXPECT_GT(ran, 0);
  HilbertQExp t = truncate_precision(random_hilbert_form(s, 5, 2, 60, rng), 3, 30);
  EXPECT_EQ(t.bound, 30);
  for (const auto& [key, c] : t.coeffs) {
    EXPECT_LE(key.trace, 30);
    EXPECT_LE(c.absolute_precision(), 3);
  }
}
