// hqx: command-line driver over the hqx core library.
#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>

#include "hqx/family.hpp"
#include "hqx/pipeline.hpp"
#include "hqx/serialize.hpp"
#include "hqx/suites.hpp"
#include "hqx/symbolic.hpp"

using namespace hqx;

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitDomain = 2;
constexpr int kExitBound = 3;

long default_precision() {
  if (const char* env = std::getenv("PREC_DEFAULT")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
    throw DomainError(std::string("PREC_DEFAULT must be a positive integer, got \"") + env + "\"");
  }
  return 8;
}

void emit(const Json& j, const std::string& path = "") {
  if (path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path);
  out << j.dump(2) << "\n";
}

Json with_schema(const char* kind, Json body) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = kind;
  for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
  return j;
}

PadicNum integer_padic(const std::string& s, long p, long prec) {
  mpz_class n;
  if (n.set_str(s, 10) != 0) throw DomainError("not an integer: \"" + s + "\"");
  return PadicNum::from_integer(p, n, prec);
}

struct Options {
  long D = 5;
  long p = 11;
  long prec = 0;
  long bound = 50;
  int k = 2;
  int k0 = 2;
  int t = -1;
  int n = 3;
  int trials = 20;
  long j = -1;
  long s = 0;
  int depth = 2;
  bool raw = false;
  bool include_zero = false;
  std::uint64_t seed = 1;
  std::string a_pi = "3";
  std::string a_pi_prime = "3";
  std::string b_p = "3";
  std::string file;
  std::string out;
  std::string suite;
};

long prec_of(const Options& o) { return o.prec > 0 ? o.prec : default_precision(); }

int cmd_field(const Options& o) {
  emit(with_schema("field", {{"field", to_json(*make_field(o.D))}}));
  return 0;
}

int cmd_split(const Options& o) {
  emit(with_schema("split", {{"split", to_json(*split_prime(make_field(o.D), o.p, prec_of(o)))}}));
  return 0;
}

int cmd_enumerate(const Options& o) {
  FieldPtr F = make_field(o.D);
  Json elems = Json::array();
  for (const IntElem& v : F->enumerate(o.bound, o.include_zero)) elems.push_back(index_json(v));
  emit(with_schema("enumeration", {{"D", o.D}, {"bound", std::to_string(o.bound)}, {"count", elems.size()},
                                   {"elements", elems}}));
  return 0;
}

int cmd_eigenform(const Options& o) {
  const long prec = prec_of(o);
  SplitPtr s = split_prime(make_field(o.D), o.p, prec);
  std::map<TraceKey, PadicNum> seed{{s->field()->key(IntElem{1, 0}), PadicNum::one(o.p, prec)}};
  HilbertQExp f = make_formal_eigenform(s, prec, seed, integer_padic(o.a_pi, o.p, prec),
                                        integer_padic(o.a_pi_prime, o.p, prec), o.k, o.bound);
  emit(with_schema("hilbert_expansion", {{"expansion", to_json(f)}}), o.out);
  return 0;
}

int cmd_apply(const Options& o) {
  Json spec_json = o.file.empty() || o.file == "-" ? Json::parse(std::cin) : read_json_file(o.file);
  PipelineSpec spec = parse_pipeline(spec_json);
  PipelineResult r = run_pipeline(spec);
  Json log = Json::array();
  for (const auto& e : r.log) log.push_back(to_json(e));
  const char* kind = std::holds_alternative<HilbertQExp>(r.value) ? "hilbert_expansion" : "modular_expansion";
  Json out = with_schema(kind, {{"expansion", to_json(r.value)}, {"provenance", log}});
  if (!spec.log_path.empty()) emit(with_schema("provenance", {{"provenance", log}}), spec.log_path);
  emit(out, o.out.empty() ? spec.output_path : o.out);
  return 0;
}

int cmd_verify(const Options& o) {
  Json checks = Json::array();
  bool ok = true;
  auto push = [&](const Json& j) {
    ok = ok && j.at("status") == "pass";
    checks.push_back(j);
  };
  const long prec = o.prec > 0 ? o.prec : 3;
  if (o.suite == "euler-summation") {
    std::vector<std::pair<int, int>> grid;
    if (o.t >= 0) {
      grid.emplace_back(o.k, o.t);
    } else {
      grid = euler_summation_grid();
    }
    for (auto [k, t] : grid) {
      EulerSummationCertificate c = verify_euler_summation(k, t, EulerMutation::kNone, o.seed);
      Json j = to_json(c);
      if (!c.prepass_consistent) j["status"] = "fail";
      push(j);
    }
  } else if (o.suite == "scholl") {
    push(to_json(scholl_idempotent(o.n)));
  } else if (o.suite == "operator-identities") {
    int pair = -1;
    const auto& pairs = admissible_pairs();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (pairs[i].D == o.D && pairs[i].p == o.p) pair = static_cast<int>(i);
    }
    for (const auto& r : verify_operator_identities(o.trials, o.seed, pair, prec, o.bound)) push(to_json(r));
  } else if (o.suite == "kernel-lemma") {
    push(to_json(kernel_lemma_suite(o.trials, o.D, o.p, prec, o.bound, o.seed)));
  } else if (o.suite == "recombination") {
    for (const auto& r : recombination_suite(o.trials, o.D, o.p, prec, o.bound, o.seed)) push(to_json(r));
  } else if (o.suite == "precision-soundness") {
    push(to_json(precision_soundness_suite(o.trials, o.D, o.p, prec, o.bound, o.seed)));
  } else {
    throw DomainError("unknown suite \"" + o.suite + "\"");
  }
  emit(with_schema("verify_report", {{"suite", o.suite}, {"seed", o.seed}, {"ok", ok}, {"checks", checks}}));
  return ok ? 0 : kExitVerifyFailed;
}

int cmd_euler(const Options& o) {
  const long prec = prec_of(o);
  mpz_class b;
  if (b.set_str(o.b_p, 10) != 0) throw DomainError("--bp must be an integer");
  OrdinaryData od = ordinary_data(PadicNum::from_integer(o.p, b, prec), o.k0, prec);
  Json j;
  j["ordinary"] = to_json(od);
  j["ramanujan"] = ramanujan_check(b, o.k0, o.p);
  j["E0"] = to_json(euler_E0(od));
  j["E1"] = to_json(euler_E1(od));
  emit(with_schema("euler_factors", j));
  return 0;
}

int cmd_aj_scalar(const Options& o) {
  const long prec = prec_of(o);
  const int t = o.t >= 0 ? o.t : admissible_t(o.k, o.k0);
  SpectralData sd = spectral_data(integer_padic(o.a_pi, o.p, prec), integer_padic(o.a_pi_prime, o.p, prec), o.k, prec);
  OrdinaryData od = ordinary_data(integer_padic(o.b_p, o.p, prec), o.k0, prec);
  AjScalar a = aj_scalar(sd, od, t);
  Json j;
  j["t"] = a.t;
  j["sign"] = a.sign;
  j["spectral"] = to_json(sd);
  j["ordinary"] = to_json(od);
  j["scalar"] = to_json(a);
  // Two forms of the scalar: AJ = aj_side * L-value, and AJ = l_side * L_p.
  j["variants"] = {{"aj_over_l", to_json(a.aj_side)}, {"aj_over_lp", to_json(a.l_side)}};
  emit(with_schema("aj_scalar", j));
  return 0;
}

int cmd_family_specialize(const Options& o) {
  if (o.file.empty()) throw DomainError("--file is required");
  Json fj = read_json_file(o.file);
  HilbertFamily F = family_from_json(fj);
  const long prec = fj.contains("prec") ? fj.at("prec").get<long>() : prec_of(o);
  LambdaH H = build_lambda_h(F, prec);
  ModularQExp g = o.raw ? specialize_h_raw(H, o.j, o.s) : specialize_h(H, o.j, o.s, o.depth);
  Json j;
  j["j"] = o.j;
  j["s"] = o.s;
  if (!o.raw) j["depth"] = o.depth;
  j["expansion"] = to_json(g);
  emit(with_schema("modular_expansion", j), o.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hqx: truncated q-expansions of p-adic Hilbert modular forms"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--seed", o.seed, "Seed for randomized trials");
  std::function<int(const Options&)> action;

  auto field_opts = [&](CLI::App* c, bool with_p) {
    c->add_option("--D", o.D, "Squarefree D > 1");
    if (with_p) {
      c->add_option("--p", o.p, "Split prime");
      c->add_option("--prec", o.prec, "p-adic precision (default: PREC_DEFAULT or 8)");
    }
  };

  auto* field = app.add_subcommand("field", "Real quadratic field data");
  field_opts(field, false);
  field->callback([&] { action = cmd_field; });

  auto* split = app.add_subcommand("split", "Split prime and its generators");
  field_opts(split, true);
  split->callback([&] { action = cmd_split; });

  auto* en = app.add_subcommand("enumerate", "Totally positive integers of bounded trace");
  field_opts(en, false);
  en->add_option("--bound", o.bound, "Trace bound");
  en->add_flag("--include-zero", o.include_zero);
  en->callback([&] { action = cmd_enumerate; });

  auto* eig = app.add_subcommand("eigenform", "Formal Hecke eigenform seeded at the index 1");
  field_opts(eig, true);
  eig->add_option("--k", o.k, "Parallel weight");
  eig->add_option("--a-pi", o.a_pi, "T_pi eigenvalue (integer)");
  eig->add_option("--a-pi-prime", o.a_pi_prime, "T_pi' eigenvalue (integer)");
  eig->add_option("--bound", o.bound, "Trace bound");
  eig->add_option("--out", o.out, "Output file");
  eig->callback([&] { action = cmd_eigenform; });

  auto* ap = app.add_subcommand("apply", "Run an operator pipeline");
  ap->add_option("spec", o.file, "Pipeline spec JSON ('-' for stdin)");
  ap->add_option("--out", o.out, "Output file");
  ap->callback([&] { action = cmd_apply; });

  auto* ver = app.add_subcommand("verify", "Run a verification suite");
  ver->add_option("suite", o.suite,
                  "euler-summation | scholl | operator-identities | kernel-lemma | recombination | "
                  "precision-soundness")
      ->required();
  field_opts(ver, true);
  ver->add_option("--k", o.k);
  ver->add_option("--t", o.t);
  ver->add_option("--n", o.n, "Scholl arity (<= 4)");
  ver->add_option("--trials", o.trials);
  ver->add_option("--bound", o.bound);
  ver->add_option("--seed", o.seed);
  ver->callback([&] { action = cmd_verify; });

  auto* eu = app.add_subcommand("euler", "Euler factors E0, E1 of an ordinary eigenvalue");
  eu->add_option("--bp", o.b_p, "Hecke eigenvalue at p (integer)");
  eu->add_option("--k0", o.k0, "Weight");
  eu->add_option("--p", o.p);
  eu->add_option("--prec", o.prec);
  eu->callback([&] { action = cmd_euler; });

  auto* aj = app.add_subcommand("aj-scalar", "Scalar relating the Abel-Jacobi image and L_p");
  aj->add_option("--k", o.k);
  aj->add_option("--k0", o.k0);
  aj->add_option("--t", o.t, "Defaults to k - 1 - k0/2");
  aj->add_option("--p", o.p);
  aj->add_option("--prec", o.prec);
  aj->add_option("--a-pi", o.a_pi);
  aj->add_option("--a-pi-prime", o.a_pi_prime);
  aj->add_option("--bp", o.b_p);
  aj->callback([&] { action = cmd_aj_scalar; });

  auto* fs = app.add_subcommand("family-specialize", "Specialize h(q) of a family at (j, s)");
  fs->add_option("--file", o.file, "Family JSON")->required();
  fs->add_option("--j", o.j);
  fs->add_option("--s", o.s);
  fs->add_option("--depth", o.depth, "U_p^(depth!) as ordinary projector");
  fs->add_flag("--raw", o.raw, "Skip the ordinary projector");
  fs->add_option("--out", o.out);
  fs->callback([&] { action = cmd_family_specialize; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit(error_json(DomainError(std::string("usage: ") + e.what())));
    return kExitDomain;
  }

  try {
    return action(o);
  } catch (const PipelineBoundError& e) {
    Json j = error_json(e);
    j["error"]["op_index"] = e.op_index();
    j["error"]["op"] = e.op();
    emit(j);
    return kExitBound;
  } catch (const BoundError& e) {
    emit(error_json(e));
    return kExitBound;
  } catch (const DomainError& e) {
    emit(error_json(e));
    return kExitDomain;
  } catch (const Json::exception& e) {
    emit(error_json(DomainError(std::string("json: ") + e.what())));
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "hqx: internal error: " << e.what() << "\n";
    emit(error_json(e));
    return 4;
  }
}
