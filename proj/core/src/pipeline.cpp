#include "hqx/pipeline.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace hqx {

namespace {

enum class Kind { kHilbert, kModular };
enum class Arg { kNone, kOptional, kRequired };

struct OpInfo {
  Kind in;
  Kind out;
  Arg arg;
  long min_arg;
  std::function<Expansion(const Expansion&, long)> fn;
};

const HilbertQExp& H(const Expansion& x) { return std::get<HilbertQExp>(x); }
const ModularQExp& M(const Expansion& x) { return std::get<ModularQExp>(x); }

using Registry = std::map<std::string, std::vector<OpInfo>>;

const Registry& registry() {
  static const Registry r = [] {
    Registry m;
    auto hil = [&m](const std::string& name, HilbertQExp (*f)(const HilbertQExp&)) {
      m[name].push_back({Kind::kHilbert, Kind::kHilbert, Arg::kNone, 0,
                         [f](const Expansion& x, long) { return Expansion(f(H(x))); }});
    };
    hil("v_pi", v_pi<PadicNum>);
    hil("v_pi_prime", v_pi_prime<PadicNum>);
    hil("v_p", v_p<PadicNum>);
    hil("u_pi", u_pi<PadicNum>);
    hil("u_pi_prime", u_pi_prime<PadicNum>);
    hil("u_p", u_p<PadicNum>);
    hil("deplete_pi", deplete_pi<PadicNum>);
    hil("deplete_pi_prime", deplete_pi_prime<PadicNum>);
    hil("deplete_p", deplete_p<PadicNum>);
    hil("theta", theta);
    hil("theta_prime", theta_prime);
    m["hecke_t_pi"].push_back({Kind::kHilbert, Kind::kHilbert, Arg::kNone, 0,
                               [](const Expansion& x, long) { return Expansion(hecke_t_pi(H(x), H(x).k)); }});
    m["hecke_t_pi_prime"].push_back(
        {Kind::kHilbert, Kind::kHilbert, Arg::kNone, 0,
         [](const Expansion& x, long) { return Expansion(hecke_t_pi_prime(H(x), H(x).kp)); }});
    m["theta_inverse"].push_back({Kind::kHilbert, Kind::kHilbert, Arg::kOptional, 1,
                                  [](const Expansion& x, long n) { return Expansion(theta_inverse(H(x), n)); }});
    m["theta_prime_inverse"].push_back(
        {Kind::kHilbert, Kind::kHilbert, Arg::kOptional, 1,
         [](const Expansion& x, long n) { return Expansion(theta_prime_inverse(H(x), n)); }});
    m["truncate"].push_back({Kind::kHilbert, Kind::kHilbert, Arg::kRequired, 0,
                             [](const Expansion& x, long b) { return Expansion(truncate(H(x), b)); }});
    m["restrict"].push_back({Kind::kHilbert, Kind::kModular, Arg::kNone, 0,
                             [](const Expansion& x, long) { return Expansion(restrict_to_diagonal(H(x))); }});

    auto mod = [&m](const std::string& name, ModularQExp (*f)(const ModularQExp&)) {
      m[name].push_back({Kind::kModular, Kind::kModular, Arg::kNone, 0,
                         [f](const Expansion& x, long) { return Expansion(f(M(x))); }});
    };
    mod("v_p", modular_v_p);
    mod("u_p", modular_u_p);
    mod("deplete_p", modular_deplete_p);
    mod("hecke_t_p", hecke_t_p);
    m["e_ord"].push_back({Kind::kModular, Kind::kModular, Arg::kRequired, 0, [](const Expansion& x, long d) {
                            return Expansion(e_ord_approx(M(x), static_cast<int>(d)));
                          }});
    m["truncate"].push_back({Kind::kModular, Kind::kModular, Arg::kRequired, 0,
                             [](const Expansion& x, long b) { return Expansion(truncate(M(x), b)); }});
    return m;
  }();
  return r;
}

const char* kind_name(Kind k) { return k == Kind::kHilbert ? "Hilbert" : "modular"; }

const OpInfo& lookup(const PipelineOp& op, Kind in, std::size_t index) {
  auto it = registry().find(op.name);
  const std::string where = "op " + std::to_string(index) + " (" + op.name + ")";
  if (it == registry().end()) throw DomainError(where + ": unknown operator");
  for (const OpInfo& info : it->second) {
    if (info.in != in) continue;
    if (info.arg == Arg::kNone && op.has_arg) throw DomainError(where + ": takes no argument");
    if (info.arg == Arg::kRequired && !op.has_arg) throw DomainError(where + ": needs an integer argument");
    if (op.has_arg && op.arg < info.min_arg) {
      throw DomainError(where + ": argument must be >= " + std::to_string(info.min_arg));
    }
    return info;
  }
  throw DomainError(where + ": not defined on " + kind_name(in) + " expansions");
}

Kind kind_of(const Expansion& x) { return std::holds_alternative<HilbertQExp>(x) ? Kind::kHilbert : Kind::kModular; }

long bound_of(const Expansion& x) {
  return std::visit([](const auto& e) { return e.bound; }, x);
}

PadicNum scalar_from(const Json& j, long p, long prec) {
  if (j.is_number_integer() || j.is_string()) {
    mpz_class n = j.is_string() ? mpz_class(j.get<std::string>()) : mpz_class(j.get<long>());
    return PadicNum::from_integer(p, n, prec);
  }
  return padic_from_json(j);
}

}  // namespace

std::vector<std::string> registered_ops() {
  std::vector<std::string> names;
  for (const auto& kv : registry()) names.push_back(kv.first);
  return names;
}

PipelineOp parse_op(const Json& j) {
  PipelineOp op;
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    auto colon = s.find(':');
    op.name = s.substr(0, colon);
    if (colon != std::string::npos) {
      std::string a = s.substr(colon + 1);
      std::size_t used = 0;
      try {
        op.arg = std::stol(a, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != a.size()) throw DomainError("op \"" + s + "\": argument is not an integer");
      op.has_arg = true;
    }
    return op;
  }
  if (j.is_object() && j.contains("op") && j.at("op").is_string()) {
    op.name = j.at("op").get<std::string>();
    if (j.contains("arg")) {
      if (!j.at("arg").is_number_integer()) throw DomainError("op \"" + op.name + "\": argument is not an integer");
      op.arg = j.at("arg").get<long>();
      op.has_arg = true;
    }
    return op;
  }
  throw DomainError("pipeline: an op must be \"name\", \"name:arg\" or {\"op\": name, \"arg\": n}");
}

PipelineSpec parse_pipeline(const Json& j) {
  if (!j.is_object()) throw DomainError("pipeline: spec must be a JSON object");
  PipelineSpec s;
  auto get_long = [](const Json& o, const char* key) -> long {
    if (!o.contains(key) || !o.at(key).is_number_integer()) {
      throw DomainError(std::string("pipeline: missing integer \"") + key + "\"");
    }
    return o.at(key).get<long>();
  };
  if (!j.contains("field") || !j.contains("prime") || !j.contains("source")) {
    throw DomainError("pipeline: spec needs \"field\", \"prime\" and \"source\"");
  }
  s.D = get_long(j.at("field"), "D");
  s.p = get_long(j.at("prime"), "p");
  s.prec = get_long(j.at("prime"), "prec");
  if (s.prec < 1) throw DomainError("pipeline: precision must be >= 1");
  s.source = j.at("source");
  if (j.contains("ops")) {
    if (!j.at("ops").is_array()) throw DomainError("pipeline: \"ops\" must be an array");
    for (const Json& o : j.at("ops")) s.ops.push_back(parse_op(o));
  }
  if (j.contains("outputs")) {
    const Json& o = j.at("outputs");
    s.output_path = o.value("expansion", "");
    s.log_path = o.value("log", "");
  }
  return s;
}

void typecheck_pipeline(const PipelineSpec& spec) {
  Kind k = Kind::kHilbert;
  if (spec.source.contains("modular")) k = Kind::kModular;
  for (std::size_t i = 0; i < spec.ops.size(); ++i) k = lookup(spec.ops[i], k, i).out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw DomainError(path + ": " + e.what());
  }
}

Expansion build_source(const PipelineSpec& spec) {
  const Json& src = spec.source;
  FieldPtr F = make_field(spec.D);
  SplitPtr s = split_prime(F, spec.p, spec.prec);
  if (src.contains("expansion")) return hilbert_from_json(src.at("expansion"), s);
  if (src.contains("modular")) {
    ModularQExp g = modular_from_json(src.at("modular"));
    if (g.p != spec.p) throw DomainError("pipeline: modular source prime mismatch");
    return g;
  }
  if (src.contains("eigenform")) {
    const Json& e = src.at("eigenform");
    if (!e.contains("a_pi") || !e.contains("a_pi_prime") || !e.contains("bound")) {
      throw DomainError("pipeline: eigenform source needs a_pi, a_pi_prime and bound");
    }
    const int k = e.value("k", 2);
    const long bound = e.at("bound").get<long>();
    std::map<TraceKey, PadicNum> seed;
    if (e.contains("seed")) {
      for (const Json& rec : e.at("seed")) {
        IntElem v = index_from_json(rec.at("nu"));
        seed.insert_or_assign(F->key(v), scalar_from(rec.at("c"), spec.p, spec.prec));
      }
    } else {
      seed.emplace(F->key(IntElem{1, 0}), PadicNum::one(spec.p, spec.prec));
    }
    return make_formal_eigenform(s, spec.prec, seed, scalar_from(e.at("a_pi"), spec.p, spec.prec),
                                 scalar_from(e.at("a_pi_prime"), spec.p, spec.prec), k, bound);
  }
  if (src.contains("family")) {
    const Json& fj = src.at("family");
    HilbertFamily fam = family_from_json(fj.is_string() ? read_json_file(fj.get<std::string>()) : fj);
    if (fam.split->p() != spec.p || fam.split->field()->D() != spec.D) {
      throw DomainError("pipeline: family field/prime differ from the spec");
    }
    return specialize_family(fam, src.value("s", 0L), spec.prec);
  }
  throw DomainError("pipeline: source must be one of expansion, modular, eigenform, family");
}

Expansion apply_op(const Expansion& x, const PipelineOp& op) {
  const OpInfo& info = lookup(op, kind_of(x), 0);
  long arg = op.has_arg ? op.arg : 1;
  return info.fn(x, arg);
}

std::string min_precision_string(const Expansion& x) {
  long m = kInfinitePrecision;
  std::visit(
      [&](const auto& e) {
        for (const auto& kv : e.coeffs) m = std::min(m, kv.second.absolute_precision());
      },
      x);
  return m >= kInfinitePrecision ? "inf" : std::to_string(m);
}

PipelineResult run_ops(Expansion start, const std::vector<PipelineOp>& ops) {
  PipelineResult r{std::move(start), {}};
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const OpInfo& info = lookup(ops[i], kind_of(r.value), i);
    ProvenanceEntry e;
    e.index = i;
    e.op = ops[i].name + (ops[i].has_arg ? ":" + std::to_string(ops[i].arg) : "");
    e.input_bound = bound_of(r.value);
    try {
      r.value = info.fn(r.value, ops[i].has_arg ? ops[i].arg : 1);
    } catch (const BoundError& b) {
      throw PipelineBoundError(b, i, e.op);
    }
    e.output_bound = bound_of(r.value);
    e.precision = min_precision_string(r.value);
    r.log.push_back(std::move(e));
  }
  return r;
}

PipelineResult run_pipeline(const PipelineSpec& spec) {
  typecheck_pipeline(spec);
  return run_ops(build_source(spec), spec.ops);
}

Json to_json(const Expansion& x) {
  return std::visit([](const auto& e) { return to_json(e); }, x);
}

Json to_json(const ProvenanceEntry& e) {
  Json j;
  j["index"] = e.index;
  j["op"] = e.op;
  j["input_bound"] = std::to_string(e.input_bound);
  j["output_bound"] = std::to_string(e.output_bound);
  j["precision"] = e.precision;
  return j;
}

}  // namespace hqx
