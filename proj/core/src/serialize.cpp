#include "hqx/serialize.hpp"

namespace hqx {

namespace {

Json big(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

mpz_class big_from(const Json& j) {
  if (j.is_string()) return mpz_class(j.get<std::string>());
  if (j.is_number_integer()) return mpz_class(j.get<long>());
  throw DomainError("json: expected an integer or decimal string");
}

long long_from(const Json& j) {
  mpz_class z = big_from(j);
  if (!z.fits_slong_p()) throw DomainError("json: integer out of range");
  return z.get_si();
}

const Json& field_of(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw DomainError(std::string("json: missing field \"") + key + "\"");
  return j.at(key);
}

}  // namespace

// ---- scalars --------------------------------------------------------------------

Json to_json(const PadicNum& x) {
  Json j;
  j["p"] = x.prime();
  if (x.is_zero()) {
    j["zero_prec"] = x.is_exact_zero() ? Json("inf") : Json(x.valuation());
    return j;
  }
  j["val"] = x.valuation();
  j["mantissa"] = x.mantissa().get_str();
  j["prec"] = x.relative_precision();
  return j;
}

PadicNum padic_from_json(const Json& j) {
  const long p = long_from(field_of(j, "p"));
  if (j.contains("zero_prec")) {
    const Json& z = j.at("zero_prec");
    if (z.is_string() && z.get<std::string>() == "inf") return PadicNum::zero(p);
    return PadicNum::zero(p, long_from(z));
  }
  const long prec = long_from(field_of(j, "prec"));
  if (prec <= 0) throw DomainError("json: PadicNum prec must be positive");
  return PadicNum::from_unit(p, long_from(field_of(j, "val")), big_from(field_of(j, "mantissa")), prec);
}

Json to_json(const QuadExtNum& x) {
  Json j;
  j["c0"] = to_json(x.c0());
  j["c1"] = to_json(x.c1());
  if (x.modulus()) {
    j["modulus"] = {{"trace", to_json(x.modulus()->trace)}, {"norm", to_json(x.modulus()->norm)}};
  } else {
    j["modulus"] = nullptr;
  }
  return j;
}

QuadExtNum quadext_from_json(const Json& j, long p) {
  PadicNum c0 = padic_from_json(field_of(j, "c0"));
  PadicNum c1 = padic_from_json(field_of(j, "c1"));
  if (c0.prime() != p || c1.prime() != p) throw DomainError("json: prime mismatch in extension element");
  const Json& m = field_of(j, "modulus");
  if (m.is_null()) return QuadExtNum(c0, c1, nullptr);
  auto mod = std::make_shared<const QuadExtNum::Modulus>(
      QuadExtNum::Modulus{padic_from_json(field_of(m, "trace")), padic_from_json(field_of(m, "norm"))});
  return QuadExtNum(c0, c1, mod);
}

Json to_json(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_str();
}

mpq_class rational_from_json(const Json& j) {
  if (j.is_number_integer()) return mpq_class(j.get<long>());
  if (!j.is_string()) throw DomainError("json: expected a rational string");
  mpq_class q;
  if (q.set_str(j.get<std::string>(), 10) != 0) throw DomainError("json: bad rational \"" + j.get<std::string>() + "\"");
  q.canonicalize();
  return q;
}

// ---- fields ----------------------------------------------------------------------

Json to_json(const QuadElem& v) {
  return Json::array({big(v.x().get_num()), big(v.x().get_den()), big(v.y().get_num()), big(v.y().get_den())});
}

Json index_json(const IntElem& v) { return Json::array({v.x, 1, v.y, 1}); }

QuadElem quadelem_from_json(const Json& j, const FieldPtr& F) {
  if (!j.is_array() || j.size() != 4) throw DomainError("json: QuadElem must be [x_num, x_den, y_num, y_den]");
  mpz_class xd = big_from(j[1]), yd = big_from(j[3]);
  if (xd == 0 || yd == 0) throw DomainError("json: zero denominator");
  mpq_class x(big_from(j[0]), xd), y(big_from(j[2]), yd);
  x.canonicalize();
  y.canonicalize();
  return QuadElem(F, x, y);
}

IntElem index_from_json(const Json& j) {
  QuadElem v = quadelem_from_json(j, nullptr);
  if (!v.is_integral()) throw DomainError("json: expansion index must be integral");
  if (!v.x().get_num().fits_slong_p() || !v.y().get_num().fits_slong_p()) throw DomainError("json: index too large");
  return {v.x().get_num().get_si(), v.y().get_num().get_si()};
}

Json to_json(const QuadField& F) {
  Json j;
  j["D"] = F.D();
  j["basis_shift"] = F.basis_shift();
  j["disc"] = F.disc();
  j["fund_unit"] = index_json(F.fund_unit());
  j["norm_minus_one"] = F.has_norm_minus_one();
  j["totally_positive_unit"] = index_json(F.totally_positive_unit());
  return j;
}

FieldPtr field_from_json(const Json& j) {
  FieldPtr F = make_field(long_from(field_of(j, "D")));
  if (j.contains("basis_shift") && long_from(j.at("basis_shift")) != F->basis_shift()) {
    throw DomainError("json: basis_shift does not match D");
  }
  return F;
}

Json to_json(const PrimeSplit& s) {
  Json j;
  j["D"] = s.field()->D();
  j["basis_shift"] = s.field()->basis_shift();
  j["p"] = s.p();
  j["precision"] = s.precision();
  j["pi"] = index_json(s.pi());
  j["pi_conj"] = index_json(s.pi_conj());
  j["sqrtD_mod"] = s.sqrtD_mod().get_str();
  j["omega_mod"] = s.omega_mod(s.precision()).get_str();
  return j;
}

SplitPtr split_from_json(const Json& j) {
  FieldPtr F = field_from_json(j);
  SplitPtr s = split_prime(F, long_from(field_of(j, "p")), long_from(field_of(j, "precision")));
  if (j.contains("pi") && !(index_from_json(j.at("pi")) == s->pi())) {
    throw DomainError("json: pi does not match the library's generator for this prime");
  }
  return s;
}

// ---- expansions ----------------------------------------------------------------------

Json to_json(const HilbertQExp& f) {
  Json j;
  j["D"] = f.field().D();
  j["p"] = f.p();
  j["prec"] = f.prec;
  j["weight"] = Json::array({f.k, f.kp});
  j["trace_bound"] = std::to_string(f.bound);
  j["cuspidal"] = f.cuspidal;
  Json cs = Json::array();
  for (const auto& [key, c] : f.coeffs) cs.push_back({{"nu", index_json(f.index(key))}, {"c", to_json(c)}});
  j["coeffs"] = std::move(cs);
  return j;
}

HilbertQExp hilbert_from_json(const Json& j, const SplitPtr& s) {
  if (long_from(field_of(j, "D")) != s->field()->D() || long_from(field_of(j, "p")) != s->p()) {
    throw DomainError("json: expansion field/prime do not match");
  }
  HilbertQExp f;
  f.split = s;
  f.prec = long_from(field_of(j, "prec"));
  const Json& w = field_of(j, "weight");
  if (!w.is_array() || w.size() != 2) throw DomainError("json: weight must be [k, k']");
  f.k = static_cast<int>(long_from(w[0]));
  f.kp = static_cast<int>(long_from(w[1]));
  f.bound = long_from(field_of(j, "trace_bound"));
  f.cuspidal = j.value("cuspidal", true);
  const QuadField& F = *s->field();
  for (const Json& rec : field_of(j, "coeffs")) {
    IntElem v = index_from_json(field_of(rec, "nu"));
    if (!F.totally_positive(v)) throw DomainError("json: expansion index is not totally positive");
    PadicNum c = padic_from_json(field_of(rec, "c"));
    if (c.prime() != s->p()) throw DomainError("json: coefficient prime mismatch");
    if (F.trace(v) > f.bound) throw DomainError("json: coefficient index above trace_bound");
    f.set(v, c);
  }
  return f;
}

HilbertQExp hilbert_from_json(const Json& j) {
  FieldPtr F = make_field(long_from(field_of(j, "D")));
  SplitPtr s = split_prime(F, long_from(field_of(j, "p")), long_from(field_of(j, "prec")));
  return hilbert_from_json(j, s);
}

Json to_json(const ModularQExp& g) {
  Json j;
  j["p"] = g.p;
  j["prec"] = g.prec;
  j["weight"] = g.weight;
  j["bound"] = std::to_string(g.bound);
  Json cs = Json::array();
  for (const auto& [n, c] : g.coeffs) cs.push_back({{"n", n}, {"c", to_json(c)}});
  j["coeffs"] = std::move(cs);
  return j;
}

ModularQExp modular_from_json(const Json& j) {
  ModularQExp g;
  g.p = long_from(field_of(j, "p"));
  g.prec = long_from(field_of(j, "prec"));
  g.weight = static_cast<int>(long_from(field_of(j, "weight")));
  g.bound = long_from(field_of(j, "bound"));
  for (const Json& rec : field_of(j, "coeffs")) {
    long n = long_from(field_of(rec, "n"));
    if (n < 0 || n > g.bound) throw DomainError("json: coefficient index out of range");
    g.coeffs.insert_or_assign(n, padic_from_json(field_of(rec, "c")));
  }
  return g;
}

// ---- spectral data ----------------------------------------------------------------------

Json to_json(const RootPair& r) {
  Json j;
  j["kind"] = r.split() ? "split" : "nonsplit";
  if (r.split()) {
    j["first"] = to_json(r.first);
    j["second"] = to_json(r.second);
  } else {
    j["root"] = to_json(r.ext_root);
  }
  j["slope_first"] = to_json(r.slope_first);
  j["slope_second"] = to_json(r.slope_second);
  return j;
}

Json to_json(const SpectralData& sd) {
  Json j;
  j["p"] = sd.p;
  j["prec"] = sd.prec;
  j["k"] = sd.k;
  j["a_pi"] = to_json(sd.a_pi);
  j["a_pi_prime"] = to_json(sd.a_pi_prime);
  j["sigma"] = to_json(sd.sigma);
  j["sigma_prime"] = to_json(sd.sigma_prime);
  j["monodim_asserted"] = sd.monodim_asserted;
  j["roots_pi"] = to_json(sd.roots_pi);
  j["roots_pi_prime"] = to_json(sd.roots_pi_prime);
  return j;
}

SpectralData spectral_from_json(const Json& j) {
  SpectralData sd = spectral_data(padic_from_json(field_of(j, "a_pi")), padic_from_json(field_of(j, "a_pi_prime")),
                                  static_cast<int>(long_from(field_of(j, "k"))), long_from(field_of(j, "prec")));
  sd.monodim_asserted = j.value("monodim_asserted", false);
  if (j.contains("sigma") && rational_from_json(j.at("sigma")) != sd.sigma) {
    throw DomainError("json: sigma does not match a_pi");
  }
  return sd;
}

Json to_json(const OrdinaryData& od) {
  Json j;
  j["p"] = od.p;
  j["k0"] = od.k0;
  j["b_p"] = to_json(od.b_p);
  j["beta0"] = to_json(od.beta0);
  j["beta1"] = to_json(od.beta1);
  return j;
}

OrdinaryData ordinary_from_json(const Json& j) {
  PadicNum b = padic_from_json(field_of(j, "b_p"));
  PadicNum beta0 = padic_from_json(field_of(j, "beta0"));
  return ordinary_data(b, static_cast<int>(long_from(field_of(j, "k0"))), beta0.relative_precision());
}

Json poly_json(const PadicPoly& poly) {
  Json a = Json::array();
  for (const PadicNum& c : poly) a.push_back(to_json(c));
  return a;
}

PadicPoly poly_from_json(const Json& j) {
  if (!j.is_array()) throw DomainError("json: polynomial must be an array");
  PadicPoly r;
  for (const Json& c : j) r.push_back(padic_from_json(c));
  return r;
}

// ---- families -------------------------------------------------------------------------------

Json to_json(const LambdaCoeff& a) {
  Json j;
  Json s = Json::array();
  for (const PadicNum& c : a.series) s.push_back(to_json(c));
  j["series"] = std::move(s);
  j["center"] = a.center;
  j["theta"] = a.theta;
  return j;
}

LambdaCoeff lambda_from_json(const Json& j, long p) {
  LambdaCoeff a;
  a.p = p;
  a.center = long_from(field_of(j, "center"));
  a.theta = long_from(field_of(j, "theta"));
  if (a.theta < 0) throw DomainError("json: theta must be >= 0");
  for (const Json& c : field_of(j, "series")) {
    PadicNum x = padic_from_json(c);
    if (x.prime() != p) throw DomainError("json: series prime mismatch");
    a.series.push_back(x);
  }
  if (!a.tate_condition()) throw DomainError("json: family series coefficients must be p-integral");
  return a;
}

Json to_json(const HilbertFamily& F, long prec) {
  Json j;
  j["schema"] = kSchema;
  j["D"] = F.split->field()->D();
  j["p"] = F.split->p();
  j["prec"] = prec;
  j["sigma"] = to_json(F.sigma);
  j["sigma_prime"] = to_json(F.sigma_prime);
  j["n0"] = F.n0;
  j["trace_bound"] = std::to_string(F.trace_bound);
  j["monodim_asserted"] = F.monodim_asserted;
  const QuadField& K = *F.split->field();
  Json cs = Json::array();
  for (const auto& [key, a] : F.coeffs) {
    Json rec = to_json(a);
    Json out;
    out["nu"] = index_json(K.from_key(key));
    for (auto it = rec.begin(); it != rec.end(); ++it) out[it.key()] = it.value();
    cs.push_back(std::move(out));
  }
  j["coeffs"] = std::move(cs);
  return j;
}

HilbertFamily family_from_json(const Json& j) {
  HilbertFamily F;
  FieldPtr K = make_field(long_from(field_of(j, "D")));
  const long p = long_from(field_of(j, "p"));
  F.split = split_prime(K, p, long_from(field_of(j, "prec")));
  F.sigma = j.contains("sigma") ? rational_from_json(j.at("sigma")) : mpq_class(0);
  F.sigma_prime = j.contains("sigma_prime") ? rational_from_json(j.at("sigma_prime")) : mpq_class(0);
  F.n0 = long_from(field_of(j, "n0"));
  F.trace_bound = long_from(field_of(j, "trace_bound"));
  F.monodim_asserted = j.value("monodim_asserted", false);
  for (const Json& rec : field_of(j, "coeffs")) {
    IntElem v = index_from_json(field_of(rec, "nu"));
    if (!K->totally_positive(v)) throw DomainError("json: family index is not totally positive");
    F.coeffs.insert_or_assign(K->key(v), lambda_from_json(rec, p));
  }
  return F;
}

// ---- reports ----------------------------------------------------------------------------------

Json to_json(const AjScalar& a) {
  Json j;
  j["t"] = a.t;
  j["sign"] = a.sign;
  j["t_factorial"] = a.t_factorial;
  j["E0"] = to_json(a.E0);
  j["E1"] = to_json(a.E1);
  j["E"] = to_json(a.E);
  j["aj_side"] = to_json(a.aj_side);
  j["l_side"] = to_json(a.l_side);
  return j;
}

Json to_json(const EulerSummationCertificate& c) {
  Json j;
  j["name"] = "euler_summation";
  j["params"] = {{"k", c.k}, {"t", c.t}};
  j["status"] = c.holds ? "pass" : "fail";
  j["certificate_terms"] = c.difference.size();
  j["certificate"] = c.difference.to_string();
  j["prepass_points"] = c.prepass_points;
  j["prepass_consistent"] = c.prepass_consistent;
  return j;
}

Json to_json(const SchollReport& r) {
  Json j;
  j["name"] = "scholl_idempotent";
  j["params"] = {{"n", r.n}};
  j["status"] = r.ok() ? "pass" : "fail";
  j["certificate_terms"] = r.epsilon.terms.size();
  j["group_order"] = r.group_order;
  j["checks"] = {{"idempotent", r.idempotent},         {"factorization", r.factorization},
                 {"sym_idempotent", r.sym_idempotent}, {"inv_idempotent", r.inv_idempotent},
                 {"commute", r.commute},               {"character_law", r.character_law}};
  return j;
}

Json to_json(const IdentityResult& r) {
  Json j;
  j["name"] = r.name;
  j["params"] = r.params;
  j["status"] = r.ok() ? "pass" : "fail";
  j["certificate_terms"] = r.certificate_terms;
  j["trials"] = r.trials;
  j["passes"] = r.passes;
  if (!r.first_failure.empty()) j["first_failure"] = r.first_failure;
  return j;
}

Json error_json(const std::exception& e) {
  Json err;
  if (auto* b = dynamic_cast<const BoundError*>(&e)) {
    err["type"] = "BoundError";
    err["required_bound"] = b->required_bound();
  } else if (auto* pe = dynamic_cast<const PrecisionError*>(&e)) {
    err["type"] = "PrecisionError";
    err["needed_precision"] = pe->needed_precision();
  } else if (dynamic_cast<const DomainError*>(&e)) {
    err["type"] = "DomainError";
  } else if (dynamic_cast<const InternalCheckError*>(&e)) {
    err["type"] = "InternalCheckError";
  } else {
    err["type"] = "Error";
  }
  err["message"] = e.what();
  Json j;
  j["schema"] = kSchema;
  j["error"] = std::move(err);
  return j;
}

}  // namespace hqx
