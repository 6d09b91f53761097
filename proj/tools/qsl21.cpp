// qsl21: batch front end for the module library.
//
//   qsl21 verify        run checks on sampled or supplied modules
//   qsl21 classify      family and dimension for rows of raw parameters
//   qsl21 centre-table  central values and centre relations of one module
//   qsl21 dump-module   module matrices as JSON
//   qsl21 complete-set  rank of the evaluation map on PBW monomials
//
// Exit codes: 0 when every selected check passes, 1 on a violation, 2 on a
// configuration error.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "qsl21/families.hpp"
#include "qsl21/serialize.hpp"

using namespace qsl21;

namespace {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kAllChecks = {"relations",        "centrality",
                                             "eigenvalues",      "burnside",
                                             "quotients",        "centre-identity",
                                             "centre-identity-rescaled", "complete-set",
                                             "chebyshev"};
const std::set<std::string> kOddOnly = {"centre-identity", "centre-identity-rescaled", "chebyshev"};

struct Options {
  int l = 3;
  std::vector<std::string> families;
  std::string params;
  std::vector<std::string> checks;
  std::vector<std::string> modules;
  std::vector<std::string> transforms;
  std::string out;
  std::string format = "json";
  int parallel = 1;
  int draws = 3;
  int sample_modules = 25;
  int max_exponent = 2;
  bool experimental_even = false;
  bool poly_terms = false;
  std::optional<std::uint64_t> seed;
};

// ---------------------------------------------------------------------------
// Input and output helpers

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// --params takes a path, or inline JSON when the text starts with { or [.
Json read_json_argument(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\n");
  const bool inline_json = first != std::string::npos && (text[first] == '{' || text[first] == '[');
  try {
    return Json::parse(inline_json ? text : read_file(text));
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
}

void write_output(const Options& opt, const std::string& content) {
  if (opt.out.empty()) {
    std::cout << content;
    return;
  }
  const std::filesystem::path target(opt.out);
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream f(tmp);
    if (!f) throw ConfigError("cannot write '" + opt.out + "'");
    f << content;
  }
  std::filesystem::rename(tmp, target);
}

std::string approx(const CycloScalar& x) {
  const auto z = x.to_complex();
  char buf[64];
  if (std::abs(z.imag()) <= 1e-12 * std::max(1.0, std::abs(z.real()))) {
    std::snprintf(buf, sizeof buf, "%.6g", z.real());
  } else {
    std::snprintf(buf, sizeof buf, "%.6g%+.6gi", z.real(), z.imag());
  }
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

ParameterSampler make_sampler(const Options& opt) {
  return opt.seed ? ParameterSampler(*opt.seed) : ParameterSampler::from_env();
}

void require_odd(const Options& opt, const std::string& what) {
  if (opt.l % 2 == 0 && !opt.experimental_even) {
    throw ConfigError("odd l required for " + what + " (got l = " + std::to_string(opt.l) +
                      "); pass --experimental-even to report without asserting");
  }
}

// ---------------------------------------------------------------------------
// Degeneracy conditions embedded in reports

Json conditions_of(const QContext& ctx, const RepSpec& raw) {
  Json out = Json::array();
  auto add = [&](const std::string& name, const CycloScalar& value) {
    out.push_back({{"name", name}, {"value", value.to_string()}, {"zero", value.is_zero()}});
  };
  RepSpec s;
  try {
    s = complete_spec(ctx, raw);
  } catch (const std::exception& e) {
    out.push_back({{"name", "spec"}, {"error", e.what()}});
    return out;
  }
  if (s.family == Family::InducedMPrime || !s.lambda1 || !s.lambda2) return out;
  const CycloScalar& l1 = *s.lambda1;
  const CycloScalar& l2 = *s.lambda2;
  if (is_gl2_family(s.family) && !s.phi) return out;
  if (s.phi) {
    add("phi", *s.phi);
    if (!is_gl2_family(s.family)) add("[mu2][mu1+mu2+1] - beta", qbracket(ctx, l2, 0) * qbracket(ctx, l1 * l2, 1) - *s.beta);
    return out;
  }
  add("[mu2]", qbracket(ctx, l2, 0));
  add("[mu1+mu2+1]", qbracket(ctx, l1 * l2, 1));
  if (s.N) add("[N+mu2]", qbracket(ctx, l2, *s.N));
  return out;
}

// ---------------------------------------------------------------------------
// Checks

struct CheckResult {
  std::string check;
  std::string verdict;  // pass, fail, skipped, info
  std::string reason;
  Json witness = Json::object();
};

Matrix matrix_power(const Matrix& a, int n) {
  Matrix out = Matrix::identity(a.rows());
  for (int i = 0; i < n; ++i) out = out * a;
  return out;
}

bool commutes(const Matrix& c, const ModuleRep& m) {
  for (const Matrix* g : m.algebra_generators())
    if (!(c * *g == *g * c)) return false;
  return true;
}

bool has_transform(const RepSpec& s, const std::string& t) {
  return std::find(s.transforms.begin(), s.transforms.end(), t) != s.transforms.end();
}

CheckResult skipped(const std::string& check, const std::string& reason) { return {check, "skipped", reason, {}}; }

CheckResult check_relations(const ModuleRep& m) {
  CheckResult r{"relations", "pass", "", Json::object()};
  const auto checks = audit_relations(m);
  Json failing = Json::array();
  for (const auto& c : checks) {
    if (c.applicable && !c.holds) failing.push_back({{"group", c.name}, {"nonzero_entries", c.nonzero_entries}});
  }
  r.witness["groups"] = checks.size();
  r.witness["failing"] = failing;
  if (!failing.empty()) r.verdict = "fail";
  return r;
}

CheckResult check_centrality(const ModuleRep& m) {
  CheckResult r{"centrality", "pass", "", Json::object()};
  const QContext& ctx = m.ctx();
  const int l = ctx.l();
  Json failing = Json::array();
  if (m.kind() == RepKind::Sl21) {
    for (int p = 1; p <= l; ++p) {
      if (!commutes(eval(cached_casimir(m.ctx_ptr(), p), m), m)) failing.push_back("C_" + std::to_string(p));
    }
  } else {
    const Matrix c = m.k1() * ctx.q() + m.k1inv() * ctx.qinv() + m.f1() * m.e1() * (ctx.qdiff() * ctx.qdiff());
    if (!commutes(c, m)) failing.push_back("gl2 Casimir");
  }
  const std::pair<const char*, const Matrix*> powers[] = {
      {"k1^l", &m.k1()}, {"k2^l", &m.k2()}, {"e1^l", &m.e1()}, {"f1^l", &m.f1()}};
  for (const auto& [name, g] : powers) {
    if (!commutes(matrix_power(*g, l), m)) failing.push_back(name);
  }
  r.witness["failing"] = failing;
  if (!failing.empty()) r.verdict = "fail";
  return r;
}

CheckResult check_eigenvalues(const ModuleRep& m) {
  const RepSpec& s = m.spec();
  if (m.kind() != RepKind::Sl21) return skipped("eigenvalues", "gl(2) module: no sl(2|1) Casimir");
  if (has_transform(s, "psi")) return skipped("eigenvalues", "no closed-form eigenvalue for psi-twisted modules");
  CheckResult r{"eigenvalues", "pass", "", Json::object()};
  const QContext& ctx = m.ctx();
  Json values = Json::array();
  for (int p = 1; p <= ctx.l(); ++p) {
    const CycloScalar expected = expected_casimir(ctx, s, p);
    Json row = {{"p", p}, {"expected", expected.to_string()}};
    try {
      const CycloScalar got = casimir_scalar(m, p);
      row["value"] = got.to_string();
      if (got != expected) r.verdict = "fail";
    } catch (const NotScalar& e) {
      row["value"] = nullptr;
      row["error"] = e.what();
      r.verdict = "fail";
    }
    values.push_back(std::move(row));
  }
  r.witness["casimir"] = values;
  return r;
}

bool expected_simple(const ModuleRep& m) {
  const RepSpec& s = m.spec();
  if (s.family != Family::InducedMPrime || has_transform(s, "quotient")) return true;
  const RepSpec done = complete_spec(m.ctx(), s);
  const bool typical = !(qbracket(m.ctx(), *done.lambda2, 0) * qbracket(m.ctx(), *done.lambda1 * *done.lambda2, 1) -
                         done.beta.value_or(CycloScalar(0L)))
                            .is_zero();
  return typical;
}

CheckResult check_burnside(const ModuleRep& m) {
  CheckResult r{"burnside", "pass", "", Json::object()};
  const auto b = burnside(m);
  const bool expect_full = expected_simple(m);
  r.witness = {{"dim", b.dim}, {"full_dim", m.dim() * m.dim()}, {"method", b.method}, {"expected_simple", expect_full}};
  if (b.full != expect_full) r.verdict = "fail";
  return r;
}

CheckResult check_quotients(const ModuleRep& m) {
  const RepSpec& s = m.spec();
  if (m.kind() != RepKind::Sl21 || s.family == Family::InducedMPrime)
    return skipped("quotients", "only closed-form sl(2|1) families have an induced module to compare with");
  if (!s.transforms.empty()) return skipped("quotients", "transformed module");
  CheckResult r{"quotients", "pass", "", Json::object()};
  const ModuleRep mp = induce(build(base_spec(s)));
  r.witness["induced_dim"] = mp.dim();
  const bool typical = s.family == Family::Sl21TypicalNilpotent || s.family == Family::Sl21TypicalPeriodic;
  if (typical) {
    const bool same = mp.e1() == m.e1() && mp.f1() == m.f1() && mp.e2() == m.e2() && mp.f2() == m.f2() &&
                      mp.k1() == m.k1() && mp.k2() == m.k2();
    r.witness["equal_to_closed_form"] = same;
    if (!same) r.verdict = "fail";
    return r;
  }
  const auto sub = maximal_submodule(mp);
  const ModuleRep q = quotient(mp, sub);
  r.witness["maximal_submodule_dim"] = sub.size();
  r.witness["quotient_dim"] = q.dim();
  const auto x = find_intertwiner(q, m);
  r.witness["intertwiner"] = x.has_value();
  if (x) r.witness["determinant"] = determinant(*x).to_string();
  if (!x || q.dim() != m.dim()) r.verdict = "fail";
  return r;
}

CheckResult check_centre(const ModuleRep& m, bool rescaled, bool experimental) {
  const std::string name = rescaled ? "centre-identity-rescaled" : "centre-identity";
  if (m.kind() != RepKind::Sl21) return skipped(name, "gl(2) module");
  CheckResult r{name, "pass", "", Json::object()};
  const CentreReport report = centre_identity(m, experimental);
  r.witness = centre_report_to_json(report);
  for (const auto& [key, ok] : report.verdicts) {
    if (key == (rescaled ? "centre_polynomial" : "centre_polynomial_rescaled")) continue;
    if (!ok) r.verdict = "fail";
  }
  if (experimental && m.ctx().l() % 2 == 0) {
    r.verdict = "info";
    r.reason = "even l: reported, not asserted";
  }
  return r;
}

CheckResult check_chebyshev(const ModuleRep& m, bool experimental) {
  CheckResult r{"chebyshev", gl2_chebyshev_holds(m) ? "pass" : "fail", "", Json::object()};
  if (experimental && m.ctx().l() % 2 == 0) {
    r.witness["holds"] = r.verdict == "pass";
    r.verdict = "info";
    r.reason = "even l: reported, not asserted";
  }
  return r;
}

std::vector<CheckResult> run_checks(const ModuleRep& m, const std::vector<std::string>& checks, bool experimental) {
  std::vector<CheckResult> out;
  for (const auto& c : checks) {
    try {
      if (c == "relations") out.push_back(check_relations(m));
      else if (c == "centrality") out.push_back(check_centrality(m));
      else if (c == "eigenvalues") out.push_back(check_eigenvalues(m));
      else if (c == "burnside") out.push_back(check_burnside(m));
      else if (c == "quotients") out.push_back(check_quotients(m));
      else if (c == "centre-identity") out.push_back(check_centre(m, false, experimental));
      else if (c == "centre-identity-rescaled") out.push_back(check_centre(m, true, experimental));
      else if (c == "chebyshev") out.push_back(check_chebyshev(m, experimental));
    } catch (const std::exception& e) {
      out.push_back({c, "fail", e.what(), {}});
    }
  }
  return out;
}

Json result_to_json(const CheckResult& r) {
  Json j = {{"check", r.check}, {"verdict", r.verdict}, {"witness", r.witness}};
  if (!r.reason.empty()) j["reason"] = r.reason;
  return j;
}

std::vector<PBWMonomial> monomial_set(int max_exponent) {
  std::vector<PBWMonomial> out;
  for (int rho = 0; rho <= 1; ++rho)
    for (int sigma = 0; sigma <= 1; ++sigma)
      for (int p = 0; p <= max_exponent; ++p)
        for (int a1 = -max_exponent; a1 <= max_exponent; ++a1)
          for (int a2 = -max_exponent; a2 <= max_exponent; ++a2)
            for (int t = 0; t <= max_exponent; ++t)
              for (int sigmap = 0; sigmap <= 1; ++sigmap)
                for (int rhop = 0; rhop <= 1; ++rhop) out.push_back(PBWMonomial{rho, sigma, p, a1, a2, t, sigmap, rhop});
  return out;
}

CheckResult check_complete_set(const Options& opt, ParameterSampler& sampler) {
  auto ctx = make_context(opt.l);
  std::vector<ModuleRep> sample;
  Json specs = Json::array();
  for (int i = 0; i < opt.sample_modules; ++i) {
    sample.push_back(build(sampler.draw(*ctx, Family::Sl21TypicalPeriodic)));
    specs.push_back(spec_to_json(sample.back().spec()));
  }
  const auto monomials = monomial_set(opt.max_exponent);
  const RankResult rank = complete_set_rank(ctx, monomials, sample);
  CheckResult r{"complete-set", rank.rank == rank.count ? "pass" : "fail", "", Json::object()};
  r.witness = {{"rank", rank.rank},         {"count", rank.count},   {"certified", rank.certified},
               {"method", rank.method},     {"modules", specs.size()}, {"max_exponent", opt.max_exponent},
               {"sample", specs}};
  return r;
}

// ---------------------------------------------------------------------------
// verify

struct Instance {
  std::string id;
  RepSpec spec;
  std::optional<ModuleRep> loaded;
};

std::vector<Family> parse_families(const std::vector<std::string>& names) {
  std::vector<Family> out;
  for (const auto& n : names) {
    if (n == "all") {
      for (Family f : {Family::Gl2NilpotentA, Family::Gl2NilpotentB, Family::Gl2Periodic, Family::Sl21TypicalNilpotent,
                       Family::Sl21AtypicalMu2, Family::Sl21AtypicalSum, Family::Sl21TypicalPeriodic,
                       Family::Sl21AtypicalPeriodic})
        out.push_back(f);
      continue;
    }
    try {
      out.push_back(family_from_name(n));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  return out;
}

std::vector<Instance> sampled_instances(const Options& opt, const std::vector<Family>& families,
                                        ParameterSampler& sampler) {
  auto ctx = make_context(opt.l);
  std::vector<Instance> out;
  for (Family f : families) {
    if (f == Family::InducedMPrime) throw ConfigError("induced modules need an explicit spec in --params");
    const bool has_b = f == Family::Sl21TypicalNilpotent || f == Family::Sl21AtypicalMu2 || f == Family::Sl21AtypicalSum;
    for (bool type_b : {false, true}) {
      if (type_b && !has_b) continue;
      for (int d = 0; d < opt.draws; ++d) {
        RepSpec s = sampler.draw(*ctx, f, std::nullopt, type_b);
        s.transforms = opt.transforms;
        out.push_back({family_name(f) + (type_b ? "/B#" : "#") + std::to_string(d), s, std::nullopt});
      }
    }
  }
  return out;
}

int cmd_verify(Options opt) {
  std::vector<Instance> instances;
  if (!opt.params.empty()) {
    const Json cfg = read_json_argument(opt.params);
    if (cfg.is_object() && cfg.contains("l")) opt.l = cfg.at("l").get<int>();
    if (opt.checks.empty() && cfg.is_object() && cfg.contains("checks"))
      opt.checks = cfg.at("checks").get<std::vector<std::string>>();
    if (cfg.is_object() && cfg.contains("draws")) opt.draws = cfg.at("draws").get<int>();
    if (!opt.seed && cfg.is_object() && cfg.contains("seed")) opt.seed = cfg.at("seed").get<std::uint64_t>();
    const Json entries = cfg.is_array() ? cfg : cfg.value("families", Json::array());
    ParameterSampler sampler = make_sampler(opt);
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const Json& e = entries.at(i);
      if (e.is_string()) {
        auto more = sampled_instances(opt, parse_families({e.get<std::string>()}), sampler);
        instances.insert(instances.end(), more.begin(), more.end());
      } else {
        try {
          RepSpec s = spec_from_json(e);
          if (s.l != opt.l) throw ConfigError("entry " + std::to_string(i) + " has l = " + std::to_string(s.l));
          instances.push_back({"params#" + std::to_string(i), s, std::nullopt});
        } catch (const Json::exception& ex) {
          throw ConfigError("entry " + std::to_string(i) + ": " + ex.what());
        } catch (const std::invalid_argument& ex) {
          throw ConfigError("entry " + std::to_string(i) + ": " + ex.what());
        }
      }
    }
  }
  for (const auto& path : opt.modules) {
    try {
      ModuleRep m = module_from_json(read_json_argument(path));
      opt.l = m.ctx().l();
      instances.push_back({path, m.spec(), std::move(m)});
    } catch (const Json::exception& ex) {
      throw ConfigError(path + ": " + ex.what());
    } catch (const std::invalid_argument& ex) {
      throw ConfigError(path + ": " + ex.what());
    }
  }
  if (opt.l < 3) throw ConfigError("l must be at least 3");
  if (opt.checks.empty()) opt.checks = {"relations", "centrality", "eigenvalues", "burnside"};
  for (const auto& c : opt.checks) {
    if (std::find(kAllChecks.begin(), kAllChecks.end(), c) == kAllChecks.end()) throw ConfigError("unknown check '" + c + "'");
    if (kOddOnly.count(c)) require_odd(opt, c);
  }
  ParameterSampler sampler = make_sampler(opt);
  if (instances.empty()) {
    std::vector<std::string> fams = opt.families.empty() ? std::vector<std::string>{"all"} : opt.families;
    instances = sampled_instances(opt, parse_families(fams), sampler);
  }
  for (const auto& inst : instances) {
    if (inst.spec.l != opt.l) throw ConfigError(inst.id + ": mixed values of l in one run");
  }
  auto ctx = make_context(opt.l);

  // Build every module up front so that spec errors are configuration errors.
  std::vector<ModuleRep> built;
  for (auto& inst : instances) {
    try {
      built.push_back(inst.loaded ? *inst.loaded : build(inst.spec));
    } catch (const SpecError& e) {
      throw ConfigError(inst.id + ": " + e.what());
    }
  }

  std::vector<std::vector<CheckResult>> results(instances.size());
  std::vector<std::string> per_module;
  for (const auto& c : opt.checks)
    if (c != "complete-set") per_module.push_back(c);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < instances.size(); i = next++) results[i] = run_checks(built[i], per_module, opt.experimental_even);
  };
  const int threads = std::max(1, std::min<int>(opt.parallel, static_cast<int>(instances.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<CheckResult> global;
  if (std::find(opt.checks.begin(), opt.checks.end(), "complete-set") != opt.checks.end()) {
    try {
      global.push_back(check_complete_set(opt, sampler));
    } catch (const std::exception& e) {
      global.push_back({"complete-set", "fail", e.what(), {}});
    }
  }

  std::size_t passed = 0, failed = 0, skip = 0, info = 0;
  auto tally = [&](const CheckResult& r) {
    if (r.verdict == "pass") ++passed;
    else if (r.verdict == "fail") ++failed;
    else if (r.verdict == "skipped") ++skip;
    else ++info;
  };
  for (const auto& rs : results)
    for (const auto& r : rs) tally(r);
  for (const auto& r : global) tally(r);

  std::string content;
  if (opt.format == "csv") {
    std::ostringstream os;
    os << "instance,family,l,check,verdict,reason,witness\n";
    for (std::size_t i = 0; i < instances.size(); ++i) {
      for (const auto& r : results[i]) {
        os << csv_field(instances[i].id) << ',' << family_name(instances[i].spec.family) << ',' << opt.l << ','
           << r.check << ',' << r.verdict << ',' << csv_field(r.reason) << ',' << csv_field(r.witness.dump()) << '\n';
      }
    }
    for (const auto& r : global) {
      os << "global,," << opt.l << ',' << r.check << ',' << r.verdict << ',' << csv_field(r.reason) << ','
         << csv_field(r.witness.dump()) << '\n';
    }
    content = os.str();
  } else {
    Json report = Json::object();
    report["command"] = "verify";
    report["l"] = opt.l;
    report["checks"] = opt.checks;
    report["experimental_even"] = opt.experimental_even;
    Json inst = Json::array();
    for (std::size_t i = 0; i < instances.size(); ++i) {
      Json checks = Json::array();
      for (const auto& r : results[i]) checks.push_back(result_to_json(r));
      inst.push_back({{"id", instances[i].id},
                      {"spec", spec_to_json(built[i].spec())},
                      {"dim", built[i].dim()},
                      {"conditions", conditions_of(*ctx, instances[i].spec)},
                      {"checks", checks}});
    }
    report["instances"] = inst;
    Json g = Json::array();
    for (const auto& r : global) g.push_back(result_to_json(r));
    report["global"] = g;
    report["summary"] = {{"passed", passed}, {"failed", failed}, {"skipped", skip}, {"info", info}};
    content = canonical_dump(report);
  }
  write_output(opt, content);
  std::cerr << "verify: " << passed << " passed, " << failed << " failed, " << skip << " skipped";
  if (info) std::cerr << ", " << info << " informational";
  std::cerr << "\n";
  return failed == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// classify

struct Row {
  std::size_t line = 0;
  std::map<std::string, std::string> cells;
};

std::vector<Row> read_rows(const std::string& text, bool& malformed) {
  std::vector<Row> rows;
  const auto first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && (text[first] == '[' || text[first] == '{')) {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    if (j.is_object()) j = j.value("rows", Json::array());
    for (std::size_t i = 0; i < j.size(); ++i) {
      Row r{i + 1, {}};
      for (const auto& [k, v] : j.at(i).items()) {
        if (v.is_null()) continue;
        r.cells[k] = v.is_string() ? v.get<std::string>() : v.dump();
      }
      rows.push_back(std::move(r));
    }
    return rows;
  }
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> header;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto fields = split(line, ',');
    for (auto& f : fields) {
      const auto b = f.find_first_not_of(" \t");
      f = b == std::string::npos ? "" : f.substr(b, f.find_last_not_of(" \t") - b + 1);
    }
    if (header.empty()) {
      header = fields;
      continue;
    }
    if (fields.size() != header.size()) {
      std::cerr << "line " << number << ": expected " << header.size() << " fields, found " << fields.size() << "\n";
      malformed = true;
      continue;
    }
    Row r{number, {}};
    for (std::size_t i = 0; i < header.size(); ++i)
      if (!fields[i].empty()) r.cells[header[i]] = fields[i];
    rows.push_back(std::move(r));
  }
  return rows;
}

int cmd_classify(const Options& opt) {
  if (opt.params.empty()) throw ConfigError("classify needs --params with a CSV or JSON parameter file");
  if (opt.l < 3) throw ConfigError("l must be at least 3");
  const auto first = opt.params.find_first_not_of(" \t\n");
  const bool inline_json = first != std::string::npos && (opt.params[first] == '[' || opt.params[first] == '{');
  bool malformed = false;
  const auto rows = read_rows(inline_json ? opt.params : read_file(opt.params), malformed);
  auto ctx = make_context(opt.l);
  bool row_errors = false;

  std::ostringstream csv;
  csv << "line,lambda1,lambda2,phi,beta,N,family,typical,type,dim,C1,C1_approx,reason\n";
  Json out = Json::array();
  for (const auto& row : rows) {
    RawParams raw;
    auto cell = [&](const char* k) -> std::optional<std::string> {
      auto it = row.cells.find(k);
      if (it == row.cells.end()) return std::nullopt;
      return it->second;
    };
    try {
      if (!cell("lambda1") || !cell("lambda2")) throw std::invalid_argument("lambda1 and lambda2 are required");
      raw.lambda1 = parse_parameter(*ctx, *cell("lambda1"));
      raw.lambda2 = parse_parameter(*ctx, *cell("lambda2"));
      if (cell("phi")) raw.phi = parse_parameter(*ctx, *cell("phi"));
      if (cell("beta")) raw.beta = parse_parameter(*ctx, *cell("beta"));
      if (cell("N")) raw.N = std::stoi(*cell("N"));
    } catch (const std::exception& e) {
      std::cerr << "line " << row.line << ": " << e.what() << "\n";
      malformed = true;
      continue;
    }
    auto opt_str = [](const std::optional<CycloScalar>& x) { return x ? x->to_string() : std::string(); };
    csv << row.line << ',' << csv_field(raw.lambda1.to_string()) << ',' << csv_field(raw.lambda2.to_string()) << ','
        << csv_field(opt_str(raw.phi)) << ',' << csv_field(opt_str(raw.beta)) << ',' << (raw.N ? std::to_string(*raw.N) : "")
        << ',';
    Json j = {{"line", row.line}, {"lambda1", raw.lambda1.to_string()}, {"lambda2", raw.lambda2.to_string()}};
    try {
      const Classification c = classify(*ctx, raw);
      const CycloScalar c1 = expected_casimir(*ctx, c.spec, 1);
      csv << family_name(c.family) << ',' << (c.typical ? "typical" : "atypical") << ',' << c.type << ',' << c.dim << ','
          << csv_field(c1.to_string()) << ',' << approx(c1) << ',' << csv_field(c.reason) << '\n';
      j.update({{"family", family_name(c.family)},
                {"typical", c.typical},
                {"type", std::string(1, c.type)},
                {"dim", c.dim},
                {"N", c.N},
                {"C1", c1.to_string()},
                {"reason", c.reason}});
    } catch (const std::exception& e) {
      row_errors = true;
      csv << ",,,,,," << csv_field(e.what()) << '\n';
      j["error"] = e.what();
    }
    out.push_back(std::move(j));
  }
  write_output(opt, opt.format == "json" ? canonical_dump(out) : csv.str());
  if (malformed) return 2;
  return row_errors ? 1 : 0;
}

// ---------------------------------------------------------------------------
// single-module commands

RepSpec single_spec(const Options& opt) {
  if (!opt.params.empty()) {
    try {
      RepSpec s = spec_from_json(read_json_argument(opt.params));
      for (const auto& t : opt.transforms) s.transforms.push_back(t);
      return s;
    } catch (const Json::exception& e) {
      throw ConfigError(e.what());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (opt.families.size() != 1) throw ConfigError("give one --family or a spec in --params");
  const Family f = parse_families(opt.families).front();
  if (opt.l < 3) throw ConfigError("l must be at least 3");
  auto ctx = make_context(opt.l);
  ParameterSampler sampler = make_sampler(opt);
  RepSpec s = sampler.draw(*ctx, f);
  s.transforms = opt.transforms;
  return s;
}

ModuleRep build_or_config_error(const RepSpec& s) {
  try {
    return build(s);
  } catch (const SpecError& e) {
    throw ConfigError(e.what());
  }
}

int cmd_centre_table(Options opt) {
  if (opt.poly_terms) {
    if (opt.l < 3) throw ConfigError("l must be at least 3");
    require_odd(opt, "the centre polynomial");
    std::ostringstream os;
    os << "m,n,weight\n";
    for (const auto& t : centre_poly_terms(opt.l)) os << t.m << ',' << t.n << ',' << t.weight.get_str() << '\n';
    write_output(opt, os.str());
    return 0;
  }
  const RepSpec s = single_spec(opt);
  opt.l = s.l;
  require_odd(opt, "the centre relations");
  const ModuleRep m = build_or_config_error(s);
  if (m.kind() != RepKind::Sl21) throw ConfigError("centre-table needs an sl(2|1) module");
  const CentreReport r = centre_identity(m, opt.experimental_even);
  if (opt.format == "csv") {
    std::ostringstream os;
    os << "quantity,exact,approx\n";
    auto row = [&](const std::string& name, const CycloScalar& x) {
      os << csv_field(name) << ',' << csv_field(x.to_string()) << ',' << approx(x) << '\n';
    };
    for (std::size_t p = 0; p < r.cp_scalars.size(); ++p) row("C_" + std::to_string(p + 1), r.cp_scalars[p]);
    for (std::size_t p = 0; p < r.cp_shift_scalars.size(); ++p)
      row("C_" + std::to_string(p + 1 + r.cp_scalars.size()), r.cp_shift_scalars[p]);
    row("z1", r.z1);
    row("z2", r.z2);
    row("x1", r.x1);
    row("y1", r.y1);
    if (r.xi_plus_xiinv) row("xi+xi^-1", *r.xi_plus_xiinv);
    row("lhs", r.lhs);
    row("rhs", r.rhs);
    row("lhs_rescaled", r.lhs_rescaled);
    row("rhs_rescaled", r.rhs_rescaled);
    write_output(opt, os.str());
  } else {
    Json j = {{"spec", spec_to_json(m.spec())},
              {"conditions", conditions_of(m.ctx(), s)},
              {"report", centre_report_to_json(r)}};
    write_output(opt, canonical_dump(j));
  }
  return 0;
}

int cmd_dump_module(const Options& opt) {
  const ModuleRep m = build_or_config_error(single_spec(opt));
  write_output(opt, canonical_dump(module_to_json(m)));
  return 0;
}

int cmd_complete_set(Options opt) {
  if (opt.l < 3) throw ConfigError("l must be at least 3");
  if (opt.sample_modules < 1) throw ConfigError("--modules must be positive");
  ParameterSampler sampler = make_sampler(opt);
  const CheckResult r = check_complete_set(opt, sampler);
  Json j = r.witness;
  j["injective"] = r.verdict == "pass";
  j["l"] = opt.l;
  write_output(opt, canonical_dump(j));
  std::cerr << "complete-set: rank " << r.witness["rank"] << " of " << r.witness["count"] << "\n";
  return r.verdict == "pass" ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact modules of U_q(sl(2|1)) at roots of unity"};
  app.require_subcommand(1);
  Options opt;
  std::string checks;
  std::string families;
  std::string transforms;
  std::optional<std::uint64_t> seed;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--l", opt.l, "order of the root of unity q")->check(CLI::Range(3, 64));
    sub->add_option("--family", families, "comma-separated family names, or 'all'");
    sub->add_option("--params", opt.params, "JSON or CSV input file, or inline JSON");
    sub->add_option("--out", opt.out, "output file (written atomically); stdout by default");
    sub->add_option("--format", opt.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", seed, "sampler seed (default: QSL21_SEED or a fixed value)");
    sub->add_flag("--experimental-even", opt.experimental_even, "report odd-l-only relations at even l without asserting");
  };

  auto* verify = app.add_subcommand("verify", "run checks on sampled or supplied modules");
  common(verify);
  verify->add_option("--checks", checks, "comma-separated subset of: relations, centrality, eigenvalues, burnside, "
                                         "quotients, centre-identity, centre-identity-rescaled, complete-set, chebyshev");
  verify->add_option("--module", opt.modules, "module dump to verify (repeatable)");
  verify->add_option("--draws", opt.draws, "sampled instances per family")->check(CLI::PositiveNumber);
  verify->add_option("--parallel", opt.parallel, "worker threads")->check(CLI::PositiveNumber);
  verify->add_option("--transform", transforms, "comma-separated transforms applied to sampled modules");
  verify->add_option("--modules", opt.sample_modules, "typical periodic modules in the complete-set sample");
  verify->add_option("--max-exponent", opt.max_exponent, "bound on p, t and |a_i| in the complete-set monomials");

  auto* cls = app.add_subcommand("classify", "classify rows of raw parameters");
  common(cls);
  cls->get_option("--format")->default_str("csv");

  auto* centre = app.add_subcommand("centre-table", "central values and centre relations of one module");
  common(centre);
  centre->add_option("--transform", transforms, "comma-separated transforms (psi, quotient, corrupted)");
  centre->add_flag("--poly-terms", opt.poly_terms, "print the coefficient table of the centre polynomial as CSV");

  auto* dump = app.add_subcommand("dump-module", "module matrices as JSON");
  common(dump);
  dump->add_option("--transform", transforms, "comma-separated transforms (psi, quotient, corrupted)");

  auto* cset = app.add_subcommand("complete-set", "rank of the evaluation map on PBW monomials");
  common(cset);
  cset->add_option("--modules", opt.sample_modules, "typical periodic modules in the sample");
  cset->add_option("--max-exponent", opt.max_exponent, "bound on p, t and |a_i|");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  opt.seed = seed;
  if (!checks.empty()) opt.checks = split(checks, ',');
  if (!families.empty()) opt.families = split(families, ',');
  if (!transforms.empty()) opt.transforms = split(transforms, ',');
  if (cls->parsed() && cls->count("--format") == 0) opt.format = "csv";

  try {
    if (verify->parsed()) return cmd_verify(opt);
    if (cls->parsed()) return cmd_classify(opt);
    if (centre->parsed()) return cmd_centre_table(opt);
    if (dump->parsed()) return cmd_dump_module(opt);
    if (cset->parsed()) return cmd_complete_set(opt);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
