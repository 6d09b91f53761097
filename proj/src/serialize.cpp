#include "qsl21/serialize.hpp"

#include <stdexcept>

#include "qsl21/families.hpp"
#include "qsl21/pbw.hpp"

namespace qsl21 {

namespace {

Json scalar_or_null(const std::optional<CycloScalar>& x) {
  if (!x) return nullptr;
  return x->to_string();
}

template <typename T>
Json value_or_null(const std::optional<T>& x) {
  if (!x) return nullptr;
  return *x;
}

std::optional<CycloScalar> read_scalar(const QContext& ctx, const Json& params, const char* key) {
  if (!params.contains(key) || params.at(key).is_null()) return std::nullopt;
  const Json& v = params.at(key);
  if (v.is_number_integer()) return CycloScalar(v.get<long>());
  return parse_parameter(ctx, v.get<std::string>());
}

std::optional<int> read_int(const Json& params, const char* key) {
  if (!params.contains(key) || params.at(key).is_null()) return std::nullopt;
  return params.at(key).get<int>();
}

}  // namespace

Json spec_to_json(const RepSpec& spec) {
  const QContext ctx(spec.l);
  Json params = Json::object();
  params["lambda1"] = scalar_or_null(spec.lambda1);
  params["lambda2"] = scalar_or_null(spec.lambda2);
  params["phi"] = scalar_or_null(spec.phi);
  params["phi_l"] = spec.phi ? Json(spec.phi->pow(spec.l).to_string()) : Json(nullptr);
  params["beta"] = scalar_or_null(spec.beta);
  params["N"] = value_or_null(spec.N);
  params["omega"] = value_or_null(spec.omega);
  params["epsilon"] = value_or_null(spec.epsilon);

  Json j = Json::object();
  j["family"] = family_name(spec.family);
  j["l"] = spec.l;
  j["lprime"] = ctx.lprime();
  j["params"] = params;
  if (spec.base) j["base"] = family_name(*spec.base);
  if (!spec.transforms.empty()) j["transforms"] = spec.transforms;
  return j;
}

RepSpec spec_from_json(const Json& j) {
  RepSpec s;
  s.family = family_from_name(j.at("family").get<std::string>());
  s.l = j.at("l").get<int>();
  if (s.l < 3) throw std::invalid_argument("l must be at least 3");
  const QContext ctx(s.l);
  const Json params = j.value("params", Json::object());
  s.lambda1 = read_scalar(ctx, params, "lambda1");
  s.lambda2 = read_scalar(ctx, params, "lambda2");
  s.phi = read_scalar(ctx, params, "phi");
  s.beta = read_scalar(ctx, params, "beta");
  s.N = read_int(params, "N");
  s.omega = read_int(params, "omega");
  s.epsilon = read_int(params, "epsilon");
  if (!s.phi && params.contains("phi_l") && !params.at("phi_l").is_null()) {
    throw std::invalid_argument("params.phi is required; phi_l alone does not determine the module");
  }
  if (j.contains("base") && !j.at("base").is_null()) s.base = family_from_name(j.at("base").get<std::string>());
  if (j.contains("transforms")) s.transforms = j.at("transforms").get<std::vector<std::string>>();
  return s;
}

Json matrix_to_json(const Matrix& a) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < a.cols(); ++k) row.push_back(a(i, k).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  const std::size_t n = j.size();
  const std::size_t m = n == 0 ? 0 : j.at(0).size();
  Matrix a(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    if (j.at(i).size() != m) throw std::invalid_argument("ragged matrix row " + std::to_string(i));
    for (std::size_t k = 0; k < m; ++k) a(i, k) = CycloScalar::parse(j.at(i).at(k).get<std::string>());
  }
  return a;
}

Json module_to_json(const ModuleRep& m) {
  Json j = spec_to_json(m.spec());
  j["dim"] = m.dim();
  Json basis = Json::array();
  for (const auto& w : m.basis()) {
    basis.push_back({{"rho", w.rho}, {"sigma", w.sigma}, {"p", w.p}});
  }
  j["basis"] = basis;
  const auto& g = m.mats();
  j["matrices"] = {
      {"k1", matrix_to_json(g.k1)}, {"k1inv", matrix_to_json(g.k1inv)}, {"k2", matrix_to_json(g.k2)},
      {"k2inv", matrix_to_json(g.k2inv)}, {"e1", matrix_to_json(g.e1)}, {"f1", matrix_to_json(g.f1)},
      {"e2", matrix_to_json(g.e2)}, {"f2", matrix_to_json(g.f2)},
  };
  return j;
}

ModuleRep module_from_json(const Json& j) {
  RepSpec spec = spec_from_json(j);
  auto ctx = make_context(spec.l);
  const Json& mj = j.at("matrices");
  GeneratorMatrices g;
  g.k1 = matrix_from_json(mj.at("k1"));
  g.k2 = matrix_from_json(mj.at("k2"));
  g.k1inv = mj.contains("k1inv") ? matrix_from_json(mj.at("k1inv")) : inverse(g.k1);
  g.k2inv = mj.contains("k2inv") ? matrix_from_json(mj.at("k2inv")) : inverse(g.k2);
  g.e1 = matrix_from_json(mj.at("e1"));
  g.f1 = matrix_from_json(mj.at("f1"));
  g.e2 = matrix_from_json(mj.at("e2"));
  g.f2 = matrix_from_json(mj.at("f2"));

  const std::size_t d = j.at("basis").size();
  if (j.contains("dim") && j.at("dim").get<std::size_t>() != d) throw std::invalid_argument("dim does not match basis");
  for (const Matrix* a : {&g.k1, &g.k1inv, &g.k2, &g.k2inv, &g.e1, &g.f1, &g.e2, &g.f2}) {
    if (a->rows() != d || a->cols() != d) throw std::invalid_argument("matrix size does not match basis");
  }
  std::vector<WeightLabel> basis;
  basis.reserve(d);
  for (std::size_t i = 0; i < d; ++i) {
    const Json& b = j.at("basis").at(i);
    WeightLabel w;
    w.rho = b.at("rho").get<int>();
    w.sigma = b.at("sigma").get<int>();
    w.p = b.at("p").get<int>();
    if (g.k1.is_diagonal()) w.kappa1 = g.k1(i, i);
    if (g.k2.is_diagonal()) w.kappa2 = g.k2(i, i);
    basis.push_back(std::move(w));
  }
  const RepKind kind = is_gl2_family(spec.family) ? RepKind::Gl2 : RepKind::Sl21;
  return ModuleRep(ctx, std::move(spec), kind, std::move(basis), std::move(g));
}

Json centre_report_to_json(const CentreReport& r) {
  auto list = [](const std::vector<CycloScalar>& xs) {
    Json a = Json::array();
    for (const auto& x : xs) a.push_back(x.to_string());
    return a;
  };
  Json j = Json::object();
  j["l"] = r.l;
  j["cp_scalars"] = list(r.cp_scalars);
  j["cp_shift_scalars"] = list(r.cp_shift_scalars);
  j["z1"] = r.z1.to_string();
  j["z2"] = r.z2.to_string();
  j["x1"] = r.x1.to_string();
  j["y1"] = r.y1.to_string();
  j["xi_plus_xiinv"] = scalar_or_null(r.xi_plus_xiinv);
  j["lhs"] = r.lhs.to_string();
  j["rhs"] = r.rhs.to_string();
  j["lhs_rescaled"] = r.lhs_rescaled.to_string();
  j["rhs_rescaled"] = r.rhs_rescaled.to_string();
  j["verdicts"] = r.verdicts;
  return j;
}

Json relation_checks_to_json(const std::vector<RelationCheck>& checks) {
  Json a = Json::array();
  for (const auto& c : checks) {
    a.push_back({{"name", c.name},
                 {"applicable", c.applicable},
                 {"holds", c.holds},
                 {"nonzero_entries", c.nonzero_entries},
                 {"residual_max", c.residual_max}});
  }
  return a;
}

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace qsl21
