#include "trisign/json_io.hpp"

#include <cstdio>
#include <fstream>

namespace trisign {

namespace {

const Json& need(const Json& j, const char* key, const char* ctx) {
  if (!j.is_object() || !j.contains(key))
    fail(ErrorKind::InvalidInput,
         std::string(ctx) + ": missing required key '" + key + "'");
  return j.at(key);
}

Rational rat_from(const Json& j, const char* ctx) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  fail(ErrorKind::InvalidInput,
       std::string(ctx) + ": rationals must be integers or 'a/b' strings");
}

RatVec ratvec_from(const Json& j, const char* ctx) {
  if (!j.is_array() || j.empty())
    fail(ErrorKind::InvalidInput, std::string(ctx) + ": expected a nonempty array");
  RatVec v(static_cast<Eigen::Index>(j.size()));
  Eigen::Index k = 0;
  for (const auto& e : j) v(k++) = rat_from(e, ctx);
  return v;
}

Json ratvec_json(const RatVec& v) {
  Json a = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(format_rational(v(k)));
  return a;
}

Json complex_json(const std::complex<double>& z) {
  return Json::array({z.real(), z.imag()});
}

Json covector_json(const Eigen::VectorXcd& v,
                   const std::optional<RatVec>& exact) {
  if (exact) return ratvec_json(*exact);
  Json a = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(complex_json(v(k)));
  return a;
}

}  // namespace

Json to_json(const RatForm& f) {
  Json j;
  j["degree"] = f.degree();
  Json c = Json::array();
  for (Eigen::Index k = 0; k <= f.degree(); ++k)
    c.push_back(format_rational(f.coeff(k)));
  j["coeffs"] = std::move(c);
  return j;
}

RatForm ratform_from_json(const Json& j) {
  const auto deg = need(j, "degree", "form").get<Eigen::Index>();
  const Json& c = need(j, "coeffs", "form");
  if (deg < 0 || !c.is_array() || static_cast<Eigen::Index>(c.size()) != deg + 1)
    fail(ErrorKind::InvalidInput, "form: coeffs must have degree+1 entries");
  Vec<Rational> v(deg + 1);
  Eigen::Index k = 0;
  for (const auto& e : c) v(k++) = rat_from(e, "form");
  return RatForm::from_coeffs(std::move(v));
}

Json to_json(const JetCurve& C) {
  Json j;
  j["n"] = C.n;
  Json p = Json::array();
  for (const auto& f : C.p) p.push_back(to_json(f));
  j["p"] = std::move(p);
  return j;
}

JetCurve jetcurve_from_json(const Json& j) {
  JetCurve C;
  C.n = need(j, "n", "curve").get<int>();
  const Json& p = need(j, "p", "curve");
  if (!p.is_array()) fail(ErrorKind::InvalidInput, "curve: 'p' must be an array");
  for (const auto& e : p) C.p.push_back(ratform_from_json(e));
  return C;
}

Json to_json(const Hypersurface& X) {
  Json j;
  j["n"] = X.n;
  Json ts = Json::array();
  for (const auto& t : X.terms) {
    Json e;
    e["exps"] = t.exps;
    e["c"] = format_rational(t.c);
    ts.push_back(std::move(e));
  }
  j["terms"] = std::move(ts);
  return j;
}

Hypersurface hypersurface_from_json(const Json& j) {
  Hypersurface X;
  X.n = need(j, "n", "hypersurface").get<int>();
  const Json& ts = need(j, "terms", "hypersurface");
  if (!ts.is_array())
    fail(ErrorKind::InvalidInput, "hypersurface: 'terms' must be an array");
  for (const auto& e : ts) {
    HypersurfaceTerm t;
    const Json& exps = need(e, "exps", "hypersurface term");
    if (!exps.is_array())
      fail(ErrorKind::InvalidInput, "hypersurface term: 'exps' must be an array");
    for (const auto& x : exps) t.exps.push_back(x.get<int>());
    t.c = rat_from(need(e, "c", "hypersurface term"), "hypersurface term");
    X.terms.push_back(std::move(t));
  }
  return X;
}

Json to_json(const SolverConfig& cfg) {
  Json j;
  j["starts"] = cfg.starts;
  j["max_rounds"] = cfg.max_rounds;
  j["tol"] = cfg.tol;
  j["dedupe_digits"] = cfg.dedupe_digits;
  j["seed"] = cfg.seed;
  j["stability_rounds"] = cfg.stability_rounds;
  j["threads"] = cfg.threads;
  return j;
}

SolverConfig solverconfig_from_json(const Json& j) {
  SolverConfig cfg;
  if (!j.is_object()) fail(ErrorKind::InvalidInput, "solver config must be an object");
  if (j.contains("starts")) cfg.starts = j.at("starts").get<int>();
  if (j.contains("max_rounds")) cfg.max_rounds = j.at("max_rounds").get<int>();
  if (j.contains("tol")) cfg.tol = j.at("tol").get<double>();
  if (j.contains("dedupe_digits")) cfg.dedupe_digits = j.at("dedupe_digits").get<int>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("stability_rounds"))
    cfg.stability_rounds = j.at("stability_rounds").get<int>();
  if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
  return cfg;
}

Json to_json(const PlaneConfig& cfg) {
  Json j;
  Json base = Json::array();
  for (const auto& p : cfg.base) {
    Json e;
    e["re"] = ratvec_json(p.re);
    e["im"] = ratvec_json(p.im);
    e["is_complex"] = p.is_complex;
    base.push_back(std::move(e));
  }
  j["base"] = std::move(base);
  Json conic = Json::array();
  for (Eigen::Index r = 0; r < cfg.conic.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < cfg.conic.cols(); ++c)
      row.push_back(format_rational(cfg.conic(r, c)));
    conic.push_back(std::move(row));
  }
  j["conic"] = std::move(conic);
  if (cfg.point_on_conic) j["point_on_conic"] = ratvec_json(*cfg.point_on_conic);
  return j;
}

PlaneConfig planeconfig_from_json(const Json& j) {
  PlaneConfig cfg;
  const Json& base = need(j, "base", "plane config");
  if (!base.is_array())
    fail(ErrorKind::InvalidInput, "plane config: 'base' must be an array");
  for (const auto& e : base) {
    PlanePoint p;
    p.re = ratvec_from(need(e, "re", "base point"), "base point");
    if (e.contains("im"))
      p.im = ratvec_from(e.at("im"), "base point");
    else
      p.im = RatVec::Constant(p.re.size(), Rational(0));
    if (e.contains("is_complex")) p.is_complex = e.at("is_complex").get<bool>();
    cfg.base.push_back(std::move(p));
  }
  const Json& conic = need(j, "conic", "plane config");
  if (!conic.is_array() || conic.size() != 3)
    fail(ErrorKind::InvalidInput, "plane config: 'conic' must be a 3x3 array");
  cfg.conic = RatMat(3, 3);
  for (Eigen::Index r = 0; r < 3; ++r) {
    const Json& row = conic.at(static_cast<size_t>(r));
    if (!row.is_array() || row.size() != 3)
      fail(ErrorKind::InvalidInput, "plane config: 'conic' must be a 3x3 array");
    for (Eigen::Index c = 0; c < 3; ++c)
      cfg.conic(r, c) = rat_from(row.at(static_cast<size_t>(c)), "conic");
  }
  if (j.contains("point_on_conic"))
    cfg.point_on_conic = ratvec_from(j.at("point_on_conic"), "point on conic");
  return cfg;
}

Json to_json(const Secant& M) {
  Json j;
  j["is_real"] = M.is_real;
  j["multiplicity"] = M.multiplicity;
  j["exact"] = M.lambda_a_exact.has_value() && M.divisor.has_exact;
  j["lambda_a"] = covector_json(M.lambda_a, M.lambda_a_exact);
  j["lambda_b"] = covector_json(M.lambda_b, M.lambda_b_exact);
  Json d;
  if (M.divisor.has_exact) d["exact"] = to_json(M.divisor.exact);
  Json approx = Json::array();
  for (Eigen::Index k = 0; k <= M.divisor.approx.degree(); ++k)
    approx.push_back(complex_json(M.divisor.approx.coeff(k)));
  d["approx_coeffs"] = std::move(approx);
  Json pts = Json::array();
  for (const auto& z : M.divisor.points) {
    Json p;
    p["re"] = z.re;
    p["im"] = z.im;
    p["multiplicity"] = z.multiplicity;
    p["at_infinity"] = z.at_infinity;
    pts.push_back(std::move(p));
  }
  d["points"] = std::move(pts);
  j["divisor"] = std::move(d);
  return j;
}

Json to_json(const SecantReport& rep) {
  Json j;
  j["total_with_multiplicity"] = rep.total_with_multiplicity;
  j["certificate_ok"] = rep.certificate_ok;
  j["seed"] = rep.seed;
  j["warnings"] = rep.warnings;
  Json s = Json::array();
  for (const auto& M : rep.secants) s.push_back(to_json(M));
  j["secants"] = std::move(s);
  return j;
}

Json to_json(const CrossingReport& rep) {
  Json j;
  j["det_poly"] = to_json(rep.det_poly);
  Json cr = Json::array();
  for (const auto& w : rep.crossings) {
    Json e;
    e["t_lo"] = format_rational(w.t_lo);
    e["t_hi"] = format_rational(w.t_hi);
    cr.push_back(std::move(e));
  }
  j["crossings"] = std::move(cr);
  j["constant"] = rep.crossings.empty();
  Json ch = Json::array();
  for (const auto& s : rep.chambers) {
    Json e;
    e["t"] = format_rational(s.t);
    e["euler"] = s.euler;
    if (s.segre)
      e["segre"] = *s.segre;
    else
      e["segre"] = nullptr;
    if (s.welsch)
      e["welsch"] = *s.welsch;
    else
      e["welsch"] = nullptr;
    ch.push_back(std::move(e));
  }
  j["chambers"] = std::move(ch);
  j["indices_agree"] = rep.indices_agree;
  j["alternate_ok"] = rep.alternate_ok;
  j["parity_ok"] = rep.parity_ok;
  return j;
}

Json to_json(const RealLine& L) {
  Json j;
  j["chart"] = Json::array({L.chart.first, L.chart.second});
  j["exact"] = L.params_exact.has_value();
  Json params = Json::array();
  for (int r = 0; r < 2; ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < L.params.cols(); ++c) {
      if (L.params_exact)
        row.push_back(format_rational((*L.params_exact)(r, c)));
      else
        row.push_back(L.params(r, c));
    }
    params.push_back(std::move(row));
  }
  j["params"] = std::move(params);
  Json key = Json::array();
  for (Eigen::Index k = 0; k < L.plucker_key.size(); ++k)
    key.push_back(L.plucker_key(k));
  j["plucker_key"] = std::move(key);
  j["residual"] = L.residual;
  return j;
}

Json to_json(const GeneratedCurve& g) {
  Json j;
  j["curve"] = to_json(g.curve);
  j["ground_truth"] = g.ground_truth;
  j["inside_count"] = g.inside_count;
  j["param_point"] = ratvec_json(g.param_point);
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidInput, path + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::InvalidInput, path + ": " + e.what());
  }
}

std::string dump_json(const Json& j, bool pretty) {
  return pretty ? j.dump(2) + "\n" : j.dump() + "\n";
}

void write_json_atomic(const std::string& path, const Json& j, bool pretty) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) fail(ErrorKind::InvalidInput, tmp + ": cannot open for writing");
    out << dump_json(j, pretty);
    if (!out) fail(ErrorKind::InvalidInput, tmp + ": write failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    fail(ErrorKind::InvalidInput, path + ": atomic rename failed");
}

}  // namespace trisign
