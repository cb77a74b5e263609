#include "wco/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "wco/errors.hpp"

namespace wco::io {

namespace {

json real_function_to_json(const RealFunction& f) {
  return json(f);
}

json support_to_json(const Support& s) {
  json idx = json::array();
  for (std::size_t k : s.indices) idx.push_back(k + 1);
  return idx;
}

json lambda_to_json(double lambda) {
  if (std::isinf(lambda)) return json("infinity");
  return json(lambda);
}

double lambda_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "infinity")
      return std::numeric_limits<double>::infinity();
    throw input_error("bad lambda token: " + j.get<std::string>());
  }
  return j.get<double>();
}

std::vector<double> positive_array(const json& doc, const char* key,
                                   bool strictly) {
  if (!doc.contains(key) || !doc[key].is_array())
    throw input_error(std::string("missing or non-array field: ") + key);
  std::vector<double> out;
  for (const auto& v : doc[key]) {
    if (!v.is_number())
      throw input_error(std::string(key) + " entries must be numbers");
    double x = v.get<double>();
    if (strictly ? !(x > 0.0) : x < 0.0)
      throw input_error(std::string(key) + " entry out of range: " +
                        std::to_string(x));
    out.push_back(x);
  }
  return out;
}

}  // namespace

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open input file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw input_error("malformed input " + path + ": " + e.what());
  }
  return doc;
}

InputKind detect_kind(const json& doc) {
  if (doc.contains("phi")) return InputKind::System;
  if (doc.contains("entries")) return InputKind::Matrix;
  throw input_error("input document is neither a system (phi) nor a matrix "
                    "(entries)");
}

LoadedSystem system_from_json(const json& doc) {
  std::vector<double> masses = positive_array(doc, "masses", true);
  std::vector<double> u = positive_array(doc, "u", false);
  if (!doc.contains("phi") || !doc["phi"].is_array())
    throw input_error("missing or non-array field: phi");
  std::vector<std::size_t> phi;
  for (const auto& v : doc["phi"]) {
    if (!v.is_number_integer() || v.get<long long>() < 1)
      throw input_error("phi entries must be 1-based indices");
    phi.push_back(static_cast<std::size_t>(v.get<long long>()) - 1);
  }
  if (phi.size() != masses.size() || u.size() != masses.size())
    throw input_error("masses, phi and u must have equal lengths");

  AnalysisOptions opts;
  if (doc.contains("options")) {
    const json& o = doc["options"];
    if (o.contains("support_tol")) opts.support_tol = o["support_tol"];
    if (o.contains("max_n")) opts.max_n = o["max_n"].get<std::size_t>();
    if (o.contains("prefix_window")) opts.prefix_window = o["prefix_window"];
    if (o.contains("tail_bound_asserted"))
      opts.tail_bound_asserted = o["tail_bound_asserted"];
  }
  return LoadedSystem{
      WeightedCompositionSystem(DiscreteMeasureSpace(std::move(masses)),
                                Transformation(std::move(phi)), std::move(u)),
      opts};
}

json system_to_json(const WeightedCompositionSystem& sys) {
  json doc;
  doc["masses"] = sys.space.masses();
  json phi = json::array();
  for (std::size_t k = 0; k < sys.size(); ++k) phi.push_back(sys.map(k) + 1);
  doc["phi"] = phi;
  doc["u"] = sys.u;
  return doc;
}

MatrixOperator matrix_from_json(const json& doc) {
  if (!doc.contains("dim") || !doc["dim"].is_number_integer())
    throw input_error("matrix document needs an integer dim");
  Eigen::Index n = doc["dim"].get<Eigen::Index>();
  if (n < 1) throw input_error("dim must be >= 1");
  if (!doc.contains("entries") || !doc["entries"].is_array() ||
      doc["entries"].size() != static_cast<std::size_t>(n * n))
    throw input_error("entries must be a row-major array of dim^2 [re, im] "
                      "pairs");
  Eigen::MatrixXcd a(n, n);
  std::size_t idx = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j, ++idx) {
      const json& e = doc["entries"][idx];
      if (!e.is_array() || e.size() != 2)
        throw input_error("entry " + std::to_string(idx) +
                          " is not an [re, im] pair");
      a(i, j) = std::complex<double>(e[0].get<double>(), e[1].get<double>());
    }
  std::optional<Eigen::VectorXd> masses;
  if (doc.contains("masses")) {
    std::vector<double> m = positive_array(doc, "masses", true);
    if (m.size() != static_cast<std::size_t>(n))
      throw input_error("masses length must equal dim");
    masses = Eigen::Map<Eigen::VectorXd>(m.data(),
                                         static_cast<Eigen::Index>(m.size()));
  }
  return MatrixOperator(std::move(a), std::move(masses));
}

json matrix_to_json(const MatrixOperator& T) {
  json doc;
  doc["dim"] = T.dim();
  json entries = json::array();
  for (Eigen::Index i = 0; i < T.dim(); ++i)
    for (Eigen::Index j = 0; j < T.dim(); ++j)
      entries.push_back({T.entries()(i, j).real(), T.entries()(i, j).imag()});
  doc["entries"] = entries;
  if (T.masses()) {
    json m = json::array();
    for (Eigen::Index k = 0; k < T.masses()->size(); ++k)
      m.push_back((*T.masses())(k));
    doc["masses"] = m;
  }
  return doc;
}

std::string digest(const json& doc) {
  std::string s = doc.dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << "fnv1a:" << std::hex << h;
  return os.str();
}

json certificate_to_json(const Certificate& cert) {
  json doc;
  doc["kind"] = to_string(cert.kind);
  doc["theorem"] = cert.theorem;
  doc["witnesses"] = cert.witnesses;
  doc["scope"] = to_string(cert.scope);
  if (!cert.note.empty()) doc["note"] = cert.note;
  return doc;
}

Certificate certificate_from_json(const json& doc) {
  Certificate cert;
  cert.kind = certificate_kind_from_string(doc.at("kind").get<std::string>());
  cert.theorem = doc.at("theorem").get<std::string>();
  for (const auto& [key, value] : doc.at("witnesses").items())
    cert.witnesses[key] = value.get<double>();
  cert.scope = certificate_scope_from_string(doc.at("scope").get<std::string>());
  if (doc.contains("note")) cert.note = doc["note"].get<std::string>();
  return cert;
}

json system_report_to_json(const AnalysisReport& rep, const json& input) {
  json doc;
  doc["tool_version"] = kToolVersion;
  doc["input_digest"] = digest(input);
  doc["kind"] = "system";
  doc["J"] = real_function_to_json(rep.criterion.J);
  json jn = json::array();
  for (const auto& row : rep.jn_table) jn.push_back(real_function_to_json(row));
  doc["jn_table"] = jn;
  doc["support_u"] = support_to_json(rep.criterion.s_u);
  doc["support_J"] = support_to_json(rep.criterion.s_j);
  doc["criterion"] = real_function_to_json(rep.criterion.K);
  doc["lambda_min"] = lambda_to_json(rep.criterion.lambda_min);
  doc["delta"] = rep.closed_range.delta;
  doc["range_star_support"] = support_to_json(rep.range_support);
  doc["flags"] = {
      {"degenerate", rep.criterion.degenerate},
      {"preimage_invariant", rep.closed_range.preimage_invariant},
      {"closed_range_growth", rep.closed_range.growth_ok},
      {"closed_range_degenerate", rep.closed_range.degenerate},
      {"kernel_inclusion", rep.kernel_inclusion},
  };
  json table = json::array();
  for (const auto& row : rep.closed_range.table)
    table.push_back({{"n", row.n},
                     {"min_jn_on_sj", row.min_jn_on_sj},
                     {"bound", row.bound},
                     {"ok", row.ok}});
  doc["growth_table"] = table;
  json certs = json::array();
  for (const auto& cert : rep.certificates)
    certs.push_back(certificate_to_json(cert));
  doc["certificates"] = certs;
  return doc;
}

json matrix_report_to_json(const DenseAnalysis& rep, const json& input) {
  json doc;
  doc["tool_version"] = kToolVersion;
  doc["input_digest"] = digest(input);
  doc["kind"] = "matrix";
  doc["lambda_min"] = lambda_to_json(rep.lambda_min);
  doc["douglas"] = {
      {"feasible", rep.factorization.feasible},
      {"factor_norm", rep.factorization.factor_norm},
      {"implied_lambda", rep.factorization.implied_lambda},
  };
  json certs = json::array();
  for (const auto& cert : rep.certificates)
    certs.push_back(certificate_to_json(cert));
  doc["certificates"] = certs;
  return doc;
}

json continuous_report_to_json(const ContinuousReport& rep) {
  json doc;
  doc["tool_version"] = kToolVersion;
  doc["kind"] = "continuous";
  doc["h_at_quarter"] = rep.h_at_quarter;
  doc["max_cov_residual"] = rep.max_cov_residual;
  doc["max_identity_residual"] = rep.max_identity_residual;
  doc["criterion_max"] = rep.criterion_max;
  doc["criterion_max_stated"] = rep.criterion_max_stated;
  doc["criterion_ok"] = rep.criterion_ok;
  doc["j_candidates"] = {
      {"sqrt(x)/4", rep.dev_sqrt_form},
      {"x/2", rep.dev_linear_form},
  };
  doc["j_winner"] = rep.j_winner;
  doc["j_winner_deviation"] = rep.winner_dev;
  doc["ok"] = rep.ok;
  return doc;
}

bool reverify_report(const json& report, const json& input) {
  std::string kind = report.at("kind").get<std::string>();
  if (kind == "system") {
    LoadedSystem loaded = system_from_json(input);
    for (const auto& cj : report.at("certificates")) {
      Certificate cert = certificate_from_json(cj);
      if (!reverify_certificate(loaded.sys, cert, loaded.opts)) return false;
    }
    double lm = lambda_from_json(report.at("lambda_min"));
    CriterionResult crit =
        hyponormality_criterion(loaded.sys, loaded.opts.support_tol);
    if (std::isinf(lm) != std::isinf(crit.lambda_min)) return false;
    if (std::isfinite(lm) &&
        std::abs(lm - crit.lambda_min) > 1e-9 * std::max(1.0, lm))
      return false;
    return true;
  }
  if (kind == "matrix") {
    MatrixOperator T = matrix_from_json(input);
    double lm = lambda_from_json(report.at("lambda_min"));
    double now = minimal_lambda(T);
    if (std::isinf(lm) != std::isinf(now)) return false;
    if (std::isfinite(lm) && std::abs(lm - now) > 1e-6 * std::max(1.0, lm))
      return false;
    for (const auto& cj : report.at("certificates")) {
      Certificate cert = certificate_from_json(cj);
      if (cert.kind == CertificateKind::NotWeaklyHypercyclic ||
          cert.kind == CertificateKind::LambdaHyponormal) {
        auto it = cert.witnesses.find("lambda");
        if (it == cert.witnesses.end()) return false;
        if (cert.kind == CertificateKind::NotWeaklyHypercyclic &&
            !(it->second <= 1.0 + 1e-6))
          return false;
        if (cert.theorem != "theorem_2_6" &&
            std::abs(it->second - now) > 1e-6 * std::max(1.0, now))
          return false;
        if (cert.theorem == "theorem_2_6" &&
            !is_lambda_hyponormal(T, std::max(it->second, 1e-12), 1e-8))
          return false;
      }
    }
    return true;
  }
  throw input_error("unknown report kind: " + kind);
}

std::string render_text(const json& report) {
  std::ostringstream os;
  std::string kind = report.at("kind").get<std::string>();
  os << "report (" << kind << "), tool " << kToolVersion << "\n";
  if (report.contains("input_digest"))
    os << "input digest: " << report["input_digest"].get<std::string>() << "\n";

  auto dump_num = [](const json& j) { return j.dump(); };

  if (kind == "system") {
    os << "J = " << dump_num(report["J"]) << "\n";
    os << "S(u) = " << dump_num(report["support_u"])
       << "  S(J) = " << dump_num(report["support_J"]) << "\n";
    os << "criterion K = " << dump_num(report["criterion"]) << "\n";
    os << "lambda_min = " << dump_num(report["lambda_min"]) << "\n";
    os << "delta = " << dump_num(report["delta"]) << "\n";
    os << "flags = " << dump_num(report["flags"]) << "\n";
    os << "growth table:\n";
    for (const auto& row : report["growth_table"])
      os << "  n=" << row["n"] << "  min J_n|S(J) = " << dump_num(row["min_jn_on_sj"])
         << "  bound delta^n = " << dump_num(row["bound"])
         << (row["ok"].get<bool>() ? "  ok" : "  FAIL") << "\n";
  } else if (kind == "matrix") {
    os << "lambda_min = " << dump_num(report["lambda_min"]) << "\n";
    os << "douglas = " << dump_num(report["douglas"]) << "\n";
  } else if (kind == "continuous") {
    os << "h(0.25) = " << dump_num(report["h_at_quarter"]) << "\n";
    os << "max change-of-variables residual = "
       << dump_num(report["max_cov_residual"]) << "\n";
    os << "max pushforward identity residual = "
       << dump_num(report["max_identity_residual"]) << "\n";
    os << "criterion max (measured) = " << dump_num(report["criterion_max"])
       << "  (stated form) = " << dump_num(report["criterion_max_stated"])
       << "\n";
    os << "J closed-form match: " << report["j_winner"].get<std::string>()
       << " (deviation " << dump_num(report["j_winner_deviation"]) << "; "
       << "candidates " << dump_num(report["j_candidates"]) << ")\n";
    os << (report["ok"].get<bool>() ? "ok" : "NOT ok") << "\n";
  }
  if (report.contains("certificates")) {
    os << "certificates:\n";
    if (report["certificates"].empty()) os << "  (none; inconclusive)\n";
    for (const auto& cert : report["certificates"])
      os << "  " << cert["kind"].get<std::string>() << " ["
         << cert["theorem"].get<std::string>() << "] scope="
         << cert["scope"].get<std::string>() << " witnesses="
         << cert["witnesses"].dump() << "\n";
  }
  return os.str();
}

}  // namespace wco::io
