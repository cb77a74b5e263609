#include "wco/system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "wco/errors.hpp"

namespace wco {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Support support_rel(const RealFunction& f, double rel) {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::abs(v));
  return support_of(f, rel * m);
}

double support_rel_factor(double support_tol) {
  return support_tol < 0.0 ? 1e-12 : support_tol;
}

}  // namespace

const char* to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::NotWeaklyHypercyclic: return "NotWeaklyHypercyclic";
    case CertificateKind::WeaklyClosedOrbit: return "WeaklyClosedOrbit";
    case CertificateKind::ClosedRange: return "ClosedRange";
    case CertificateKind::LambdaHyponormal: return "LambdaHyponormal";
    case CertificateKind::NoLambdaExists: return "NoLambdaExists";
  }
  return "?";
}

const char* to_string(CertificateScope s) {
  switch (s) {
    case CertificateScope::ExactFinite: return "exact-finite";
    case CertificateScope::PrefixEvidence: return "prefix-evidence";
    case CertificateScope::FullWithTailBound: return "full-with-tail-bound";
  }
  return "?";
}

CertificateKind certificate_kind_from_string(const std::string& s) {
  if (s == "NotWeaklyHypercyclic") return CertificateKind::NotWeaklyHypercyclic;
  if (s == "WeaklyClosedOrbit") return CertificateKind::WeaklyClosedOrbit;
  if (s == "ClosedRange") return CertificateKind::ClosedRange;
  if (s == "LambdaHyponormal") return CertificateKind::LambdaHyponormal;
  if (s == "NoLambdaExists") return CertificateKind::NoLambdaExists;
  throw input_error("unknown certificate kind: " + s);
}

CertificateScope certificate_scope_from_string(const std::string& s) {
  if (s == "exact-finite") return CertificateScope::ExactFinite;
  if (s == "prefix-evidence") return CertificateScope::PrefixEvidence;
  if (s == "full-with-tail-bound") return CertificateScope::FullWithTailBound;
  throw input_error("unknown certificate scope: " + s);
}

WeightedCompositionSystem::WeightedCompositionSystem(DiscreteMeasureSpace s,
                                                    Transformation t,
                                                    RealFunction weight)
    : space(std::move(s)), map(std::move(t)), u(std::move(weight)) {
  if (map.size() != space.size() || u.size() != space.size())
    throw input_error("system components have mismatched lengths");
  for (std::size_t k = 0; k < u.size(); ++k)
    if (u[k] < 0.0 || !std::isfinite(u[k]))
      throw input_error("weight u_" + std::to_string(k + 1) +
                        " must be nonnegative and finite");
}

RealFunction apply_W(const WeightedCompositionSystem& sys,
                     const RealFunction& f) {
  if (f.size() != sys.size()) throw input_error("apply_W: length mismatch");
  RealFunction out(sys.size());
  for (std::size_t k = 0; k < sys.size(); ++k) out[k] = sys.u[k] * f[sys.map(k)];
  return out;
}

RealFunction apply_W_star(const WeightedCompositionSystem& sys,
                          const RealFunction& f) {
  if (f.size() != sys.size()) throw input_error("apply_W_star: length mismatch");
  RealFunction out(sys.size(), 0.0);
  for (std::size_t k = 0; k < sys.size(); ++k) {
    double s = 0.0;
    for (std::size_t j : sys.map.preimage(k))
      s += sys.u[j] * f[j] * sys.space.mass(j);
    out[k] = s / sys.space.mass(k);
  }
  return out;
}

RealFunction apply_WW_star(const WeightedCompositionSystem& sys,
                           const RealFunction& f) {
  if (f.size() != sys.size()) throw input_error("apply_WW_star: length mismatch");
  RealFunction h = radon_nikodym_h(sys.space, sys.map);
  RealFunction uf(sys.size());
  for (std::size_t k = 0; k < sys.size(); ++k) uf[k] = sys.u[k] * f[k];
  RealFunction e = conditional_expectation(sys.space, sys.map, uf);
  RealFunction out(sys.size());
  for (std::size_t k = 0; k < sys.size(); ++k)
    out[k] = sys.u[k] * h[sys.map(k)] * e[k];
  return out;
}

RealFunction compute_J(const WeightedCompositionSystem& sys) {
  RealFunction u2(sys.size());
  for (std::size_t k = 0; k < sys.size(); ++k) u2[k] = sys.u[k] * sys.u[k];
  return pushforward_density(sys.space, sys.map, u2);
}

RealFunction compute_modulus(const WeightedCompositionSystem& sys) {
  RealFunction j = compute_J(sys);
  for (double& v : j) v = std::sqrt(v);
  return j;
}

RealFunction compute_u_n(const WeightedCompositionSystem& sys, std::size_t n) {
  RealFunction out(sys.size(), 1.0);
  std::vector<std::size_t> pos(sys.size());
  for (std::size_t k = 0; k < sys.size(); ++k) pos[k] = k;
  for (std::size_t step = 0; step < n; ++step) {
    for (std::size_t k = 0; k < sys.size(); ++k) {
      out[k] *= sys.u[pos[k]];
      pos[k] = sys.map(pos[k]);
    }
  }
  return out;
}

RealFunction compute_Jn_recursive(const WeightedCompositionSystem& sys,
                                  std::size_t n) {
  if (n < 1) throw input_error("compute_Jn_recursive: n must be >= 1");
  RealFunction jn = compute_J(sys);
  for (std::size_t step = 2; step <= n; ++step) {
    RealFunction w(sys.size());
    for (std::size_t k = 0; k < sys.size(); ++k)
      w[k] = jn[k] * sys.u[k] * sys.u[k];
    jn = pushforward_density(sys.space, sys.map, w);
  }
  return jn;
}

RealFunction compute_Jn_direct(const WeightedCompositionSystem& sys,
                               std::size_t n) {
  if (n < 1) throw input_error("compute_Jn_direct: n must be >= 1");
  WeightedCompositionSystem power_sys(sys.space, sys.map.power(n),
                                      compute_u_n(sys, n));
  return compute_J(power_sys);
}

CriterionResult hyponormality_criterion(const WeightedCompositionSystem& sys,
                                        double support_tol) {
  double rel = support_rel_factor(support_tol);
  CriterionResult res;
  res.J = compute_J(sys);
  res.s_u = support_rel(sys.u, rel);
  res.s_j = support_rel(res.J, rel);
  res.K.assign(sys.size(), 0.0);

  if (res.s_u.empty()) {
    res.degenerate = true;
    res.lambda_min = 0.0;  // every lambda > 0 works for the zero operator
    return res;
  }
  if (!res.s_u.subset_of(res.s_j)) {
    for (std::size_t k : res.s_u.indices)
      if (!res.s_j.contains(k)) {
        res.violating_index = k;
        break;
      }
    res.lambda_min = kInf;
    return res;
  }

  RealFunction h = radon_nikodym_h(sys.space, sys.map);
  RealFunction q(sys.size(), 0.0);  // u^2/J on S(J), 0 elsewhere
  for (std::size_t k : res.s_j.indices) q[k] = sys.u[k] * sys.u[k] / res.J[k];
  RealFunction eq = conditional_expectation(sys.space, sys.map, q);

  double best = -kInf;
  for (std::size_t k : res.s_u.indices) {
    res.K[k] = h[sys.map(k)] * eq[k];
    if (res.K[k] > best) {
      best = res.K[k];
      res.max_index = k;
    }
  }
  res.lambda_min = best;

  // Trace equality of the induced T*T and TT* forces lambda_min >= 1 on any
  // nonzero finite system.
  if (res.lambda_min < 1.0 - 1e-10)
    throw oracle_error("criterion lambda_min " + std::to_string(res.lambda_min) +
                       " below the finite-dimensional floor 1");
  return res;
}

ClosedRangeResult closed_range_check(const WeightedCompositionSystem& sys,
                                     double support_tol, std::size_t max_n) {
  double rel = support_rel_factor(support_tol);
  ClosedRangeResult res;
  RealFunction j = compute_J(sys);
  Support sj = support_rel(j, rel);
  if (sj.empty()) {
    res.degenerate = true;
    res.growth_ok = true;  // vacuous
    res.preimage_invariant = true;
    return res;
  }
  res.delta = kInf;
  for (std::size_t k : sj.indices) res.delta = std::min(res.delta, j[k]);

  res.preimage_invariant = true;
  for (std::size_t k = 0; k < sys.size(); ++k)
    if (sj.contains(sys.map(k)) && !sj.contains(k)) {
      res.preimage_invariant = false;
      break;
    }

  res.growth_ok = true;
  RealFunction jn = j;
  double bound = res.delta;
  for (std::size_t n = 1; n <= max_n; ++n) {
    if (n > 1) {
      RealFunction w(sys.size());
      for (std::size_t k = 0; k < sys.size(); ++k)
        w[k] = jn[k] * sys.u[k] * sys.u[k];
      jn = pushforward_density(sys.space, sys.map, w);
      bound *= res.delta;
    }
    double mn = kInf;
    for (std::size_t k : sj.indices) mn = std::min(mn, jn[k]);
    bool ok = mn >= bound * (1.0 - 1e-12);
    res.table.push_back({n, mn, bound, ok});
    if (!ok) res.growth_ok = false;
  }
  return res;
}

bool kernel_inclusion_check(const WeightedCompositionSystem& sys,
                            double support_tol) {
  double rel = support_rel_factor(support_tol);
  Support su = support_rel(sys.u, rel);
  Support sj = support_rel(compute_J(sys), rel);
  return su.subset_of(sj);
}

Support range_star_support(const WeightedCompositionSystem& sys,
                           double support_tol) {
  double rel = support_rel_factor(support_tol);
  return support_rel(compute_J(sys), rel);
}

namespace {

std::optional<Certificate> make_hypercyclicity_cert(const CriterionResult& crit,
                                                    bool prefix_window,
                                                    bool tail_bound_asserted) {
  if (!(crit.lambda_min <= 1.0 + 1e-9)) return std::nullopt;
  Certificate cert;
  cert.kind = CertificateKind::NotWeaklyHypercyclic;
  cert.theorem = "corollary_3_6";
  cert.witnesses["lambda"] = crit.lambda_min;
  if (crit.max_index)
    cert.witnesses["max_index"] = static_cast<double>(*crit.max_index + 1);
  if (crit.degenerate) cert.witnesses["degenerate"] = 1.0;
  if (prefix_window && !tail_bound_asserted) {
    cert.scope = CertificateScope::PrefixEvidence;
    cert.note = "criterion verified on the prefix window only";
  } else if (prefix_window) {
    cert.scope = CertificateScope::FullWithTailBound;
    cert.note = "tail bound asserted by the user";
  } else {
    cert.scope = CertificateScope::ExactFinite;
  }
  return cert;
}

}  // namespace

std::optional<Certificate> hypercyclicity_certificate(
    const WeightedCompositionSystem& sys, double support_tol,
    bool prefix_window, bool tail_bound_asserted) {
  return make_hypercyclicity_cert(hyponormality_criterion(sys, support_tol),
                                  prefix_window, tail_bound_asserted);
}

AnalysisReport analyze(const WeightedCompositionSystem& sys,
                       const AnalysisOptions& opts) {
  AnalysisReport rep;
  rep.criterion = hyponormality_criterion(sys, opts.support_tol);
  rep.closed_range = closed_range_check(sys, opts.support_tol, opts.max_n);
  rep.kernel_inclusion = kernel_inclusion_check(sys, opts.support_tol);
  rep.range_support = rep.criterion.s_j;
  for (std::size_t n = 1; n <= opts.max_n; ++n)
    rep.jn_table.push_back(compute_Jn_recursive(sys, n));

  if (std::isinf(rep.criterion.lambda_min)) {
    Certificate cert;
    cert.kind = CertificateKind::NoLambdaExists;
    cert.theorem = "theorem_3_4";
    if (rep.criterion.violating_index)
      cert.witnesses["violating_index"] =
          static_cast<double>(*rep.criterion.violating_index + 1);
    rep.certificates.push_back(cert);
  } else if (!rep.criterion.degenerate) {
    Certificate cert;
    cert.kind = CertificateKind::LambdaHyponormal;
    cert.theorem = "theorem_3_5";
    cert.witnesses["lambda"] = rep.criterion.lambda_min;
    rep.certificates.push_back(cert);
  }

  if (!rep.closed_range.degenerate && rep.closed_range.preimage_invariant &&
      rep.closed_range.growth_ok) {
    Certificate cert;
    cert.kind = CertificateKind::ClosedRange;
    cert.theorem = "theorem_3_3";
    cert.witnesses["delta"] = rep.closed_range.delta;
    rep.certificates.push_back(cert);
  }

  if (auto cert = make_hypercyclicity_cert(rep.criterion, opts.prefix_window,
                                           opts.tail_bound_asserted))
    rep.certificates.push_back(*cert);
  return rep;
}

bool reverify_certificate(const WeightedCompositionSystem& sys,
                          const Certificate& cert,
                          const AnalysisOptions& opts) {
  auto close = [](double a, double b) {
    return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
  };
  switch (cert.kind) {
    case CertificateKind::NotWeaklyHypercyclic: {
      CriterionResult crit = hyponormality_criterion(sys, opts.support_tol);
      auto it = cert.witnesses.find("lambda");
      return crit.lambda_min <= 1.0 + 1e-9 && it != cert.witnesses.end() &&
             close(it->second, crit.lambda_min);
    }
    case CertificateKind::LambdaHyponormal: {
      CriterionResult crit = hyponormality_criterion(sys, opts.support_tol);
      auto it = cert.witnesses.find("lambda");
      return std::isfinite(crit.lambda_min) && it != cert.witnesses.end() &&
             close(it->second, crit.lambda_min);
    }
    case CertificateKind::NoLambdaExists: {
      CriterionResult crit = hyponormality_criterion(sys, opts.support_tol);
      if (!std::isinf(crit.lambda_min)) return false;
      auto it = cert.witnesses.find("violating_index");
      if (it == cert.witnesses.end()) return true;
      std::size_t k = static_cast<std::size_t>(it->second) - 1;
      return k < sys.size() && crit.s_u.contains(k) && !crit.s_j.contains(k);
    }
    case CertificateKind::ClosedRange: {
      ClosedRangeResult cr =
          closed_range_check(sys, opts.support_tol, opts.max_n);
      auto it = cert.witnesses.find("delta");
      return !cr.degenerate && cr.preimage_invariant && cr.growth_ok &&
             it != cert.witnesses.end() && close(it->second, cr.delta);
    }
    case CertificateKind::WeaklyClosedOrbit:
      return false;  // dense-operator certificate, not replayable on a system
  }
  return false;
}

}  // namespace wco
