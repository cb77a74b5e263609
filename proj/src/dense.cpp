#include "wco/dense.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace wco {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double min_eigenvalue(const Eigen::MatrixXcd& H) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H,
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double spectral_scale(const Eigen::MatrixXcd& A) {
  // largest eigenvalue of A'A, i.e. sigma_max^2
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
  double s = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  return s * s;
}

// PSD test for lambda * A'A - AA' in standard coordinates.
bool psd_at(const Eigen::MatrixXcd& A, double lambda, double tol,
            double scale) {
  Eigen::MatrixXcd H = lambda * (A.adjoint() * A) - A * A.adjoint();
  Eigen::MatrixXcd skew = H - H.adjoint();
  if (skew.norm() > 1e-10 * (H.norm() + 1.0))
    throw oracle_error("hyponormality test matrix lost hermiticity");
  H = 0.5 * (H + H.adjoint().eval());
  return min_eigenvalue(H) >= -tol * scale;
}

// R(A) subset of R(A'), i.e. Ker(A) subset of Ker(A').
bool range_inclusion_ok(const Eigen::MatrixXcd& A) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return true;  // zero operator
  double thresh = 1e-10 * sv(0);
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > thresh) continue;
    Eigen::VectorXcd v = svd.matrixV().col(i);  // Ker(A) basis vector
    if ((A.adjoint() * v).norm() > 1e-8 * sv(0)) return false;
  }
  return true;
}

}  // namespace

MatrixOperator::MatrixOperator(Eigen::MatrixXcd entries,
                               std::optional<Eigen::VectorXd> masses)
    : entries_(std::move(entries)), masses_(std::move(masses)) {
  if (entries_.rows() != entries_.cols())
    throw input_error("operator matrix must be square");
  if (entries_.rows() == 0) throw input_error("operator must have dim >= 1");
  if (masses_) {
    if (masses_->size() != entries_.rows())
      throw input_error("mass vector length does not match operator dim");
    for (Eigen::Index k = 0; k < masses_->size(); ++k)
      if (!((*masses_)(k) > 0.0))
        throw input_error("masses must be positive");
  }
}

Eigen::MatrixXcd MatrixOperator::standard() const {
  if (!masses_) return entries_;
  Eigen::MatrixXcd a = entries_;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      a(i, j) *= std::sqrt((*masses_)(i) / (*masses_)(j));
  return a;
}

Eigen::VectorXcd MatrixOperator::to_standard(const Eigen::VectorXcd& f) const {
  if (!masses_) return f;
  Eigen::VectorXcd g = f;
  for (Eigen::Index k = 0; k < g.size(); ++k) g(k) *= std::sqrt((*masses_)(k));
  return g;
}

Eigen::VectorXcd MatrixOperator::apply(const Eigen::VectorXcd& f) const {
  if (f.size() != dim()) throw input_error("apply: vector length mismatch");
  return entries_ * f;
}

std::complex<double> MatrixOperator::inner(const Eigen::VectorXcd& a,
                                           const Eigen::VectorXcd& b) const {
  if (a.size() != dim() || b.size() != dim())
    throw input_error("inner: vector length mismatch");
  std::complex<double> s = 0.0;
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    double m = masses_ ? (*masses_)(k) : 1.0;
    s += a(k) * std::conj(b(k)) * m;
  }
  return s;
}

double MatrixOperator::norm(const Eigen::VectorXcd& f) const {
  return std::sqrt(std::abs(inner(f, f)));
}

MatrixOperator adjoint(const MatrixOperator& T) {
  Eigen::MatrixXcd a = T.entries().adjoint();
  if (T.masses()) {
    const Eigen::VectorXd& m = *T.masses();
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) *= m(j) / m(i);
  }
  return MatrixOperator(std::move(a), T.masses());
}

bool is_lambda_hyponormal(const MatrixOperator& T, double lambda, double tol) {
  if (!(lambda > 0.0)) throw input_error("lambda must be positive");
  Eigen::MatrixXcd a = T.standard();
  return psd_at(a, lambda, tol, spectral_scale(a));
}

double minimal_lambda(const MatrixOperator& T, double tol) {
  Eigen::MatrixXcd a = T.standard();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  const auto& sv = svd.singularValues();
  double smax = sv.size() ? sv(0) : 0.0;
  if (smax == 0.0) return 0.0;  // zero operator: every lambda works

  if (!range_inclusion_ok(a)) return kInf;

  double scale = smax * smax;
  double psd_tol = 1e-10;
  if (psd_at(a, 1.0, psd_tol, scale)) return 1.0;

  double thresh = 1e-10 * smax;
  double smin_pos = smax;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > thresh) smin_pos = sv(i);
  double hi = 1.0 + (smax * smax) / (smin_pos * smin_pos);
  if (!psd_at(a, hi, psd_tol, scale)) return kInf;  // non-bracketing

  double lo = 1.0;
  for (int it = 0; it < 60 && (hi - lo) > tol * lo; ++it) {
    double mid = 0.5 * (lo + hi);
    if (psd_at(a, mid, psd_tol, scale))
      hi = mid;
    else
      lo = mid;
  }
  if (hi < 1.0 - 1e-10)
    throw oracle_error("minimal lambda below the finite-dimensional floor 1");
  return hi;
}

LambdaSequence lambda_sequence(double lambda, std::size_t N) {
  if (!(lambda > 0.0)) throw input_error("lambda must be positive");
  LambdaSequence seq;
  seq.lambda = lambda;
  double step = -0.5 * std::log(lambda);  // log(1/sqrt(lambda))
  double lg = 0.0;
  for (std::size_t n = 0; n <= N; ++n) {
    seq.log_values.push_back(lg);
    seq.values.push_back(std::exp(lg));
    lg += static_cast<double>(n) * step;  // lambda_{n+1} = lambda_n (1/sqrt)^n
  }
  return seq;
}

std::vector<double> orbit_norms(const MatrixOperator& T,
                                const Eigen::VectorXcd& h, std::size_t N) {
  if (h.size() != T.dim()) throw input_error("orbit vector length mismatch");
  if (h.norm() == 0.0) throw input_error("orbit vector must be nonzero");
  Eigen::MatrixXcd a = T.standard();
  Eigen::VectorXcd v = T.to_standard(h);
  std::vector<double> norms;
  for (std::size_t n = 0; n <= N; ++n) {
    norms.push_back(v.norm());
    v = a * v;
  }
  return norms;
}

std::vector<OrbitBoundRow> orbit_bound_check(const MatrixOperator& T,
                                             const Eigen::VectorXcd& h,
                                             double lambda, std::size_t N,
                                             double tol) {
  if (!is_lambda_hyponormal(T, lambda))
    throw input_error("operator is not lambda-hyponormal at lambda = " +
                      std::to_string(lambda) + "; minimal_lambda = " +
                      std::to_string(minimal_lambda(T)));
  std::vector<double> norms = orbit_norms(T, h, N);
  LambdaSequence seq = lambda_sequence(lambda, N);
  double log_h = std::log(norms[0]);
  double log_ratio = norms[1] > 0.0 ? std::log(norms[1]) - log_h : -kInf;
  std::vector<OrbitBoundRow> rows;
  for (std::size_t n = 0; n <= N; ++n) {
    double log_bound =
        log_h + seq.log_values[n] + static_cast<double>(n) * log_ratio;
    double bound = std::isinf(log_bound) ? 0.0 : std::exp(log_bound);
    bool ok = norms[n] >= bound * (1.0 - tol);
    rows.push_back({n, norms[n], bound, ok});
  }
  return rows;
}

std::optional<Certificate> growth_certificate(const std::vector<double>& norms,
                                              std::optional<double> c,
                                              double tol) {
  if (norms.size() < 2) return std::nullopt;
  double cc;
  if (c) {
    cc = *c;
  } else {
    cc = kInf;
    for (std::size_t n = 1; n < norms.size(); ++n)
      cc = std::min(cc, std::pow(norms[n], 1.0 / static_cast<double>(n)));
  }
  if (!(cc > 1.0)) return std::nullopt;
  for (std::size_t n = 1; n < norms.size(); ++n)
    if (norms[n] < std::pow(cc, static_cast<double>(n)) * (1.0 - tol))
      return std::nullopt;
  Certificate cert;
  cert.kind = CertificateKind::WeaklyClosedOrbit;
  cert.theorem = "lemma_2_1";
  cert.witnesses["c"] = cc;
  cert.witnesses["checked_n"] = static_cast<double>(norms.size() - 1);
  return cert;
}

std::optional<Certificate> weakly_closed_orbit_certificate(
    const MatrixOperator& T, const Eigen::VectorXcd& h, double tol) {
  double lambda = minimal_lambda(T);
  if (!(lambda <= 1.0 + tol)) return std::nullopt;
  double nh = T.norm(h);
  if (nh == 0.0) throw input_error("orbit vector must be nonzero");
  double nth = T.norm(T.apply(h));
  if (!(nth > nh * (1.0 + tol))) return std::nullopt;
  Certificate cert;
  cert.kind = CertificateKind::WeaklyClosedOrbit;
  cert.theorem = "proposition_2_3";
  cert.witnesses["lambda"] = lambda;
  cert.witnesses["c"] = nth / nh;
  return cert;
}

std::optional<Certificate> not_weakly_hypercyclic_certificate(
    const MatrixOperator& T, double tol) {
  double lambda = minimal_lambda(T);
  if (!(lambda <= 1.0 + tol)) return std::nullopt;
  Certificate cert;
  cert.kind = CertificateKind::NotWeaklyHypercyclic;
  cert.theorem = "theorem_2_4";
  cert.witnesses["lambda"] = lambda;
  if (lambda == 0.0) cert.witnesses["degenerate"] = 1.0;
  return cert;
}

FactorizationResult douglas_factor(const MatrixOperator& T, double tol) {
  FactorizationResult res;
  Eigen::MatrixXcd a = T.standard();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double smax = sv.size() ? sv(0) : 0.0;
  Eigen::Index n = a.rows();

  if (smax == 0.0) {  // zero operator: C = 0 works
    res.feasible = true;
    res.factor = Eigen::MatrixXcd::Zero(n, n);
    res.factor_norm = 0.0;
    res.implied_lambda = 0.0;
    Certificate cert;
    cert.kind = CertificateKind::NotWeaklyHypercyclic;
    cert.theorem = "theorem_2_6";
    cert.witnesses["lambda"] = 0.0;
    cert.witnesses["degenerate"] = 1.0;
    res.certificate = cert;
    return res;
  }

  if (!range_inclusion_ok(a)) {
    res.feasible = false;
    // witness: the column of A with the largest component outside R(A')
    double thresh = 1e-10 * smax;
    Eigen::MatrixXcd proj = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > thresh)
        proj += svd.matrixV().col(i) * svd.matrixV().col(i).adjoint();
    double worst = -1.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      double r = (a.col(j) - proj * a.col(j)).norm();
      if (r > worst) {
        worst = r;
        res.violating = a.col(j);
      }
    }
    return res;
  }

  // minimal-norm solution of A' C = A: C = pinv(A') A
  double thresh = 1e-10 * smax;
  Eigen::MatrixXcd pinv_adj = Eigen::MatrixXcd::Zero(n, n);
  // A' = V S U', so pinv(A') = U S^+ V'
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > thresh)
      pinv_adj +=
          svd.matrixU().col(i) * svd.matrixV().col(i).adjoint() / sv(i);
  Eigen::MatrixXcd c = pinv_adj * a;

  double resid = (a.adjoint() * c - a).norm();
  if (resid > tol * a.norm())
    throw oracle_error("factorization residual " + std::to_string(resid) +
                       " exceeds tolerance despite range inclusion");

  Eigen::JacobiSVD<Eigen::MatrixXcd> csvd(c);
  res.feasible = true;
  res.factor = c;
  res.factor_norm = csvd.singularValues().size() ? csvd.singularValues()(0)
                                                 : 0.0;
  res.implied_lambda = res.factor_norm * res.factor_norm;

  if (res.factor_norm <= 1.0 + tol) {
    if (!psd_at(a, std::max(res.implied_lambda, 1e-300), 1e-8, smax * smax))
      throw oracle_error(
          "contraction factor found but PSD check fails at lambda = ||C||^2");
    Certificate cert;
    cert.kind = CertificateKind::NotWeaklyHypercyclic;
    cert.theorem = "theorem_2_6";
    cert.witnesses["lambda"] = res.implied_lambda;
    cert.witnesses["factor_norm"] = res.factor_norm;
    res.certificate = cert;
  }
  return res;
}

DenseAnalysis analyze_operator(const MatrixOperator& T, double tol) {
  DenseAnalysis out;
  out.lambda_min = minimal_lambda(T, tol);
  out.factorization = douglas_factor(T, tol);
  if (out.factorization.feasible != std::isfinite(out.lambda_min))
    throw oracle_error(
        "factorization feasibility disagrees with minimal lambda");
  if (std::isfinite(out.lambda_min) && out.lambda_min > 0.0) {
    Certificate cert;
    cert.kind = CertificateKind::LambdaHyponormal;
    cert.theorem = "definition_2";
    cert.witnesses["lambda"] = out.lambda_min;
    out.certificates.push_back(cert);
  }
  if (auto cert = not_weakly_hypercyclic_certificate(T))
    out.certificates.push_back(*cert);
  if (out.factorization.certificate &&
      !(out.factorization.certificate->witnesses.count("degenerate")))
    out.certificates.push_back(*out.factorization.certificate);
  return out;
}

}  // namespace wco
