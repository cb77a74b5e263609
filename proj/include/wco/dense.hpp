#ifndef WCO_DENSE_HPP
#define WCO_DENSE_HPP

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "wco/certificate.hpp"
#include "wco/errors.hpp"

namespace wco {

// Dense complex operator on C^n, optionally with a mass-weighted inner
// product <a,b> = sum a_k conj(b_k) m_k. All spectral work happens in
// standard coordinates via the isometry f -> sqrt(m) .* f.
class MatrixOperator {
 public:
  explicit MatrixOperator(Eigen::MatrixXcd entries,
                          std::optional<Eigen::VectorXd> masses = std::nullopt);

  Eigen::Index dim() const { return entries_.rows(); }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  const std::optional<Eigen::VectorXd>& masses() const { return masses_; }

  // The operator's matrix in standard coordinates.
  Eigen::MatrixXcd standard() const;
  // Transport a vector into / out of standard coordinates.
  Eigen::VectorXcd to_standard(const Eigen::VectorXcd& f) const;

  Eigen::VectorXcd apply(const Eigen::VectorXcd& f) const;
  std::complex<double> inner(const Eigen::VectorXcd& a,
                             const Eigen::VectorXcd& b) const;
  double norm(const Eigen::VectorXcd& f) const;

 private:
  Eigen::MatrixXcd entries_;
  std::optional<Eigen::VectorXd> masses_;
};

// Adjoint with respect to the (possibly weighted) inner product.
MatrixOperator adjoint(const MatrixOperator& T);

// True iff lambda * T'T - TT' is PSD up to tol relative to the spectral
// scale of T'T.
bool is_lambda_hyponormal(const MatrixOperator& T, double lambda,
                          double tol = 1e-10);

// Smallest lambda with lambda * T'T >= TT', or +inf when the range
// condition R(T) subset R(T') fails. Zero operator reports 0.
double minimal_lambda(const MatrixOperator& T, double tol = 1e-8);

// lambda_0 = lambda_1 = 1, lambda_{n+1} = lambda_n * (1/sqrt(lambda))^n;
// closed form lambda_n = (1/sqrt(lambda))^(n(n-1)/2). log_values carries
// the sequence exactly even where the plain doubles over/underflow.
struct LambdaSequence {
  double lambda;
  std::vector<double> values;
  std::vector<double> log_values;
};

LambdaSequence lambda_sequence(double lambda, std::size_t N);

// ||T^n h|| for n = 0..N in the operator's inner product.
std::vector<double> orbit_norms(const MatrixOperator& T,
                                const Eigen::VectorXcd& h, std::size_t N);

struct OrbitBoundRow {
  std::size_t n;
  double norm;
  double bound;  // ||h|| * lambda_n * (||Th||/||h||)^n
  bool ok;
};

// Verifies the orbit growth floor at a certified lambda. Throws input_error
// if T is not lambda-hyponormal at the given lambda.
std::vector<OrbitBoundRow> orbit_bound_check(const MatrixOperator& T,
                                             const Eigen::VectorXcd& h,
                                             double lambda, std::size_t N,
                                             double tol = 1e-8);

// Geometric growth certificate: norms[n] >= c^n for all n >= 1 with c > 1.
// When c is not supplied, c = min_n norms[n]^(1/n) and must exceed 1.
std::optional<Certificate> growth_certificate(const std::vector<double>& norms,
                                              std::optional<double> c,
                                              double tol = 1e-12);

// Fires when minimal_lambda(T) <= 1 and ||Th|| > ||h||.
std::optional<Certificate> weakly_closed_orbit_certificate(
    const MatrixOperator& T, const Eigen::VectorXcd& h, double tol = 1e-9);

// Fires when minimal_lambda(T) <= 1 + tol.
std::optional<Certificate> not_weakly_hypercyclic_certificate(
    const MatrixOperator& T, double tol = 1e-9);

struct FactorizationResult {
  bool feasible = false;
  Eigen::MatrixXcd factor;      // C with T = T' C, minimal-norm solution
  double factor_norm = 0.0;     // ||C||
  double implied_lambda = 0.0;  // ||C||^2
  std::optional<Certificate> certificate;  // when ||C|| <= 1
  Eigen::VectorXcd violating;   // vector of R(T) escaping R(T') if infeasible
};

FactorizationResult douglas_factor(const MatrixOperator& T, double tol = 1e-8);

// Bundle for reporting on a general dense operator.
struct DenseAnalysis {
  double lambda_min = 0.0;
  FactorizationResult factorization;
  std::vector<Certificate> certificates;
};

DenseAnalysis analyze_operator(const MatrixOperator& T, double tol = 1e-8);

}  // namespace wco

#endif
