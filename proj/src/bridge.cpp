#include "wco/bridge.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wco {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::VectorXcd to_vec(const RealFunction& f) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(f.size()));
  for (std::size_t k = 0; k < f.size(); ++k)
    v(static_cast<Eigen::Index>(k)) = f[k];
  return v;
}

std::string describe_system(const WeightedCompositionSystem& sys) {
  std::ostringstream os;
  os << "{\"masses\":[";
  for (std::size_t k = 0; k < sys.size(); ++k)
    os << (k ? "," : "") << sys.space.mass(k);
  os << "],\"phi\":[";
  for (std::size_t k = 0; k < sys.size(); ++k)
    os << (k ? "," : "") << (sys.map(k) + 1);
  os << "],\"u\":[";
  for (std::size_t k = 0; k < sys.size(); ++k)
    os << (k ? "," : "") << sys.u[k];
  os << "]}";
  return os.str();
}

}  // namespace

MatrixOperator matrix_of_system(const WeightedCompositionSystem& sys) {
  Eigen::Index n = static_cast<Eigen::Index>(sys.size());
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t k = 0; k < sys.size(); ++k) {
    std::size_t j = sys.map(k);
    a(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) =
        sys.u[k] * std::sqrt(sys.space.mass(k) / sys.space.mass(j));
  }
  return MatrixOperator(std::move(a));
}

LambdaAgreement xcheck_lambda(const WeightedCompositionSystem& sys,
                              double tol) {
  CriterionResult crit = hyponormality_criterion(sys);
  double dense = minimal_lambda(matrix_of_system(sys), 1e-9);
  LambdaAgreement res;
  res.criterion_lambda = crit.lambda_min;
  res.dense_lambda = dense;
  res.degenerate = crit.degenerate;
  res.both_infinite = std::isinf(crit.lambda_min) && std::isinf(dense);
  if (std::isinf(crit.lambda_min) != std::isinf(dense))
    throw oracle_error("lambda disagreement: criterion = " +
                       std::to_string(crit.lambda_min) + ", dense = " +
                       std::to_string(dense));
  if (!res.both_infinite &&
      std::abs(crit.lambda_min - dense) >
          tol * std::max(1.0, std::abs(crit.lambda_min)))
    throw oracle_error("lambda disagreement: criterion = " +
                       std::to_string(crit.lambda_min) + ", dense = " +
                       std::to_string(dense));
  return res;
}

void xcheck_operator_formulas(const WeightedCompositionSystem& sys,
                              std::size_t trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  MatrixOperator bridge = matrix_of_system(sys);
  Eigen::MatrixXcd a = bridge.entries();
  RealFunction j = compute_J(sys);
  std::vector<double> sqm(sys.size());
  for (std::size_t k = 0; k < sys.size(); ++k)
    sqm[k] = std::sqrt(sys.space.mass(k));

  for (std::size_t t = 0; t < trials; ++t) {
    RealFunction f(sys.size());
    for (double& v : f) v = dist(rng);
    Eigen::VectorXcd ft = to_vec(f);
    for (std::size_t k = 0; k < sys.size(); ++k)
      ft(static_cast<Eigen::Index>(k)) *= sqm[k];

    // T'T f vs J .* f
    Eigen::VectorXcd tt = a.adjoint() * (a * ft);
    double scale = std::max(1.0, tt.norm());
    for (std::size_t k = 0; k < sys.size(); ++k) {
      double back = std::real(tt(static_cast<Eigen::Index>(k))) / sqm[k];
      if (std::abs(back - j[k] * f[k]) > 1e-11 * scale)
        throw oracle_error("W*W disagrees with multiplication by J at atom " +
                           std::to_string(k + 1));
    }

    // TT' f vs explicit u (h o phi) E(u f), vs the composition W(W* f)
    Eigen::VectorXcd ss = a * (a.adjoint() * ft);
    RealFunction explicit_form = apply_WW_star(sys, f);
    RealFunction composed = apply_W(sys, apply_W_star(sys, f));
    double scale2 = std::max(1.0, ss.norm());
    for (std::size_t k = 0; k < sys.size(); ++k) {
      double back = std::real(ss(static_cast<Eigen::Index>(k))) / sqm[k];
      if (std::abs(back - explicit_form[k]) > 1e-11 * scale2 ||
          std::abs(back - composed[k]) > 1e-11 * scale2)
        throw oracle_error("WW* closed form disagrees at atom " +
                           std::to_string(k + 1));
    }
  }
}

KernelAgreement xcheck_kernels(const WeightedCompositionSystem& sys,
                               double tol) {
  KernelAgreement res;
  res.support_inclusion = kernel_inclusion_check(sys);

  Eigen::MatrixXcd a = matrix_of_system(sys).entries();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double smax = sv.size() ? sv(0) : 0.0;
  double thresh = smax > 0.0 ? 1e-10 * smax : 0.0;

  res.svd_inclusion = true;
  if (smax > 0.0) {
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
      if (sv(i) > thresh) continue;
      Eigen::VectorXcd v = svd.matrixV().col(i);
      if ((a.adjoint() * v).norm() > tol * smax) {
        res.svd_inclusion = false;
        break;
      }
    }
  }
  if (res.support_inclusion != res.svd_inclusion)
    throw oracle_error("kernel inclusion disagreement on system " +
                       describe_system(sys));

  // Coordinate support of R(A') = Ker(A)^perp vs S(J). In standard
  // coordinates row supports coincide with the mu-coordinate ones.
  Support sj = range_star_support(sys);
  std::vector<bool> in_range(sys.size(), false);
  if (smax > 0.0) {
    for (std::size_t k = 0; k < sys.size(); ++k) {
      double row = 0.0;
      for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > thresh)
          row += std::norm(svd.matrixV()(static_cast<Eigen::Index>(k), i));
      in_range[k] = std::sqrt(row) > tol;
    }
  }
  res.range_support_matches = true;
  for (std::size_t k = 0; k < sys.size(); ++k)
    if (in_range[k] != sj.contains(k)) {
      res.range_support_matches = false;
      break;
    }
  if (!res.range_support_matches)
    throw oracle_error("range support disagreement on system " +
                       describe_system(sys));
  return res;
}

WeightedCompositionSystem random_system(std::mt19937_64& rng,
                                        std::size_t max_points) {
  std::uniform_int_distribution<std::size_t> ndist(2, max_points);
  std::uniform_real_distribution<double> mdist(0.1, 10.0);
  std::uniform_real_distribution<double> udist(0.1, 2.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (;;) {
    std::size_t n = ndist(rng);
    std::vector<double> masses(n), u(n);
    std::vector<std::size_t> phi(n);
    std::uniform_int_distribution<std::size_t> idist(0, n - 1);
    // half the corpus uses a permutation phi and mostly positive u so that
    // finite-lambda cases stay well represented; arbitrary phi with ~20%
    // zero weights covers the +inf and degenerate-support side.
    bool bijective = coin(rng) < 0.5;
    double zero_rate = bijective ? 0.05 : 0.2;
    if (bijective) {
      for (std::size_t k = 0; k < n; ++k) phi[k] = k;
      std::shuffle(phi.begin(), phi.end(), rng);
    }
    bool any_u = false;
    for (std::size_t k = 0; k < n; ++k) {
      masses[k] = mdist(rng);
      if (!bijective) phi[k] = idist(rng);
      u[k] = coin(rng) < zero_rate ? 0.0 : udist(rng);
      any_u = any_u || u[k] > 0.0;
    }
    if (!any_u) continue;
    return WeightedCompositionSystem(DiscreteMeasureSpace(std::move(masses)),
                                     Transformation(std::move(phi)),
                                     std::move(u));
  }
}

MatrixOperator random_operator(std::mt19937_64& rng, Eigen::Index max_dim) {
  std::uniform_int_distribution<Eigen::Index> ndist(2, max_dim);
  std::normal_distribution<double> g(0.0, 1.0);
  for (;;) {
    Eigen::Index n = ndist(rng);
    Eigen::MatrixXcd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        a(i, j) = std::complex<double>(g(rng), g(rng));
    MatrixOperator T(std::move(a));
    if (std::isfinite(minimal_lambda(T))) return T;
  }
}

Eigen::VectorXcd random_unit_vector(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> g(0.0, 1.0);
  for (;;) {
    Eigen::VectorXcd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i)
      v(i) = std::complex<double>(g(rng), g(rng));
    double n = v.norm();
    if (n > 1e-6) return v / n;
  }
}

CorpusSummary run_xcheck_corpus(std::uint64_t seed, std::size_t count,
                                double lambda_tol) {
  CorpusSummary summary;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    WeightedCompositionSystem sys = random_system(rng);
    ++summary.count;
    try {
      xcheck_lambda(sys, lambda_tol);
      xcheck_operator_formulas(sys, 3, seed ^ (i * 0x9e3779b97f4a7c15ULL));
      xcheck_kernels(sys);

      // n-step multiplier identity ||W^n f||^2 = sum J_n |f|^2 m
      std::uniform_real_distribution<double> dist(-1.0, 1.0);
      for (std::size_t n = 1; n <= 6; ++n) {
        RealFunction jn_r = compute_Jn_recursive(sys, n);
        RealFunction jn_d = compute_Jn_direct(sys, n);
        double scale = 1.0;
        for (double v : jn_r) scale = std::max(scale, std::abs(v));
        for (std::size_t k = 0; k < sys.size(); ++k)
          if (std::abs(jn_r[k] - jn_d[k]) > 1e-10 * scale)
            throw oracle_error("J_n recursive/direct mismatch at n = " +
                               std::to_string(n));
        RealFunction f(sys.size());
        for (double& v : f) v = dist(rng);
        RealFunction wf = f;
        for (std::size_t s = 0; s < n; ++s) wf = apply_W(sys, wf);
        double lhs = sys.space.inner(wf, wf);
        double rhs = 0.0;
        for (std::size_t k = 0; k < sys.size(); ++k)
          rhs += jn_r[k] * f[k] * f[k] * sys.space.mass(k);
        if (std::abs(lhs - rhs) > 1e-9 * std::max(1.0, std::abs(lhs)))
          throw oracle_error("||W^n f||^2 identity fails at n = " +
                             std::to_string(n));
      }
      ++summary.passed;
    } catch (const std::exception& e) {
      if (summary.first_failure.empty()) {
        summary.first_failure = e.what();
        summary.first_failure_input = describe_system(sys);
      }
    }
  }
  return summary;
}

}  // namespace wco
