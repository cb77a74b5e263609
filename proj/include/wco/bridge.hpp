#ifndef WCO_BRIDGE_HPP
#define WCO_BRIDGE_HPP

#include <random>
#include <string>

#include "wco/dense.hpp"
#include "wco/system.hpp"

namespace wco {

// W in standard coordinates through the isometry f -> sqrt(m) .* f:
// entry (k, phi(k)) = u_k * sqrt(m_k / m_phi(k)), zeros elsewhere.
MatrixOperator matrix_of_system(const WeightedCompositionSystem& sys);

struct LambdaAgreement {
  double criterion_lambda;
  double dense_lambda;
  bool both_infinite;
  bool degenerate;
};

// Compares the pointwise criterion lambda_min against the matrix-level PSD
// bisection. Throws oracle_error on disagreement.
LambdaAgreement xcheck_lambda(const WeightedCompositionSystem& sys,
                              double tol = 1e-6);

// Matrix-level T'T and TT' against the pointwise closed forms, on random
// test functions. Throws oracle_error on mismatch.
void xcheck_operator_formulas(const WeightedCompositionSystem& sys,
                              std::size_t trials, std::uint64_t seed);

struct KernelAgreement {
  bool support_inclusion;  // S(u) subset S(J)
  bool svd_inclusion;      // Ker(A) subset Ker(A') by SVD
  bool range_support_matches;  // coordinate support of R(A') == S(J)
};

// Lemma-level kernel and range-support answers vs SVD answers.
// Throws oracle_error on disagreement.
KernelAgreement xcheck_kernels(const WeightedCompositionSystem& sys,
                               double tol = 1e-8);

// Seeded random phi-invariant system: n <= max_points atoms, masses in
// [0.1, 10], u with roughly 20% exact zeros (never identically zero).
WeightedCompositionSystem random_system(std::mt19937_64& rng,
                                        std::size_t max_points = 12);

// Random dense complex operator with finite minimal lambda.
MatrixOperator random_operator(std::mt19937_64& rng, Eigen::Index max_dim = 10);

Eigen::VectorXcd random_unit_vector(std::mt19937_64& rng, Eigen::Index dim);

struct CorpusSummary {
  std::size_t count = 0;
  std::size_t passed = 0;
  std::string first_failure;        // empty when all passed
  std::string first_failure_input;  // serialized system for replay
};

// Runs all cross-checks over `count` seeded random systems.
CorpusSummary run_xcheck_corpus(std::uint64_t seed, std::size_t count,
                                double lambda_tol = 1e-6);

}  // namespace wco

#endif
