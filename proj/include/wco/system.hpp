#ifndef WCO_SYSTEM_HPP
#define WCO_SYSTEM_HPP

#include <optional>
#include <vector>

#include "wco/certificate.hpp"
#include "wco/measure.hpp"

namespace wco {

// W = M_u C_phi on l^2(mu): (Wf)(k) = u_k * f(phi(k)), u >= 0.
struct WeightedCompositionSystem {
  DiscreteMeasureSpace space;
  Transformation map;
  RealFunction u;

  WeightedCompositionSystem(DiscreteMeasureSpace s, Transformation t,
                            RealFunction weight);
  std::size_t size() const { return space.size(); }
};

RealFunction apply_W(const WeightedCompositionSystem& sys,
                     const RealFunction& f);
RealFunction apply_W_star(const WeightedCompositionSystem& sys,
                          const RealFunction& f);
// Explicit closed form u * (h o phi) * E(u f); not the composition W(W* f).
RealFunction apply_WW_star(const WeightedCompositionSystem& sys,
                           const RealFunction& f);

// J = multiplier of W*W: pushforward density of u^2 dmu.
RealFunction compute_J(const WeightedCompositionSystem& sys);
// sqrt(J), the multiplier of |W|.
RealFunction compute_modulus(const WeightedCompositionSystem& sys);

// u_n(k) = u(k) u(phi k) ... u(phi^{n-1} k); n = 0 gives the constant 1.
RealFunction compute_u_n(const WeightedCompositionSystem& sys, std::size_t n);

// J_n by the one-step recursion J_n = pushforward(J_{n-1} u^2), J_1 = J.
RealFunction compute_Jn_recursive(const WeightedCompositionSystem& sys,
                                  std::size_t n);
// J_n as the J of the system (space, phi^n, u_n).
RealFunction compute_Jn_direct(const WeightedCompositionSystem& sys,
                               std::size_t n);

// Pointwise lambda-hyponormality criterion: K(k) = h(phi(k)) * E(u^2/J)(k)
// on S(u); lambda_min = max K over S(u), or +inf when S(u) is not contained
// in S(J).
struct CriterionResult {
  RealFunction J;
  Support s_u;
  Support s_j;
  RealFunction K;  // zero off S(u)
  double lambda_min = 0.0;  // +inf when no lambda exists; 0 when degenerate
  bool degenerate = false;  // u identically zero
  std::optional<std::size_t> violating_index;  // a point of S(u) \ S(J)
  std::optional<std::size_t> max_index;        // argmax of K over S(u)
};

// support_tol < 0 selects the default threshold per function.
CriterionResult hyponormality_criterion(const WeightedCompositionSystem& sys,
                                        double support_tol = -1.0);

struct GrowthRow {
  std::size_t n;
  double min_jn_on_sj;
  double bound;  // delta^n
  bool ok;
};

struct ClosedRangeResult {
  bool degenerate = false;  // S(J) empty, W = 0
  double delta = 0.0;       // min J over S(J)
  bool preimage_invariant = false;  // phi^{-1}(S(J)) subset of S(J)
  bool growth_ok = false;
  std::vector<GrowthRow> table;
};

ClosedRangeResult closed_range_check(const WeightedCompositionSystem& sys,
                                     double support_tol = -1.0,
                                     std::size_t max_n = 6);

// Ker(W) subset of Ker(W*), decided by S(u) subset of S(J).
bool kernel_inclusion_check(const WeightedCompositionSystem& sys,
                            double support_tol = -1.0);

// S(J) = coordinate support of closure(R(W*)).
Support range_star_support(const WeightedCompositionSystem& sys,
                           double support_tol = -1.0);

// Non-hypercyclicity certificate: fires iff lambda_min <= 1 (boundary
// included). Scope records whether the system is exact or a prefix window.
std::optional<Certificate> hypercyclicity_certificate(
    const WeightedCompositionSystem& sys, double support_tol = -1.0,
    bool prefix_window = false, bool tail_bound_asserted = false);

// Full analysis bundle for reporting.
struct AnalysisReport {
  CriterionResult criterion;
  ClosedRangeResult closed_range;
  bool kernel_inclusion = false;
  Support range_support;
  std::vector<RealFunction> jn_table;  // J_1 .. J_max_n
  std::vector<Certificate> certificates;
};

struct AnalysisOptions {
  double support_tol = -1.0;
  std::size_t max_n = 6;
  bool prefix_window = false;
  bool tail_bound_asserted = false;
};

AnalysisReport analyze(const WeightedCompositionSystem& sys,
                       const AnalysisOptions& opts = {});

// Replays a certificate's witnesses through the checkers.
bool reverify_certificate(const WeightedCompositionSystem& sys,
                          const Certificate& cert,
                          const AnalysisOptions& opts = {});

}  // namespace wco

#endif
