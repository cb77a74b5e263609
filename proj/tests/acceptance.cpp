// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned here on purpose; do not loosen them to
// make a run green.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "wco/bridge.hpp"
#include "wco/continuous.hpp"
#include "wco/examples.hpp"

using namespace wco;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

void report(int id, const char* name, bool ok, const std::string& detail) {
  if (!ok) ++failures;
  std::printf("[%s] %d %s%s%s\n", ok ? "PASS" : "FAIL", id, name,
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), f, a, b);
  return buf;
}

// -------------------------------------------------------------------------
// 1. lambda_n table: recursion exponents 3, 6, 10 at n = 3, 4, 5 and the
//    closed form (1/sqrt(lambda))^(n(n-1)/2) to 1e-12 for n <= 50, < 1 s.
void criterion_1() {
  Timer t;
  bool ok = true;
  std::string detail;
  for (double lambda : {0.25, 4.0}) {
    LambdaSequence seq = lambda_sequence(lambda, 50);
    double step = -0.5 * std::log(lambda);
    const double expect_exp[3] = {3.0, 6.0, 10.0};
    for (int i = 0; i < 3; ++i) {
      std::size_t n = static_cast<std::size_t>(i) + 3;
      double e = seq.log_values[n] / step;
      if (std::abs(e - expect_exp[i]) > 1e-9) {
        ok = false;
        detail = fmt("exponent at n=%.0f is %.12g", double(n), e);
      }
    }
    for (std::size_t n = 0; n <= 50 && ok; ++n) {
      double tn = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
      if (n == 0) tn = 0.0;
      double closed = tn * step;  // log of the closed form
      double err = std::abs(seq.log_values[n] - closed) /
                   std::max(1.0, std::abs(closed));
      if (err > 1e-12) {
        ok = false;
        detail = fmt("closed-form log mismatch %.3g at n=%.0f", err, double(n));
      }
    }
  }
  double sec = t.seconds();
  if (sec >= 1.0) {
    ok = false;
    detail = fmt("runtime %.2f s exceeds 1 s", sec);
  }
  report(1, "lambda_n recursion vs closed form", ok,
         ok ? fmt("n <= 50, both lambda, %.3f s", sec) : detail);
}

// -------------------------------------------------------------------------
// 2. Pointwise criterion lambda_min vs PSD bisection on 100 seeded random
//    systems within 1e-6 relative, including joint +inf. < 30 s.
void criterion_2(const std::vector<WeightedCompositionSystem>& corpus) {
  Timer t;
  bool ok = true;
  std::string detail;
  std::size_t infinite = 0;
  for (std::size_t i = 0; i < corpus.size() && ok; ++i) {
    try {
      LambdaAgreement a = xcheck_lambda(corpus[i], 1e-6);
      if (a.both_infinite) ++infinite;
    } catch (const oracle_error& e) {
      ok = false;
      detail = "system " + std::to_string(i) + ": " + e.what();
    }
  }
  double sec = t.seconds();
  if (sec >= 30.0) {
    ok = false;
    detail = fmt("runtime %.2f s exceeds 30 s", sec);
  }
  report(2, "criterion lambda vs PSD oracle on 100 systems", ok,
         ok ? fmt("%.0f joint-infinite cases, %.2f s", double(infinite), sec)
            : detail);
}

// -------------------------------------------------------------------------
// 3. J_n recursion vs direct to 1e-10 relative for n <= 6, and the norm
//    identity ||W^n f||^2 = sum J_n |f|^2 m to 1e-9 for 20 random f each.
void criterion_3(const std::vector<WeightedCompositionSystem>& corpus) {
  bool ok = true;
  std::string detail;
  std::mt19937_64 rng(3003);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (std::size_t i = 0; i < corpus.size() && ok; ++i) {
    const WeightedCompositionSystem& sys = corpus[i];
    std::vector<RealFunction> jn;
    for (std::size_t n = 1; n <= 6 && ok; ++n) {
      RealFunction rec = compute_Jn_recursive(sys, n);
      RealFunction dir = compute_Jn_direct(sys, n);
      jn.push_back(rec);
      double scale = 0.0;
      for (double v : rec) scale = std::max(scale, std::abs(v));
      for (std::size_t k = 0; k < rec.size(); ++k)
        if (std::abs(rec[k] - dir[k]) > 1e-10 * std::max(1.0, scale)) {
          ok = false;
          detail = "J_n mismatch, system " + std::to_string(i) +
                   ", n = " + std::to_string(n);
        }
    }
    for (int rep = 0; rep < 20 && ok; ++rep) {
      RealFunction f(sys.size());
      for (double& v : f) v = dist(rng);
      RealFunction wf = f;
      for (std::size_t n = 1; n <= 6 && ok; ++n) {
        wf = apply_W(sys, wf);
        double lhs = sys.space.inner(wf, wf);
        double rhs = 0.0;
        for (std::size_t k = 0; k < f.size(); ++k)
          rhs += jn[n - 1][k] * f[k] * f[k] * sys.space.mass(k);
        if (std::abs(lhs - rhs) > 1e-9 * std::max(1.0, std::abs(rhs))) {
          ok = false;
          detail = fmt("norm identity off by %.3g (system %.0f)",
                       std::abs(lhs - rhs), double(i));
        }
      }
    }
  }
  report(3, "J_n recursion = direct and the norm identity", ok, detail);
}

// -------------------------------------------------------------------------
// 4. On corpus systems with phi^{-1}(S(J)) subset S(J): J_n >= delta^n on
//    S(J) for n <= 10 with delta = min J over S(J), slack only 1e-12.
void criterion_4(const std::vector<WeightedCompositionSystem>& corpus) {
  bool ok = true;
  std::string detail;
  std::size_t qualifying = 0;
  for (std::size_t i = 0; i < corpus.size() && ok; ++i) {
    ClosedRangeResult res = closed_range_check(corpus[i], -1.0, 10);
    if (res.degenerate || !res.preimage_invariant) continue;
    ++qualifying;
    if (!res.growth_ok) {
      ok = false;
      detail = "growth bound failed on system " + std::to_string(i);
    }
    for (const GrowthRow& row : res.table)
      if (!row.ok) {
        ok = false;
        detail = "system " + std::to_string(i) +
                 fmt(": J_%.0f min %.6g below bound", double(row.n),
                     row.min_jn_on_sj);
      }
  }
  if (qualifying == 0) {
    ok = false;
    detail = "no preimage-invariant systems in the corpus";
  }
  report(4, "closed-range growth J_n >= delta^n, n <= 10", ok,
         ok ? fmt("%.0f qualifying systems", double(qualifying)) : detail);
}

// -------------------------------------------------------------------------
// 5. Kernel inclusion and range support: pointwise-support answers agree
//    with SVD null-space / column-support answers on all 100 systems.
void criterion_5(const std::vector<WeightedCompositionSystem>& corpus) {
  bool ok = true;
  std::string detail;
  for (std::size_t i = 0; i < corpus.size() && ok; ++i) {
    try {
      KernelAgreement k = xcheck_kernels(corpus[i]);
      if (!k.range_support_matches) {
        ok = false;
        detail = "range support mismatch on system " + std::to_string(i);
      }
    } catch (const oracle_error& e) {
      ok = false;
      detail = "system " + std::to_string(i) + ": " + e.what();
    }
  }
  report(5, "kernel/range support vs SVD on 100 systems", ok, detail);
}

// -------------------------------------------------------------------------
// 6. Orbit bound at lambda = minimal_lambda: 200 random (T, h), dim <= 10,
//    N = 20, multiplicative slack 1 - 1e-8. < 60 s.
void criterion_6() {
  Timer t;
  bool ok = true;
  std::string detail;
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 200 && ok; ++trial) {
    MatrixOperator T = random_operator(rng, 10);
    Eigen::VectorXcd h = random_unit_vector(rng, T.dim());
    double lambda = minimal_lambda(T);
    try {
      std::vector<OrbitBoundRow> rows = orbit_bound_check(T, h, lambda, 20,
                                                          1e-8);
      for (const OrbitBoundRow& row : rows)
        if (!row.ok) {
          ok = false;
          detail = fmt("trial %.0f: ||T^%.0f h|| below bound", double(trial),
                       double(row.n));
        }
    } catch (const input_error& e) {
      ok = false;
      detail = "trial " + std::to_string(trial) + ": " + e.what();
    }
  }
  double sec = t.seconds();
  if (sec >= 60.0) {
    ok = false;
    detail = fmt("runtime %.2f s exceeds 60 s", sec);
  }
  report(6, "orbit growth floor on 200 random (T, h)", ok,
         ok ? fmt("N = 20, %.2f s", sec) : detail);
}

// -------------------------------------------------------------------------
// 7. Finite-dimension sanity: nonzero operators have minimal_lambda >= 1
//    up to 1e-10, and factorization feasibility == finite minimal_lambda.
void criterion_7(const std::vector<WeightedCompositionSystem>& corpus) {
  bool ok = true;
  std::string detail;
  std::size_t checked = 0;
  auto check = [&](const MatrixOperator& T, const std::string& tag) {
    double lambda = minimal_lambda(T);
    bool zero = T.standard().norm() == 0.0;
    if (!zero && std::isfinite(lambda) && lambda < 1.0 - 1e-10) {
      ok = false;
      detail = tag + fmt(": minimal lambda %.12g below 1", lambda);
    }
    FactorizationResult fac = douglas_factor(T);
    if (fac.feasible != std::isfinite(lambda)) {
      ok = false;
      detail = tag + ": factorization feasibility vs finite lambda mismatch";
    }
    ++checked;
  };
  for (std::size_t i = 0; i < corpus.size() && ok; ++i)
    check(matrix_of_system(corpus[i]), "system " + std::to_string(i));
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 200 && ok; ++trial)
    check(random_operator(rng, 10), "dense trial " + std::to_string(trial));
  report(7, "lambda floor and factorization/lambda coincidence", ok,
         ok ? fmt("%.0f operators", double(checked)) : detail);
}

// -------------------------------------------------------------------------
// 8. Continuous worked example: h(1/4) = 1 exactly, change-of-variables
//    residuals < 1e-6 at 2^12 nodes, criterion <= 1 on the grid, and the
//    pushforward integral names the matching closed form within 1e-6.
void criterion_8() {
  bool ok = true;
  std::string detail;
  ContinuousReport rep = continuous_example_check({4096, 1e-6});
  if (rep.h_at_quarter != 1.0) {
    ok = false;
    detail = fmt("h(0.25) = %.17g", rep.h_at_quarter);
  }
  if (rep.max_cov_residual >= 1e-6) {
    ok = false;
    detail = fmt("change-of-variables residual %.3g", rep.max_cov_residual);
  }
  if (!rep.criterion_ok) {
    ok = false;
    detail = fmt("criterion max %.6g exceeds 1", rep.criterion_max);
  }
  if (rep.j_winner.empty() || rep.winner_dev >= 1e-6) {
    ok = false;
    detail = fmt("no closed form matches within 1e-6 (best %.3g)",
                 rep.winner_dev);
  }
  report(8, "continuous example reproduction", ok,
         ok ? "J matches " + rep.j_winner +
                  fmt(" (dev %.3g), criterion <= 1", rep.winner_dev)
            : detail);
}

// -------------------------------------------------------------------------
// 9. 200-point window of the pairing family: analysis emits a prefix-
//    evidence NotWeaklyHypercyclic certificate, upgraded to a full one
//    when the tail bound is asserted.
void criterion_9() {
  bool ok = true;
  std::string detail;
  WeightedCompositionSystem win = examples::discrete_window(200);

  auto find_nwh = [](const AnalysisReport& rep) -> const Certificate* {
    for (const Certificate& c : rep.certificates)
      if (c.kind == CertificateKind::NotWeaklyHypercyclic) return &c;
    return nullptr;
  };

  AnalysisOptions opts;
  opts.prefix_window = true;
  AnalysisReport rep = analyze(win, opts);
  const Certificate* cert = find_nwh(rep);
  if (!cert) {
    ok = false;
    detail = "no certificate emitted on the window";
  } else {
    if (cert->theorem != "corollary_3_6") {
      ok = false;
      detail = "certificate cites " + cert->theorem;
    }
    if (cert->scope != CertificateScope::PrefixEvidence) {
      ok = false;
      detail = "window certificate is not prefix evidence";
    }
  }

  opts.tail_bound_asserted = true;
  AnalysisReport full = analyze(win, opts);
  const Certificate* up = find_nwh(full);
  if (!up || up->scope != CertificateScope::FullWithTailBound) {
    ok = false;
    detail = "tail-bound assertion did not upgrade the certificate";
  }
  report(9, "window certificate with tail-bound upgrade", ok,
         ok ? "prefix evidence, then full with tail bound" : detail);
}

}  // namespace

int main() {
  std::vector<WeightedCompositionSystem> corpus;
  {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 100; ++i) corpus.push_back(random_system(rng, 12));
  }

  try {
    criterion_1();
    criterion_2(corpus);
    criterion_3(corpus);
    criterion_4(corpus);
    criterion_5(corpus);
    criterion_6();
    criterion_7(corpus);
    criterion_8();
    criterion_9();
  } catch (const std::exception& e) {
    std::printf("[FAIL] acceptance run aborted: %s\n", e.what());
    return 1;
  }

  std::printf("%s: %d of 9 criteria failed\n",
              failures ? "ACCEPTANCE FAILED" : "ACCEPTANCE OK", failures);
  return failures ? 1 : 0;
}
