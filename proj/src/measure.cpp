#include "wco/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wco {

namespace {
void check_length(const DiscreteMeasureSpace& space, const RealFunction& f,
                  const char* what) {
  if (f.size() != space.size())
    throw input_error(std::string(what) + ": length " +
                      std::to_string(f.size()) + " does not match space size " +
                      std::to_string(space.size()));
}
}  // namespace

DiscreteMeasureSpace::DiscreteMeasureSpace(std::vector<double> masses)
    : masses_(std::move(masses)) {
  if (masses_.empty()) throw input_error("measure space needs at least one atom");
  for (std::size_t k = 0; k < masses_.size(); ++k) {
    if (!(masses_[k] > 0.0) || !std::isfinite(masses_[k]))
      throw input_error("atom mass m_" + std::to_string(k + 1) +
                        " must be positive and finite");
  }
}

double DiscreteMeasureSpace::total_mass() const {
  return std::accumulate(masses_.begin(), masses_.end(), 0.0);
}

double DiscreteMeasureSpace::inner(const RealFunction& f,
                                   const RealFunction& g) const {
  check_length(*this, f, "inner");
  check_length(*this, g, "inner");
  double s = 0.0;
  for (std::size_t k = 0; k < masses_.size(); ++k) s += f[k] * g[k] * masses_[k];
  return s;
}

double DiscreteMeasureSpace::norm(const RealFunction& f) const {
  return std::sqrt(inner(f, f));
}

Transformation::Transformation(std::vector<std::size_t> phi)
    : phi_(std::move(phi)) {
  if (phi_.empty()) throw input_error("transformation on empty window");
  preimages_.resize(phi_.size());
  for (std::size_t k = 0; k < phi_.size(); ++k) {
    if (phi_[k] >= phi_.size())
      throw invariant_error("phi(" + std::to_string(k + 1) + ") = " +
                            std::to_string(phi_[k] + 1) +
                            " escapes the window of size " +
                            std::to_string(phi_.size()));
    preimages_[phi_[k]].push_back(k);
  }
}

Transformation Transformation::power(std::size_t n) const {
  std::vector<std::size_t> p(phi_.size());
  std::iota(p.begin(), p.end(), 0);
  for (std::size_t step = 0; step < n; ++step)
    for (std::size_t k = 0; k < p.size(); ++k) p[k] = phi_[p[k]];
  return Transformation(std::move(p));
}

bool Support::contains(std::size_t k) const {
  return std::binary_search(indices.begin(), indices.end(), k);
}

bool Support::subset_of(const Support& other) const {
  return std::includes(other.indices.begin(), other.indices.end(),
                       indices.begin(), indices.end());
}

double default_support_tol(const RealFunction& f) {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::abs(v));
  return 1e-12 * m;
}

Support support_of(const RealFunction& f, double tol) {
  if (tol < 0.0) throw input_error("support tolerance must be nonnegative");
  Support s;
  s.tolerance = tol;
  for (std::size_t k = 0; k < f.size(); ++k)
    if (std::abs(f[k]) > tol) s.indices.push_back(k);
  return s;
}

RealFunction pushforward_density(const DiscreteMeasureSpace& space,
                                 const Transformation& t,
                                 const RealFunction& w) {
  check_length(space, w, "pushforward_density");
  if (t.size() != space.size())
    throw input_error("pushforward_density: transformation size mismatch");
  RealFunction g(space.size(), 0.0);
  for (std::size_t k = 0; k < space.size(); ++k) {
    double s = 0.0;
    for (std::size_t j : t.preimage(k)) s += w[j] * space.mass(j);
    g[k] = s / space.mass(k);
  }
  return g;
}

RealFunction radon_nikodym_h(const DiscreteMeasureSpace& space,
                             const Transformation& t) {
  return pushforward_density(space, t, RealFunction(space.size(), 1.0));
}

RealFunction conditional_expectation(const DiscreteMeasureSpace& space,
                                     const Transformation& t,
                                     const RealFunction& f) {
  check_length(space, f, "conditional_expectation");
  if (t.size() != space.size())
    throw input_error("conditional_expectation: transformation size mismatch");
  // Fiber averages are computed once per image point and broadcast.
  std::vector<double> fiber_avg(space.size(), 0.0);
  std::vector<bool> have(space.size(), false);
  RealFunction out(space.size(), 0.0);
  for (std::size_t k = 0; k < space.size(); ++k) {
    std::size_t img = t(k);
    if (!have[img]) {
      double num = 0.0, den = 0.0;
      for (std::size_t j : t.preimage(img)) {
        num += f[j] * space.mass(j);
        den += space.mass(j);
      }
      // k belongs to its own fiber, so den >= m_k > 0.
      fiber_avg[img] = num / den;
      have[img] = true;
    }
    out[k] = fiber_avg[img];
  }
  return out;
}

}  // namespace wco
