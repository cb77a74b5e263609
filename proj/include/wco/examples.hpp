#ifndef WCO_EXAMPLES_HPP
#define WCO_EXAMPLES_HPP

#include "wco/system.hpp"

namespace wco::examples {

// 3-cycle on equal masses with u = (1, 2, 4); lambda_min = 4.
WeightedCompositionSystem cycle_demo();

// n-point window of a pairing permutation (2j+1 <-> 2j+2, 1-based) with
// masses 2^-k and sub-unit weights chosen so that u * m is constant on
// each pair; the pointwise criterion is then identically 1 on every
// window, so the window is prefix evidence for the infinite family.
WeightedCompositionSystem discrete_window(std::size_t n = 200);

}  // namespace wco::examples

#endif
