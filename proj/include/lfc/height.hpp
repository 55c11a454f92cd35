#pragma once

// Heights on R: highest nonzero base-p digit over all basis components.
// At finite precision a height is only meaningful below a caller cutoff;
// anything above it is reported as nullopt ("infinite at precision").

#include <optional>
#include <vector>

#include "lfc/field.hpp"

namespace lfc {

struct HeightProfile {
  int c_add = 0;
  /// nullopt when some product of low-height elements already has infinite
  /// height at the working precision.
  std::optional<int> c_mul;
  int sampled_height = 0;  // heights <= this were checked exhaustively
};

/// Largest j with a nonzero digit in some component; 0 for x = 0.
int raw_height(const Element& x);

/// raw_height when it is <= cutoff, otherwise nullopt.
std::optional<int> height(const Element& x, int cutoff);

/// All elements with digits supported on j <= h, in coordinate order.
std::vector<Element> enumerate_height_leq(const Field& field, int h);

/// The 2^(ef) sums of distinct -t1^k1 t2^k2 (bitmask order).
std::vector<Element> neg_representatives(const Field& field);

/// Digits agree at every j >= d in every component.
bool differs_only_in_lsd(const Element& x, const Element& y, int d);

/// |(-x + delta) - y| >= |delta|.
bool perturbation_holds(const Element& x, const Element& y,
                        const Element& delta);

/// C_add is 0 in finite characteristic and 1 otherwise; C_mul is the largest
/// excess height(xy) - h(x) - h(y) over pairs of height <= 2 (fewer when the
/// field is large), clamped at 0.
HeightProfile measure_height_profile(const Field& field);

}  // namespace lfc
