#pragma once

// Ultrametric balls in R^n and the fixed "tree order" used to enumerate them.
//
// Tree order compares balls digit by digit, uniformizer position first, then
// coordinate index, then k1. Balls of a common radius sort so that all
// descendants of one coarser ball are contiguous.

#include <cstdint>
#include <span>
#include <vector>

#include "lfc/field.hpp"

namespace lfc {

struct Ball {
  std::vector<Element> center;  // reduced mod uniformizer^lambda
  int lambda = 0;

  std::size_t dim() const noexcept { return center.size(); }
  friend bool operator==(const Ball& a, const Ball& b) noexcept {
    return a.lambda == b.lambda && a.center == b.center;
  }
};

using BallFamily = std::vector<Ball>;

/// Digit of x at uniformizer position pos in the t1^k1 component.
unsigned position_digit(const Element& x, unsigned k1, int pos);

Ball ball_of(const Field& field, std::vector<Element> x, int lambda);
Ball unit_ball(const Field& field, std::size_t n);

bool ball_contains(const Field& field, const Ball& ball,
                   std::span<const Element> x);
/// inner is a subset of outer.
bool ball_contains(const Field& field, const Ball& outer, const Ball& inner);

/// q^(n*(lambda2 - lambda)) as a 64-bit count; throws when it overflows.
std::uint64_t child_count(const Field& field, std::size_t n, int lambda,
                          int lambda2);

/// Children of radius q^-lambda2 in tree order.
BallFamily subdivide(const Field& field, const Ball& ball, int lambda2);

/// The index-th child of radius q^-lambda2 in tree order.
Ball child_at(const Field& field, const Ball& ball, int lambda2,
              std::uint64_t index);

/// Rank of inner among the lambda2-children of outer (inverse of child_at).
std::uint64_t child_index(const Field& field, const Ball& outer,
                          const Ball& inner);

/// Strict tree order; a ball precedes its own descendants.
bool tree_less(const Field& field, const Ball& a, const Ball& b);

}  // namespace lfc
