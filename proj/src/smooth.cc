#include <algorithm>
#include <array>
#include <cmath>

#include "conflate/distribution.h"
#include "conflate/error.h"
#include "numeric.h"

namespace conflate {
namespace {

// A source piece of mass spread uniformly over [lo, hi] (lo == hi for an atom).
struct Piece {
  double lo;
  double hi;
  double mass;
};

double Overlap(double a, double b, double c, double d) {
  return std::max(0.0, std::min(b, d) - std::max(a, c));
}

// Integral over x in [a, b] of |[lo, hi] ∩ [x - eps, x + eps]|.
// The integrand is piecewise linear with kinks at lo +- eps and hi +- eps,
// so the trapezoid rule over those kinks is exact.
double SweptOverlap(double a, double b, double lo, double hi, double eps) {
  auto h = [&](double x) { return Overlap(lo, hi, x - eps, x + eps); };
  std::array<double, 6> knots = {a, b, lo - eps, lo + eps, hi - eps, hi + eps};
  std::sort(knots.begin(), knots.end());
  double total = 0.0;
  for (std::size_t i = 1; i < knots.size(); ++i) {
    const double x0 = std::max(a, knots[i - 1]);
    const double x1 = std::min(b, knots[i]);
    if (x1 > x0) total += 0.5 * (h(x0) + h(x1)) * (x1 - x0);
  }
  return total;
}

std::vector<Piece> PiecesOf(const Distribution& dist) {
  std::vector<Piece> pieces;
  if (const auto* d = std::get_if<DiscreteDist>(&dist)) {
    for (const Atom& a : d->atoms()) {
      if (a.mass > 0.0) {
        const double x = a.key.value();
        pieces.push_back({x, x, a.mass});
      }
    }
  } else {
    const auto& g = std::get<GridDensity>(dist);
    for (std::size_t i = 0; i < g.cells(); ++i) {
      if (g.densities()[i] > 0.0) {
        pieces.push_back({g.grid().CellLeft(i), g.grid().CellLeft(i + 1), g.CellMass(i)});
      }
    }
  }
  return pieces;
}

}  // namespace

GridDensity SmoothUniform(const Distribution& dist, double epsilon, double cell_width,
                          const std::optional<GridSpec>& target) {
  if (!std::isfinite(epsilon) || epsilon <= 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must be positive");
  }
  if (!std::isfinite(cell_width) || cell_width <= 0.0) {
    throw Error(ErrorCode::kBadResolution, "cell width must be positive");
  }
  const double ratio = 2.0 * epsilon / cell_width;
  const double whole = std::round(ratio);
  if (whole < 1.0 || std::abs(ratio - whole) > 1e-12 * whole) {
    throw Error(ErrorCode::kBadResolution,
                "cell width " + std::to_string(cell_width) + " does not divide 2*epsilon = " +
                    std::to_string(2.0 * epsilon));
  }

  const std::vector<Piece> pieces = PiecesOf(dist);
  GridSpec grid;
  if (target) {
    if (std::abs(target->width - cell_width) > 1e-12 * cell_width) {
      throw Error(ErrorCode::kBadResolution, "target grid width differs from cell width");
    }
    if (target->cells == 0) throw Error(ErrorCode::kInvalidArgument, "target grid is empty");
    grid = *target;
    grid.width = cell_width;
  } else {
    double lo = pieces.front().lo;
    double hi = pieces.front().hi;
    for (const Piece& p : pieces) {
      lo = std::min(lo, p.lo);
      hi = std::max(hi, p.hi);
    }
    lo -= epsilon;
    hi += epsilon;
    const double first = std::floor(lo / cell_width + 1e-9);
    grid.origin = first * cell_width;
    grid.width = cell_width;
    grid.cells = static_cast<std::size_t>(std::ceil((hi - grid.origin) / cell_width - 1e-9));
  }

  std::vector<double> densities(grid.cells, 0.0);
  const double scale = 1.0 / (2.0 * epsilon * cell_width);
  for (const Piece& p : pieces) {
    const double reach_lo = p.lo - epsilon;
    const double reach_hi = p.hi + epsilon;
    const double first = std::floor((reach_lo - grid.origin) / cell_width) - 1.0;
    const double last = std::ceil((reach_hi - grid.origin) / cell_width) + 1.0;
    const auto begin = static_cast<std::size_t>(std::max(0.0, first));
    const auto end = static_cast<std::size_t>(
        std::clamp(last, 0.0, static_cast<double>(grid.cells)));
    for (std::size_t i = begin; i < end; ++i) {
      const double a = grid.CellLeft(i);
      const double b = grid.CellLeft(i + 1);
      double swept;
      if (p.hi > p.lo) {
        swept = SweptOverlap(a, b, p.lo, p.hi, epsilon) / (p.hi - p.lo);
      } else {
        swept = Overlap(a, b, p.lo - epsilon, p.lo + epsilon);
      }
      densities[i] += p.mass * swept * scale;
    }
  }

  const double total = cell_width * internal::AccurateSum(densities);
  if (std::abs(total - 1.0) > kGridTolerance) {
    throw Error(ErrorCode::kInsufficientCoverage,
                "smoothed mass on the output grid is " + std::to_string(total));
  }
  return GridDensity::FromDensities(grid.origin, grid.width, std::move(densities));
}

}  // namespace conflate
