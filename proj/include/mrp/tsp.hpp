#pragma once
/**
 * @file   tsp.hpp
 * @brief  Open-path tours from a fixed start: nearest neighbour plus 2-opt, and
 *         an exhaustive solver for small instances.
 */

#include <cstddef>
#include <vector>

#include "mrp/geometry.hpp"

namespace mrp::tsp
{
    struct Tour
    {
        Point start;
        std::vector<std::size_t> order; ///< indices into the target list
        double length = 0.0;            ///< Euclidean, start included, no return leg
    };

    /// Length of visiting @p targets in @p order starting from @p start.
    [[nodiscard]] double open_path_length (Point start, const std::vector<Point> &targets, const std::vector<std::size_t> &order);

    /// Nearest neighbour construction, then 2-opt reversals and or-opt moves
    /// (segments of up to three targets) until neither improves.  Up to 64 targets
    /// this is repeated with the first target set to each of the eight closest and
    /// the shortest result wins.
    /// @throws std::invalid_argument when @p targets is empty.
    [[nodiscard]] Tour heuristic_tour (Point start, const std::vector<Point> &targets);

    /// Exact optimum by enumeration.  @throws std::invalid_argument above @p max_n targets.
    [[nodiscard]] Tour brute_force_tour (Point start, const std::vector<Point> &targets, std::size_t max_n = 9);

    /// True when no single segment reversal shortens the tour by more than @p tol.
    [[nodiscard]] bool is_two_opt_stable (const Tour &tour, const std::vector<Point> &targets, double tol = 1e-9);
} // namespace mrp::tsp
