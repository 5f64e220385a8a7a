#pragma once
/**
 * @file   world.hpp
 * @brief  Discrete-step pasture simulator: weed generation, field-of-view
 *         detection, implement sweep mowing and odometry.
 */

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "mrp/geometry.hpp"

namespace mrp::world
{
    /// Rectangular pasture with corners (0,0), (L,0), (L,W), (0,W).
    struct PastureSpec
    {
        double length = 100.0; ///< L, along x
        double width = 40.0;   ///< W, along y

        void validate () const;
        friend bool operator== (const PastureSpec &, const PastureSpec &) = default;
    };

    struct MowerSpec
    {
        double turn_radius = 2.0;     ///< minimum turn radius
        double implement_width = 2.0; ///< lateral extent of the mowing implement
        double speed = 1.0;           ///< m/s
        double fov_depth = 12.0;      ///< detection range ahead of the mower
        double fov_width = 12.0;      ///< detection width at full depth
        double step = 0.1;            ///< simulation step, metres of travel

        void validate () const;
        friend bool operator== (const MowerSpec &, const MowerSpec &) = default;
    };

    enum class WeedStatus
    {
        Undetected,
        Detected,
        Mowed
    };

    struct Weed
    {
        int id = 0;
        double x = 0.0;
        double y = 0.0;
        WeedStatus status = WeedStatus::Undetected;

        [[nodiscard]] Point position () const { return {x, y}; }
        /// Member of the weed list: detected and not yet mowed.
        [[nodiscard]] bool pending () const { return status == WeedStatus::Detected; }
        friend bool operator== (const Weed &, const Weed &) = default;
    };

    enum class Distribution
    {
        Uniform,
        GaussianClusters
    };

    [[nodiscard]] std::string_view to_string (Distribution d);
    /// Accepts "uniform" and "gauss"/"gaussian".  Throws std::invalid_argument otherwise.
    [[nodiscard]] Distribution parse_distribution (std::string_view s);

    inline constexpr double kDefaultClusterSigma = 3.0;

    /**
     * @brief Deterministic weed field.
     *
     * Uniform draws n independent points.  GaussianClusters draws ceil(n/5)
     * uniform cluster seeds first (they are weeds too, ids 0..k-1), then places
     * each remaining weed around a uniformly chosen seed with isotropic
     * Gaussian spread @p sigma, redrawing until the point falls inside.
     */
    [[nodiscard]] std::vector<Weed> generate_weeds (std::size_t n, Distribution dist, const PastureSpec &pasture, std::uint64_t seed,
                                                    double sigma = kDefaultClusterSigma);

    /// Triangular field of view apexed at the mower; boundary inclusive.
    [[nodiscard]] bool fov_contains (const Pose &mower, const MowerSpec &spec, Point p);

    struct WorldEvent
    {
        enum class Kind
        {
            Detected,
            Mowed
        };
        Kind kind;
        int id;

        friend bool operator== (const WorldEvent &, const WorldEvent &) = default;
    };

    /// Raised by advance() when a step exceeds the configured spacing; always a planner bug.
    class StepTooLarge : public std::logic_error
    {
      public:
        using std::logic_error::logic_error;
    };

    struct WeedCounts
    {
        std::size_t undetected = 0;
        std::size_t detected = 0; ///< detected and still standing
        std::size_t mowed = 0;
    };

    struct WorldState
    {
        Pose mower;
        std::vector<Weed> weeds;
        double odometer = 0.0; ///< metres travelled
        double clock = 0.0;    ///< seconds

        /// The weed list: detected weeds that are not yet mowed.
        [[nodiscard]] std::vector<Weed> weed_list () const;
        [[nodiscard]] bool weed_list_empty () const;
        [[nodiscard]] WeedCounts counts () const;
        [[nodiscard]] const Weed &weed (int id) const;
    };

    [[nodiscard]] WorldState make_world (const Pose &start, std::vector<Weed> weeds);

    /// Detects every undetected weed inside the field of view at the current pose.
    std::vector<WorldEvent> observe (WorldState &world, const MowerSpec &spec);

    /**
     * @brief Moves the mower one step and applies detection and mowing.
     *
     * Detection is evaluated at @p next; mowing covers the quadrilateral swept
     * by the implement between the old and new poses.  A weed that is mowed
     * before it was ever seen is reported as detected and mowed in the same
     * step, so statuses only move forward.
     * @throws StepTooLarge if the step is longer than spec.step (+1e-9).
     */
    std::vector<WorldEvent> advance (WorldState &world, const Pose &next, const MowerSpec &spec);

    /// As above, but the odometer and clock use @p arc_length (the path length
    /// actually travelled, never shorter than the chord) instead of the chord.
    std::vector<WorldEvent> advance (WorldState &world, const Pose &next, const MowerSpec &spec, double arc_length);

    /// True when @p p lies in the region swept by the implement from @p from to @p to.
    [[nodiscard]] bool swept_by_implement (const Pose &from, const Pose &to, double implement_width, Point p);

} // namespace mrp::world
