#pragma once
/**
 * @file   geometry.hpp
 * @brief  Planar primitives shared by every module: points, poses and angle helpers.
 */

#include <cmath>
#include <numbers>

namespace mrp
{
    inline constexpr double kPi = std::numbers::pi;
    inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

    /// Tolerance for pose continuity and boundary tests (m / rad).
    inline constexpr double kPoseTol = 1e-9;
    /// Tolerance for comparing path lengths (m).
    inline constexpr double kLengthTol = 1e-6;

    struct Point
    {
        double x = 0.0;
        double y = 0.0;

        friend Point operator+ (Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
        friend Point operator- (Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
        friend Point operator* (double k, Point a) { return {k * a.x, k * a.y}; }
        friend bool operator== (const Point &, const Point &) = default;
    };

    [[nodiscard]] inline double norm (Point p) { return std::hypot (p.x, p.y); }
    [[nodiscard]] inline double distance (Point a, Point b) { return norm (b - a); }
    [[nodiscard]] inline double dot (Point a, Point b) { return a.x * b.x + a.y * b.y; }
    [[nodiscard]] inline double cross (Point a, Point b) { return a.x * b.y - a.y * b.x; }
    [[nodiscard]] inline Point heading_vector (double theta) { return {std::cos (theta), std::sin (theta)}; }

    /// Wraps an angle into [0, 2π).
    [[nodiscard]] double normalize_angle (double theta);

    /// Wraps an angle into (-π, π].
    [[nodiscard]] double wrap_to_pi (double theta);

    /// Smallest absolute difference between two headings, in [0, π].
    [[nodiscard]] double angle_distance (double a, double b);

    /**
     * @brief Planar configuration of the mower or of a path sample.
     *
     * The heading is kept in [0, 2π); use make_pose() when the input angle may
     * fall outside that range.
     */
    struct Pose
    {
        double x = 0.0;
        double y = 0.0;
        double theta = 0.0;

        [[nodiscard]] Point position () const { return {x, y}; }
        friend bool operator== (const Pose &, const Pose &) = default;
    };

    [[nodiscard]] inline Pose make_pose (double x, double y, double theta) { return {x, y, normalize_angle (theta)}; }

    /// True when positions agree within @p pos_tol and headings within @p ang_tol.
    [[nodiscard]] bool poses_close (const Pose &a, const Pose &b, double pos_tol = kPoseTol, double ang_tol = kPoseTol);

} // namespace mrp
