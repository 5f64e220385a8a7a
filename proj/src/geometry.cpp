#include "mrp/geometry.hpp"

namespace mrp
{
    double normalize_angle (double theta)
    {
        double a = std::fmod (theta, kTwoPi);
        if (a < 0.0)
            a += kTwoPi;
        // fmod of a tiny negative value can round up to exactly 2π
        if (a >= kTwoPi)
            a = 0.0;
        return a;
    }

    double wrap_to_pi (double theta)
    {
        double a = normalize_angle (theta);
        if (a > kPi)
            a -= kTwoPi;
        return a;
    }

    double angle_distance (double a, double b) { return std::abs (wrap_to_pi (a - b)); }

    bool poses_close (const Pose &a, const Pose &b, double pos_tol, double ang_tol)
    {
        return distance (a.position (), b.position ()) <= pos_tol && angle_distance (a.theta, b.theta) <= ang_tol;
    }
} // namespace mrp
