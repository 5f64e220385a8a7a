#pragma once
/**
 * @file   kinematics.hpp
 * @brief  Rear-steered bicycle model with the reference point at the front axle.
 *
 * A positive steering angle turns the vehicle clockwise: the rear wheels steer,
 * so the body yaws opposite to the wheel angle.
 */

#include <vector>

namespace mrp::kinematics
{
    struct VehicleState
    {
        double x = 0.0;
        double y = 0.0;
        double theta = 0.0;
    };

    struct ControlInput
    {
        double v = 1.0;         ///< m/s
        double delta = 0.0;     ///< rear steering angle, |delta| < pi/2
        double wheelbase = 1.5; ///< L, metres

        void validate () const;
    };

    struct StateRate
    {
        double dx = 0.0;
        double dy = 0.0;
        double dtheta = 0.0;
    };

    [[nodiscard]] StateRate state_derivative (const VehicleState &s, const ControlInput &u);

    /// Signed turn radius L / tan(delta); infinite when delta = 0.
    [[nodiscard]] double turn_radius (const ControlInput &u);

    inline constexpr double kDefaultDt = 1e-3;

    /**
     * Fixed-step RK4 integration.  Returns the state at t = 0, dt, 2dt, ... and
     * at @p duration itself (a shorter final step when duration is not a multiple of dt).
     * Headings are normalised to [0, 2pi).
     */
    [[nodiscard]] std::vector<VehicleState> integrate (const VehicleState &s0, const ControlInput &u, double duration, double dt = kDefaultDt);
} // namespace mrp::kinematics
