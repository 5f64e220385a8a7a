#include "mrp/kinematics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mrp/geometry.hpp"

namespace mrp::kinematics
{
    void ControlInput::validate () const
    {
        if (!(wheelbase > 0.0) || !(std::abs (delta) < kPi / 2) || !std::isfinite (v))
            throw std::invalid_argument ("invalid control input");
    }

    StateRate state_derivative (const VehicleState &s, const ControlInput &u)
    {
        return {u.v * std::cos (s.theta), u.v * std::sin (s.theta), -(u.v / u.wheelbase) * std::tan (u.delta)};
    }

    double turn_radius (const ControlInput &u)
    {
        const double t = std::tan (u.delta);
        return t == 0.0 ? std::numeric_limits<double>::infinity () : u.wheelbase / t;
    }

    namespace
    {
        StateRate rk4_increment (const VehicleState &s, const ControlInput &u, double h)
        {
            auto shifted = [&s] (const StateRate &k, double f) { return VehicleState{s.x + f * k.dx, s.y + f * k.dy, s.theta + f * k.dtheta}; };
            const StateRate k1 = state_derivative (s, u);
            const StateRate k2 = state_derivative (shifted (k1, h / 2), u);
            const StateRate k3 = state_derivative (shifted (k2, h / 2), u);
            const StateRate k4 = state_derivative (shifted (k3, h), u);
            return {h / 6 * (k1.dx + 2 * k2.dx + 2 * k3.dx + k4.dx), h / 6 * (k1.dy + 2 * k2.dy + 2 * k3.dy + k4.dy),
                    h / 6 * (k1.dtheta + 2 * k2.dtheta + 2 * k3.dtheta + k4.dtheta)};
        }

        // Compensated accumulation keeps thousands of small increments from drifting.
        struct KahanState
        {
            VehicleState s;
            VehicleState carry{};

            void add (const StateRate &d)
            {
                auto one = [] (double &sum, double &c, double v) {
                    const double y = v - c;
                    const double t = sum + y;
                    c = (t - sum) - y;
                    sum = t;
                };
                one (s.x, carry.x, d.dx);
                one (s.y, carry.y, d.dy);
                one (s.theta, carry.theta, d.dtheta);
            }
        };
    } // namespace

    std::vector<VehicleState> integrate (const VehicleState &s0, const ControlInput &u, double duration, double dt)
    {
        u.validate ();
        if (!(dt > 0.0) || !(duration >= 0.0))
            throw std::invalid_argument ("integrate needs dt > 0 and duration >= 0");

        std::vector<VehicleState> out{s0};
        out.back ().theta = normalize_angle (s0.theta);
        // Heading is integrated unwrapped and only normalised on output.
        KahanState acc{s0};
        const VehicleState &s = acc.s;
        double t = 0.0;
        const auto steps = static_cast<long> (std::floor (duration / dt + 1e-9));
        out.reserve (static_cast<std::size_t> (steps) + 2);
        for (long k = 1; k <= steps; ++k)
        {
            acc.add (rk4_increment (s, u, dt));
            t = static_cast<double> (k) * dt;
            out.push_back ({s.x, s.y, normalize_angle (s.theta)});
        }
        if (const double rest = duration - t; rest > 1e-12)
        {
            acc.add (rk4_increment (s, u, rest));
            out.push_back ({s.x, s.y, normalize_angle (s.theta)});
        }
        return out;
    }
} // namespace mrp::kinematics
