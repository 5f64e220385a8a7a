#include "mrp/world.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace mrp::world
{
    namespace
    {
        constexpr double kStepTol = 1e-9;
        constexpr double kCrossTol = 1e-12;

        bool positive_finite (double v) { return std::isfinite (v) && v > 0.0; }

        bool in_triangle (Point a, Point b, Point c, Point p)
        {
            const double d1 = cross (b - a, p - a);
            const double d2 = cross (c - b, p - b);
            const double d3 = cross (a - c, p - c);
            const bool neg = d1 < -kCrossTol || d2 < -kCrossTol || d3 < -kCrossTol;
            const bool pos = d1 > kCrossTol || d2 > kCrossTol || d3 > kCrossTol;
            return !(neg && pos);
        }

        double segment_distance (Point a, Point b, Point p)
        {
            const Point ab = b - a;
            const double len2 = dot (ab, ab);
            const double t = len2 > 0.0 ? std::clamp (dot (p - a, ab) / len2, 0.0, 1.0) : 0.0;
            return distance (a + t * ab, p);
        }
    } // namespace

    void PastureSpec::validate () const
    {
        if (!positive_finite (length) || !positive_finite (width))
            throw std::invalid_argument ("pasture dimensions must be positive");
    }

    void MowerSpec::validate () const
    {
        for (const double v : {turn_radius, implement_width, speed, fov_depth, fov_width, step})
            if (!positive_finite (v))
                throw std::invalid_argument ("mower parameters must be positive");
        if (step > implement_width)
            throw std::invalid_argument ("simulation step must be smaller than the implement width");
    }

    std::string_view to_string (Distribution d) { return d == Distribution::Uniform ? "uniform" : "gauss"; }

    Distribution parse_distribution (std::string_view s)
    {
        if (s == "uniform" || s == "U")
            return Distribution::Uniform;
        if (s == "gauss" || s == "gaussian" || s == "G")
            return Distribution::GaussianClusters;
        throw std::invalid_argument ("unknown weed distribution: " + std::string (s));
    }

    std::vector<Weed> generate_weeds (std::size_t n, Distribution dist, const PastureSpec &pasture, std::uint64_t seed, double sigma)
    {
        pasture.validate ();
        std::mt19937_64 rng (seed);
        std::uniform_real_distribution<double> ux (0.0, pasture.length), uy (0.0, pasture.width);

        std::vector<Weed> weeds;
        weeds.reserve (n);
        auto add = [&weeds] (double x, double y) { weeds.push_back ({static_cast<int> (weeds.size ()), x, y, WeedStatus::Undetected}); };

        if (dist == Distribution::Uniform)
        {
            for (std::size_t i = 0; i < n; ++i)
            {
                const double x = ux (rng);
                add (x, uy (rng));
            }
            return weeds;
        }

        if (!positive_finite (sigma))
            throw std::invalid_argument ("cluster sigma must be positive");
        const std::size_t seeds = (n + 4) / 5; // ceil(0.2 n) without rounding surprises
        for (std::size_t i = 0; i < seeds; ++i)
        {
            const double x = ux (rng);
            add (x, uy (rng));
        }
        if (seeds == 0)
            return weeds;
        std::uniform_int_distribution<std::size_t> pick (0, seeds - 1);
        std::normal_distribution<double> spread (0.0, sigma);
        while (weeds.size () < n)
        {
            const Point c = weeds[pick (rng)].position ();
            for (;;)
            {
                const double x = c.x + spread (rng);
                const double y = c.y + spread (rng);
                if (x >= 0.0 && x <= pasture.length && y >= 0.0 && y <= pasture.width)
                {
                    add (x, y);
                    break;
                }
            }
        }
        return weeds;
    }

    bool fov_contains (const Pose &mower, const MowerSpec &spec, Point p)
    {
        const Point d = p - mower.position ();
        const double c = std::cos (mower.theta), s = std::sin (mower.theta);
        const double ahead = c * d.x + s * d.y;
        const double lateral = -s * d.x + c * d.y;
        if (ahead < -kPoseTol || ahead > spec.fov_depth + kPoseTol)
            return false;
        return std::abs (lateral) <= 0.5 * spec.fov_width * (ahead / spec.fov_depth) + kPoseTol;
    }

    bool swept_by_implement (const Pose &from, const Pose &to, double implement_width, Point p)
    {
        const double h = 0.5 * implement_width;
        auto ends = [h] (const Pose &q) {
            const Point n{-std::sin (q.theta), std::cos (q.theta)};
            return std::pair{q.position () + h * n, q.position () - h * n};
        };
        const auto [l0, r0] = ends (from);
        const auto [l1, r1] = ends (to);
        if (segment_distance (l1, r1, p) <= kPoseTol || segment_distance (l0, r0, p) <= kPoseTol)
            return true;
        if (distance (from.position (), to.position ()) <= 0.0 && angle_distance (from.theta, to.theta) <= 0.0)
            return false;
        return in_triangle (l0, l1, r1, p) || in_triangle (l0, r1, r0, p);
    }

    std::vector<Weed> WorldState::weed_list () const
    {
        std::vector<Weed> out;
        for (const auto &w : weeds)
            if (w.pending ())
                out.push_back (w);
        return out;
    }

    bool WorldState::weed_list_empty () const
    {
        return std::none_of (weeds.begin (), weeds.end (), [] (const Weed &w) { return w.pending (); });
    }

    WeedCounts WorldState::counts () const
    {
        WeedCounts c;
        for (const auto &w : weeds)
        {
            switch (w.status)
            {
            case WeedStatus::Undetected: ++c.undetected; break;
            case WeedStatus::Detected: ++c.detected; break;
            case WeedStatus::Mowed: ++c.mowed; break;
            }
        }
        return c;
    }

    const Weed &WorldState::weed (int id) const { return weeds.at (static_cast<std::size_t> (id)); }

    WorldState make_world (const Pose &start, std::vector<Weed> weeds)
    {
        for (std::size_t i = 0; i < weeds.size (); ++i)
            if (weeds[i].id != static_cast<int> (i))
                throw std::invalid_argument ("weed ids must be 0..n-1 in order");
        return {start, std::move (weeds), 0.0, 0.0};
    }

    std::vector<WorldEvent> observe (WorldState &world, const MowerSpec &spec)
    {
        std::vector<WorldEvent> events;
        for (auto &w : world.weeds)
        {
            if (w.status == WeedStatus::Undetected && fov_contains (world.mower, spec, w.position ()))
            {
                w.status = WeedStatus::Detected;
                events.push_back ({WorldEvent::Kind::Detected, w.id});
            }
        }
        return events;
    }

    std::vector<WorldEvent> advance (WorldState &world, const Pose &next, const MowerSpec &spec)
    {
        return advance (world, next, spec, distance (world.mower.position (), next.position ()));
    }

    std::vector<WorldEvent> advance (WorldState &world, const Pose &next, const MowerSpec &spec, double arc_length)
    {
        const Pose prev = world.mower;
        const double step = distance (prev.position (), next.position ());
        if (step > spec.step + kStepTol || arc_length > spec.step + kStepTol)
            throw StepTooLarge ("step of " + std::to_string (std::max (step, arc_length)) + " m exceeds " + std::to_string (spec.step) + " m");
        if (arc_length < step - kStepTol)
            throw std::logic_error ("travelled distance shorter than the chord");

        world.mower = next;
        world.odometer += arc_length;
        world.clock += arc_length / spec.speed;

        std::vector<WorldEvent> events = observe (world, spec);
        const double reach = 0.5 * spec.implement_width + step + kPoseTol;
        for (auto &w : world.weeds)
        {
            if (w.status == WeedStatus::Mowed || distance (w.position (), next.position ()) > reach)
                continue;
            if (!swept_by_implement (prev, next, spec.implement_width, w.position ()))
                continue;
            if (w.status == WeedStatus::Undetected)
                events.push_back ({WorldEvent::Kind::Detected, w.id});
            w.status = WeedStatus::Mowed;
            events.push_back ({WorldEvent::Kind::Mowed, w.id});
        }
        return events;
    }

} // namespace mrp::world
