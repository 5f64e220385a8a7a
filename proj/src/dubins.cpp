#include "mrp/dubins.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace mrp::dubins
{
    namespace
    {
        // Sweeps within this of a full turn are rounding noise around zero.
        constexpr double kSweepSnap = 1e-10;

        double turn_sign (Turn dir) { return dir == Turn::Left ? 1.0 : -1.0; }

        /// Non-negative rotation taking heading @p from to @p to when turning in @p dir.
        double sweep_between (double from, double to, Turn dir)
        {
            double s = dir == Turn::Left ? normalize_angle (to - from) : normalize_angle (from - to);
            if (s > kTwoPi - kSweepSnap)
                s = 0.0;
            return s;
        }

        std::optional<PathPlan> csc_path (const Pose &start, const Pose &goal, Turn first, Turn last, double radius)
        {
            const Point c1 = turning_center (start, first, radius);
            const Point c2 = turning_center (goal, last, radius);
            const Point d = c2 - c1;
            const double dist = norm (d);

            double line_heading = 0.0;
            double line_length = 0.0;
            if (first == last)
            {
                line_length = dist;
                line_heading = dist > kPoseTol ? std::atan2 (d.y, d.x) : start.theta;
            }
            else
            {
                if (dist < 2.0 * radius - kPoseTol)
                    return std::nullopt;
                line_length = std::sqrt (std::max (0.0, dist * dist - 4.0 * radius * radius));
                line_heading = std::atan2 (d.y, d.x) + turn_sign (first) * std::atan2 (2.0 * radius, line_length);
            }

            PathPlan path;
            const ArcSegment a1 = make_arc (start, first, radius, sweep_between (start.theta, line_heading, first));
            path.append (a1);
            const Pose p1 = segment_end (a1);
            const LineSegment s = make_line ({p1.x, p1.y, p1.theta}, line_length);
            path.append (s);
            const Pose p2{s.end.x, s.end.y, p1.theta};
            path.append (make_arc (p2, last, radius, sweep_between (p2.theta, goal.theta, last)));
            return path;
        }

        std::optional<PathPlan> ccc_path (const Pose &start, const Pose &goal, Turn outer, double radius)
        {
            const Turn inner = outer == Turn::Left ? Turn::Right : Turn::Left;
            const Point c1 = turning_center (start, outer, radius);
            const Point c2 = turning_center (goal, outer, radius);
            const Point d = c2 - c1;
            const double dist = norm (d);
            if (dist > 4.0 * radius + kPoseTol)
                return std::nullopt;

            const double h = std::sqrt (std::max (0.0, 4.0 * radius * radius - 0.25 * dist * dist));
            const Point u = dist > kPoseTol ? (1.0 / dist) * d : Point{1.0, 0.0};
            const Point perp{-u.y, u.x};
            const Point mid = c1 + 0.5 * d;

            std::optional<PathPlan> best;
            for (const double side : {1.0, -1.0})
            {
                const Point c3 = mid + (side * h) * perp;
                const Point t1 = c1 + 0.5 * (c3 - c1);
                const Point t2 = c2 + 0.5 * (c3 - c2);
                const double h1 = std::atan2 (t1.y - c1.y, t1.x - c1.x) + turn_sign (outer) * 0.5 * kPi;
                const double h2 = std::atan2 (t2.y - c2.y, t2.x - c2.x) + turn_sign (outer) * 0.5 * kPi;

                PathPlan path;
                const ArcSegment a1 = make_arc (start, outer, radius, sweep_between (start.theta, h1, outer));
                path.append (a1);
                const ArcSegment a2 = make_arc (segment_end (a1), inner, radius, sweep_between (h1, h2, inner));
                path.append (a2);
                const Pose p2 = segment_end (a2);
                path.append (make_arc (p2, outer, radius, sweep_between (p2.theta, goal.theta, outer)));
                if (!best || path.length () < best->length ())
                    best = std::move (path);
            }
            return best;
        }

        void check_radius (double radius)
        {
            if (!(radius > 0.0))
                throw std::invalid_argument ("turn radius must be positive");
        }
    } // namespace

    /*──────────────────────────── segments ────────────────────────────*/

    Point turning_center (const Pose &p, Turn dir, double radius)
    {
        const double k = turn_sign (dir) * radius;
        return {p.x - k * std::sin (p.theta), p.y + k * std::cos (p.theta)};
    }

    LineSegment make_line (const Pose &from, double length)
    {
        return {from.position (), from.position () + length * heading_vector (from.theta), from.theta};
    }

    LineSegment make_line (Point a, Point b)
    {
        const Point d = b - a;
        return {a, b, norm (d) > 0.0 ? normalize_angle (std::atan2 (d.y, d.x)) : 0.0};
    }

    ArcSegment make_arc (const Pose &from, Turn dir, double radius, double sweep)
    {
        const Point c = turning_center (from, dir, radius);
        return {c, radius, dir, std::atan2 (from.y - c.y, from.x - c.x), sweep};
    }

    double segment_length (const PathSegment &seg)
    {
        return std::visit ([] (const auto &s) { return s.length (); }, seg);
    }

    Pose segment_pose_at (const PathSegment &seg, double s)
    {
        if (const auto *arc = std::get_if<ArcSegment> (&seg))
        {
            const double t = std::clamp (s, 0.0, arc->length ()) / arc->radius;
            const double sign = turn_sign (arc->direction);
            const double phi = arc->start_angle + sign * t;
            return make_pose (arc->center.x + arc->radius * std::cos (phi), arc->center.y + arc->radius * std::sin (phi),
                              phi + sign * 0.5 * kPi);
        }
        const auto &line = std::get<LineSegment> (seg);
        const double len = line.length ();
        if (len <= 0.0)
            return make_pose (line.start.x, line.start.y, line.heading);
        const Point d = line.end - line.start;
        const double t = std::clamp (s, 0.0, len) / len;
        return make_pose (line.start.x + t * d.x, line.start.y + t * d.y, line.heading);
    }

    Pose segment_start (const PathSegment &seg) { return segment_pose_at (seg, 0.0); }

    Pose segment_end (const PathSegment &seg) { return segment_pose_at (seg, segment_length (seg)); }

    /*──────────────────────────── PathPlan ────────────────────────────*/

    PathPlan::PathPlan (std::vector<PathSegment> segments)
    {
        for (auto &s : segments)
            append (std::move (s));
    }

    void PathPlan::append (PathSegment seg)
    {
        length_ += segment_length (seg);
        segments_.push_back (std::move (seg));
    }

    void PathPlan::append (const PathPlan &other)
    {
        for (const auto &s : other.segments_)
            append (s);
    }

    Pose PathPlan::start_pose () const
    {
        if (segments_.empty ())
            throw std::logic_error ("start_pose of an empty path");
        return segment_start (segments_.front ());
    }

    Pose PathPlan::end_pose () const
    {
        if (segments_.empty ())
            throw std::logic_error ("end_pose of an empty path");
        return segment_end (segments_.back ());
    }

    Pose PathPlan::pose_at (double s) const
    {
        if (segments_.empty ())
            throw std::logic_error ("pose_at on an empty path");
        double remaining = std::max (0.0, s);
        for (std::size_t i = 0; i + 1 < segments_.size (); ++i)
        {
            const double len = segment_length (segments_[i]);
            if (remaining <= len)
                return segment_pose_at (segments_[i], remaining);
            remaining -= len;
        }
        return segment_pose_at (segments_.back (), remaining);
    }

    BoundingBox PathPlan::bounding_box () const
    {
        constexpr double inf = std::numeric_limits<double>::infinity ();
        BoundingBox box{inf, inf, -inf, -inf};
        auto grow = [&box] (Point p) {
            box.min_x = std::min (box.min_x, p.x);
            box.min_y = std::min (box.min_y, p.y);
            box.max_x = std::max (box.max_x, p.x);
            box.max_y = std::max (box.max_y, p.y);
        };
        for (const auto &seg : segments_)
        {
            grow (segment_start (seg).position ());
            grow (segment_end (seg).position ());
            const auto *arc = std::get_if<ArcSegment> (&seg);
            if (arc == nullptr)
                continue;
            for (int k = 0; k < 4; ++k)
            {
                const double a = 0.5 * kPi * k;
                const double offset = arc->direction == Turn::Left ? normalize_angle (a - arc->start_angle) : normalize_angle (arc->start_angle - a);
                if (offset <= arc->sweep)
                    grow (arc->center + arc->radius * Point{std::cos (a), std::sin (a)});
            }
        }
        return box;
    }

    bool is_g1_continuous (const PathPlan &path, double pos_tol, double ang_tol)
    {
        const auto &segs = path.segments ();
        for (std::size_t i = 0; i + 1 < segs.size (); ++i)
        {
            const Pose a = segment_end (segs[i]);
            const Pose b = segment_start (segs[i + 1]);
            if (distance (a.position (), b.position ()) > pos_tol || angle_distance (a.theta, b.theta) > ang_tol)
                return false;
        }
        return true;
    }

    /*──────────────────────────── Dubins words ─────────────────────────*/

    std::string_view to_string (Word w)
    {
        switch (w)
        {
        case Word::LSL: return "LSL";
        case Word::RSR: return "RSR";
        case Word::LSR: return "LSR";
        case Word::RSL: return "RSL";
        case Word::RLR: return "RLR";
        case Word::LRL: return "LRL";
        }
        return "?";
    }

    std::optional<PathPlan> dubins_word (const Pose &start, const Pose &goal, Word word, double radius)
    {
        check_radius (radius);
        switch (word)
        {
        case Word::LSL: return csc_path (start, goal, Turn::Left, Turn::Left, radius);
        case Word::RSR: return csc_path (start, goal, Turn::Right, Turn::Right, radius);
        case Word::LSR: return csc_path (start, goal, Turn::Left, Turn::Right, radius);
        case Word::RSL: return csc_path (start, goal, Turn::Right, Turn::Left, radius);
        case Word::RLR: return ccc_path (start, goal, Turn::Right, radius);
        case Word::LRL: return ccc_path (start, goal, Turn::Left, radius);
        }
        return std::nullopt;
    }

    PathPlan dubins_shortest (const Pose &start, const Pose &goal, double radius)
    {
        std::optional<PathPlan> best;
        for (const Word w : kAllWords)
        {
            auto p = dubins_word (start, goal, w, radius);
            if (p && (!best || p->length () < best->length ()))
                best = std::move (p);
        }
        // LSL and RSR exist for every pose pair.
        return *best;
    }

    std::optional<PathPlan> csc_constrained (const Pose &start, const Pose &goal, Word word, double radius)
    {
        if (word != Word::LSR && word != Word::RSL)
            throw std::invalid_argument ("csc_constrained accepts only LSR or RSL");
        return dubins_word (start, goal, word, radius);
    }

    /*──────────────────────────── jumps ───────────────────────────────*/

    double jump_half_span (double dy, double radius)
    {
        if (dy > 4.0 * radius)
            return 0.0;
        const double v = dy - 2.0 * radius;
        return std::sqrt (std::max (0.0, 4.0 * radius * radius - v * v));
    }

    std::optional<Jump> build_jump (Point weed, double y_p, double theta_p, double radius)
    {
        check_radius (radius);
        const double dy = weed.y - y_p;
        if (!(dy > 0.0))
            return std::nullopt;

        const bool forward = std::cos (theta_p) > 0.0;
        const double dir = forward ? 1.0 : -1.0;
        const double heading = forward ? 0.0 : kPi;
        const double half = jump_half_span (dy, radius);

        Jump jump;
        jump.weed = weed;
        jump.x_start = weed.x - dir * half;
        jump.x_end = weed.x + dir * half;

        const Pose a{jump.x_start, y_p, heading};
        const Pose b{weed.x, weed.y, heading};
        const Pose c{jump.x_end, y_p, heading};
        auto up = csc_constrained (a, b, forward ? Word::LSR : Word::RSL, radius);
        auto down = csc_constrained (b, c, forward ? Word::RSL : Word::LSR, radius);
        if (!up || !down)
            return std::nullopt;
        jump.up_path = std::move (*up);
        jump.down_path = std::move (*down);
        return jump;
    }

    /*──────────────────────────── sampling ────────────────────────────*/

    std::vector<Pose> sample_path (const PathPlan &path, double ds, std::optional<Pose> start_if_empty)
    {
        if (!(ds > 0.0))
            throw std::invalid_argument ("sample spacing must be positive");
        std::vector<Pose> out;
        if (path.empty ())
        {
            if (start_if_empty)
                out.push_back (*start_if_empty);
            return out;
        }
        const double total = path.length ();
        for (std::size_t k = 0;; ++k)
        {
            const double s = static_cast<double> (k) * ds;
            if (s >= total - kPoseTol)
                break;
            out.push_back (path.pose_at (s));
        }
        out.push_back (path.end_pose ());
        return out;
    }

} // namespace mrp::dubins
