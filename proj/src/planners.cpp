#include "mrp/planners.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <limits>
#include <random>

#include <fmt/format.h>

#include "mrp/seed.hpp"
#include "mrp/tsp.hpp"

namespace mrp::planners
{
    using dubins::PathPlan;

    namespace
    {
        constexpr double kInf = std::numeric_limits<double>::infinity ();
        constexpr double kYTol = 1e-9;
        constexpr double kBoundsTol = 1e-9;
        constexpr double kWaypointReach = 0.5;

        double direction_of (double theta_p) { return std::cos (theta_p) > 0.0 ? 1.0 : -1.0; }

        double min_y (const std::vector<Weed> &weeds)
        {
            double m = kInf;
            for (const auto &w : weeds)
                m = std::min (m, w.y);
            return m;
        }

        bool at_top (double y_p, const PastureSpec &pasture, const MowerSpec &spec)
        {
            return std::abs (y_p - (pasture.width - 0.5 * spec.implement_width)) <= kYTol;
        }

        /// Walks a PathPlan in fixed arc-length steps and keeps exact length accounting.
        class Follower
        {
          public:
            [[nodiscard]] bool finished () const { return s_ >= plan_.length (); }
            [[nodiscard]] double s () const { return s_; }
            [[nodiscard]] double travelled () const { return done_ + s_; }
            [[nodiscard]] const PathPlan &plan () const { return plan_; }

            void replace (PathPlan p)
            {
                done_ += s_;
                plan_ = std::move (p);
                s_ = 0.0;
                joints_.clear ();
                double acc = 0.0;
                for (const auto &seg : plan_.segments ())
                    joints_.push_back (acc += dubins::segment_length (seg));
            }

            // Steps stop at segment joints so a single step never straddles an arc
            // and a line; the swept quad of such a step can miss the implement edge.
            Planner::Step step (double ds)
            {
                double s1 = std::min (s_ + ds, plan_.length ());
                for (const double j : joints_)
                    if (j > s_ + kJointTol && j < s1 - kJointTol)
                    {
                        s1 = j;
                        break;
                    }
                Planner::Step st{plan_.pose_at (s1), s1 - s_};
                s_ = s1;
                return st;
            }

          private:
            static constexpr double kJointTol = 1e-9;

            PathPlan plan_;
            std::vector<double> joints_;
            double s_ = 0.0;
            double done_ = 0.0;
        };

        /*──────────────────────────── BCP ────────────────────────────*/

        class BcpPlanner : public Planner
        {
          public:
            explicit BcpPlanner (const PlannerContext &ctx) : step_ (ctx.mower.step)
            {
                follower_.replace (build_bcp (ctx.pasture, ctx.mower.implement_width, ctx.mower));
            }

            PlannerKind kind () const override { return PlannerKind::BCP; }
            Pose start_pose () const override { return follower_.plan ().start_pose (); }
            double path_length () const override { return follower_.travelled (); }

            std::optional<Step> next (const WorldState &) override
            {
                if (follower_.finished ())
                    return std::nullopt;
                return follower_.step (step_);
            }

          private:
            double step_;
            Follower follower_;
        };

        /*──────────────────────────── pass-based planners ────────────────────────────*/

        class PassPlanner : public Planner
        {
          public:
            PassPlanner (PlannerKind kind, const PlannerContext &ctx) : kind_ (kind), ctx_ (ctx) {}

            PlannerKind kind () const override { return kind_; }
            Pose start_pose () const override { return {0.0, 0.5 * ctx_.mower.implement_width, 0.0}; }
            double path_length () const override { return follower_.travelled (); }

          protected:
            double pass_end_x () const { return direction_of (pass_.theta_p) > 0 ? ctx_.pasture.length : 0.0; }

            void start_pass (const WorldState &world, double y_p, double theta_p, double min_pending)
            {
                pass_.y_p = y_p;
                pass_.theta_p = theta_p;
                pass_.mode = PassMode::OnTransit;
                passes_.push_back ({y_p, theta_p, min_pending, 0.0});

                const double x0 = direction_of (theta_p) > 0 ? 0.0 : ctx_.pasture.length;
                const Pose start{x0, y_p, theta_p};
                PathPlan plan = dubins::dubins_shortest (world.mower, start, ctx_.mower.turn_radius);
                transit_end_ = plan.length ();
                plan.append (dubins::make_line (start, ctx_.pasture.length));
                follower_.replace (std::move (plan));
            }

            void begin (const WorldState &world)
            {
                started_ = true;
                start_pass (world, 0.5 * ctx_.mower.implement_width, 0.0, min_y (world.weed_list ()));
                on_pass_started (world);
            }

            /// Returns false once the episode is over.
            bool finish_pass (const WorldState &world)
            {
                passes_.back ().y_end = world.mower.y;
                on_pass_finished (world);
                if (is_terminated (kind_, pass_, world, ctx_.pasture, ctx_.mower, ctx_.bcp_length))
                    return false;
                const auto listed = world.weed_list ();
                const double y_next = next_pass_y (kind_, pass_.y_p, listed, ctx_.pasture, ctx_.mower);
                ++pass_.pass_index;
                start_pass (world, y_next, pass_.theta_p == 0.0 ? kPi : 0.0, min_y (listed));
                on_pass_started (world);
                return true;
            }

            virtual void on_pass_started (const WorldState &) {}
            virtual void on_pass_finished (const WorldState &) {}

            PlannerKind kind_;
            PlannerContext ctx_;
            PassState pass_;
            Follower follower_;
            double transit_end_ = 0.0;
            bool started_ = false;
            bool done_ = false;
        };

        class JumpPlanner : public PassPlanner
        {
          public:
            using PassPlanner::PassPlanner;

            std::optional<Step> next (const WorldState &world) override
            {
                if (done_)
                    return std::nullopt;
                if (!started_)
                    begin (world);

                while (follower_.finished ())
                {
                    jump_end_ = -1.0;
                    if (!finish_pass (world))
                    {
                        done_ = true;
                        return std::nullopt;
                    }
                }

                if (follower_.s () < transit_end_)
                    pass_.mode = PassMode::OnTransit;
                else if (jump_end_ >= 0.0 && follower_.s () < jump_end_)
                    pass_.mode = PassMode::OnJump;
                else
                {
                    pass_.mode = PassMode::OnPass;
                    jump_end_ = -1.0;
                    try_jump (world);
                }
                return follower_.step (ctx_.mower.step);
            }

          private:
            void try_jump (const WorldState &world)
            {
                const auto jump = find_available_jump (world, pass_, ctx_.mower);
                if (!jump)
                    return;
                const double dir = direction_of (pass_.theta_p);
                const double x_end = pass_end_x ();
                if (dir * (x_end - jump->x_start) < 0.0)
                    return;

                const Pose here{world.mower.x, pass_.y_p, pass_.theta_p};
                PathPlan plan ({dubins::make_line (here, std::max (0.0, dir * (jump->x_start - world.mower.x)))});
                plan.append (jump->up_path);
                plan.append (jump->down_path);
                const double jump_len = plan.length ();
                if (dir * (x_end - jump->x_end) > 0.0)
                    plan.append (dubins::make_line (Pose{jump->x_end, pass_.y_p, pass_.theta_p}, dir * (x_end - jump->x_end)));
                follower_.replace (std::move (plan));
                transit_end_ = 0.0;
                jump_end_ = jump_len;
                pass_.mode = PassMode::OnJump;
            }

            void on_pass_started (const WorldState &world) override
            {
                // Invariant 1: nothing listed below the implement's lower edge.
                ++report_.checks;
                const double floor = pass_.y_p - 0.5 * ctx_.mower.implement_width;
                for (const auto &w : world.weeds)
                    if (w.pending () && w.y < floor - kYTol)
                        report_.violations.push_back (fmt::format ("pass {}: weed {} at y={} below y_p-B/2={}", pass_.pass_index, w.id, w.y, floor));
                snapshot_.clear ();
                for (const auto &w : world.weeds)
                    if (w.pending ())
                        snapshot_.push_back (w.id);
            }

            void on_pass_finished (const WorldState &world) override
            {
                // Invariant 2: the pass-start snapshot is cleared below the implement's upper edge.
                ++report_.checks;
                const double ceiling = pass_.y_p + 0.5 * ctx_.mower.implement_width;
                for (const int id : snapshot_)
                {
                    const auto &w = world.weed (id);
                    if (w.status != world::WeedStatus::Mowed && w.y < ceiling)
                        report_.violations.push_back (
                            fmt::format ("pass {}: snapshot weed {} at y={} unmowed below y_p+B/2={}", pass_.pass_index, id, w.y, ceiling));
                }
            }

            double jump_end_ = -1.0;
            std::vector<int> snapshot_;
        };

        class SnakePlanner : public PassPlanner
        {
          public:
            using PassPlanner::PassPlanner;

            std::optional<Step> next (const WorldState &world) override
            {
                if (done_)
                    return std::nullopt;
                if (!started_)
                    begin (world);

                for (;;)
                {
                    if (!follower_.finished ())
                        break;
                    if (wriggling_)
                    {
                        // Carry on straight from the weed to the boundary.
                        wriggling_ = false;
                        const double dir = direction_of (pass_.theta_p);
                        const Pose here{world.mower.x, world.mower.y, pass_.theta_p};
                        follower_.replace (PathPlan ({dubins::make_line (here, std::max (0.0, dir * (pass_end_x () - here.x)))}));
                        transit_end_ = 0.0;
                        continue;
                    }
                    if (!finish_pass (world))
                    {
                        done_ = true;
                        return std::nullopt;
                    }
                }

                if (follower_.s () < transit_end_)
                    pass_.mode = PassMode::OnTransit;
                else if (wriggling_)
                    pass_.mode = PassMode::OnWriggle;
                else
                {
                    pass_.mode = PassMode::OnPass;
                    const auto mode = kind_ == PlannerKind::SNAKE_STATIC_LIMITED ? ConstraintMode::Fprime : ConstraintMode::F;
                    if (auto sub = find_valid_subpath (world, pass_, ctx_.pasture, ctx_.mower, mode))
                    {
                        follower_.replace (std::move (*sub));
                        transit_end_ = 0.0;
                        wriggling_ = true;
                        pass_.mode = PassMode::OnWriggle;
                        if (follower_.finished ())
                            return next (world);
                    }
                }
                return follower_.step (ctx_.mower.step);
            }

          private:
            bool wriggling_ = false;
        };

        /*──────────────────────────── BCP_TSP ────────────────────────────*/

        Pose aimed_pose (Point at, Point toward, double fallback)
        {
            const Point d = toward - at;
            return make_pose (at.x, at.y, norm (d) > kPoseTol ? std::atan2 (d.y, d.x) : fallback);
        }

        class BcpTspPlanner : public Planner
        {
          public:
            explicit BcpTspPlanner (const PlannerContext &ctx) : ctx_ (ctx)
            {
                follower_.replace (build_bcp (ctx.pasture, ctx.mower.fov_width, ctx.mower));
            }

            PlannerKind kind () const override { return PlannerKind::BCP_TSP; }
            Pose start_pose () const override { return follower_.plan ().start_pose (); }
            double path_length () const override { return follower_.travelled (); }

            std::optional<Step> next (const WorldState &world) override
            {
                if (!touring_ && follower_.finished ())
                {
                    touring_ = true;
                    plan_tour (world);
                }
                if (touring_)
                {
                    while (!queue_.empty () && world.weed (queue_.front ()).status == world::WeedStatus::Mowed)
                        queue_.pop_front ();
                    // Weeds first seen while touring get a follow-up tour.
                    if (queue_.empty () && follower_.finished () && !plan_tour (world))
                        return std::nullopt;
                    if (queue_.empty ())
                        return follower_.finished () ? std::nullopt : std::optional<Step>{follower_.step (ctx_.mower.step)};
                    if (target_ != queue_.front () || follower_.finished ())
                    {
                        // A finished leg whose weed is still standing is not retried.
                        if (target_ == queue_.front ())
                        {
                            queue_.pop_front ();
                            return next (world);
                        }
                        target_ = queue_.front ();
                        const Point here = world.mower.position ();
                        const Point goal = world.weed (*target_).position ();
                        std::optional<Point> after;
                        for (std::size_t i = 1; i < queue_.size () && !after; ++i)
                            if (world.weed (queue_[i]).status != world::WeedStatus::Mowed)
                                after = world.weed (queue_[i]).position ();
                        const double incoming = std::atan2 (goal.y - here.y, goal.x - here.x);
                        const Pose g = after ? aimed_pose (goal, *after, incoming) : make_pose (goal.x, goal.y, incoming);
                        follower_.replace (dubins::dubins_shortest (world.mower, g, ctx_.mower.turn_radius));
                        if (follower_.finished ())
                        {
                            queue_.pop_front ();
                            return next (world);
                        }
                    }
                }
                if (follower_.finished ())
                    return std::nullopt;
                return follower_.step (ctx_.mower.step);
            }

          private:
            bool plan_tour (const WorldState &world)
            {
                target_.reset ();
                const auto listed = world.weed_list ();
                if (listed.empty ())
                    return false;
                std::vector<Point> pts;
                for (const auto &w : listed)
                    pts.push_back (w.position ());
                const auto tour = tsp::heuristic_tour (world.mower.position (), pts);
                for (const auto k : tour.order)
                    queue_.push_back (listed[k].id);
                return true;
            }

            PlannerContext ctx_;
            Follower follower_;
            bool touring_ = false;
            std::deque<int> queue_;
            std::optional<int> target_;
        };

        /*──────────────────────────── REACT ────────────────────────────*/

        class ReactPlanner : public Planner
        {
          public:
            explicit ReactPlanner (const PlannerContext &ctx)
                : ctx_ (ctx), rng_ (mix_seed ({ctx.seed, 0x5245414354ULL})), ux_ (0.0, ctx.pasture.length), uy_ (0.0, ctx.pasture.width)
            {
                waypoint_ = draw ();
            }

            PlannerKind kind () const override { return PlannerKind::REACT; }
            Pose start_pose () const override { return {0.0, 0.5 * ctx_.mower.implement_width, 0.0}; }
            double path_length () const override { return follower_.travelled (); }

            std::optional<Step> next (const WorldState &world) override
            {
                if (seen_.empty ())
                    seen_.assign (world.weeds.size (), false);
                for (const auto &w : world.weeds)
                {
                    if (w.pending () && !seen_[static_cast<std::size_t> (w.id)])
                    {
                        seen_[static_cast<std::size_t> (w.id)] = true;
                        queue_.push_back (w.id);
                    }
                }
                while (!queue_.empty () && !world.weed (queue_.front ()).pending ())
                    queue_.pop_front ();

                const double remaining = ctx_.bcp_length - follower_.travelled ();
                if (remaining <= kPoseTol)
                    return std::nullopt;

                if (!queue_.empty ())
                {
                    if (target_ != queue_.front () || follower_.finished ())
                    {
                        if (target_ == queue_.front ())
                        {
                            // Leg ended without mowing (numerically on the edge); drop it.
                            queue_.pop_front ();
                            return next (world);
                        }
                        target_ = queue_.front ();
                        head_to (world, world.weed (*target_).position ());
                    }
                }
                else if (target_ || follower_.finished () || distance (world.mower.position (), waypoint_) < kWaypointReach)
                {
                    if (!target_)
                        waypoint_ = draw ();
                    while (distance (world.mower.position (), waypoint_) < kWaypointReach)
                        waypoint_ = draw ();
                    target_.reset ();
                    head_to (world, waypoint_);
                }
                return follower_.step (std::min (ctx_.mower.step, remaining));
            }

          private:
            Point draw ()
            {
                const double x = ux_ (rng_);
                return {x, uy_ (rng_)};
            }

            void head_to (const WorldState &world, Point goal)
            {
                const Pose g = aimed_pose (goal, goal + (goal - world.mower.position ()), world.mower.theta);
                follower_.replace (dubins::dubins_shortest (world.mower, g, ctx_.mower.turn_radius));
            }

            PlannerContext ctx_;
            Follower follower_;
            std::mt19937_64 rng_;
            std::uniform_real_distribution<double> ux_, uy_;
            Point waypoint_;
            std::deque<int> queue_;
            std::vector<bool> seen_;
            std::optional<int> target_;
        };
    } // namespace

    /*──────────────────────────── names ────────────────────────────*/

    std::string_view to_string (PlannerKind k)
    {
        switch (k)
        {
        case PlannerKind::BCP: return "BCP";
        case PlannerKind::BCP_TSP: return "BCP_TSP";
        case PlannerKind::REACT: return "REACT";
        case PlannerKind::JUMP_HIGH: return "JUMP_HIGH";
        case PlannerKind::JUMP_LOW: return "JUMP_LOW";
        case PlannerKind::SNAKE_STATIC: return "SNAKE_STATIC";
        case PlannerKind::SNAKE_STATIC_LIMITED: return "SNAKE_STATIC_LIMITED";
        case PlannerKind::SNAKE_DYNAMIC: return "SNAKE_DYNAMIC";
        }
        return "?";
    }

    PlannerKind parse_planner (std::string_view s)
    {
        std::string up;
        for (const char c : s)
            up.push_back (c == '-' ? '_' : static_cast<char> (std::toupper (static_cast<unsigned char> (c))));
        for (const auto k : kAllPlanners)
            if (up == to_string (k))
                return k;
        if (up == "JH")
            return PlannerKind::JUMP_HIGH;
        if (up == "JL")
            return PlannerKind::JUMP_LOW;
        if (up == "SS")
            return PlannerKind::SNAKE_STATIC;
        if (up == "SSL")
            return PlannerKind::SNAKE_STATIC_LIMITED;
        if (up == "SD")
            return PlannerKind::SNAKE_DYNAMIC;
        throw std::invalid_argument ("unknown planner: " + std::string (s));
    }

    /*──────────────────────────── pass geometry ────────────────────────────*/

    std::vector<Weed> candidate_weeds (const WorldState &world, const PassState &pass, ConstraintMode mode, const MowerSpec &spec)
    {
        const double dir = direction_of (pass.theta_p);
        const double x_m = world.mower.x;
        std::vector<Weed> out;
        for (const auto &w : world.weeds)
        {
            if (!w.pending () || !(dir * (w.x - x_m) > 0.0) || !(w.y < pass.y_p + 0.5 * spec.fov_width))
                continue;
            if (mode == ConstraintMode::C && !(w.y > pass.y_p + 0.5 * spec.implement_width))
                continue;
            if (mode == ConstraintMode::Fprime && !(w.y > pass.y_p - 1.5 * spec.fov_width))
                continue;
            out.push_back (w);
        }
        return out;
    }

    std::optional<dubins::Jump> find_available_jump (const WorldState &world, const PassState &pass, const MowerSpec &spec)
    {
        const double dir = direction_of (pass.theta_p);
        const double x_m = world.mower.x;
        const double half_b = 0.5 * spec.implement_width;
        const auto candidates = candidate_weeds (world, pass, ConstraintMode::C, spec);
        if (candidates.empty ())
            return std::nullopt;

        const Weed *best = nullptr;
        for (const auto &c : candidates)
        {
            const double span = dubins::jump_half_span (c.y - pass.y_p, spec.turn_radius);
            const double x_s = c.x - dir * span;
            const double x_e = c.x + dir * span;
            const double lead = dir * (x_s - x_m);
            if (lead < 0.0 || lead >= spec.step)
                continue;
            if (!(dir * (x_e - x_m) < spec.fov_depth))
                continue;
            // Candidates sit above the strip, so every listed weed inside it is outside the candidate set.
            const bool blocked = std::any_of (world.weeds.begin (), world.weeds.end (), [&] (const Weed &w) {
                return w.pending () && dir * (w.x - x_s) > 0.0 && dir * (x_e - w.x) > 0.0 && std::abs (w.y - pass.y_p) <= half_b + kYTol;
            });
            if (blocked)
                continue;
            if (!best || c.y < best->y || (c.y == best->y && c.x < best->x))
                best = &c;
        }
        if (!best)
            return std::nullopt;
        return dubins::build_jump (best->position (), pass.y_p, pass.theta_p, spec.turn_radius);
    }

    std::optional<PathPlan> find_valid_subpath (const WorldState &world, const PassState &pass, const PastureSpec &pasture, const MowerSpec &spec,
                                                ConstraintMode mode)
    {
        if (mode == ConstraintMode::C)
            throw std::invalid_argument ("sub-paths use the F or F' constraint sets");
        auto candidates = candidate_weeds (world, pass, mode, spec);
        const double x_m = world.mower.x, y_m = world.mower.y;
        std::stable_sort (candidates.begin (), candidates.end (),
                          [x_m] (const Weed &a, const Weed &b) { return std::abs (x_m - a.x) < std::abs (x_m - b.x); });

        const double dir = direction_of (pass.theta_p);
        const Pose start{x_m, y_m, pass.theta_p};
        for (const auto &c : candidates)
        {
            const bool above = c.y >= y_m;
            const auto word = (above == (dir > 0.0)) ? dubins::Word::LSR : dubins::Word::RSL;
            auto path = dubins::csc_constrained (start, {c.x, c.y, pass.theta_p}, word, spec.turn_radius);
            if (!path)
                continue;
            const auto box = path->bounding_box ();
            if (box.min_x < -kBoundsTol || box.max_x > pasture.length + kBoundsTol || box.min_y < -kBoundsTol ||
                box.max_y > pasture.width + kBoundsTol)
                continue;
            return path;
        }
        return std::nullopt;
    }

    double next_pass_y (PlannerKind kind, double y_p, const std::vector<Weed> &weed_list, const PastureSpec &pasture, const MowerSpec &spec)
    {
        const double half_b = 0.5 * spec.implement_width;
        const double top = pasture.width - half_b;
        const double lowest = min_y (weed_list) + half_b;
        switch (kind)
        {
        case PlannerKind::JUMP_HIGH:
        case PlannerKind::SNAKE_DYNAMIC: return std::min ({lowest, y_p + 0.5 * spec.fov_width + half_b, top});
        case PlannerKind::JUMP_LOW: return std::min ({lowest, y_p + 0.5 * spec.fov_width, top});
        case PlannerKind::SNAKE_STATIC:
        case PlannerKind::SNAKE_STATIC_LIMITED: return std::min (y_p + 0.5 * spec.fov_width + half_b, top);
        default: throw std::invalid_argument ("next_pass_y: planner has no pass spacing rule");
        }
    }

    bool is_terminated (PlannerKind kind, const PassState &pass, const WorldState &world, const PastureSpec &pasture, const MowerSpec &spec,
                        double bcp_len)
    {
        const bool top = at_top (pass.y_p, pasture, spec);
        const bool high = world.mower.y >= pasture.width - spec.implement_width - kYTol;
        switch (kind)
        {
        case PlannerKind::JUMP_HIGH:
        case PlannerKind::JUMP_LOW:
        case PlannerKind::SNAKE_DYNAMIC: return top && world.weed_list_empty ();
        case PlannerKind::SNAKE_STATIC: return high && top && world.weed_list_empty ();
        case PlannerKind::SNAKE_STATIC_LIMITED: return high && top;
        case PlannerKind::REACT: return world.odometer >= bcp_len - kLengthTol;
        default: throw std::invalid_argument ("is_terminated: planner ends when its fixed path ends");
        }
    }

    std::vector<double> bcp_pass_ys (const PastureSpec &pasture, double spacing)
    {
        if (!(spacing > 0.0))
            throw std::invalid_argument ("pass spacing must be positive");
        const auto n = static_cast<std::size_t> (std::max (1.0, std::ceil (pasture.width / spacing - 1e-9)));
        std::vector<double> ys;
        for (std::size_t i = 0; i + 1 < n; ++i)
            ys.push_back (0.5 * spacing + static_cast<double> (i) * spacing);
        if (n == 1)
            ys.push_back (std::min (0.5 * spacing, 0.5 * pasture.width));
        else
            ys.push_back (std::min (static_cast<double> (n) * spacing - 0.5 * spacing, pasture.width - 0.5 * spacing));
        return ys;
    }

    PathPlan build_bcp (const PastureSpec &pasture, double spacing, const MowerSpec &spec)
    {
        PathPlan plan;
        const auto ys = bcp_pass_ys (pasture, spacing);
        for (std::size_t i = 0; i < ys.size (); ++i)
        {
            const bool forward = i % 2 == 0;
            const Pose start{forward ? 0.0 : pasture.length, ys[i], forward ? 0.0 : kPi};
            if (i > 0)
                plan.append (dubins::dubins_shortest (plan.end_pose (), start, spec.turn_radius));
            plan.append (dubins::make_line (start, pasture.length));
        }
        return plan;
    }

    double bcp_length (const PastureSpec &pasture, const MowerSpec &spec) { return build_bcp (pasture, spec.implement_width, spec).length (); }

    /*──────────────────────────── running ────────────────────────────*/

    const InvariantReport &Planner::invariants () const { return report_; }
    const std::vector<PassRecord> &Planner::passes () const { return passes_; }

    std::unique_ptr<Planner> make_planner (PlannerKind kind, const PlannerContext &ctx)
    {
        switch (kind)
        {
        case PlannerKind::BCP: return std::make_unique<BcpPlanner> (ctx);
        case PlannerKind::BCP_TSP: return std::make_unique<BcpTspPlanner> (ctx);
        case PlannerKind::REACT: return std::make_unique<ReactPlanner> (ctx);
        case PlannerKind::JUMP_HIGH:
        case PlannerKind::JUMP_LOW: return std::make_unique<JumpPlanner> (kind, ctx);
        case PlannerKind::SNAKE_STATIC:
        case PlannerKind::SNAKE_STATIC_LIMITED:
        case PlannerKind::SNAKE_DYNAMIC: return std::make_unique<SnakePlanner> (kind, ctx);
        }
        throw std::invalid_argument ("unknown planner kind");
    }

    RunResult run_planner (PlannerKind kind, std::vector<Weed> weeds, const PastureSpec &pasture, const MowerSpec &spec, std::uint64_t seed,
                           const RunOptions &options)
    {
        pasture.validate ();
        spec.validate ();
        for (const auto &w : weeds)
            if (w.x < 0.0 || w.x > pasture.length || w.y < 0.0 || w.y > pasture.width)
                throw std::invalid_argument (fmt::format ("weed {} lies outside the pasture", w.id));

        const PlannerContext ctx{pasture, spec, bcp_length (pasture, spec), seed};
        auto planner = make_planner (kind, ctx);

        RunResult r;
        r.kind = kind;
        r.bcp_length = ctx.bcp_length;
        r.world = world::make_world (planner->start_pose (), std::move (weeds));
        world::observe (r.world, spec);
        if (options.record_trajectory)
            r.trajectory.push_back (r.world.mower);

        const double limit = options.guard_factor * ctx.bcp_length;
        while (auto step = planner->next (r.world))
        {
            world::advance (r.world, step->pose, spec, step->arc);
            ++r.steps;
            if (options.record_trajectory)
                r.trajectory.push_back (step->pose);
            if (planner->path_length () > limit)
                throw PlannerAbort (fmt::format ("{} exceeded {:.1f} m ({}x BCP) after {} steps at ({:.3f}, {:.3f}); {} weeds still listed",
                                                 to_string (kind), limit, options.guard_factor, r.steps, r.world.mower.x, r.world.mower.y,
                                                 r.world.weed_list ().size ()));
        }
        r.path_length = planner->path_length ();
        r.invariants = planner->invariants ();
        r.passes = planner->passes ();
        return r;
    }

} // namespace mrp::planners
