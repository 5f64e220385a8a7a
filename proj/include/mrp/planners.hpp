#pragma once
/**
 * @file   planners.hpp
 * @brief  Online mowing planners (JUMP, SNAKE) and the BCP, BCP_TSP and REACT
 *         baselines behind one step-wise interface.
 *
 * A planner is a state machine that is asked for the next pose once per
 * simulation step.  It reads the world (mower pose, weed statuses) but never
 * mutates it; run_planner() owns the loop that moves the mower and applies
 * detection and mowing.
 */

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mrp/dubins.hpp"
#include "mrp/world.hpp"

namespace mrp::planners
{
    using world::MowerSpec;
    using world::PastureSpec;
    using world::Weed;
    using world::WorldState;

    enum class PlannerKind
    {
        BCP,
        BCP_TSP,
        REACT,
        JUMP_HIGH,
        JUMP_LOW,
        SNAKE_STATIC,
        SNAKE_STATIC_LIMITED,
        SNAKE_DYNAMIC
    };

    inline constexpr PlannerKind kAllPlanners[] = {PlannerKind::BCP,          PlannerKind::BCP_TSP,      PlannerKind::REACT,
                                                   PlannerKind::JUMP_HIGH,    PlannerKind::JUMP_LOW,     PlannerKind::SNAKE_STATIC,
                                                   PlannerKind::SNAKE_STATIC_LIMITED, PlannerKind::SNAKE_DYNAMIC};

    [[nodiscard]] std::string_view to_string (PlannerKind k);
    /// Accepts the enum names ("JUMP_LOW") and the short forms ("JL", "SS", "SSL", ...), case-insensitive.
    [[nodiscard]] PlannerKind parse_planner (std::string_view s);

    [[nodiscard]] constexpr bool is_jump (PlannerKind k) { return k == PlannerKind::JUMP_HIGH || k == PlannerKind::JUMP_LOW; }
    [[nodiscard]] constexpr bool is_snake (PlannerKind k)
    {
        return k == PlannerKind::SNAKE_STATIC || k == PlannerKind::SNAKE_STATIC_LIMITED || k == PlannerKind::SNAKE_DYNAMIC;
    }

    enum class PassMode
    {
        OnPass,
        OnJump,
        OnWriggle,
        OnTransit
    };

    struct PassState
    {
        double y_p = 0.0;
        double theta_p = 0.0; ///< 0 or π
        int pass_index = 0;
        PassMode mode = PassMode::OnTransit;
    };

    enum class ConstraintMode
    {
        C,     ///< jump candidates
        F,     ///< sub-path candidates
        Fprime ///< F with a lower bound on y
    };

    /// Weeds of the weed list that satisfy the constraint set, in weed-id order.
    [[nodiscard]] std::vector<Weed> candidate_weeds (const WorldState &world, const PassState &pass, ConstraintMode mode, const MowerSpec &spec);

    /**
     * @brief Feasible jump at the current mower position, if any.
     *
     * The mower must be on the pass.  A jump qualifies when its start lies in
     * [x_m, x_m + ds) along the travel direction (the start is reached within
     * the next step), its end is strictly closer than the FOV depth and no
     * other listed weed lies in the pass strip it would skip.  The strip is
     * closed at |y - y_p| = B/2 because the implement mows that edge too.
     * Among feasible jumps the lowest weed wins, then the smallest x.
     */
    [[nodiscard]] std::optional<dubins::Jump> find_available_jump (const WorldState &world, const PassState &pass, const MowerSpec &spec);

    /**
     * @brief First valid CSC sub-path to a candidate weed, nearest in x first.
     *
     * Valid means the fixed word exists, the whole path lies inside the
     * pasture and the weed is ahead of the mower.
     */
    [[nodiscard]] std::optional<dubins::PathPlan> find_valid_subpath (const WorldState &world, const PassState &pass, const PastureSpec &pasture,
                                                                      const MowerSpec &spec, ConstraintMode mode);

    /// y of the next pass; the minimum over an empty weed list is +inf.
    /// @throws std::invalid_argument for BCP, BCP_TSP and REACT.
    [[nodiscard]] double next_pass_y (PlannerKind kind, double y_p, const std::vector<Weed> &weed_list, const PastureSpec &pasture,
                                      const MowerSpec &spec);

    /// End-of-pass termination test (REACT: odometer reached the BCP length).
    [[nodiscard]] bool is_terminated (PlannerKind kind, const PassState &pass, const WorldState &world, const PastureSpec &pasture,
                                      const MowerSpec &spec, double bcp_length);

    /// Pass ordinates of a boustrophedon sweep with the given spacing.
    [[nodiscard]] std::vector<double> bcp_pass_ys (const PastureSpec &pasture, double spacing);

    /// Boustrophedon coverage path from (0, spacing/2, 0), passes joined by shortest Dubins transits.
    [[nodiscard]] dubins::PathPlan build_bcp (const PastureSpec &pasture, double spacing, const MowerSpec &spec);

    /// Upper-bound BCP (spacing = implement width) length.
    [[nodiscard]] double bcp_length (const PastureSpec &pasture, const MowerSpec &spec);

    /// Raised when a run exceeds the path-length guard; indicates a planner bug.
    class PlannerAbort : public std::runtime_error
    {
      public:
        using std::runtime_error::runtime_error;
    };

    struct PassRecord
    {
        double y_p = 0.0;
        double theta_p = 0.0;
        double min_pending_y = 0.0; ///< lowest listed weed when y_p was chosen (+inf if none)
        double y_end = 0.0;         ///< mower y when the pass finished
    };

    struct InvariantReport
    {
        std::size_t checks = 0;
        std::vector<std::string> violations;

        [[nodiscard]] bool ok () const { return violations.empty (); }
    };

    /// The step-wise planning interface.
    class Planner
    {
      public:
        virtual ~Planner () = default;

        [[nodiscard]] virtual PlannerKind kind () const = 0;
        [[nodiscard]] virtual Pose start_pose () const = 0;

        /// Next pose (at most one step away) and the arc length travelled to reach it,
        /// or nothing once the episode is over.
        struct Step
        {
            Pose pose;
            double arc = 0.0;
        };
        [[nodiscard]] virtual std::optional<Step> next (const WorldState &world) = 0;

        /// Exact length of the path executed so far.
        [[nodiscard]] virtual double path_length () const = 0;

        [[nodiscard]] virtual const InvariantReport &invariants () const;
        [[nodiscard]] virtual const std::vector<PassRecord> &passes () const;

      protected:
        InvariantReport report_;
        std::vector<PassRecord> passes_;
    };

    struct PlannerContext
    {
        PastureSpec pasture;
        MowerSpec mower;
        double bcp_length = 0.0;
        std::uint64_t seed = 0; ///< used by REACT only
    };

    [[nodiscard]] std::unique_ptr<Planner> make_planner (PlannerKind kind, const PlannerContext &ctx);

    struct RunOptions
    {
        bool record_trajectory = true;
        double guard_factor = 5.0; ///< abort when the path exceeds this multiple of the BCP length
    };

    struct RunResult
    {
        PlannerKind kind = PlannerKind::BCP;
        std::vector<Pose> trajectory;
        WorldState world;
        double path_length = 0.0;
        double bcp_length = 0.0;
        std::size_t steps = 0;
        InvariantReport invariants;
        std::vector<PassRecord> passes;
    };

    /**
     * @brief Runs a full episode on the given weeds.
     * @throws PlannerAbort when the path grows beyond the guard.
     */
    [[nodiscard]] RunResult run_planner (PlannerKind kind, std::vector<Weed> weeds, const PastureSpec &pasture, const MowerSpec &spec,
                                         std::uint64_t seed, const RunOptions &options = {});

} // namespace mrp::planners
