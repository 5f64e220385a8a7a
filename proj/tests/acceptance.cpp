// Acceptance suite: one PASS/FAIL line per criterion.
//
// Exit status is 0 when the set of failing criteria equals the --expect-fail
// list (empty by default), 1 otherwise.  Criteria documented as unattainable
// are listed there by the ctest registration; they still print FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "dubins_oracle.hpp"
#include "mrp/dubins.hpp"
#include "mrp/harness.hpp"
#include "mrp/kinematics.hpp"
#include "mrp/planners.hpp"
#include "mrp/tsp.hpp"
#include "test_support.hpp"

using namespace mrp;
using harness::SweepGrid;
using harness::SweepRow;
using planners::PlannerKind;
using world::Distribution;

namespace
{
    // Tolerances.
    constexpr double kRuntimeLimitS = 300.0;       // criterion 1
    constexpr double kSsMowedMin = 99.0;           // criterion 3
    constexpr double kSslMowedMin = 95.0;          // criterion 3
    constexpr double kSavingsMax = 60.0;           // criterion 4
    constexpr double kConvergeLo = 90.0;           // criterion 5
    constexpr double kConvergeHi = 105.0;          // criterion 5
    constexpr double kDistGapMax = 5.0;            // criterion 6
    constexpr double kOracleTol = 1e-6;            // criterion 7
    constexpr double kCurvatureRelTol = 1e-6;      // criterion 7
    constexpr double kJumpTol = 1e-9;              // criterion 8
    constexpr double kTspRatioMax = 1.10;          // criterion 9
    constexpr double kTspOptTol = 1e-9;            // criterion 9
    constexpr double kClosureTol = 1e-3;           // criterion 10
    constexpr double kDerivTol = 1e-6;             // criterion 10
    constexpr double kRadiusTol = 1e-6;            // criterion 10
    constexpr double kFieldStraight = 720.0;       // criterion 11
    constexpr double kFieldStraightTol = 1e-6;     // criterion 11
    constexpr double kFieldLength = 897.0;         // criterion 11
    constexpr double kFieldRelTol = 0.10;          // criterion 11
    constexpr double kFieldJlLo = 30.0, kFieldJlHi = 70.0;
    constexpr double kFieldSsLo = 25.0, kFieldSsHi = 60.0;

    // Sample sizes.
    constexpr std::size_t kInvariantSeeds = 20;    // x 2 distributions x 5 densities = 200
    constexpr std::size_t kSnakeSeeds = 50;        // x 2 distributions = 100
    constexpr std::size_t kSavingsSeeds = 50;
    constexpr std::size_t kDensitySeeds = 20;      // criteria 5 and 6
    constexpr std::size_t kPosePairs = 1000;
    constexpr std::size_t kTspInstances = 200;
    constexpr std::size_t kFieldSeeds = 50;

    constexpr std::uint64_t kMasterSeed = 0;

    struct Outcome
    {
        bool pass = false;
        std::string detail;
    };

    double mean (const std::vector<double> &v)
    {
        double s = 0.0;
        for (const double x : v)
            s += x;
        return v.empty () ? NAN : s / static_cast<double> (v.size ());
    }

    double seconds_since (std::chrono::steady_clock::time_point t0)
    {
        return std::chrono::duration<double> (std::chrono::steady_clock::now () - t0).count ();
    }

    // Mean of a metric per (planner, distribution, n) over ok rows; failed rows are counted separately.
    struct CellKey
    {
        PlannerKind planner;
        Distribution dist;
        std::size_t n;
        auto operator<=> (const CellKey &) const = default;
    };

    struct CellStats
    {
        std::vector<double> pct, mowed, detected;
        std::size_t failed = 0;
    };

    std::map<CellKey, CellStats> by_cell (const std::vector<SweepRow> &rows)
    {
        std::map<CellKey, CellStats> cells;
        for (const auto &r : rows)
        {
            const auto &m = r.metrics;
            auto &c = cells[{m.planner, m.distribution, m.n_weeds}];
            if (!m.ok)
            {
                ++c.failed;
                continue;
            }
            c.pct.push_back (m.pct_of_bcp);
            c.mowed.push_back (m.weeds_mowed_pct);
            c.detected.push_back (m.weeds_detected_pct);
        }
        return cells;
    }

    std::size_t failed_rows (const std::vector<SweepRow> &rows)
    {
        return static_cast<std::size_t> (std::count_if (rows.begin (), rows.end (), [] (const SweepRow &r) { return !r.metrics.ok; }));
    }

    class Suite
    {
      public:
        Suite (unsigned workers, std::filesystem::path out) : workers_ (workers), out_ (std::move (out)) {}

        Outcome invariants ();
        Outcome jump_completeness ();
        Outcome snake_coverage ();
        Outcome savings ();
        Outcome convergence ();
        Outcome distribution_gap ();
        Outcome geometry ();
        Outcome jump_geometry ();
        Outcome tsp_oracle ();
        Outcome kinematics ();
        Outcome field ();
        Outcome determinism ();

      private:
        std::vector<SweepRow> sweep (const std::string &name, const SweepGrid &g);
        const std::vector<SweepRow> &density_rows ();

        SweepGrid savings_grid () const;
        SweepGrid field_grid () const;

        unsigned workers_;
        std::filesystem::path out_;

        // Criteria 1 and 2 share one batch of runs.
        struct InvariantBatch
        {
            std::size_t runs = 0, failed = 0, violating = 0, incomplete = 0;
            double seconds = 0.0, min_radius = INFINITY;
            std::string first_violation, first_incomplete;
        };
        std::optional<InvariantBatch> inv_;
        const InvariantBatch &invariant_batch ();

        std::optional<std::vector<SweepRow>> density_;
    };

    std::vector<SweepRow> Suite::sweep (const std::string &name, const SweepGrid &g)
    {
        auto rows = harness::run_sweep (g, workers_);
        if (!out_.empty ())
            harness::write_sweep (rows, out_ / name);
        return rows;
    }

    const Suite::InvariantBatch &Suite::invariant_batch ()
    {
        if (inv_)
            return *inv_;
        InvariantBatch b;
        const auto t0 = std::chrono::steady_clock::now ();
        const world::MowerSpec mower;
        for (const auto dist : {Distribution::Uniform, Distribution::GaussianClusters})
            for (const std::size_t n : {20, 40, 80, 160, 320})
                for (std::size_t rep = 0; rep < kInvariantSeeds; ++rep)
                    for (const auto kind : {PlannerKind::JUMP_HIGH, PlannerKind::JUMP_LOW})
                    {
                        harness::InstanceConfig c;
                        c.planner = kind;
                        c.n_weeds = n;
                        c.distribution = dist;
                        c.seed = harness::cell_seed (kMasterSeed, mower.turn_radius, mower.fov_depth, mower.fov_width, n, dist, rep);
                        c.keep_run = true;
                        const auto r = harness::run_instance (c);
                        ++b.runs;
                        const std::string where =
                            fmt::format ("{} {} n={} seed={}", planners::to_string (kind), world::to_string (dist), n, c.seed);
                        if (!r.metrics.ok)
                        {
                            ++b.failed;
                            if (b.first_violation.empty ())
                                b.first_violation = where + ": " + r.metrics.error;
                            continue;
                        }
                        if (!r.run->invariants.ok ())
                        {
                            ++b.violating;
                            if (b.first_violation.empty ())
                                b.first_violation = where + ": " + r.run->invariants.violations.front ();
                        }
                        if (r.run->world.counts ().mowed != n)
                        {
                            ++b.incomplete;
                            if (b.first_incomplete.empty ())
                                b.first_incomplete = fmt::format ("{}: {}/{} mowed", where, r.run->world.counts ().mowed, n);
                        }
                        b.min_radius = std::min (b.min_radius, oracle::min_osculating_radius (r.run->trajectory));
                    }
        b.seconds = seconds_since (t0);
        inv_ = b;
        return *inv_;
    }

    Outcome Suite::invariants ()
    {
        const auto &b = invariant_batch ();
        const bool pass = b.failed == 0 && b.violating == 0 && b.seconds < kRuntimeLimitS;
        std::string detail = fmt::format ("{} JUMP runs over 200 instances, {} failed, {} with invariant violations, {:.1f} s (limit {:.0f} s)",
                                          b.runs, b.failed, b.violating, b.seconds, kRuntimeLimitS);
        if (!b.first_violation.empty ())
            detail += "; first: " + b.first_violation;
        return {pass, detail};
    }

    Outcome Suite::jump_completeness ()
    {
        const auto &b = invariant_batch ();
        std::string detail = fmt::format ("{} of {} JUMP runs mowed every weed", b.runs - b.failed - b.incomplete, b.runs);
        if (!b.first_incomplete.empty ())
            detail += "; first miss: " + b.first_incomplete;
        return {b.failed == 0 && b.incomplete == 0, detail};
    }

    Outcome Suite::snake_coverage ()
    {
        SweepGrid g;
        g.n_weeds = {160};
        g.planners = {PlannerKind::SNAKE_STATIC, PlannerKind::SNAKE_STATIC_LIMITED};
        g.seeds_per_cell = kSnakeSeeds;
        g.master_seed = kMasterSeed;
        const auto rows = sweep ("snake_coverage", g);
        std::map<PlannerKind, std::vector<double>> mowed;
        for (const auto &r : rows)
            if (r.metrics.ok)
                mowed[r.metrics.planner].push_back (r.metrics.weeds_mowed_pct);
        const double ss = mean (mowed[PlannerKind::SNAKE_STATIC]), ssl = mean (mowed[PlannerKind::SNAKE_STATIC_LIMITED]);
        const std::size_t failed = failed_rows (rows);
        return {failed == 0 && ss >= kSsMowedMin && ssl >= kSslMowedMin,
                fmt::format ("n=160, {} instances: SS mean mowed {:.2f}% (>= {}), SSL {:.2f}% (>= {}), {} failed runs",
                             mowed[PlannerKind::SNAKE_STATIC].size (), ss, kSsMowedMin, ssl, kSslMowedMin, failed)};
    }

    SweepGrid Suite::savings_grid () const
    {
        SweepGrid g;
        g.n_weeds = {20};
        g.distributions = {Distribution::Uniform};
        g.planners = {PlannerKind::JUMP_LOW, PlannerKind::SNAKE_STATIC, PlannerKind::SNAKE_STATIC_LIMITED};
        g.seeds_per_cell = kSavingsSeeds;
        g.master_seed = kMasterSeed;
        return g;
    }

    Outcome Suite::savings ()
    {
        const auto rows = sweep ("savings", savings_grid ());
        const auto cells = by_cell (rows);
        bool pass = failed_rows (rows) == 0;
        std::string detail = fmt::format ("n=20 uniform, {} seeds, mean pct_of_bcp (<= {}):", kSavingsSeeds, kSavingsMax);
        for (const auto kind : savings_grid ().planners)
        {
            const double m = mean (cells.at ({kind, Distribution::Uniform, 20}).pct);
            pass = pass && m <= kSavingsMax;
            detail += fmt::format (" {} {:.2f}", planners::to_string (kind), m);
        }
        return {pass, detail};
    }

    const std::vector<SweepRow> &Suite::density_rows ()
    {
        if (!density_)
        {
            SweepGrid g;
            g.seeds_per_cell = kDensitySeeds;
            g.master_seed = kMasterSeed;
            density_ = sweep ("density", g);
        }
        return *density_;
    }

    Outcome Suite::convergence ()
    {
        const auto &rows = density_rows ();
        const auto cells = by_cell (rows);
        const auto &c = cells.at ({PlannerKind::JUMP_LOW, Distribution::Uniform, 640});
        const double m = mean (c.pct);
        return {c.failed == 0 && m >= kConvergeLo && m <= kConvergeHi,
                fmt::format ("n=640 uniform, {} seeds: JUMP_LOW mean pct_of_bcp {:.2f} (range [{}, {}])", c.pct.size (), m, kConvergeLo,
                             kConvergeHi)};
    }

    Outcome Suite::distribution_gap ()
    {
        const auto &rows = density_rows ();
        const auto cells = by_cell (rows);
        const SweepGrid g;
        bool pass = failed_rows (rows) == 0;
        double worst = 0.0;
        std::string worst_at, over;
        for (const auto kind : g.planners)
            for (const auto n : g.n_weeds)
            {
                const double gap = std::abs (mean (cells.at ({kind, Distribution::Uniform, n}).pct) -
                                             mean (cells.at ({kind, Distribution::GaussianClusters, n}).pct));
                if (!(gap <= kDistGapMax))
                {
                    pass = false;
                    over += fmt::format (" {}@{}={:.2f}", planners::to_string (kind), n, gap);
                }
                if (gap > worst)
                {
                    worst = gap;
                    worst_at = fmt::format ("{} n={}", planners::to_string (kind), n);
                }
            }
        std::string detail = fmt::format ("{} planners x {} densities, {} seeds per cell, {} failed runs: largest |U-G| {:.2f} points at {} (<= {})",
                                          g.planners.size (), g.n_weeds.size (), kDensitySeeds, failed_rows (rows), worst, worst_at, kDistGapMax);
        if (!over.empty ())
            detail += "; over:" + over;
        return {pass, detail};
    }

    Outcome Suite::geometry ()
    {
        std::mt19937_64 rng (7);
        std::uniform_real_distribution<double> coord (-10.0, 10.0), heading (-kPi, kPi), radius (0.5, 3.0);
        double worst_short = 0.0, worst_csc = 0.0, min_ratio = INFINITY;
        std::size_t csc_checked = 0, csc_existence_mismatch = 0;
        for (std::size_t i = 0; i < kPosePairs; ++i)
        {
            const Pose a{coord (rng), coord (rng), heading (rng)};
            const Pose b{coord (rng), coord (rng), heading (rng)};
            const double r = radius (rng);
            const oracle::OraclePose oa{a.x, a.y, a.theta}, ob{b.x, b.y, b.theta};

            const auto p = dubins::dubins_shortest (a, b, r);
            worst_short = std::max (worst_short, std::abs (p.length () - oracle::oracle_dubins_length (oa, ob, r)));
            min_ratio = std::min (min_ratio, oracle::min_osculating_radius (dubins::sample_path (p, 0.05)) / r);

            for (const auto w : {dubins::Word::LSR, dubins::Word::RSL})
            {
                const auto c = dubins::csc_constrained (a, b, w, r);
                const auto o = oracle::oracle_word_length (oa, ob, dubins::to_string (w), r);
                if (c.has_value () != o.has_value ())
                {
                    ++csc_existence_mismatch;
                    continue;
                }
                if (!c)
                    continue;
                ++csc_checked;
                worst_csc = std::max (worst_csc, std::abs (c->length () - *o));
                min_ratio = std::min (min_ratio, oracle::min_osculating_radius (dubins::sample_path (*c, 0.05)) / r);
            }
        }
        // Planner trajectories from criterion 1 are part of "all sampled trajectories".
        const double traj_ratio = invariant_batch ().min_radius / world::MowerSpec{}.turn_radius;
        const bool pass = worst_short <= kOracleTol && worst_csc <= kOracleTol && csc_existence_mismatch == 0 &&
                          min_ratio >= 1.0 - kCurvatureRelTol && traj_ratio >= 1.0 - kCurvatureRelTol;
        return {pass, fmt::format ("{} pose pairs: shortest max err {:.2e}, LSR/RSL max err {:.2e} over {} paths, {} existence mismatches "
                                   "(tol {:.0e}); min sampled radius/R {:.9f} on Dubins paths, {:.9f} on planner trajectories",
                                   kPosePairs, worst_short, worst_csc, csc_checked, csc_existence_mismatch, kOracleTol, min_ratio, traj_ratio)};
    }

    Outcome Suite::jump_geometry ()
    {
        const double r = 2.0, y_p = 10.0;
        const auto j = dubins::build_jump ({30.0, y_p + 2.0 * r}, y_p, 0.0, r);
        if (!j)
            return {false, "no jump for the dy = 2R case"};
        const double err = std::abs (j->length () - kTwoPi * r);
        return {err <= kJumpTol, fmt::format ("dy = 2R, R = {}: length {:.12f}, 2piR {:.12f}, error {:.1e} (tol {:.0e})", r, j->length (),
                                              kTwoPi * r, err, kJumpTol)};
    }

    Outcome Suite::tsp_oracle ()
    {
        std::mt19937_64 rng (11);
        std::uniform_int_distribution<std::size_t> size (1, 9);
        std::uniform_real_distribution<double> x (0.0, 100.0), y (0.0, 40.0);
        double worst = 0.0;
        std::size_t over = 0, shorter = 0;
        for (std::size_t i = 0; i < kTspInstances; ++i)
        {
            const Point start{x (rng), y (rng)};
            std::vector<Point> pts (size (rng));
            for (auto &p : pts)
                p = {x (rng), y (rng)};
            const double h = tsp::heuristic_tour (start, pts).length, b = tsp::brute_force_tour (start, pts).length;
            const double ratio = b > 0 ? h / b : 1.0;
            worst = std::max (worst, ratio);
            over += ratio > kTspRatioMax ? 1 : 0;
            shorter += h < b - kTspOptTol ? 1 : 0;
        }
        return {over == 0 && shorter == 0, fmt::format ("{} instances, n in [1, 9]: worst heuristic/optimal {:.4f} (<= {}), {} over, {} shorter than optimal",
                                                        kTspInstances, worst, kTspRatioMax, over, shorter)};
    }

    Outcome Suite::kinematics ()
    {
        using namespace mrp::kinematics;
        const double dt = 1e-3;
        double closure = 0.0, deriv = 0.0, radius = 0.0;
        for (const double delta : {-0.6, -0.25, 0.3, 0.5})
        {
            const ControlInput u{1.2, delta, 1.5};
            const double r = turn_radius (u);
            const double expected_r = u.wheelbase / std::tan (delta);
            radius = std::max (radius, std::abs (r - expected_r));

            const VehicleState s0{3.0, -2.0, 0.8};
            const double period = kTwoPi * std::abs (r) / u.v;
            const auto traj = integrate (s0, u, period, dt);
            closure = std::max (closure, std::hypot (traj.back ().x - s0.x, traj.back ().y - s0.y));

            // Negative delta turns left: the centre is on the left of the initial heading.
            const double side = delta < 0 ? 1.0 : -1.0;
            const Point c{s0.x - side * std::abs (r) * std::sin (s0.theta), s0.y + side * std::abs (r) * std::cos (s0.theta)};
            for (const auto &s : traj)
                radius = std::max (radius, std::abs (std::hypot (s.x - c.x, s.y - c.y) - std::abs (expected_r)));

            for (std::size_t k = 1; k + 1 < traj.size (); k += 53)
            {
                const auto d = state_derivative (traj[k], u);
                deriv = std::max ({deriv, std::abs ((traj[k + 1].x - traj[k - 1].x) / (2 * dt) - d.dx),
                                   std::abs ((traj[k + 1].y - traj[k - 1].y) / (2 * dt) - d.dy),
                                   std::abs (wrap_to_pi (traj[k + 1].theta - traj[k - 1].theta) / (2 * dt) - d.dtheta)});
            }
        }
        return {closure < kClosureTol && deriv <= kDerivTol && radius <= kRadiusTol,
                fmt::format ("closure {:.2e} m (< {:.0e}), derivative err {:.2e} (<= {:.0e}), radius err vs L/tan(delta) {:.2e} (<= {:.0e})", closure,
                             kClosureTol, deriv, kDerivTol, radius, kRadiusTol)};
    }

    SweepGrid Suite::field_grid () const
    {
        SweepGrid g;
        g.pasture = {36.0, 26.0};
        g.mower.implement_width = 1.3;
        g.turn_radius = {1.5};
        g.n_weeds = {14};
        g.distributions = {Distribution::Uniform};
        g.planners = {PlannerKind::JUMP_LOW, PlannerKind::SNAKE_STATIC};
        g.seeds_per_cell = kFieldSeeds;
        g.master_seed = kMasterSeed;
        return g;
    }

    Outcome Suite::field ()
    {
        const auto g = field_grid ();
        world::MowerSpec mower = g.mower;
        mower.turn_radius = g.turn_radius.front ();
        const auto bcp = planners::build_bcp (g.pasture, mower.implement_width, mower);
        std::size_t passes = 0;
        double straight = 0.0;
        for (const auto &seg : bcp.segments ())
            if (const auto *line = std::get_if<dubins::LineSegment> (&seg); line && std::abs (line->length () - g.pasture.length) < 1e-9)
            {
                ++passes;
                straight += line->length ();
            }
        const double total = bcp.length ();

        const auto rows = sweep ("field", g);
        const auto cells = by_cell (rows);
        const double jl = mean (cells.at ({PlannerKind::JUMP_LOW, Distribution::Uniform, 14}).pct);
        const double ss = mean (cells.at ({PlannerKind::SNAKE_STATIC, Distribution::Uniform, 14}).pct);

        const bool pass = passes == 20 && std::abs (straight - kFieldStraight) <= kFieldStraightTol &&
                          std::abs (total - kFieldLength) <= kFieldRelTol * kFieldLength && failed_rows (rows) == 0 && jl >= kFieldJlLo &&
                          jl <= kFieldJlHi && ss >= kFieldSsLo && ss <= kFieldSsHi;
        return {pass, fmt::format ("36x26 m, B=1.3, R=1.5: {} passes, {:.6f} m straight, total {:.2f} m ({:+.2f}% of {}); 14 weeds, {} seeds: "
                                   "JUMP_LOW {:.2f}% in [{}, {}], SNAKE_STATIC {:.2f}% in [{}, {}]",
                                   passes, straight, total, 100.0 * (total - kFieldLength) / kFieldLength, kFieldLength, kFieldSeeds, jl,
                                   kFieldJlLo, kFieldJlHi, ss, kFieldSsLo, kFieldSsHi)};
    }

    Outcome Suite::determinism ()
    {
        // Repeat two acceptance sweeps, once serially and once on several workers.
        std::size_t compared = 0, differing = 0;
        for (const auto &g : {savings_grid (), field_grid ()})
        {
            const auto a = harness::run_sweep (g, 1);
            const auto b = harness::run_sweep (g, std::max (2u, workers_));
            for (const auto &[x, y] : {std::pair{harness::results_csv (a), harness::results_csv (b)},
                                       std::pair{harness::summary_csv (a), harness::summary_csv (b)}})
            {
                ++compared;
                differing += x == y ? 0 : 1;
            }
        }
        return {differing == 0, fmt::format ("{} CSV files regenerated with 1 and {} workers, {} differ", compared, std::max (2u, workers_), differing)};
    }

    std::set<int> parse_list (const std::string &s)
    {
        std::set<int> out;
        std::stringstream in (s);
        std::string item;
        while (std::getline (in, item, ','))
            if (!item.empty ())
                out.insert (std::stoi (item));
        return out;
    }
} // namespace

int main (int argc, char **argv)
{
    CLI::App app{"Acceptance criteria"};
    std::string expect_fail, only, out;
    unsigned workers = std::max (1u, std::thread::hardware_concurrency ());
    app.add_option ("--expect-fail", expect_fail, "comma-separated criteria known to fail");
    app.add_option ("--only", only, "comma-separated criteria to run (default all)");
    app.add_option ("--out", out, "directory for the sweep CSV files");
    app.add_option ("--workers", workers, "worker threads")->capture_default_str ();
    CLI11_PARSE (app, argc, argv);

    std::set<int> expected, selected;
    try
    {
        expected = parse_list (expect_fail);
        selected = parse_list (only);
    }
    catch (const std::exception &)
    {
        fmt::print (stderr, "bad criterion list\n");
        return 2;
    }

    Suite suite (workers, out);
    const std::vector<std::pair<std::string, Outcome (Suite::*) ()>> criteria = {
        {"JUMP invariants", &Suite::invariants},
        {"JUMP completeness", &Suite::jump_completeness},
        {"SNAKE coverage", &Suite::snake_coverage},
        {"path-length savings", &Suite::savings},
        {"density convergence", &Suite::convergence},
        {"distribution insensitivity", &Suite::distribution_gap},
        {"geometry oracle", &Suite::geometry},
        {"jump geometry", &Suite::jump_geometry},
        {"TSP oracle", &Suite::tsp_oracle},
        {"kinematics", &Suite::kinematics},
        {"field-scale BCP", &Suite::field},
        {"determinism", &Suite::determinism},
    };

    std::set<int> failed;
    for (std::size_t i = 0; i < criteria.size (); ++i)
    {
        const int id = static_cast<int> (i + 1);
        if (!selected.empty () && !selected.contains (id))
            continue;
        const auto t0 = std::chrono::steady_clock::now ();
        Outcome o;
        try
        {
            o = (suite.*criteria[i].second) ();
        }
        catch (const std::exception &e)
        {
            o = {false, fmt::format ("exception: {}", e.what ())};
        }
        if (!o.pass)
            failed.insert (id);
        fmt::print ("{} criterion {:2}: {}: {} [{:.1f} s]{}\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first, o.detail, seconds_since (t0),
                    !o.pass && expected.contains (id) ? " (expected)" : "");
        std::fflush (stdout);
    }

    std::set<int> expected_run;
    for (const int id : expected)
        if (selected.empty () || selected.contains (id))
            expected_run.insert (id);
    for (const int id : expected_run)
        if (!failed.contains (id))
            fmt::print ("NOTE criterion {} was expected to fail but passed\n", id);
    return failed == expected_run ? 0 : 1;
}
