// mrp: run single mowing episodes, parameter sweeps and plots.
//
// Exit codes: 0 success, 2 usage error, 1 run failure.

#include <cstdio>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "mrp/harness.hpp"

using namespace mrp;
using namespace mrp::harness;

namespace
{
    constexpr int kUsage = 2;
    constexpr int kFailure = 1;

    struct RunArgs
    {
        std::string planner = "JUMP_LOW";
        double L = 0, W = 0, R = 0, B = 0, Sd = 0, Sw = 0;
        std::size_t n_weeds = 20;
        std::string dist = "uniform";
        double sigma = world::kDefaultClusterSigma;
        std::uint64_t seed = 0;
        std::string svg, scenario;
    };

    int do_run (const RunArgs &a, const CLI::App &cmd)
    {
        const auto kind = planners::parse_planner (a.planner);
        InstanceConfig c;
        if (!a.scenario.empty ())
            c = config_from_scenario (load_scenario (a.scenario), kind);
        c.planner = kind;
        auto given = [&cmd] (const char *name) { return cmd.count (name) > 0; };
        if (given ("--L"))
            c.pasture.length = a.L;
        if (given ("--W"))
            c.pasture.width = a.W;
        if (given ("--R"))
            c.mower.turn_radius = a.R;
        if (given ("--B"))
            c.mower.implement_width = a.B;
        if (given ("--Sd"))
            c.mower.fov_depth = a.Sd;
        if (given ("--Sw"))
            c.mower.fov_width = a.Sw;
        if (given ("--n-weeds") || a.scenario.empty ())
            c.n_weeds = a.n_weeds;
        if (given ("--dist") || a.scenario.empty ())
            c.distribution = world::parse_distribution (a.dist);
        if (given ("--sigma"))
            c.sigma = a.sigma;
        if (given ("--seed") || a.scenario.empty ())
            c.seed = a.seed;
        if (given ("--n-weeds") || given ("--dist"))
            c.weeds.reset ();
        c.pasture.validate ();
        c.mower.validate ();
        c.keep_run = !a.svg.empty ();

        const auto r = run_instance (c);
        const Metrics &m = r.metrics;
        if (!m.ok)
        {
            fmt::print (stderr, "run failed: {}\n", m.error);
            return kFailure;
        }
        fmt::print ("planner={} seed={} n_weeds={} distribution={} path_length_m={:.3f} bcp_length_m={:.3f} pct_of_bcp={:.2f} "
                    "weeds_detected_pct={:.2f} weeds_mowed_pct={:.2f} wall_time_s={:.3f}\n",
                    planners::to_string (m.planner), m.seed, m.n_weeds, world::to_string (m.distribution), m.path_length_m, m.bcp_length_m,
                    m.pct_of_bcp, m.weeds_detected_pct, m.weeds_mowed_pct, m.wall_time_s);
        if (!a.svg.empty ())
            write_text (a.svg, render_run (c.pasture, *r.run));
        return 0;
    }

    struct SweepArgs
    {
        std::string grid, out;
        std::size_t seeds = 0;
        unsigned workers = std::max (1u, std::thread::hardware_concurrency ());
    };

    int do_sweep (const SweepArgs &a)
    {
        SweepGrid g = a.grid.empty () ? SweepGrid{} : load_grid (a.grid);
        if (a.seeds > 0)
            g.seeds_per_cell = a.seeds;
        const auto rows = run_sweep (g, a.workers);
        write_sweep (rows, a.out);
        std::size_t failed = 0;
        for (const auto &r : rows)
            failed += r.metrics.ok ? 0 : 1;
        fmt::print ("{} runs, {} failed; wrote {}/results.csv, summary.csv, timings.csv\n", rows.size (), failed, a.out);
        return failed == 0 ? 0 : kFailure;
    }

    struct PlotArgs
    {
        std::string csv, x = "n_weeds", y = "pct_of_bcp", out;
    };

    int do_plot (const PlotArgs &a)
    {
        write_text (a.out, render_trend (parse_csv (read_text (a.csv)), a.x, a.y));
        return 0;
    }
} // namespace

int main (int argc, char **argv)
{
    CLI::App app{"Online mowing planners: episodes, sweeps and plots"};
    app.require_subcommand (1);

    RunArgs ra;
    auto *run = app.add_subcommand ("run", "Run one episode and print its metrics");
    run->add_option ("--planner", ra.planner, "BCP, BCP_TSP, REACT, JUMP_HIGH|JH, JUMP_LOW|JL, SNAKE_STATIC|SS, SNAKE_STATIC_LIMITED|SSL, SNAKE_DYNAMIC|SD")
        ->capture_default_str ();
    run->add_option ("--L", ra.L, "pasture length [m]");
    run->add_option ("--W", ra.W, "pasture width [m]");
    run->add_option ("--R", ra.R, "minimum turn radius [m]");
    run->add_option ("--B", ra.B, "implement width [m]");
    run->add_option ("--Sd", ra.Sd, "FOV depth [m]");
    run->add_option ("--Sw", ra.Sw, "FOV width [m]");
    run->add_option ("--n-weeds", ra.n_weeds, "number of weeds")->capture_default_str ();
    run->add_option ("--dist", ra.dist, "uniform | gauss")->capture_default_str ();
    run->add_option ("--sigma", ra.sigma, "cluster spread for gauss [m]")->capture_default_str ();
    run->add_option ("--seed", ra.seed, "instance seed")->capture_default_str ();
    run->add_option ("--svg", ra.svg, "write a trajectory plot");
    run->add_option ("--json-scenario", ra.scenario, "scenario file; explicit flags override it");

    SweepArgs sa;
    auto *sweep = app.add_subcommand ("sweep", "Run a parameter grid and write CSV files");
    sweep->add_option ("--grid", sa.grid, "grid JSON (defaults: n in {20..640}, both distributions, all planners)");
    sweep->add_option ("--seeds", sa.seeds, "seeds per cell (overrides the grid)");
    sweep->add_option ("--out", sa.out, "output directory")->required ();
    sweep->add_option ("--workers", sa.workers, "worker threads")->capture_default_str ();

    PlotArgs pa;
    auto *plot = app.add_subcommand ("plot", "Trend chart from a results CSV");
    plot->add_option ("--csv", pa.csv, "results.csv from sweep")->required ();
    plot->add_option ("--x", pa.x, "x column")->capture_default_str ();
    plot->add_option ("--y", pa.y, "y column")->capture_default_str ();
    plot->add_option ("--out", pa.out, "SVG output")->required ();

    try
    {
        app.parse (argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        return app.exit (e) == 0 ? 0 : kUsage;
    }

    try
    {
        if (*run)
            return do_run (ra, *run);
        if (*sweep)
            return do_sweep (sa);
        return do_plot (pa);
    }
    catch (const std::invalid_argument &e) // includes UsageError
    {
        fmt::print (stderr, "error: {}\n", e.what ());
        return kUsage;
    }
    catch (const std::exception &e)
    {
        fmt::print (stderr, "error: {}\n", e.what ());
        return kFailure;
    }
}
