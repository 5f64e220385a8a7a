#pragma once
/**
 * @file   harness.hpp
 * @brief  Experiment runner: single instances, parameter-grid sweeps with CSV
 *         output, and SVG renderings of runs and trends.
 */

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mrp/planners.hpp"
#include "mrp/scenario.hpp"

namespace mrp::harness
{
    using planners::PlannerKind;
    using world::Distribution;

    /// Bad command-line or file input (CLI exit code 2).
    class UsageError : public std::invalid_argument
    {
      public:
        using std::invalid_argument::invalid_argument;
    };

    struct InstanceConfig
    {
        PlannerKind planner = PlannerKind::JUMP_LOW;
        world::PastureSpec pasture;
        world::MowerSpec mower;
        std::size_t n_weeds = 20;
        Distribution distribution = Distribution::Uniform;
        double sigma = world::kDefaultClusterSigma;
        std::uint64_t seed = 0; ///< weed generation and planner randomness
        std::optional<std::vector<world::Weed>> weeds; ///< explicit field; overrides the generator
        bool keep_run = false;                          ///< keep trajectory and final world
    };

    /// Run configuration from a scenario file (explicit weeds or generator recipe).
    [[nodiscard]] InstanceConfig config_from_scenario (const Scenario &s, PlannerKind planner);

    struct Metrics
    {
        PlannerKind planner = PlannerKind::BCP;
        std::uint64_t seed = 0;
        std::size_t n_weeds = 0;
        Distribution distribution = Distribution::Uniform;
        double turn_radius = 0.0;
        double fov_depth = 0.0;
        double fov_width = 0.0;
        double path_length_m = 0.0;
        double bcp_length_m = 0.0;
        double pct_of_bcp = 0.0;
        double weeds_detected_pct = 0.0; ///< 100 on an empty field
        double weeds_mowed_pct = 0.0;    ///< 100 on an empty field
        double wall_time_s = 0.0;
        bool ok = true;
        std::string error; ///< set when !ok
    };

    struct InstanceResult
    {
        Metrics metrics;
        std::optional<planners::RunResult> run; ///< only with keep_run and ok
    };

    /// Never throws for planner failures; they come back as !metrics.ok.
    [[nodiscard]] InstanceResult run_instance (const InstanceConfig &config);

    struct SweepGrid
    {
        std::vector<double> turn_radius{2.0};
        std::vector<double> fov_depth{12.0};
        std::vector<double> fov_width{12.0};
        std::vector<std::size_t> n_weeds{20, 40, 80, 160, 320, 640};
        std::vector<Distribution> distributions{Distribution::Uniform, Distribution::GaussianClusters};
        std::vector<PlannerKind> planners{std::begin (planners::kAllPlanners), std::end (planners::kAllPlanners)};
        std::size_t seeds_per_cell = 20;
        std::uint64_t master_seed = 0;
        world::PastureSpec pasture;
        world::MowerSpec mower; ///< B, v, ds; R, Sd and Sw come from the lists
        double sigma = world::kDefaultClusterSigma;

        /// @throws UsageError on empty lists or invalid specs.
        void validate () const;
    };

    /**
     * Keys (all optional): R, Sd, Sw, n_weeds, distributions, planners (lists),
     * seeds_per_cell, master_seed, L, W, B, v, ds, sigma.
     * @throws UsageError on malformed input.
     */
    [[nodiscard]] SweepGrid parse_grid (const std::string &json_text);
    [[nodiscard]] SweepGrid load_grid (const std::filesystem::path &path);

    /// Seed of one replicate of a cell; depends on cell values, not on the grid layout.
    [[nodiscard]] std::uint64_t cell_seed (std::uint64_t master, double turn_radius, double fov_depth, double fov_width, std::size_t n_weeds,
                                           Distribution dist, std::size_t replicate);

    struct SweepRow
    {
        std::size_t replicate = 0;
        Metrics metrics;
    };

    /// All rows in grid order (R, Sd, Sw, n, distribution, replicate, planner), independent of @p workers.
    [[nodiscard]] std::vector<SweepRow> run_sweep (const SweepGrid &grid, unsigned workers = 1);

    inline constexpr int kCsvSchema = 1;

    [[nodiscard]] std::string results_csv (const std::vector<SweepRow> &rows);
    [[nodiscard]] std::string summary_csv (const std::vector<SweepRow> &rows);
    [[nodiscard]] std::string timings_csv (const std::vector<SweepRow> &rows);

    /// Writes results.csv, summary.csv and timings.csv into @p dir (created if missing).
    void write_sweep (const std::vector<SweepRow> &rows, const std::filesystem::path &dir);

    /// Parsed CSV: header plus rows of string cells.
    struct CsvTable
    {
        std::vector<std::string> header;
        std::vector<std::vector<std::string>> rows;

        /// @throws UsageError if the column does not exist.
        [[nodiscard]] std::size_t column (const std::string &name) const;
    };

    [[nodiscard]] CsvTable parse_csv (const std::string &text);

    /**
     * @brief Line chart of @p y_field against @p x_field, one series per planner,
     *        error bars of ±1 s.d.  Reads a results CSV; failed rows are skipped.
     * @throws UsageError on unknown fields or when there are no data rows.
     */
    [[nodiscard]] std::string render_trend (const CsvTable &results, const std::string &x_field, const std::string &y_field = "pct_of_bcp");

    /// Pasture outline, weeds coloured by final status and the mower trajectory.
    [[nodiscard]] std::string render_run (const world::PastureSpec &pasture, const planners::RunResult &run);

    void write_text (const std::filesystem::path &path, const std::string &text);
    [[nodiscard]] std::string read_text (const std::filesystem::path &path);

} // namespace mrp::harness
