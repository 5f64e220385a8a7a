#include "mrp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>
#include <tuple>

#include <fmt/format.h>
#include <json.hpp>

#include "mrp/seed.hpp"

namespace mrp::harness
{
    using nlohmann::json;

    namespace
    {
        double percent (std::size_t part, std::size_t whole) { return whole == 0 ? 100.0 : 100.0 * static_cast<double> (part) / static_cast<double> (whole); }

        // Shortest round-trip form, so reruns are byte-identical and values parse back exactly.
        std::string num (double v) { return std::isfinite (v) ? fmt::format ("{}", v) : std::string (); }

        std::string quote (const std::string &s)
        {
            if (s.find_first_of (",\"\n") == std::string::npos)
                return s;
            std::string out = "\"";
            for (const char c : s)
            {
                if (c == '"')
                    out += '"';
                out += c;
            }
            return out + '"';
        }

        template <typename T> std::vector<T> list_or (const json &j, const char *key, std::vector<T> fallback)
        {
            if (!j.contains (key))
                return fallback;
            const auto &v = j.at (key);
            if (!v.is_array ())
                return {v.get<T> ()};
            return v.get<std::vector<T>> ();
        }

        struct MeanSd
        {
            double mean = 0.0;
            double sd = 0.0;
        };

        MeanSd mean_sd (const std::vector<double> &v)
        {
            MeanSd r;
            if (v.empty ())
                return {std::nan (""), std::nan ("")};
            for (const double x : v)
                r.mean += x;
            r.mean /= static_cast<double> (v.size ());
            if (v.size () > 1)
            {
                double ss = 0.0;
                for (const double x : v)
                    ss += (x - r.mean) * (x - r.mean);
                r.sd = std::sqrt (ss / static_cast<double> (v.size () - 1));
            }
            return r;
        }

        const char *kResultsHeader = "schema,planner,distribution,n_weeds,R,Sd,Sw,replicate,seed,status,path_length_m,bcp_length_m,pct_of_bcp,"
                                     "weeds_detected_pct,weeds_mowed_pct,error";
    } // namespace

    InstanceConfig config_from_scenario (const Scenario &s, PlannerKind planner)
    {
        InstanceConfig c;
        c.planner = planner;
        c.pasture = s.pasture;
        c.mower = s.mower;
        if (const auto *g = std::get_if<WeedGenerator> (&s.weeds))
        {
            c.n_weeds = g->n;
            c.distribution = g->distribution;
            c.sigma = g->sigma;
            c.seed = g->seed;
        }
        else
        {
            c.weeds = std::get<std::vector<world::Weed>> (s.weeds);
            c.n_weeds = c.weeds->size ();
        }
        return c;
    }

    InstanceResult run_instance (const InstanceConfig &config)
    {
        InstanceResult out;
        Metrics &m = out.metrics;
        m.planner = config.planner;
        m.seed = config.seed;
        m.distribution = config.distribution;
        m.n_weeds = config.weeds ? config.weeds->size () : config.n_weeds;
        m.turn_radius = config.mower.turn_radius;
        m.fov_depth = config.mower.fov_depth;
        m.fov_width = config.mower.fov_width;
        m.path_length_m = m.bcp_length_m = m.pct_of_bcp = m.weeds_detected_pct = m.weeds_mowed_pct = std::nan ("");

        const auto t0 = std::chrono::steady_clock::now ();
        try
        {
            auto weeds = config.weeds ? *config.weeds
                                      : world::generate_weeds (config.n_weeds, config.distribution, config.pasture, config.seed, config.sigma);
            planners::RunOptions opts;
            opts.record_trajectory = config.keep_run;
            auto run = planners::run_planner (config.planner, std::move (weeds), config.pasture, config.mower, config.seed, opts);
            const auto c = run.world.counts ();
            m.path_length_m = run.path_length;
            m.bcp_length_m = run.bcp_length;
            m.pct_of_bcp = 100.0 * run.path_length / run.bcp_length;
            m.weeds_detected_pct = percent (c.detected + c.mowed, m.n_weeds);
            m.weeds_mowed_pct = percent (c.mowed, m.n_weeds);
            if (config.keep_run)
                out.run = std::move (run);
        }
        catch (const std::exception &e)
        {
            m.ok = false;
            m.error = e.what ();
        }
        m.wall_time_s = std::chrono::duration<double> (std::chrono::steady_clock::now () - t0).count ();
        return out;
    }

    void SweepGrid::validate () const
    {
        if (turn_radius.empty () || fov_depth.empty () || fov_width.empty () || n_weeds.empty () || distributions.empty () || planners.empty ())
            throw UsageError ("sweep grid lists must be nonempty");
        if (seeds_per_cell == 0)
            throw UsageError ("seeds_per_cell must be positive");
        try
        {
            pasture.validate ();
            for (const double r : turn_radius)
                for (const double d : fov_depth)
                    for (const double w : fov_width)
                    {
                        auto m = mower;
                        m.turn_radius = r;
                        m.fov_depth = d;
                        m.fov_width = w;
                        m.validate ();
                    }
        }
        catch (const std::invalid_argument &e)
        {
            throw UsageError (e.what ());
        }
    }

    SweepGrid parse_grid (const std::string &json_text)
    {
        SweepGrid g;
        try
        {
            const json j = json::parse (json_text);
            if (!j.is_object ())
                throw UsageError ("sweep grid must be a JSON object");
            g.turn_radius = list_or<double> (j, "R", g.turn_radius);
            g.fov_depth = list_or<double> (j, "Sd", g.fov_depth);
            g.fov_width = list_or<double> (j, "Sw", g.fov_width);
            g.n_weeds = list_or<std::size_t> (j, "n_weeds", g.n_weeds);
            if (j.contains ("distributions"))
            {
                g.distributions.clear ();
                for (const auto &d : list_or<std::string> (j, "distributions", {}))
                    g.distributions.push_back (world::parse_distribution (d));
            }
            if (j.contains ("planners"))
            {
                g.planners.clear ();
                for (const auto &p : list_or<std::string> (j, "planners", {}))
                    g.planners.push_back (planners::parse_planner (p));
            }
            g.seeds_per_cell = j.value ("seeds_per_cell", g.seeds_per_cell);
            g.master_seed = j.value ("master_seed", g.master_seed);
            g.pasture.length = j.value ("L", g.pasture.length);
            g.pasture.width = j.value ("W", g.pasture.width);
            g.mower.implement_width = j.value ("B", g.mower.implement_width);
            g.mower.speed = j.value ("v", g.mower.speed);
            g.mower.step = j.value ("ds", g.mower.step);
            g.sigma = j.value ("sigma", g.sigma);
        }
        catch (const json::exception &e)
        {
            throw UsageError (std::string ("bad sweep grid: ") + e.what ());
        }
        catch (const UsageError &)
        {
            throw;
        }
        catch (const std::invalid_argument &e)
        {
            throw UsageError (std::string ("bad sweep grid: ") + e.what ());
        }
        g.validate ();
        return g;
    }

    SweepGrid load_grid (const std::filesystem::path &path) { return parse_grid (read_text (path)); }

    std::uint64_t cell_seed (std::uint64_t master, double turn_radius, double fov_depth, double fov_width, std::size_t n_weeds, Distribution dist,
                             std::size_t replicate)
    {
        return mix_seed ({master, std::bit_cast<std::uint64_t> (turn_radius), std::bit_cast<std::uint64_t> (fov_depth),
                          std::bit_cast<std::uint64_t> (fov_width), n_weeds, static_cast<std::uint64_t> (dist), replicate});
    }

    std::vector<SweepRow> run_sweep (const SweepGrid &grid, unsigned workers)
    {
        grid.validate ();
        std::vector<InstanceConfig> tasks;
        std::vector<std::size_t> reps;
        for (const double r : grid.turn_radius)
            for (const double d : grid.fov_depth)
                for (const double w : grid.fov_width)
                    for (const auto n : grid.n_weeds)
                        for (const auto dist : grid.distributions)
                            for (std::size_t rep = 0; rep < grid.seeds_per_cell; ++rep)
                                for (const auto kind : grid.planners)
                                {
                                    InstanceConfig c;
                                    c.planner = kind;
                                    c.pasture = grid.pasture;
                                    c.mower = grid.mower;
                                    c.mower.turn_radius = r;
                                    c.mower.fov_depth = d;
                                    c.mower.fov_width = w;
                                    c.n_weeds = n;
                                    c.distribution = dist;
                                    c.sigma = grid.sigma;
                                    c.seed = cell_seed (grid.master_seed, r, d, w, n, dist, rep);
                                    tasks.push_back (std::move (c));
                                    reps.push_back (rep);
                                }

        std::vector<SweepRow> rows (tasks.size ());
        std::atomic<std::size_t> next{0};
        auto work = [&] {
            for (std::size_t i = next++; i < tasks.size (); i = next++)
                rows[i] = {reps[i], run_instance (tasks[i]).metrics};
        };
        const unsigned n_threads = std::max (1u, std::min<unsigned> (workers, static_cast<unsigned> (tasks.size ())));
        {
            std::vector<std::jthread> pool;
            for (unsigned t = 1; t < n_threads; ++t)
                pool.emplace_back (work);
            work ();
        }
        return rows;
    }

    std::string results_csv (const std::vector<SweepRow> &rows)
    {
        std::string out = std::string (kResultsHeader) + '\n';
        for (const auto &row : rows)
        {
            const Metrics &m = row.metrics;
            out += fmt::format ("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", kCsvSchema, planners::to_string (m.planner),
                                world::to_string (m.distribution), m.n_weeds, num (m.turn_radius), num (m.fov_depth), num (m.fov_width), row.replicate,
                                m.seed, m.ok ? "ok" : "failed", num (m.path_length_m), num (m.bcp_length_m), num (m.pct_of_bcp),
                                num (m.weeds_detected_pct), num (m.weeds_mowed_pct), quote (m.error));
        }
        return out;
    }

    std::string summary_csv (const std::vector<SweepRow> &rows)
    {
        using Key = std::tuple<std::string, std::string, std::size_t, double, double, double>;
        std::vector<Key> order;
        std::map<Key, std::vector<const Metrics *>> groups;
        for (const auto &row : rows)
        {
            const Metrics &m = row.metrics;
            const Key k{std::string (planners::to_string (m.planner)), std::string (world::to_string (m.distribution)), m.n_weeds, m.turn_radius,
                        m.fov_depth, m.fov_width};
            auto [it, fresh] = groups.try_emplace (k);
            if (fresh)
                order.push_back (k);
            it->second.push_back (&m);
        }

        std::string out = "schema,planner,distribution,n_weeds,R,Sd,Sw,runs,failed,pct_of_bcp_mean,pct_of_bcp_sd,weeds_detected_pct_mean,"
                          "weeds_detected_pct_sd,weeds_mowed_pct_mean,weeds_mowed_pct_sd\n";
        for (const auto &k : order)
        {
            std::vector<double> pct, det, mowed;
            std::size_t failed = 0;
            for (const auto *m : groups[k])
            {
                if (!m->ok)
                {
                    ++failed;
                    continue;
                }
                pct.push_back (m->pct_of_bcp);
                det.push_back (m->weeds_detected_pct);
                mowed.push_back (m->weeds_mowed_pct);
            }
            const auto p = mean_sd (pct), d = mean_sd (det), w = mean_sd (mowed);
            out += fmt::format ("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", kCsvSchema, std::get<0> (k), std::get<1> (k), std::get<2> (k),
                                num (std::get<3> (k)), num (std::get<4> (k)), num (std::get<5> (k)), groups[k].size (), failed, num (p.mean), num (p.sd),
                                num (d.mean), num (d.sd), num (w.mean), num (w.sd));
        }
        return out;
    }

    std::string timings_csv (const std::vector<SweepRow> &rows)
    {
        std::string out = "planner,distribution,n_weeds,R,Sd,Sw,replicate,seed,wall_time_s\n";
        for (const auto &row : rows)
        {
            const Metrics &m = row.metrics;
            out += fmt::format ("{},{},{},{},{},{},{},{},{:.6f}\n", planners::to_string (m.planner), world::to_string (m.distribution), m.n_weeds,
                                num (m.turn_radius), num (m.fov_depth), num (m.fov_width), row.replicate, m.seed, m.wall_time_s);
        }
        return out;
    }

    void write_sweep (const std::vector<SweepRow> &rows, const std::filesystem::path &dir)
    {
        std::filesystem::create_directories (dir);
        write_text (dir / "results.csv", results_csv (rows));
        write_text (dir / "summary.csv", summary_csv (rows));
        write_text (dir / "timings.csv", timings_csv (rows));
    }

    std::size_t CsvTable::column (const std::string &name) const
    {
        const auto it = std::find (header.begin (), header.end (), name);
        if (it == header.end ())
            throw UsageError ("unknown CSV field: " + name);
        return static_cast<std::size_t> (it - header.begin ());
    }

    CsvTable parse_csv (const std::string &text)
    {
        std::vector<std::vector<std::string>> records;
        std::vector<std::string> record;
        std::string cell;
        bool quoted = false, any = false;
        for (std::size_t i = 0; i < text.size (); ++i)
        {
            const char c = text[i];
            if (quoted)
            {
                if (c == '"' && i + 1 < text.size () && text[i + 1] == '"')
                {
                    cell += '"';
                    ++i;
                }
                else if (c == '"')
                    quoted = false;
                else
                    cell += c;
                continue;
            }
            any = true;
            if (c == '"')
                quoted = true;
            else if (c == ',')
            {
                record.push_back (std::move (cell));
                cell.clear ();
            }
            else if (c == '\n')
            {
                record.push_back (std::move (cell));
                cell.clear ();
                records.push_back (std::move (record));
                record.clear ();
                any = false;
            }
            else if (c != '\r')
                cell += c;
        }
        if (quoted)
            throw UsageError ("unterminated quote in CSV");
        if (any)
        {
            record.push_back (std::move (cell));
            records.push_back (std::move (record));
        }
        if (records.empty ())
            throw UsageError ("empty CSV");

        CsvTable t;
        t.header = std::move (records.front ());
        for (std::size_t i = 1; i < records.size (); ++i)
        {
            if (records[i].size () != t.header.size ())
                throw UsageError (fmt::format ("CSV row {} has {} fields, header has {}", i, records[i].size (), t.header.size ()));
            t.rows.push_back (std::move (records[i]));
        }
        return t;
    }

    void write_text (const std::filesystem::path &path, const std::string &text)
    {
        std::ofstream f (path, std::ios::binary);
        if (!f)
            throw std::runtime_error ("cannot write " + path.string ());
        f << text;
        if (!f)
            throw std::runtime_error ("failed writing " + path.string ());
    }

    std::string read_text (const std::filesystem::path &path)
    {
        std::ifstream f (path, std::ios::binary);
        if (!f)
            throw UsageError ("cannot read " + path.string ());
        std::ostringstream ss;
        ss << f.rdbuf ();
        return ss.str ();
    }

} // namespace mrp::harness
