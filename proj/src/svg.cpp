#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "mrp/harness.hpp"

namespace mrp::harness
{
    namespace
    {
        constexpr const char *kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"};

        // Round-ish tick spacing covering [lo, hi] with about five intervals.
        double tick_step (double lo, double hi)
        {
            const double raw = (hi - lo) / 5.0;
            const double mag = std::pow (10.0, std::floor (std::log10 (raw)));
            for (const double m : {1.0, 2.0, 5.0})
                if (raw <= m * mag)
                    return m * mag;
            return 10.0 * mag;
        }

        struct Series
        {
            std::string name;
            std::map<double, std::vector<double>> points;
        };

        std::string esc (const std::string &s)
        {
            std::string out;
            for (const char c : s)
            {
                switch (c)
                {
                case '<': out += "&lt;"; break;
                case '>': out += "&gt;"; break;
                case '&': out += "&amp;"; break;
                default: out += c;
                }
            }
            return out;
        }
    } // namespace

    std::string render_trend (const CsvTable &results, const std::string &x_field, const std::string &y_field)
    {
        const std::size_t xi = results.column (x_field), yi = results.column (y_field), pi = results.column ("planner");
        const auto status = std::find (results.header.begin (), results.header.end (), "status");

        std::vector<Series> series;
        for (const auto &row : results.rows)
        {
            if (status != results.header.end () && row[static_cast<std::size_t> (status - results.header.begin ())] != "ok")
                continue;
            double x = 0.0, y = 0.0;
            try
            {
                x = std::stod (row[xi]);
                y = std::stod (row[yi]);
            }
            catch (const std::exception &)
            {
                throw UsageError (fmt::format ("non-numeric value in '{}' or '{}'", x_field, y_field));
            }
            auto it = std::find_if (series.begin (), series.end (), [&] (const Series &s) { return s.name == row[pi]; });
            if (it == series.end ())
            {
                series.push_back ({row[pi], {}});
                it = std::prev (series.end ());
            }
            it->points[x].push_back (y);
        }
        if (series.empty ())
            throw UsageError ("no data rows to plot");

        struct Stat
        {
            double x, mean, sd;
        };
        std::vector<std::vector<Stat>> stats;
        double x_lo = INFINITY, x_hi = -INFINITY, y_lo = INFINITY, y_hi = -INFINITY;
        for (const auto &s : series)
        {
            auto &st = stats.emplace_back ();
            for (const auto &[x, ys] : s.points)
            {
                double mean = 0.0, ss = 0.0;
                for (const double y : ys)
                    mean += y;
                mean /= static_cast<double> (ys.size ());
                for (const double y : ys)
                    ss += (y - mean) * (y - mean);
                const double sd = ys.size () > 1 ? std::sqrt (ss / static_cast<double> (ys.size () - 1)) : 0.0;
                st.push_back ({x, mean, sd});
                x_lo = std::min (x_lo, x);
                x_hi = std::max (x_hi, x);
                y_lo = std::min (y_lo, mean - sd);
                y_hi = std::max (y_hi, mean + sd);
            }
        }
        if (x_hi - x_lo < 1e-12)
        {
            x_lo -= 1.0;
            x_hi += 1.0;
        }
        if (y_hi - y_lo < 1e-12)
        {
            y_lo -= 1.0;
            y_hi += 1.0;
        }
        const double ystep = tick_step (y_lo, y_hi);
        y_lo = std::floor (y_lo / ystep) * ystep;
        y_hi = std::ceil (y_hi / ystep) * ystep;
        const double xpad = 0.04 * (x_hi - x_lo);
        x_lo -= xpad;
        x_hi += xpad;

        constexpr double W = 760, H = 460, left = 70, right = 180, top = 30, bottom = 60;
        const double pw = W - left - right, ph = H - top - bottom;
        auto sx = [&] (double x) { return left + (x - x_lo) / (x_hi - x_lo) * pw; };
        auto sy = [&] (double y) { return top + (y_hi - y) / (y_hi - y_lo) * ph; };

        std::string svg = fmt::format ("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\" "
                                       "font-family=\"sans-serif\" font-size=\"12\">\n",
                                       W, H, W, H);
        svg += fmt::format ("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n", W, H);
        svg += fmt::format ("<rect class=\"plot-area\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n", left, top,
                            pw, ph);
        for (double y = y_lo; y <= y_hi + 1e-9 * ystep; y += ystep)
        {
            svg += fmt::format ("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#ddd\"/>\n", left, sy (y), left + pw, sy (y));
            svg += fmt::format ("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{:g}</text>\n", left - 6, sy (y) + 4, y);
        }
        std::vector<double> xs;
        for (const auto &st : stats)
            for (const auto &p : st)
                xs.push_back (p.x);
        std::sort (xs.begin (), xs.end ());
        xs.erase (std::unique (xs.begin (), xs.end ()), xs.end ());
        for (const double x : xs)
            svg += fmt::format ("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{:g}</text>\n", sx (x), top + ph + 18, x);
        svg += fmt::format ("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n", left + pw / 2, H - 15, esc (x_field));
        svg += fmt::format ("<text x=\"15\" y=\"{:.2f}\" text-anchor=\"middle\" transform=\"rotate(-90 15 {:.2f})\">{}</text>\n", top + ph / 2,
                            top + ph / 2, esc (y_field));

        for (std::size_t s = 0; s < series.size (); ++s)
        {
            const char *colour = kPalette[s % std::size (kPalette)];
            std::string pts;
            for (const auto &p : stats[s])
                pts += fmt::format ("{:.2f},{:.2f} ", sx (p.x), sy (p.mean));
            svg += fmt::format ("<g class=\"series\" data-name=\"{}\">\n", esc (series[s].name));
            svg += fmt::format ("<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>\n", pts, colour);
            for (const auto &p : stats[s])
            {
                svg += fmt::format ("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"{3}\"/>\n", sx (p.x), sy (p.mean - p.sd),
                                    sy (p.mean + p.sd), colour);
                svg += fmt::format ("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"{}\" data-x=\"{}\" data-y=\"{}\" data-sd=\"{}\"/>\n", sx (p.x),
                                    sy (p.mean), colour, p.x, p.mean, p.sd);
            }
            svg += "</g>\n";
            const double ly = top + 10 + 18 * static_cast<double> (s);
            svg += fmt::format ("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"{}\" stroke-width=\"2\"/>\n", left + pw + 15, ly,
                                left + pw + 35, ly, colour);
            svg += fmt::format ("<text x=\"{:.2f}\" y=\"{:.2f}\">{}</text>\n", left + pw + 40, ly + 4, esc (series[s].name));
        }
        svg += "</svg>\n";
        return svg;
    }

    std::string render_run (const world::PastureSpec &pasture, const planners::RunResult &run)
    {
        double x_lo = 0.0, x_hi = pasture.length, y_lo = 0.0, y_hi = pasture.width;
        for (const auto &p : run.trajectory)
        {
            x_lo = std::min (x_lo, p.x);
            x_hi = std::max (x_hi, p.x);
            y_lo = std::min (y_lo, p.y);
            y_hi = std::max (y_hi, p.y);
        }
        constexpr double scale = 8.0, margin = 1.0;
        x_lo -= margin;
        y_lo -= margin;
        x_hi += margin;
        y_hi += margin;
        const double w = (x_hi - x_lo) * scale, h = (y_hi - y_lo) * scale;
        auto sx = [&] (double x) { return (x - x_lo) * scale; };
        auto sy = [&] (double y) { return (y_hi - y) * scale; };

        std::string svg = fmt::format ("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" viewBox=\"0 0 {:.2f} {:.2f}\" "
                                       "font-family=\"sans-serif\" font-size=\"12\">\n",
                                       w, h + 20, w, h + 20);
        svg += fmt::format ("<rect x=\"0\" y=\"0\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"white\"/>\n", w, h + 20);
        svg += fmt::format ("<rect class=\"pasture\" x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"#f3f8ec\" stroke=\"#333\"/>\n",
                            sx (0), sy (pasture.width), pasture.length * scale, pasture.width * scale);
        std::string pts;
        for (const auto &p : run.trajectory)
            pts += fmt::format ("{:.2f},{:.2f} ", sx (p.x), sy (p.y));
        svg += fmt::format ("<polyline class=\"trajectory\" points=\"{}\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1\"/>\n", pts);
        for (const auto &weed : run.world.weeds)
        {
            const char *fill = weed.status == world::WeedStatus::Mowed ? "#2ca02c" : weed.status == world::WeedStatus::Detected ? "#ff7f0e" : "#888";
            svg += fmt::format ("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"{}\"/>\n", sx (weed.x), sy (weed.y), fill);
        }
        const auto c = run.world.counts ();
        svg += fmt::format ("<text x=\"4\" y=\"{:.2f}\">{} path {:.1f} m ({:.1f}% of BCP), mowed {}, detected {}, undetected {}</text>\n", h + 15,
                            planners::to_string (run.kind), run.path_length, 100.0 * run.path_length / run.bcp_length, c.mowed, c.detected,
                            c.undetected);
        svg += "</svg>\n";
        return svg;
    }

} // namespace mrp::harness
