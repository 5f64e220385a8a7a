#include "mrp/scenario.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mrp
{
    using nlohmann::json;

    namespace
    {
        double get_or (const json &j, const char *key, double fallback) { return j.contains (key) ? j.at (key).get<double> () : fallback; }
    } // namespace

    std::vector<world::Weed> Scenario::materialize () const
    {
        if (const auto *list = std::get_if<std::vector<world::Weed>> (&weeds))
            return *list;
        const auto &g = std::get<WeedGenerator> (weeds);
        return world::generate_weeds (g.n, g.distribution, pasture, g.seed, g.sigma);
    }

    Scenario parse_scenario (const std::string &text)
    {
        Scenario s;
        try
        {
            const json j = json::parse (text);
            if (j.contains ("pasture"))
            {
                const auto &p = j.at ("pasture");
                s.pasture.length = get_or (p, "L", s.pasture.length);
                s.pasture.width = get_or (p, "W", s.pasture.width);
            }
            if (j.contains ("mower"))
            {
                const auto &m = j.at ("mower");
                s.mower.turn_radius = get_or (m, "R", s.mower.turn_radius);
                s.mower.implement_width = get_or (m, "B", s.mower.implement_width);
                s.mower.speed = get_or (m, "v", s.mower.speed);
                s.mower.fov_depth = get_or (m, "Sd", s.mower.fov_depth);
                s.mower.fov_width = get_or (m, "Sw", s.mower.fov_width);
                s.mower.step = get_or (m, "ds", s.mower.step);
            }
            if (j.contains ("weeds"))
            {
                const auto &w = j.at ("weeds");
                if (w.is_array ())
                {
                    std::vector<world::Weed> list;
                    for (const auto &e : w)
                        list.push_back ({e.at ("id").get<int> (), e.at ("x").get<double> (), e.at ("y").get<double> (), world::WeedStatus::Undetected});
                    s.weeds = std::move (list);
                }
                else
                {
                    WeedGenerator g;
                    g.n = w.at ("n").get<std::size_t> ();
                    g.distribution = world::parse_distribution (w.value ("dist", std::string ("uniform")));
                    g.sigma = get_or (w, "sigma", g.sigma);
                    g.seed = w.value ("seed", std::uint64_t{0});
                    s.weeds = g;
                }
            }
        }
        catch (const json::exception &e)
        {
            throw std::invalid_argument (std::string ("bad scenario: ") + e.what ());
        }
        s.pasture.validate ();
        s.mower.validate ();
        if (const auto *list = std::get_if<std::vector<world::Weed>> (&s.weeds))
            for (std::size_t i = 0; i < list->size (); ++i)
                if ((*list)[i].id != static_cast<int> (i))
                    throw std::invalid_argument ("bad scenario: weed ids must be 0..n-1 in order");
        return s;
    }

    std::string dump_scenario (const Scenario &s)
    {
        json j;
        j["pasture"] = {{"L", s.pasture.length}, {"W", s.pasture.width}};
        j["mower"] = {{"R", s.mower.turn_radius}, {"B", s.mower.implement_width}, {"v", s.mower.speed},
                      {"Sd", s.mower.fov_depth},  {"Sw", s.mower.fov_width},      {"ds", s.mower.step}};
        if (const auto *list = std::get_if<std::vector<world::Weed>> (&s.weeds))
        {
            j["weeds"] = json::array ();
            for (const auto &w : *list)
                j["weeds"].push_back ({{"id", w.id}, {"x", w.x}, {"y", w.y}});
        }
        else
        {
            const auto &g = std::get<WeedGenerator> (s.weeds);
            j["weeds"] = {{"n", g.n}, {"dist", world::to_string (g.distribution)}, {"sigma", g.sigma}, {"seed", g.seed}};
        }
        return j.dump (2);
    }

    Scenario load_scenario (const std::filesystem::path &path)
    {
        std::ifstream in (path);
        if (!in)
            throw std::invalid_argument ("cannot open scenario " + path.string ());
        std::ostringstream buf;
        buf << in.rdbuf ();
        return parse_scenario (buf.str ());
    }

    void save_scenario (const Scenario &s, const std::filesystem::path &path)
    {
        std::ofstream out (path);
        if (!out)
            throw std::runtime_error ("cannot write " + path.string ());
        out << dump_scenario (s) << '\n';
    }
} // namespace mrp
