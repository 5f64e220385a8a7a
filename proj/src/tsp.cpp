#include "mrp/tsp.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace mrp::tsp
{
    namespace
    {
        constexpr double kImproveTol = 1e-12;
        constexpr std::size_t kRestarts = 8;
        constexpr std::size_t kRestartMaxN = 64;

        // Gain of reversing order[i..j]; the path is start, order[0], ..., order[n-1].
        double reversal_gain (Point start, const std::vector<Point> &pts, const std::vector<std::size_t> &order, std::size_t i, std::size_t j)
        {
            const Point a = i == 0 ? start : pts[order[i - 1]];
            const Point b = pts[order[i]];
            const Point c = pts[order[j]];
            double before = distance (a, b), after = distance (a, c);
            if (j + 1 < order.size ())
            {
                const Point d = pts[order[j + 1]];
                before += distance (c, d);
                after += distance (b, d);
            }
            return before - after;
        }

        // Moves one segment of up to three targets (either way round) to its best
        // other position.  Returns true if a move was made.
        bool or_opt_pass (Point start, const std::vector<Point> &pts, std::vector<std::size_t> &order)
        {
            const std::size_t n = order.size ();
            auto at = [&] (const std::vector<std::size_t> &o, std::size_t i) { return pts[o[i]]; };
            for (std::size_t len = 1; len <= std::min<std::size_t> (3, n - 1); ++len)
                for (std::size_t i = 0; i + len <= n; ++i)
                {
                    const Point prev = i == 0 ? start : at (order, i - 1);
                    const Point first = at (order, i), last = at (order, i + len - 1);
                    double removed = distance (prev, first);
                    if (i + len < n)
                    {
                        const Point next = at (order, i + len);
                        removed += distance (last, next) - distance (prev, next);
                    }
                    std::vector<std::size_t> rest (order.begin (), order.begin () + static_cast<std::ptrdiff_t> (i));
                    rest.insert (rest.end (), order.begin () + static_cast<std::ptrdiff_t> (i + len), order.end ());

                    double best_gain = kImproveTol;
                    std::size_t best_pos = 0;
                    bool best_rev = false, found = false;
                    // Insert after position p of rest (p = 0 means right after the start).
                    for (std::size_t p = 0; p <= rest.size (); ++p)
                    {
                        if (p == i)
                            continue; // original place
                        const Point a = p == 0 ? start : at (rest, p - 1);
                        for (const bool rev : {false, true})
                        {
                            const Point s = rev ? last : first, e = rev ? first : last;
                            double added = distance (a, s);
                            if (p < rest.size ())
                            {
                                const Point b = at (rest, p);
                                added += distance (e, b) - distance (a, b);
                            }
                            if (removed - added > best_gain)
                            {
                                best_gain = removed - added;
                                best_pos = p;
                                best_rev = rev;
                                found = true;
                            }
                        }
                    }
                    if (!found)
                        continue;
                    std::vector<std::size_t> seg (order.begin () + static_cast<std::ptrdiff_t> (i),
                                                  order.begin () + static_cast<std::ptrdiff_t> (i + len));
                    if (best_rev)
                        std::reverse (seg.begin (), seg.end ());
                    rest.insert (rest.begin () + static_cast<std::ptrdiff_t> (best_pos), seg.begin (), seg.end ());
                    order = std::move (rest);
                    return true;
                }
            return false;
        }
    } // namespace

    double open_path_length (Point start, const std::vector<Point> &targets, const std::vector<std::size_t> &order)
    {
        double len = 0.0;
        Point at = start;
        for (const auto k : order)
        {
            len += distance (at, targets[k]);
            at = targets[k];
        }
        return len;
    }

    Tour heuristic_tour (Point start, const std::vector<Point> &targets)
    {
        if (targets.empty ())
            throw std::invalid_argument ("heuristic_tour needs at least one target");

        const std::size_t n = targets.size ();
        // Restarts: nearest-neighbour runs whose first target is one of the closest few.
        // Large tours get one run; local search dominates there and restarts rarely help.
        std::vector<std::size_t> firsts (n);
        std::iota (firsts.begin (), firsts.end (), 0);
        std::stable_sort (firsts.begin (), firsts.end (),
                          [&] (std::size_t a, std::size_t b) { return distance (start, targets[a]) < distance (start, targets[b]); });
        firsts.resize (n <= kRestartMaxN ? std::min (n, kRestarts) : 1);

        Tour best;
        for (const auto first : firsts)
        {
            std::vector<std::size_t> order{first};
            order.reserve (n);
            std::vector<bool> used (n, false);
            used[first] = true;
            Point at = targets[first];
            for (std::size_t step = 1; step < n; ++step)
            {
                std::size_t next = n;
                double next_d = 0.0;
                for (std::size_t k = 0; k < n; ++k)
                {
                    if (used[k])
                        continue;
                    const double d = distance (at, targets[k]);
                    if (next == n || d < next_d)
                    {
                        next = k;
                        next_d = d;
                    }
                }
                used[next] = true;
                order.push_back (next);
                at = targets[next];
            }

            for (bool improved = true; improved;)
            {
                improved = false;
                for (std::size_t i = 0; i + 1 < n; ++i)
                    for (std::size_t j = i + 1; j < n; ++j)
                        if (reversal_gain (start, targets, order, i, j) > kImproveTol)
                        {
                            std::reverse (order.begin () + static_cast<std::ptrdiff_t> (i), order.begin () + static_cast<std::ptrdiff_t> (j) + 1);
                            improved = true;
                        }
                if (!improved)
                    improved = or_opt_pass (start, targets, order);
            }
            const double len = open_path_length (start, targets, order);
            if (best.order.empty () || len < best.length - kImproveTol)
                best = {start, std::move (order), len};
        }
        return best;
    }

    Tour brute_force_tour (Point start, const std::vector<Point> &targets, std::size_t max_n)
    {
        if (targets.size () > max_n)
            throw std::invalid_argument ("brute_force_tour: too many targets");
        std::vector<std::size_t> perm (targets.size ());
        std::iota (perm.begin (), perm.end (), 0);
        Tour best{start, perm, open_path_length (start, targets, perm)};
        while (std::next_permutation (perm.begin (), perm.end ()))
        {
            const double len = open_path_length (start, targets, perm);
            if (len < best.length)
                best = {start, perm, len};
        }
        return best;
    }

    bool is_two_opt_stable (const Tour &tour, const std::vector<Point> &targets, double tol)
    {
        for (std::size_t i = 0; i + 1 < tour.order.size (); ++i)
            for (std::size_t j = i + 1; j < tour.order.size (); ++j)
                if (reversal_gain (tour.start, targets, tour.order, i, j) > tol)
                    return false;
        return true;
    }
} // namespace mrp::tsp
