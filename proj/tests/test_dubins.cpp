#include <gtest/gtest.h>

#include <random>

#include "dubins_oracle.hpp"
#include "mrp/dubins.hpp"
#include "test_support.hpp"

using namespace mrp;
using namespace mrp::dubins;

namespace
{
    oracle::OraclePose to_oracle (const Pose &p) { return {p.x, p.y, p.theta}; }

    void expect_endpoints (const PathPlan &path, const Pose &start, const Pose &goal)
    {
        EXPECT_TRUE (poses_close (path.start_pose (), start)) << "start mismatch";
        EXPECT_TRUE (poses_close (path.end_pose (), goal)) << "goal mismatch";
        EXPECT_TRUE (is_g1_continuous (path));
    }
} // namespace

TEST (DubinsShortest, AlignedPosesGiveStraightLine)
{
    const Pose a{0, 0, 0};
    const Pose b{5, 0, 0};
    const PathPlan p = dubins_shortest (a, b, 1.0);
    EXPECT_NEAR (p.length (), 5.0, 1e-12);
    expect_endpoints (p, a, b);
}

TEST (DubinsShortest, HalfCircle)
{
    const Pose a{0, 0, 0};
    const Pose b{0, 2, kPi};
    const PathPlan p = dubins_shortest (a, b, 1.0);
    EXPECT_NEAR (p.length (), kPi, 1e-12);
    expect_endpoints (p, a, b);
}

TEST (DubinsShortest, MatchesSampledOracle)
{
    const Pose a{0, 0, 0};
    const Pose b{3.1, -1.7, 2.0};
    const PathPlan p = dubins_shortest (a, b, 1.0);
    // Frozen from the sampled six-word oracle.
    const double expected = oracle::oracle_dubins_length (to_oracle (a), to_oracle (b), 1.0);
    EXPECT_NEAR (p.length (), expected, 1e-6);
    expect_endpoints (p, a, b);
}

TEST (DubinsShortest, RandomPairsAgreeWithOracleAndBounds)
{
    std::mt19937_64 rng (7);
    std::uniform_real_distribution<double> pos (-6.0, 6.0), ang (0.0, kTwoPi), rad (0.5, 3.0);
    for (int i = 0; i < 60; ++i)
    {
        const Pose a{pos (rng), pos (rng), ang (rng)};
        const Pose b{pos (rng), pos (rng), ang (rng)};
        const double r = rad (rng);
        const PathPlan p = dubins_shortest (a, b, r);
        expect_endpoints (p, a, b);
        EXPECT_NEAR (p.length (), oracle::oracle_dubins_length (to_oracle (a), to_oracle (b), r), 1e-6) << "pair " << i;
        EXPECT_GE (p.length () + 1e-12, distance (a.position (), b.position ()));
        for (const Word w : {Word::LSR, Word::RSL})
        {
            if (auto c = csc_constrained (a, b, w, r))
            {
                EXPECT_LE (p.length (), c->length () + 1e-9);
            }
        }
    }
}

TEST (DubinsShortest, EveryWordIsG1AndReachesGoal)
{
    std::mt19937_64 rng (11);
    std::uniform_real_distribution<double> pos (-3.0, 3.0), ang (0.0, kTwoPi);
    for (int i = 0; i < 50; ++i)
    {
        const Pose a{pos (rng), pos (rng), ang (rng)};
        const Pose b{pos (rng), pos (rng), ang (rng)};
        for (const Word w : kAllWords)
        {
            auto p = dubins_word (a, b, w, 1.0);
            if (!p)
                continue;
            expect_endpoints (*p, a, b);
            auto o = oracle::oracle_word_length (to_oracle (a), to_oracle (b), to_string (w), 1.0);
            ASSERT_TRUE (o.has_value ()) << to_string (w);
            // The oracle reports the shortest member of the word class.
            EXPECT_NEAR (p->length (), *o, 1e-6) << to_string (w);
        }
    }
}

TEST (DubinsShortest, RejectsNonPositiveRadius)
{
    EXPECT_THROW ((void)dubins_shortest ({0, 0, 0}, {1, 0, 0}, 0.0), std::invalid_argument);
}

TEST (CscConstrained, TangentCirclesGiveTwoQuarterArcs)
{
    const Pose a{0, 0, 0};
    const Pose b{2, 2, 0};
    auto p = csc_constrained (a, b, Word::LSR, 1.0);
    ASSERT_TRUE (p.has_value ());
    ASSERT_EQ (p->segments ().size (), 3u);
    EXPECT_NEAR (p->length (), kPi, 1e-9);
    EXPECT_NEAR (segment_length (p->segments ()[1]), 0.0, 1e-9);
    expect_endpoints (*p, a, b);
}

TEST (CscConstrained, OverlappingCirclesHaveNoPath)
{
    EXPECT_FALSE (csc_constrained ({0, 0, 0}, {0.5, 0.2, 0}, Word::LSR, 1.0).has_value ());
}

TEST (CscConstrained, MatchesSampledOracle)
{
    const Pose a{0, 0, 0};
    const Pose b{4, 2, 0};
    auto p = csc_constrained (a, b, Word::LSR, 1.0);
    ASSERT_TRUE (p.has_value ());
    auto o = oracle::oracle_word_length (to_oracle (a), to_oracle (b), "LSR", 1.0);
    ASSERT_TRUE (o.has_value ());
    EXPECT_NEAR (p->length (), *o, 1e-6);
    expect_endpoints (*p, a, b);
}

TEST (CscConstrained, RejectsOtherWords)
{
    EXPECT_THROW ((void)csc_constrained ({0, 0, 0}, {5, 0, 0}, Word::LSL, 1.0), std::invalid_argument);
}

TEST (BuildJump, TangentCaseHasLengthTwoPi)
{
    const double yp = 3.0;
    auto j = build_jump ({10, yp + 2}, yp, 0.0, 1.0);
    ASSERT_TRUE (j.has_value ());
    EXPECT_NEAR (j->x_start, 8.0, 1e-12);
    EXPECT_NEAR (j->x_end, 12.0, 1e-12);
    EXPECT_NEAR (j->length (), 2.0 * kPi, 1e-9);
    expect_endpoints (j->up_path, {8, yp, 0}, {10, yp + 2, 0});
    expect_endpoints (j->down_path, {10, yp + 2, 0}, {12, yp, 0});
}

TEST (BuildJump, FourRadiiGivesVerticalKeyhole)
{
    auto j = build_jump ({10, 4}, 0.0, 0.0, 1.0);
    ASSERT_TRUE (j.has_value ());
    EXPECT_NEAR (j->x_start, 10.0, 1e-12);
    EXPECT_NEAR (j->x_end, 10.0, 1e-12);
    EXPECT_NEAR (j->up_path.length (), 2.0 * kPi, 1e-9);
}

TEST (BuildJump, WeedBelowPassHasNoJump)
{
    EXPECT_FALSE (build_jump ({10, -1}, 0.0, 0.0, 1.0).has_value ());
    EXPECT_FALSE (build_jump ({10, 0}, 0.0, 0.0, 1.0).has_value ());
}

TEST (BuildJump, HighWeedUsesPositiveStraight)
{
    auto j = build_jump ({10, 7}, 0.0, 0.0, 1.0);
    ASSERT_TRUE (j.has_value ());
    EXPECT_DOUBLE_EQ (j->x_start, 10.0);
    EXPECT_GT (segment_length (j->up_path.segments ()[1]), 0.0);
    expect_endpoints (j->up_path, {10, 0, 0}, {10, 7, 0});
    expect_endpoints (j->down_path, {10, 7, 0}, {10, 0, 0});
}

TEST (BuildJump, MirrorSymmetryBetweenHeadings)
{
    std::mt19937_64 rng (3);
    std::uniform_real_distribution<double> dy (0.05, 9.0), xr (0.0, 50.0), rr (0.5, 3.0);
    for (int i = 0; i < 200; ++i)
    {
        const double r = rr (rng);
        const Point w{xr (rng), 1.0 + dy (rng)};
        auto fwd = build_jump (w, 1.0, 0.0, r);
        auto back = build_jump (w, 1.0, kPi, r);
        ASSERT_TRUE (fwd && back);
        // Reflection across x = x_weed swaps the two ends.
        EXPECT_NEAR (fwd->x_start - w.x, w.x - back->x_start, 1e-9);
        EXPECT_NEAR (fwd->x_end - w.x, w.x - back->x_end, 1e-9);
        EXPECT_NEAR (fwd->length (), back->length (), 1e-9);
        EXPECT_NEAR (std::abs (w.x - fwd->x_start), std::abs (fwd->x_end - w.x), 1e-12);
        expect_endpoints (back->up_path, {back->x_start, 1.0, kPi}, {w.x, w.y, kPi});
        expect_endpoints (back->down_path, {w.x, w.y, kPi}, {back->x_end, 1.0, kPi});
    }
}

TEST (SamplePath, LineAtHalfMetre)
{
    const PathPlan p ({make_line (Point{0, 0}, Point{1, 0})});
    const auto s = sample_path (p, 0.5);
    ASSERT_EQ (s.size (), 3u);
    EXPECT_DOUBLE_EQ (s[0].x, 0.0);
    EXPECT_DOUBLE_EQ (s[1].x, 0.5);
    EXPECT_DOUBLE_EQ (s[2].x, 1.0);
}

TEST (SamplePath, FullCircleCloses)
{
    const PathPlan p ({make_arc ({0, 0, 0}, Turn::Left, 1.0, kTwoPi)});
    const auto s = sample_path (p, 0.1);
    EXPECT_NEAR (distance (s.back ().position (), s.front ().position ()), 0.0, 1e-9);
}

TEST (SamplePath, EmptyPath)
{
    EXPECT_TRUE (sample_path (PathPlan{}, 0.1).empty ());
    const auto s = sample_path (PathPlan{}, 0.1, Pose{1, 2, 0});
    ASSERT_EQ (s.size (), 1u);
    EXPECT_EQ (s[0], (Pose{1, 2, 0}));
    EXPECT_THROW ((void)sample_path (PathPlan{}, 0.0), std::invalid_argument);
}

TEST (SamplePath, RandomPathsRespectSpacingLengthAndCurvature)
{
    std::mt19937_64 rng (19);
    std::uniform_real_distribution<double> pos (-10.0, 10.0), ang (0.0, kTwoPi);
    const double ds = 0.05;
    for (int i = 0; i < 100; ++i)
    {
        const double r = 0.5 + (i % 5);
        const PathPlan p = dubins_shortest ({pos (rng), pos (rng), ang (rng)}, {pos (rng), pos (rng), ang (rng)}, r);
        const auto s = sample_path (p, ds);
        double poly = 0.0;
        for (std::size_t k = 1; k < s.size (); ++k)
        {
            const double step = distance (s[k - 1].position (), s[k].position ());
            EXPECT_LE (step, ds + 1e-9);
            poly += step;
        }
        // Chords never exceed arc length and lose at most ds overall.
        EXPECT_LE (poly, p.length () + 1e-9);
        EXPECT_GE (poly, p.length () - ds);
        EXPECT_GE (mrp::oracle::min_osculating_radius (s), r * (1.0 - 10.0 * ds));
        EXPECT_TRUE (poses_close (s.back (), p.end_pose ()));
    }
}

TEST (PathPlan, BoundingBoxOfQuarterArc)
{
    const PathPlan p ({make_arc ({0, 0, 0}, Turn::Left, 2.0, kPi)});
    const auto b = p.bounding_box ();
    EXPECT_NEAR (b.min_x, 0.0, 1e-12);
    EXPECT_NEAR (b.max_x, 2.0, 1e-12);
    EXPECT_NEAR (b.min_y, 0.0, 1e-12);
    EXPECT_NEAR (b.max_y, 4.0, 1e-12);
}
