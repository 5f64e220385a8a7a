#pragma once
/**
 * @file   dubins.hpp
 * @brief  Curvature-constrained path geometry: Dubins shortest paths, fixed-word
 *         CSC sub-paths, the tangent-circle jump and arc-length sampling.
 *
 * Every path is an ordered list of exact circular arcs and line segments.
 * Arcs keep a non-negative sweep together with an explicit turning direction,
 * so sampling never has to guess which way round a circle goes.  Zero-length
 * segments are kept rather than dropped: an LSR word always has three
 * segments even when its straight part vanishes.
 */

#include <array>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "mrp/geometry.hpp"

namespace mrp::dubins
{
    enum class Turn
    {
        Left,  ///< counter-clockwise
        Right, ///< clockwise
    };

    struct ArcSegment
    {
        Point center;
        double radius = 0.0;
        Turn direction = Turn::Left;
        double start_angle = 0.0; ///< polar angle of the start point about the center
        double sweep = 0.0;       ///< non-negative, radians

        [[nodiscard]] double length () const { return radius * sweep; }
    };

    struct LineSegment
    {
        Point start;
        Point end;
        double heading = 0.0; ///< direction of travel; meaningful even when start == end

        [[nodiscard]] double length () const { return distance (start, end); }
    };

    using PathSegment = std::variant<ArcSegment, LineSegment>;

    [[nodiscard]] double segment_length (const PathSegment &seg);
    /// Pose reached after travelling @p s metres along @p seg (clamped to the segment).
    [[nodiscard]] Pose segment_pose_at (const PathSegment &seg, double s);
    [[nodiscard]] Pose segment_start (const PathSegment &seg);
    [[nodiscard]] Pose segment_end (const PathSegment &seg);

    /// Arc that starts at @p from and turns @p sweep radians in @p dir on radius @p radius.
    [[nodiscard]] ArcSegment make_arc (const Pose &from, Turn dir, double radius, double sweep);
    /// Straight segment of @p length along the heading of @p from.
    [[nodiscard]] LineSegment make_line (const Pose &from, double length);
    /// Straight segment from @p a to @p b (heading 0 when they coincide).
    [[nodiscard]] LineSegment make_line (Point a, Point b);
    /// Center of the turning circle tangent to @p p on the @p dir side.
    [[nodiscard]] Point turning_center (const Pose &p, Turn dir, double radius);

    struct BoundingBox
    {
        double min_x, min_y, max_x, max_y;
    };

    /**
     * @brief Ordered arc/line segments with an analytic length.
     *
     * Segments are expected to chain G1-continuously; see is_g1_continuous().
     */
    class PathPlan
    {
      public:
        PathPlan () = default;
        explicit PathPlan (std::vector<PathSegment> segments);

        void append (PathSegment seg);
        void append (const PathPlan &other);

        [[nodiscard]] const std::vector<PathSegment> &segments () const { return segments_; }
        [[nodiscard]] bool empty () const { return segments_.empty (); }
        [[nodiscard]] double length () const { return length_; }

        [[nodiscard]] Pose start_pose () const;
        [[nodiscard]] Pose end_pose () const;
        /// Pose at arc length @p s, clamped to [0, length()].
        [[nodiscard]] Pose pose_at (double s) const;

        [[nodiscard]] BoundingBox bounding_box () const;

      private:
        std::vector<PathSegment> segments_;
        double length_ = 0.0;
    };

    /// Each segment's end pose matches the next segment's start pose.
    [[nodiscard]] bool is_g1_continuous (const PathPlan &path, double pos_tol = kPoseTol, double ang_tol = kPoseTol);

    enum class Word
    {
        LSL,
        RSR,
        LSR,
        RSL,
        RLR,
        LRL
    };

    /// Tie-break order used by dubins_shortest().
    inline constexpr std::array<Word, 6> kAllWords = {Word::LSL, Word::RSR, Word::LSR, Word::RSL, Word::RLR, Word::LRL};

    [[nodiscard]] std::string_view to_string (Word w);

    /// The path of a single word class, if that word connects the two poses.
    [[nodiscard]] std::optional<PathPlan> dubins_word (const Pose &start, const Pose &goal, Word word, double radius);

    /// Minimum-length path over the six Dubins words; exact ties keep the earlier word in kAllWords.
    [[nodiscard]] PathPlan dubins_shortest (const Pose &start, const Pose &goal, double radius);

    /**
     * @brief The unique LSR or RSL path between two poses.
     * @return std::nullopt when the two turning circles are closer than 2R.
     * @throws std::invalid_argument if @p word is not LSR or RSL, or radius <= 0.
     */
    [[nodiscard]] std::optional<PathPlan> csc_constrained (const Pose &start, const Pose &goal, Word word, double radius);

    /// Detour off the pass y = y_p that touches a weed above the pass and returns.
    struct Jump
    {
        double x_start = 0.0;
        double x_end = 0.0;
        Point weed;
        PathPlan up_path;
        PathPlan down_path;

        [[nodiscard]] double length () const { return up_path.length () + down_path.length (); }
    };

    /**
     * Horizontal distance between the jump start and the weed for a weed
     * @p dy above the pass.  The start-side and weed-side turning circles are
     * tangent while dy <= 4R; beyond that the circles cannot touch and the
     * start is placed directly below the weed.
     */
    [[nodiscard]] double jump_half_span (double dy, double radius);

    /// LSR-up/RSL-down for heading 0, RSL-up/LSR-down for heading π.  Empty if the weed is not above the pass.
    [[nodiscard]] std::optional<Jump> build_jump (Point weed, double y_p, double theta_p, double radius);

    /**
     * @brief Poses every @p ds metres of arc length, plus the exact endpoint.
     *
     * An empty path yields @p start_if_empty (when given) as a single pose.
     * @throws std::invalid_argument if ds <= 0.
     */
    [[nodiscard]] std::vector<Pose> sample_path (const PathPlan &path, double ds, std::optional<Pose> start_if_empty = std::nullopt);

} // namespace mrp::dubins
