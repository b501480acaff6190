#pragma once

// Two-row set partitions in canonical form, the diagram operations on them
// (tensor, composition, involution, reflection), a catalogue of named
// partitions, and structural predicates (noncrossing, block grading).

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcalc {

// Error taxonomy shared by all engine modules.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OverlapError : Error { using Error::Error; };        // a point appears twice
struct CoverageError : Error { using Error::Error; };       // a point is missing
struct RangeError : Error { using Error::Error; };          // index/parameter out of range
struct ArityMismatch : Error { using Error::Error; };       // composition rows do not line up
struct PreconditionError : Error { using Error::Error; };   // operation not defined for this input
struct NotAProjection : Error { using Error::Error; };      // q = q* = qq or symmetry fails
struct LengthMismatch : Error { using Error::Error; };      // multi-index length != arity
struct ShapeError : Error { using Error::Error; };          // matrix dimensions unusable
struct Unsupported : Error { using Error::Error; };         // documented gap, no repair guessed
struct VerificationFailed : Error { using Error::Error; };  // a post-condition check failed
struct BoundExceeded : Error { using Error::Error; };       // enumeration would exceed its guard

// Parse error with a byte offset into the offending text.
struct SyntaxError : Error {
    std::size_t position;
    SyntaxError(const std::string& msg, std::size_t pos) : Error(msg), position(pos) {}
};

// One endpoint of a diagram: a 1-based position on the lower or the upper row.
// The derived order (lower row first, then upper row, left to right within a
// row) is the total order used everywhere for canonical forms.
struct Point {
    bool upper = false;
    int index = 0;
    friend auto operator<=>(const Point&, const Point&) = default;
};

constexpr Point L(int i) { return Point{false, i}; }
constexpr Point U(int i) { return Point{true, i}; }

using Block = std::vector<Point>;

// A partition of the k upper and l lower points of a two-row diagram into
// blocks.  Always stored canonically: points sorted inside each block, blocks
// sorted by their smallest point.  Equality and ordering are structural.
class Partition {
public:
    // The empty diagram with no points and no blocks.
    Partition() = default;

    // Validates that `blocks` partition exactly the points U1..Uk, L1..Ll.
    // Empty blocks are dropped.  Throws RangeError, OverlapError or
    // CoverageError.
    Partition(int upper_arity, int lower_arity, std::vector<Block> blocks);

    int upper_arity() const { return k_; }
    int lower_arity() const { return l_; }
    int total_points() const { return k_ + l_; }
    const std::vector<Block>& blocks() const { return blocks_; }

    // Index into blocks() of the block containing p; RangeError if p is not
    // a point of this diagram.
    int block_of(Point p) const;
    bool same_block(Point a, Point b) const { return block_of(a) == block_of(b); }

    bool operator==(const Partition& o) const {
        return k_ == o.k_ && l_ == o.l_ && labels_ == o.labels_;
    }
    // Deterministic total order: total points, then upper arity, then the
    // block-label sequence.
    std::strong_ordering operator<=>(const Partition& o) const;

    // Literal form, e.g. "P(1,2): {l1,u1}{l2}"; "P(0,0):" for the empty one.
    std::string to_text() const;
    // Accepts the literal form and the counterclockwise numbering form
    // "P(k,l)#{1,5}{2}...": positions 1..l are the lower row left to right,
    // positions l+1..l+k continue along the upper row right to left.
    static Partition from_text(const std::string& text);

private:
    int k_ = 0;
    int l_ = 0;
    std::vector<Block> blocks_;
    // Derived: block index per point, in the order L1..Ll, U1..Uk.
    std::vector<int> labels_;
};

struct ComposeOutcome {
    Partition result;
    int removed_loops = 0;
};

// Horizontal concatenation; q's points are shifted past p's.
Partition tensor(const Partition& p, const Partition& q);

// Vertical stacking with `bottom` drawn below `top`: top's lower row is glued
// to bottom's upper row.  Requires top.lower_arity() == bottom.upper_arity()
// (ArityMismatch otherwise).  The result lives in
// P(top.upper_arity(), bottom.lower_arity()); connected components living
// entirely on the glued middle row are removed and counted.
ComposeOutcome compose(const Partition& bottom, const Partition& top);

// Upside-down mirror: row membership of every point flips, indices stay.
Partition involute(const Partition& p);

// Left-right mirror: each row's indices are reversed, rows stay.
Partition reflect(const Partition& p);

// Named catalogue ------------------------------------------------------------

Partition identity(int m);  // m through strands {Ui,Li}; identity(0) is empty
Partition up1();            // single lower point, a singleton
Partition down1();          // single upper point, a singleton
Partition pair();           // both lower points of P(0,2) joined
Partition copair();         // both upper points of P(2,0) joined
Partition b(int m);         // all m lower points of P(0,m) in one block, m >= 1
Partition fourblock();      // all four points of P(2,2) in one block
Partition crossline();      // {{L1,L3},{L2,L4}} in P(0,4)
Partition positioner();     // {{L1,L3},{L2},{L4}} in P(0,4)

// Corner patterns in P(m,m), m >= 2.  Small m degenerates by merging the
// overlapping corner indices into one block.
Partition pi(int m);     // corner block on indices {1,2,m-1,m} of both rows, through strands between
Partition sigma(int m);  // corner block {U1,Um,L1,Lm}, through strands between
Partition tau(int m);    // blocks {U1,Um} and {L1,Lm}, through strands between

// Predicates ------------------------------------------------------------------

// True iff no two blocks interleave along the boundary walk
// L1..Ll, Uk..U1 (so through strands do not count as crossings).
bool is_noncrossing(const Partition& p);

// True iff every block's (#upper - #lower) is divisible by m.
bool has_block_grading(const Partition& p, int m);

// True iff every block is a single point.
bool all_singletons(const Partition& p);

}  // namespace pcalc
