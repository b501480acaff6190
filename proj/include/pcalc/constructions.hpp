#pragma once

// Compound partition constructions: nesting, multi-nesting, line
// rotations, doublings, weak restriction and modulus rotation.  Every
// construction returns the result together with the exact operation word
// used to build it, so outputs can be replayed and audited step by step.

#include <string>
#include <vector>

#include "pcalc/partition.hpp"

namespace pcalc {

// One replayable step.  Combinatorial ops ("tensor", "compose", "involute",
// "reflect", "rotate") recompute from the recorded operands; bookkeeping ops
// ("generator", "seed", "semantic") carry their result as given.
struct TraceStep {
    std::string op;
    std::vector<Partition> operands;
    std::vector<std::string> notes;  // parameters or rule citations
    Partition result;
    int removed_loops = 0;
};

struct ConstructionTrace {
    std::vector<TraceStep> steps;
};

// Line-oriented rendering: "step <n>: <op> <args> -> <literal> loops=<r>".
std::string to_text(const ConstructionTrace& trace);

// Recomputes every replayable step from its recorded operands and checks it
// against the recorded result (loops included), returning the final result.
// Throws VerificationFailed on an empty trace or any mismatch.
Partition replay_trace(const ConstructionTrace& trace);

struct Constructed {
    Partition result;
    ConstructionTrace trace;
    int removed_loops = 0;  // total over all compose steps
};

// Records steps as it computes them, so every intermediate value lands in
// the trace with its operands.  finish() packages the last result.
struct TraceBuilder {
    ConstructionTrace trace;
    int loops = 0;

    Partition tensor_step(const Partition& a, const Partition& b);
    Partition compose_step(const Partition& bottom, const Partition& top);
    Partition involute_step(const Partition& p);
    Partition reflect_step(const Partition& p);
    Partition rotate_step(const Partition& p, int count);
    void absorb(const Constructed& c);
    Constructed finish(Partition result);
};

// Places q between the gap-th and (gap+1)-th legs of the lower-only p.
// gap ranges over [0..l]; both ends are allowed.
Constructed nest(const Partition& p, const Partition& q, int gap);

// Nests p between its own s-th and (s+1)-th legs, m times in total
// (m = 1 returns p unchanged).  Result has l*m lower points.
Constructed multi_nest(const Partition& p, int s, int m);

// Cyclic relabeling of a lower-only partition: each step sends the first
// point to the end (new x is old x+1 for x < l, new l is old 1).
Partition rotate_line(const Partition& p, int count = 1);

// One-step line rotation of p using the upper-only q as the cap row.  The
// output satisfies the rotation clause on interior points: i and j are in
// the same block of p iff i-1 and j-1 are in the same block of the result
// (checked, not assumed).  The fate of the wrapped point depends on q.
Constructed weak_line_rotate(const Partition& p, const Partition& q);

// Full line rotation: interior clause as above plus the wrap clause (x and
// l connected in the result iff x+1 and 1 are connected in p).  Requires a
// q with at least one block of two or more points; the implementation
// rotates q's mirror minimally so a connected point sits at the gluing end.
Constructed line_rotate(const Partition& p, const Partition& q);

// q := (id^s tensor mirrored-reflected-p) below (p tensor id^s), in P(s,s).
Constructed shifted_doubling(const Partition& p, int s);

// Doubles the lower-only p onto its first s legs, producing q in P(s,s)
// with q = q* = qq (verified).  p must have at least one block of size >= 2.
Constructed partial_doubling(const Partition& p, int s);

// For square q with q = q* = qq: true iff every block containing points of
// both rows uses the same index set on both rows.  Throws NotAProjection
// when q is not square or fails q = q* = qq.
bool projection_symmetry_check(const Partition& q);

// Cuts the window (a..b] out of the square q by capping the outside legs
// with tensor powers of p1 (lower-only) and p2 (upper-only).  Requires
// 1 <= a < b <= s and caps large enough to cover both flanks.
Constructed weak_restriction(const Partition& q, const Partition& p1, const Partition& p2,
                             int a, int b);

// Turns the last upper leg of p into m-1 extra lower legs using the single
// block b(m): result lives in P(k-1, l+m-1) and preserves the modulus-m
// block grading.
Constructed m_rotation(const Partition& p, int m);

}  // namespace pcalc
