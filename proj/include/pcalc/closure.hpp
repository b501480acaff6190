#pragma once

// Bounded generation of partition categories closed under tensor,
// composition and reflection (optionally involution), with membership
// queries and replayable derivations; brute-force enumeration under
// structural predicates; slice closure verification; the enforced
// orthogonality classifier; and a pack of semantic inference rules that
// add consequences which no finite combinatorial search can reach.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "pcalc/constructions.hpp"
#include "pcalc/partition.hpp"

namespace pcalc {

struct ClosureConfig {
    // Candidates with more points are pruned (reported via bound_hit).
    int max_total_points = 8;
    // Hard cap on the member count; hitting it stops the run.
    std::size_t max_elements = 200000;
    // Close under involution as well, seeding pair and copair.
    bool involutive = false;
    // Run the semantic rule pack between combinatorial rounds.
    bool semantic_rules = false;
};

// How a member entered the closure.
struct Derivation {
    std::string op;  // "generator", "seed", "tensor", "compose", "reflect", "involute", "semantic"
    std::vector<Partition> inputs;
    int removed_loops = 0;
    std::string rule;      // semantic rule id ("R1".."R4"), empty otherwise
    std::string citation;  // human-readable rule description, empty otherwise
};

struct RuleFiring {
    std::string rule;
    std::string citation;
    Partition trigger;
    std::vector<Partition> added;
    bool hypothesis_held = false;
};

struct ClosureResult {
    std::vector<Partition> generators;
    ClosureConfig config;
    std::set<Partition> members;
    std::map<Partition, Derivation> origin;
    std::vector<RuleFiring> firings;
    // True iff the run reached a fixpoint: no in-bounds rule application
    // produced anything new.  False when max_elements stopped the run.
    bool saturated = false;
    // True iff some candidate was pruned for size or the element cap bit;
    // members beyond the bounds may be missing.
    bool bound_hit = false;
};

// Deterministic breadth-first closure of the generators plus the seeded
// identity strand.  Tensor, compose and reflect are always applied.
ClosureResult closure(const std::vector<Partition>& generators, const ClosureConfig& cfg);

// A positive answer comes with a derivation from generators and seeds;
// steps introduced by semantic rules carry their citations instead of a
// combinatorial recomputation.  A negative answer only means the bounded
// search did not find the partition; it is never a proof of non-membership.
struct Membership {
    bool found = false;
    ConstructionTrace trace;
    std::vector<std::string> citations;
};
Membership member_of(const ClosureResult& res, const Partition& p);

// Brute-force enumeration of P(upper_arity, lower_arity) filtered by the
// predicate; NCm keeps noncrossing partitions whose blocks are graded
// modulo `modulus`.  Throws BoundExceeded if the unfiltered count would
// pass max_elements.
enum class Pred { All, Noncrossing, NCm };
std::vector<Partition> enumerate_partitions(Pred pred, int upper_arity, int lower_arity,
                                            int modulus = 0,
                                            std::size_t max_elements = 1000000);

// Checks a finite slice for closure under tensor, compose, reflect and
// involute whenever the result stays within max_total_points.
struct SliceViolation {
    std::string op;
    std::vector<Partition> operands;
    Partition result;
};
struct SliceReport {
    bool closed = true;
    std::vector<SliceViolation> violations;
};
SliceReport verify_generalized_category(const std::vector<Partition>& slice,
                                        int max_total_points);

// Enforced orthogonality classifier for lower-only partitions -------------

enum class OrthoCase {
    A_OddLength,
    B_SingletonOddGap,
    C_SingletonEvenGap,
    D_NoSingletonBigBlock,
    E_AllPairs,
};
enum class OrthoConclusion { InPO, ImpliesEvenGapWitness, ImpliesTau, None };

std::string case_name(OrthoCase c);     // e.g. "B_SingletonOddGap"
std::string case_letter(OrthoCase c);   // e.g. "B"

struct OrthoClassification {
    std::vector<OrthoCase> cases;  // sorted, no duplicates
    // For E_AllPairs: the shortest cyclic interval spanned by a pair block,
    // and the minimal rotation bringing that pair to positions (1, m).
    int pair_interval = 0;
    int rotation = 0;
    OrthoConclusion conclusion = OrthoConclusion::None;
    int tau_m = 0;  // parameter when the conclusion involves tau
    std::string reason;
};

// Rendering like "InPO" or "ImpliesTau(3)".
std::string conclusion_text(const OrthoClassification& c);

// Requires a lower-only p that is not a tensor power of the singleton.
OrthoClassification classify_orthogonality(const Partition& p);

// Single-block program ------------------------------------------------------

// Single block on y*m lower points built from b(m) and its mirror by tensor
// and composition only.  The construction needs modulus >= 3.
Constructed block_ladder(int m, int y);

// Single block with `a` upper and `bp` lower points (grading divisible by
// m, m >= 3), built from b(m) and its mirror.  The corner case where m
// divides both a and bp with a == bp >= 1 uses partial doubling instead of
// the window sandwich, which disconnects there; the same corner with
// a != bp has no recorded construction and throws Unsupported.
Constructed single_block(int a, int bp, int m);

}  // namespace pcalc
