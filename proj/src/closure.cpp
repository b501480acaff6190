#include "pcalc/closure.hpp"

#include <algorithm>
#include <functional>
#include <utility>

namespace pcalc {

namespace {

const char* kCorner = "corner pattern rule: pi(m) or sigma(m) membership yields pair and copair";
const char* kStacked = "stacked pair rule: tau(2) membership yields pair and copair";
const char* kSingleton = "singleton rule: a singleton block yields doubled singleton strands";
const char* kProjection = "four-point corner projection rule: such a projection yields pair and copair";
const char* kInvolution = "involution rule: pair and copair together close the category under involution";

struct Engine {
    ClosureConfig cfg;
    ClosureResult res;
    std::vector<Partition> done;      // processed in earlier rounds, in insertion order
    std::vector<Partition> frontier;  // inserted but not yet processed
    bool involution_active = false;
    bool cap_hit = false;

    bool try_add(const Partition& p, Derivation d) {
        if (p.total_points() > cfg.max_total_points) {
            res.bound_hit = true;
            return false;
        }
        if (res.members.count(p)) return false;
        if (res.members.size() >= cfg.max_elements) {
            res.bound_hit = true;
            cap_hit = true;
            return false;
        }
        res.members.insert(p);
        res.origin.emplace(p, std::move(d));
        frontier.push_back(p);
        return true;
    }

    void unary(const Partition& a) {
        try_add(reflect(a), {"reflect", {a}, 0, "", ""});
        if (involution_active) try_add(involute(a), {"involute", {a}, 0, "", ""});
    }

    // Tensor and compose with x in the bottom slot.
    void binary(const Partition& x, const Partition& y) {
        if (x.total_points() + y.total_points() <= cfg.max_total_points)
            try_add(tensor(x, y), {"tensor", {x, y}, 0, "", ""});
        else
            res.bound_hit = true;
        if (y.lower_arity() == x.upper_arity()) {
            if (y.upper_arity() + x.lower_arity() <= cfg.max_total_points) {
                ComposeOutcome c = compose(x, y);
                try_add(c.result, {"compose", {x, y}, c.removed_loops, "", ""});
            } else {
                res.bound_hit = true;
            }
        }
    }

    void combinatorial_rounds() {
        while (!frontier.empty() && !cap_hit) {
            std::vector<Partition> current;
            current.swap(frontier);
            for (const auto& a : current) {
                unary(a);
                if (cap_hit) return;
            }
            for (const auto& a : current) {
                for (const auto& b : done) {
                    binary(a, b);
                    binary(b, a);
                    if (cap_hit) return;
                }
                for (const auto& b : current) {
                    binary(a, b);
                    if (cap_hit) return;
                }
            }
            done.insert(done.end(), current.begin(), current.end());
        }
    }

    void fire(const Partition& trigger, const std::string& rule, const std::string& citation,
              const std::vector<Partition>& consequences) {
        std::vector<Partition> added;
        for (const auto& c : consequences) {
            if (try_add(c, {"semantic", {trigger}, 0, rule, citation})) added.push_back(c);
            if (cap_hit) break;
        }
        if (!added.empty()) res.firings.push_back({rule, citation, trigger, added, true});
    }

    bool semantic_pass() {
        std::size_t before = res.members.size();

        bool hyp_lower = false, hyp_upper = false;
        for (const auto& m : res.members) {
            if (m.upper_arity() == 0 && m.lower_arity() >= 1) hyp_lower = true;
            if (m.lower_arity() == 0 && m.upper_arity() >= 1) hyp_upper = true;
        }

        if (hyp_lower && hyp_upper) {
            std::vector<Partition> snap;
            bool odd_row_pure = false;
            for (const auto& m : res.members) {
                if (res.origin.at(m).op == "semantic") continue;
                snap.push_back(m);
                if ((m.upper_arity() == 0 && m.lower_arity() % 2 == 1) ||
                    (m.lower_arity() == 0 && m.upper_arity() % 2 == 1))
                    odd_row_pure = true;
            }

            for (const auto& m : snap) {
                if (cap_hit) break;
                int k = m.upper_arity(), l = m.lower_arity();

                if (k == l && k >= 2 && (m == pi(k) || m == sigma(k)))
                    fire(m, "R1", kCorner, {pair(), copair()});

                if (k == 2 && l == 2 && m == tau(2))
                    fire(m, "R2", kStacked, {pair(), copair()});

                bool has_singleton = false;
                for (const auto& blk : m.blocks())
                    if (blk.size() == 1) has_singleton = true;
                if (has_singleton) {
                    std::vector<Partition> out = {tensor(up1(), up1()), tensor(down1(), down1())};
                    if (odd_row_pure) {
                        out.push_back(up1());
                        out.push_back(down1());
                    }
                    fire(m, "R3", kSingleton, out);
                }

                if (k == l && k >= 2 && m == involute(m) && compose(m, m).result == m) {
                    Block corner = {L(1), L(k), U(1), U(k)};
                    bool shape_ok = m.blocks()[m.block_of(U(1))] == corner;
                    if (shape_ok)
                        for (std::size_t i = 0; i < m.blocks().size(); ++i)
                            if ((int)i != m.block_of(U(1)) && m.blocks()[i].size() != 2)
                                shape_ok = false;
                    if (shape_ok) fire(m, "R4", kProjection, {pair(), copair()});
                }
            }
        }

        bool activated = false;
        if (!involution_active && res.members.count(pair()) && res.members.count(copair())) {
            involution_active = true;
            activated = true;
            res.firings.push_back({"R5", kInvolution, pair(), {}, true});
            for (const auto& a : done) {
                try_add(involute(a), {"involute", {a}, 0, "", ""});
                if (cap_hit) break;
            }
        }
        return activated || res.members.size() > before;
    }
};

}  // namespace

ClosureResult closure(const std::vector<Partition>& generators, const ClosureConfig& cfg) {
    if (cfg.max_total_points < 2)
        throw RangeError("closure: max_total_points must be at least 2");
    Engine e;
    e.cfg = cfg;
    e.involution_active = cfg.involutive;
    e.res.generators = generators;
    e.res.config = cfg;

    e.try_add(identity(1), {"seed", {}, 0, "", ""});
    if (cfg.involutive) {
        e.try_add(pair(), {"seed", {}, 0, "", ""});
        e.try_add(copair(), {"seed", {}, 0, "", ""});
    }
    for (const auto& g : generators) e.try_add(g, {"generator", {}, 0, "", ""});

    while (!e.cap_hit) {
        e.combinatorial_rounds();
        if (e.cap_hit || !cfg.semantic_rules) break;
        if (!e.semantic_pass()) break;
    }
    e.res.saturated = !e.cap_hit;
    return e.res;
}

Membership member_of(const ClosureResult& res, const Partition& p) {
    Membership out;
    if (!res.members.count(p)) return out;
    out.found = true;

    std::set<Partition> emitted;
    std::set<std::string> cited;
    std::function<void(const Partition&)> emit = [&](const Partition& q) {
        if (emitted.count(q)) return;
        emitted.insert(q);
        const Derivation& d = res.origin.at(q);
        for (const auto& in : d.inputs) emit(in);
        TraceStep st;
        st.op = d.op;
        st.operands = d.inputs;
        st.result = q;
        st.removed_loops = d.removed_loops;
        if (d.op == "semantic") {
            st.notes = {d.rule, d.citation};
            std::string c = d.rule + ": " + d.citation;
            if (cited.insert(c).second) out.citations.push_back(c);
        }
        out.trace.steps.push_back(st);
    };
    emit(p);
    return out;
}

std::vector<Partition> enumerate_partitions(Pred pred, int upper_arity, int lower_arity,
                                            int modulus, std::size_t max_elements) {
    if (upper_arity < 0 || lower_arity < 0)
        throw RangeError("enumerate_partitions: arities must be nonnegative");
    if (pred == Pred::NCm && modulus < 1)
        throw RangeError("enumerate_partitions: modulus must be at least 1");

    const int n = upper_arity + lower_arity;
    static const unsigned long long kBell[] = {
        1ULL,          1ULL,           2ULL,           5ULL,           15ULL,
        52ULL,         203ULL,         877ULL,         4140ULL,        21147ULL,
        115975ULL,     678570ULL,      4213597ULL,     27644437ULL,    190899322ULL,
        1382958545ULL, 10480142147ULL, 82864869804ULL, 682076806159ULL};
    if (n >= (int)(sizeof(kBell) / sizeof(kBell[0])) || kBell[n] > max_elements)
        throw BoundExceeded("enumerate_partitions: too many partitions on " +
                            std::to_string(n) + " points");

    auto point_at = [&](int i) {  // 0-based slot -> point
        return i < lower_arity ? L(i + 1) : U(i - lower_arity + 1);
    };

    std::vector<Partition> out;
    std::vector<int> label(n, 0);
    std::function<void(int, int)> rec = [&](int i, int used) {
        if (i == n) {
            std::vector<Block> blocks(used);
            for (int j = 0; j < n; ++j) blocks[label[j]].push_back(point_at(j));
            Partition p(upper_arity, lower_arity, std::move(blocks));
            bool keep = true;
            if (pred == Pred::Noncrossing) keep = is_noncrossing(p);
            if (pred == Pred::NCm) keep = is_noncrossing(p) && has_block_grading(p, modulus);
            if (keep) out.push_back(std::move(p));
            return;
        }
        for (int v = 0; v <= used; ++v) {
            label[i] = v;
            rec(i + 1, std::max(used, v + 1));
        }
    };
    rec(0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

SliceReport verify_generalized_category(const std::vector<Partition>& slice,
                                        int max_total_points) {
    SliceReport rep;
    std::set<Partition> s(slice.begin(), slice.end());
    auto expect = [&](const char* op, std::vector<Partition> operands, const Partition& r) {
        if (r.total_points() > max_total_points) return;
        if (!s.count(r)) {
            rep.closed = false;
            rep.violations.push_back({op, std::move(operands), r});
        }
    };
    for (const auto& a : s) {
        expect("reflect", {a}, reflect(a));
        expect("involute", {a}, involute(a));
    }
    for (const auto& a : s)
        for (const auto& b : s) {
            if (a.total_points() + b.total_points() <= max_total_points)
                expect("tensor", {a, b}, tensor(a, b));
            if (b.lower_arity() == a.upper_arity() &&
                b.upper_arity() + a.lower_arity() <= max_total_points)
                expect("compose", {a, b}, compose(a, b).result);
        }
    return rep;
}

std::string case_name(OrthoCase c) {
    switch (c) {
        case OrthoCase::A_OddLength: return "A_OddLength";
        case OrthoCase::B_SingletonOddGap: return "B_SingletonOddGap";
        case OrthoCase::C_SingletonEvenGap: return "C_SingletonEvenGap";
        case OrthoCase::D_NoSingletonBigBlock: return "D_NoSingletonBigBlock";
        case OrthoCase::E_AllPairs: return "E_AllPairs";
    }
    return "?";
}

std::string case_letter(OrthoCase c) { return case_name(c).substr(0, 1); }

std::string conclusion_text(const OrthoClassification& c) {
    switch (c.conclusion) {
        case OrthoConclusion::InPO: return "InPO";
        case OrthoConclusion::ImpliesEvenGapWitness: return "ImpliesEvenGapWitness";
        case OrthoConclusion::ImpliesTau: return "ImpliesTau(" + std::to_string(c.tau_m) + ")";
        case OrthoConclusion::None: return "None";
    }
    return "?";
}

OrthoClassification classify_orthogonality(const Partition& p) {
    if (p.upper_arity() != 0 || p.lower_arity() < 1)
        throw PreconditionError("classify_orthogonality needs a nonempty lower-only partition");
    if (all_singletons(p))
        throw PreconditionError("classify_orthogonality excludes tensor powers of the singleton");

    const int l = p.lower_arity();
    OrthoClassification out;

    if (l % 2 == 1) {
        out.cases = {OrthoCase::A_OddLength};
        out.conclusion = OrthoConclusion::InPO;
        out.reason = "odd point count";
        return out;
    }

    bool has_singleton = false, big_block = false;
    for (const auto& blk : p.blocks()) {
        if (blk.size() == 1) has_singleton = true;
        if (blk.size() >= 3) big_block = true;
    }

    if (has_singleton) {
        bool odd_gap = false, even_gap = false;
        for (const auto& blk : p.blocks())
            for (std::size_t i = 0; i < blk.size(); ++i)
                for (std::size_t j = i + 1; j < blk.size(); ++j)
                    ((blk[j].index - blk[i].index) % 2 == 1 ? odd_gap : even_gap) = true;
        if (odd_gap) out.cases.push_back(OrthoCase::B_SingletonOddGap);
        if (even_gap) out.cases.push_back(OrthoCase::C_SingletonEvenGap);
        if (odd_gap) {
            out.conclusion = OrthoConclusion::InPO;
            out.reason = "a singleton block next to a same-block pair at odd distance";
        } else {
            out.conclusion = OrthoConclusion::ImpliesEvenGapWitness;
            out.reason = "a singleton block but every same-block pair sits at even distance";
        }
        return out;
    }

    if (big_block) {
        out.cases = {OrthoCase::D_NoSingletonBigBlock};
        out.conclusion = OrthoConclusion::InPO;
        out.reason = "no singletons and a block with at least three points";
        return out;
    }

    // All blocks are pairs: find the shortest cyclic interval spanned by a
    // block and the minimal rotation placing that block at (1, m).
    int best_m = 0, best_r = 0;
    bool first = true;
    auto offer = [&](int m, int r) {
        if (first || m < best_m || (m == best_m && r < best_r)) {
            best_m = m;
            best_r = r;
            first = false;
        }
    };
    for (const auto& blk : p.blocks()) {
        int s = blk[0].index, t = blk[1].index;
        offer(t - s + 1, s - 1);
        offer(l - (t - s) + 1, t - 1);
    }
    out.cases = {OrthoCase::E_AllPairs};
    out.pair_interval = best_m;
    out.rotation = best_r;
    out.tau_m = best_m;
    if (best_m == 2) {
        out.conclusion = OrthoConclusion::InPO;
        out.reason = "all blocks are pairs; partial doubling after rotation yields tau(2)";
    } else {
        out.conclusion = OrthoConclusion::ImpliesTau;
        out.reason = "all blocks are pairs; partial doubling after rotation yields tau(" +
                     std::to_string(best_m) + ")";
    }
    return out;
}

Constructed block_ladder(int m, int y) {
    if (m < 3) throw RangeError("block_ladder: modulus must be at least 3");
    if (y < 1) throw RangeError("block_ladder: y must be at least 1");
    Partition bm = b(m);
    if (y == 1) return {bm, {}, 0};

    TraceBuilder tb;
    Constructed triple = multi_nest(bm, 1, 3);
    tb.absorb(triple);
    Partition bm_star = tb.involute_step(bm);
    Partition bot2 = tb.tensor_step(bm_star, identity(2 * m));
    Partition cur = tb.compose_step(bot2, triple.result);
    Partition b2m = cur;
    for (int n = 2; n < y; ++n) {
        Partition bot = tb.tensor_step(identity(m + 1), bm_star);
        bot = tb.tensor_step(bot, identity(n * m - 1));
        Partition top = tb.tensor_step(b2m, cur);
        cur = tb.compose_step(bot, top);
    }
    return tb.finish(cur);
}

Constructed single_block(int a, int bp, int m) {
    if (m < 3) throw RangeError("single_block: modulus must be at least 3");
    if (a < 0 || bp < 0) throw RangeError("single_block: arities must be nonnegative");
    if (a + bp < 1) throw RangeError("single_block: at least one point is needed");
    if (((a - bp) % m + m) % m != 0)
        throw PreconditionError("single_block: arity difference must be divisible by the modulus");

    if (a == 0) return block_ladder(m, bp / m);
    if (bp == 0) {
        Constructed lad = block_ladder(m, a / m);
        TraceBuilder tb;
        tb.absorb(lad);
        Partition r = tb.involute_step(lad.result);
        return tb.finish(r);
    }

    if (bp % m == 0) {
        // The window construction disconnects here; the square case has a
        // doubling fallback, the rest has no recorded construction.
        if (a != bp)
            throw Unsupported(
                "single_block: no construction for distinct arities both divisible by the modulus");
        return partial_doubling(b(2 * a), a);
    }

    const int c = bp % m;
    const int x = a / m + 1, y = bp / m + 1;
    TraceBuilder tb;
    Constructed ly = block_ladder(m, y);
    tb.absorb(ly);
    Constructed lx = block_ladder(m, x);
    tb.absorb(lx);
    Partition bxm_star = tb.involute_step(lx.result);
    Partition mid = tb.tensor_step(identity(c), ly.result);
    mid = tb.tensor_step(mid, bxm_star);
    Partition top = tb.tensor_step(b(m), identity(a));
    Partition bm_star = tb.involute_step(b(m));
    Partition bot = tb.tensor_step(bm_star, identity(bp));
    Partition x1 = tb.compose_step(mid, top);
    Partition out = tb.compose_step(bot, x1);
    if ((int)out.blocks().size() != 1 || out.upper_arity() != a || out.lower_arity() != bp)
        throw VerificationFailed("single_block: construction did not yield one block");
    return tb.finish(out);
}

}  // namespace pcalc
