#include "pcalc/constructions.hpp"

#include <set>
#include <string>

namespace pcalc {

namespace {

// Accumulates trace steps and the running loop count.
void require_lower_only(const Partition& p, const char* who) {
    if (p.upper_arity() != 0)
        throw PreconditionError(std::string(who) + " needs a partition with lower points only");
}

void require_upper_only(const Partition& p, const char* who) {
    if (p.lower_arity() != 0)
        throw PreconditionError(std::string(who) + " needs a partition with upper points only");
}

Partition tensor_power(TraceBuilder& tb, const Partition& p, int n) {
    Partition acc = p;
    for (int i = 1; i < n; ++i) acc = tb.tensor_step(acc, p);
    return acc;
}

bool point_connected(const Partition& p, Point pt) {
    return p.blocks()[p.block_of(pt)].size() >= 2;
}

}  // namespace

Partition TraceBuilder::tensor_step(const Partition& a, const Partition& b) {
    Partition r = tensor(a, b);
    trace.steps.push_back({"tensor", {a, b}, {}, r, 0});
    return r;
}

Partition TraceBuilder::compose_step(const Partition& bottom, const Partition& top) {
    ComposeOutcome c = compose(bottom, top);
    trace.steps.push_back({"compose", {bottom, top}, {}, c.result, c.removed_loops});
    loops += c.removed_loops;
    return c.result;
}

Partition TraceBuilder::involute_step(const Partition& p) {
    Partition r = involute(p);
    trace.steps.push_back({"involute", {p}, {}, r, 0});
    return r;
}

Partition TraceBuilder::reflect_step(const Partition& p) {
    Partition r = reflect(p);
    trace.steps.push_back({"reflect", {p}, {}, r, 0});
    return r;
}

Partition TraceBuilder::rotate_step(const Partition& p, int count) {
    Partition r = rotate_line(p, count);
    trace.steps.push_back({"rotate", {p}, {"count=" + std::to_string(count)}, r, 0});
    return r;
}

void TraceBuilder::absorb(const Constructed& c) {
    for (const auto& st : c.trace.steps) trace.steps.push_back(st);
    loops += c.removed_loops;
}

Constructed TraceBuilder::finish(Partition result) { return {std::move(result), std::move(trace), loops}; }

std::string to_text(const ConstructionTrace& trace) {
    std::string out;
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const TraceStep& st = trace.steps[i];
        out += "step " + std::to_string(i + 1) + ": " + st.op;
        for (const auto& note : st.notes) out += " " + note;
        for (const auto& operand : st.operands) out += " " + operand.to_text();
        out += " -> " + st.result.to_text() + " loops=" + std::to_string(st.removed_loops) + "\n";
    }
    return out;
}

Partition replay_trace(const ConstructionTrace& trace) {
    if (trace.steps.empty()) throw VerificationFailed("empty trace has nothing to replay");
    for (const auto& st : trace.steps) {
        Partition got;
        int loops = 0;
        if (st.op == "tensor") {
            got = tensor(st.operands.at(0), st.operands.at(1));
        } else if (st.op == "compose") {
            ComposeOutcome c = compose(st.operands.at(0), st.operands.at(1));
            got = c.result;
            loops = c.removed_loops;
        } else if (st.op == "involute") {
            got = involute(st.operands.at(0));
        } else if (st.op == "reflect") {
            got = reflect(st.operands.at(0));
        } else if (st.op == "rotate") {
            if (st.notes.empty() || st.notes[0].rfind("count=", 0) != 0)
                throw VerificationFailed("rotate step without a count note");
            got = rotate_line(st.operands.at(0), std::stoi(st.notes[0].substr(6)));
        } else if (st.op == "generator" || st.op == "seed" || st.op == "semantic") {
            continue;  // carried, not recomputed
        } else {
            throw VerificationFailed("unknown trace op '" + st.op + "'");
        }
        if (got != st.result || loops != st.removed_loops)
            throw VerificationFailed("trace step does not replay: " + st.op + " -> " +
                                     st.result.to_text());
    }
    return trace.steps.back().result;
}

Constructed nest(const Partition& p, const Partition& q, int gap) {
    require_lower_only(p, "nest");
    require_lower_only(q, "nest");
    const int l = p.lower_arity();
    if (gap < 0 || gap > l)
        throw RangeError("nest gap " + std::to_string(gap) + " must lie in [0.." +
                         std::to_string(l) + "]");
    TraceBuilder tb;
    Partition mid = q;
    if (gap > 0) mid = tb.tensor_step(identity(gap), mid);
    if (l - gap > 0) mid = tb.tensor_step(mid, identity(l - gap));
    return tb.finish(tb.compose_step(mid, p));
}

Constructed multi_nest(const Partition& p, int s, int m) {
    require_lower_only(p, "multi_nest");
    const int l = p.lower_arity();
    if (s < 1 || s > l)
        throw RangeError("multi_nest position " + std::to_string(s) + " must lie in [1.." +
                         std::to_string(l) + "]");
    if (m < 1) throw RangeError("multi_nest count must be >= 1");
    Constructed acc{p, {}, 0};
    for (int i = 2; i <= m; ++i) {
        Constructed next = nest(p, acc.result, s);
        for (const auto& st : next.trace.steps) acc.trace.steps.push_back(st);
        acc.removed_loops += next.removed_loops;
        acc.result = std::move(next.result);
    }
    return acc;
}

Partition rotate_line(const Partition& p, int count) {
    require_lower_only(p, "rotate_line");
    const int l = p.lower_arity();
    if (l == 0) return p;
    count = ((count % l) + l) % l;
    if (count == 0) return p;
    std::vector<Block> blocks;
    for (const auto& blk : p.blocks()) {
        Block moved;
        for (Point pt : blk) moved.push_back(L((pt.index - 1 - count + 2 * l) % l + 1));
        blocks.push_back(std::move(moved));
    }
    return Partition(0, l, std::move(blocks));
}

namespace {

void check_interior_clause(const Partition& p, const Partition& rotated, const char* who) {
    const int l = p.lower_arity();
    for (int i = 2; i <= l; ++i)
        for (int j = i + 1; j <= l; ++j)
            if (p.same_block(L(i), L(j)) != rotated.same_block(L(i - 1), L(j - 1)))
                throw VerificationFailed(std::string(who) +
                                         ": interior rotation clause failed at (" +
                                         std::to_string(i) + "," + std::to_string(j) + ")");
}

}  // namespace

Constructed weak_line_rotate(const Partition& p, const Partition& q) {
    require_lower_only(p, "weak_line_rotate");
    require_upper_only(q, "weak_line_rotate");
    const int l = p.lower_arity();
    const int k = q.upper_arity();
    if (l < 1) throw PreconditionError("weak_line_rotate needs at least one lower point");
    if (k < 1) throw PreconditionError("weak_line_rotate needs a cap with at least one point");
    TraceBuilder tb;
    Partition top = tensor_power(tb, p, k);
    Partition mid = p;
    if (k * l - 1 > 0) mid = tb.tensor_step(identity(k * l - 1), mid);
    mid = tb.tensor_step(mid, identity(1));
    Partition bot = tb.tensor_step(tensor_power(tb, q, l), identity(l));
    Partition x1 = tb.compose_step(mid, top);
    Partition x2 = tb.compose_step(bot, x1);
    check_interior_clause(p, x2, "weak_line_rotate");
    return tb.finish(x2);
}

Constructed line_rotate(const Partition& p, const Partition& q) {
    require_lower_only(p, "line_rotate");
    require_upper_only(q, "line_rotate");
    const int l = p.lower_arity();
    const int k = q.upper_arity();
    if (l < 1) throw PreconditionError("line_rotate needs at least one lower point");
    if (all_singletons(q))
        throw PreconditionError("line_rotate needs a cap with a block of two or more points");
    TraceBuilder tb;
    Partition qmirror = tb.involute_step(q);  // lower-only copy of q
    int r = 0;
    Partition rotated = qmirror;
    while (!point_connected(rotated, L(k))) {
        rotated = rotate_line(rotated, 1);
        ++r;
    }
    if (r > 0) rotated = tb.rotate_step(qmirror, r);
    Partition cap = tb.involute_step(rotated);  // back to upper-only
    Partition mid = p;
    if (k - 1 > 0) mid = tb.tensor_step(identity(k - 1), mid);
    mid = tb.tensor_step(mid, identity(1));
    Partition bot = tb.tensor_step(cap, identity(l));
    Partition x1 = tb.compose_step(mid, rotated);
    Partition x2 = tb.compose_step(bot, x1);
    check_interior_clause(p, x2, "line_rotate");
    for (int x = 1; x < l; ++x)
        if (x2.same_block(L(x), L(l)) != p.same_block(L(x + 1), L(1)))
            throw VerificationFailed("line_rotate: wrap clause failed at x=" + std::to_string(x));
    return tb.finish(x2);
}

Constructed shifted_doubling(const Partition& p, int s) {
    require_lower_only(p, "shifted_doubling");
    const int l = p.lower_arity();
    if (s < 1 || s > l)
        throw RangeError("shifted_doubling legs " + std::to_string(s) + " must lie in [1.." +
                         std::to_string(l) + "]");
    TraceBuilder tb;
    Partition flipped = tb.involute_step(tb.reflect_step(p));  // in P(l,0)
    Partition top = tb.tensor_step(p, identity(s));
    Partition bottom = tb.tensor_step(identity(s), flipped);
    return tb.finish(tb.compose_step(bottom, top));
}

Constructed partial_doubling(const Partition& p, int s) {
    require_lower_only(p, "partial_doubling");
    if (all_singletons(p))
        throw PreconditionError("partial_doubling needs a block of two or more points");
    const int l = p.lower_arity();
    if (s < 1 || s > l)
        throw RangeError("partial_doubling legs " + std::to_string(s) + " must lie in [1.." +
                         std::to_string(l) + "]");
    TraceBuilder tb;
    Partition pst = tb.involute_step(p);
    Partition q;
    if (s == l) {
        q = tb.compose_step(p, pst);
    } else {
        int r = 0;
        Partition pp = p;
        while (!point_connected(pp, L(1))) {
            pp = rotate_line(pp, 1);
            ++r;
        }
        if (r > 0) pp = tb.rotate_step(p, r);
        Constructed g = multi_nest(pp, 1, l - s);
        tb.absorb(g);
        const int pad = (l - 1) * (l - s);
        Partition gi = tb.involute_step(g.result);
        Partition t1 = tb.tensor_step(identity(s), g.result);
        Partition m1 = tb.tensor_step(pst, identity(pad));
        Partition m2 = tb.tensor_step(p, identity(pad));
        Partition bottom = tb.tensor_step(identity(s), gi);
        Partition x1 = tb.compose_step(m1, t1);
        Partition x2 = tb.compose_step(m2, x1);
        q = tb.compose_step(bottom, x2);
    }
    if (q != involute(q) || compose(q, q).result != q)
        throw VerificationFailed("partial_doubling output is not a projection: " + q.to_text());
    if (!projection_symmetry_check(q))
        throw VerificationFailed("partial_doubling output lacks the through-block symmetry: " +
                                 q.to_text());
    return tb.finish(q);
}

bool projection_symmetry_check(const Partition& q) {
    if (q.upper_arity() != q.lower_arity())
        throw NotAProjection("projection check needs a square partition, got " + q.to_text());
    if (q != involute(q)) throw NotAProjection("partition differs from its mirror: " + q.to_text());
    if (compose(q, q).result != q)
        throw NotAProjection("partition differs from its self-composition: " + q.to_text());
    for (const auto& blk : q.blocks()) {
        std::set<int> up, low;
        for (Point pt : blk) (pt.upper ? up : low).insert(pt.index);
        if (!up.empty() && !low.empty() && up != low) return false;
    }
    return true;
}

Constructed weak_restriction(const Partition& q, const Partition& p1, const Partition& p2,
                             int a, int b) {
    if (q.upper_arity() != q.lower_arity())
        throw PreconditionError("weak_restriction needs a square partition, got " + q.to_text());
    require_lower_only(p1, "weak_restriction");
    require_upper_only(p2, "weak_restriction");
    const int s = q.upper_arity();
    const int l = p1.lower_arity();
    const int k = p2.upper_arity();
    if (a < 1 || a >= b || b > s)
        throw RangeError("weak_restriction window needs 1 <= a < b <= " + std::to_string(s));
    if (k * l < a || k * l < s - b)
        throw RangeError("weak_restriction caps cover only " + std::to_string(k * l) +
                         " legs per side; window needs " + std::to_string(a) + " and " +
                         std::to_string(s - b));
    TraceBuilder tb;
    Partition pads = identity(b - a);
    Partition top = tb.tensor_step(tb.tensor_step(tensor_power(tb, p1, k), pads),
                                   tensor_power(tb, p1, k));
    Partition mid = q;
    if (k * l - a > 0) mid = tb.tensor_step(identity(k * l - a), mid);
    if (k * l - (s - b) > 0) mid = tb.tensor_step(mid, identity(k * l - (s - b)));
    Partition bot = tb.tensor_step(tb.tensor_step(tensor_power(tb, p2, l), pads),
                                   tensor_power(tb, p2, l));
    Partition x1 = tb.compose_step(mid, top);
    return tb.finish(tb.compose_step(bot, x1));
}

Constructed m_rotation(const Partition& p, int m) {
    if (p.upper_arity() < 1)
        throw PreconditionError("m_rotation needs at least one upper point");
    if (m < 1) throw RangeError("m_rotation modulus must be >= 1");
    TraceBuilder tb;
    Partition top = b(m);
    if (p.upper_arity() > 1) top = tb.tensor_step(top, identity(p.upper_arity() - 1));
    Partition bot = p;
    if (m > 1) bot = tb.tensor_step(identity(m - 1), bot);
    return tb.finish(tb.compose_step(bot, top));
}

}  // namespace pcalc
