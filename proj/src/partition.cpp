#include "pcalc/partition.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace pcalc {

namespace {

std::string point_name(Point p) {
    return (p.upper ? "u" : "l") + std::to_string(p.index);
}

// Minimal union-find over 0..n-1.
struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Partition::Partition(int upper_arity, int lower_arity, std::vector<Block> blocks)
    : k_(upper_arity), l_(lower_arity) {
    if (k_ < 0 || l_ < 0)
        throw RangeError("negative arity in P(" + std::to_string(k_) + "," + std::to_string(l_) + ")");
    const int n = k_ + l_;
    std::vector<char> seen(n, 0);
    int covered = 0;
    for (auto& blk : blocks) {
        if (blk.empty()) continue;
        for (Point p : blk) {
            const int limit = p.upper ? k_ : l_;
            if (p.index < 1 || p.index > limit)
                throw RangeError("point " + point_name(p) + " out of range for P(" +
                                 std::to_string(k_) + "," + std::to_string(l_) + ")");
            const int pos = p.upper ? l_ + p.index - 1 : p.index - 1;
            if (seen[pos])
                throw OverlapError("point " + point_name(p) + " appears in two blocks");
            seen[pos] = 1;
            ++covered;
        }
        std::sort(blk.begin(), blk.end());
        blocks_.push_back(std::move(blk));
    }
    if (covered != n) {
        for (int pos = 0; pos < n; ++pos) {
            if (!seen[pos]) {
                Point missing = pos < l_ ? L(pos + 1) : U(pos - l_ + 1);
                throw CoverageError("point " + point_name(missing) + " is not covered by any block");
            }
        }
    }
    std::sort(blocks_.begin(), blocks_.end(),
              [](const Block& a, const Block& b) { return a.front() < b.front(); });
    labels_.assign(n, -1);
    for (int bi = 0; bi < static_cast<int>(blocks_.size()); ++bi)
        for (Point p : blocks_[bi])
            labels_[p.upper ? l_ + p.index - 1 : p.index - 1] = bi;
}

int Partition::block_of(Point p) const {
    const int limit = p.upper ? k_ : l_;
    if (p.index < 1 || p.index > limit)
        throw RangeError("point " + point_name(p) + " out of range for P(" +
                         std::to_string(k_) + "," + std::to_string(l_) + ")");
    return labels_[p.upper ? l_ + p.index - 1 : p.index - 1];
}

std::strong_ordering Partition::operator<=>(const Partition& o) const {
    if (auto c = (k_ + l_) <=> (o.k_ + o.l_); c != 0) return c;
    if (auto c = k_ <=> o.k_; c != 0) return c;
    return labels_ <=> o.labels_;
}

std::string Partition::to_text() const {
    std::string out = "P(" + std::to_string(k_) + "," + std::to_string(l_) + "):";
    if (!blocks_.empty()) out += " ";
    for (const auto& blk : blocks_) {
        out += "{";
        for (std::size_t i = 0; i < blk.size(); ++i) {
            if (i) out += ",";
            out += point_name(blk[i]);
        }
        out += "}";
    }
    return out;
}

namespace {

struct Scanner {
    const std::string& s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n' || s[i] == '\r')) ++i;
    }
    bool peek_is(char c) {
        skip_ws();
        return i < s.size() && s[i] == c;
    }
    void expect(char c) {
        skip_ws();
        if (i >= s.size() || s[i] != c)
            throw SyntaxError(std::string("expected '") + c + "'", i);
        ++i;
    }
    int number() {
        skip_ws();
        std::size_t start = i;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
        if (i == start) throw SyntaxError("expected a number", start);
        return std::stoi(s.substr(start, i - start));
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
};

}  // namespace

Partition Partition::from_text(const std::string& text) {
    Scanner sc{text};
    sc.skip_ws();
    sc.expect('P');
    sc.expect('(');
    const int k = sc.number();
    sc.expect(',');
    const int l = sc.number();
    sc.expect(')');
    sc.skip_ws();
    if (sc.i >= text.size() || (text[sc.i] != ':' && text[sc.i] != '#'))
        throw SyntaxError("expected ':' or '#' after the arity header", sc.i);
    const bool counterclockwise = text[sc.i] == '#';
    ++sc.i;
    std::vector<Block> blocks;
    while (sc.peek_is('{')) {
        sc.expect('{');
        Block blk;
        while (true) {
            sc.skip_ws();
            if (counterclockwise) {
                const std::size_t at = sc.i;
                const int t = sc.number();
                if (t < 1 || t > k + l)
                    throw SyntaxError("counterclockwise position " + std::to_string(t) +
                                          " out of range for P(" + std::to_string(k) + "," +
                                          std::to_string(l) + ")",
                                      at);
                blk.push_back(t <= l ? L(t) : U(k + 1 - (t - l)));
            } else {
                if (sc.i >= text.size() || (text[sc.i] != 'l' && text[sc.i] != 'u'))
                    throw SyntaxError("expected a point like l3 or u1", sc.i);
                const bool up = text[sc.i] == 'u';
                ++sc.i;
                const int idx = sc.number();
                blk.push_back(up ? U(idx) : L(idx));
            }
            if (sc.peek_is(',')) {
                sc.expect(',');
                continue;
            }
            break;
        }
        sc.expect('}');
        blocks.push_back(std::move(blk));
    }
    if (!sc.done()) throw SyntaxError("unexpected trailing characters", sc.i);
    return Partition(k, l, std::move(blocks));
}

Partition tensor(const Partition& p, const Partition& q) {
    std::vector<Block> blocks = p.blocks();
    for (const auto& blk : q.blocks()) {
        Block shifted;
        shifted.reserve(blk.size());
        for (Point pt : blk)
            shifted.push_back(pt.upper ? U(pt.index + p.upper_arity())
                                       : L(pt.index + p.lower_arity()));
        blocks.push_back(std::move(shifted));
    }
    return Partition(p.upper_arity() + q.upper_arity(), p.lower_arity() + q.lower_arity(),
                     std::move(blocks));
}

ComposeOutcome compose(const Partition& bottom, const Partition& top) {
    if (top.lower_arity() != bottom.upper_arity())
        throw ArityMismatch("compose: top partition has " + std::to_string(top.lower_arity()) +
                            " lower points, bottom has " + std::to_string(bottom.upper_arity()) +
                            " upper points");
    const int k = top.upper_arity();
    const int mid = top.lower_arity();
    const int l = bottom.lower_arity();
    UnionFind uf(k + mid + l);
    // Node ids: 0..k-1 result upper, k..k+mid-1 glued middle, then result lower.
    for (const auto& blk : top.blocks())
        for (std::size_t i = 1; i < blk.size(); ++i) {
            auto node = [&](Point p) { return p.upper ? p.index - 1 : k + p.index - 1; };
            uf.unite(node(blk[i - 1]), node(blk[i]));
        }
    for (const auto& blk : bottom.blocks())
        for (std::size_t i = 1; i < blk.size(); ++i) {
            auto node = [&](Point p) { return p.upper ? k + p.index - 1 : k + mid + p.index - 1; };
            uf.unite(node(blk[i - 1]), node(blk[i]));
        }
    std::map<int, Block> by_root;
    for (int i = 0; i < k; ++i) by_root[uf.find(i)].push_back(U(i + 1));
    for (int j = 0; j < l; ++j) by_root[uf.find(k + mid + j)].push_back(L(j + 1));
    int loops = 0;
    std::set<int> counted;
    for (int m = 0; m < mid; ++m) {
        const int r = uf.find(k + m);
        if (!by_root.count(r) && counted.insert(r).second) ++loops;
    }
    std::vector<Block> blocks;
    blocks.reserve(by_root.size());
    for (auto& [root, blk] : by_root) blocks.push_back(std::move(blk));
    return ComposeOutcome{Partition(k, l, std::move(blocks)), loops};
}

Partition involute(const Partition& p) {
    std::vector<Block> blocks;
    for (const auto& blk : p.blocks()) {
        Block flipped;
        for (Point pt : blk) flipped.push_back(pt.upper ? L(pt.index) : U(pt.index));
        blocks.push_back(std::move(flipped));
    }
    return Partition(p.lower_arity(), p.upper_arity(), std::move(blocks));
}

Partition reflect(const Partition& p) {
    const int k = p.upper_arity(), l = p.lower_arity();
    std::vector<Block> blocks;
    for (const auto& blk : p.blocks()) {
        Block mirrored;
        for (Point pt : blk) mirrored.push_back(pt.upper ? U(k + 1 - pt.index) : L(l + 1 - pt.index));
        blocks.push_back(std::move(mirrored));
    }
    return Partition(k, l, std::move(blocks));
}

Partition identity(int m) {
    if (m < 0) throw RangeError("identity(m) needs m >= 0");
    std::vector<Block> blocks;
    for (int i = 1; i <= m; ++i) blocks.push_back({U(i), L(i)});
    return Partition(m, m, std::move(blocks));
}

Partition up1() { return Partition(0, 1, {{L(1)}}); }
Partition down1() { return Partition(1, 0, {{U(1)}}); }
Partition pair() { return Partition(0, 2, {{L(1), L(2)}}); }
Partition copair() { return Partition(2, 0, {{U(1), U(2)}}); }

Partition b(int m) {
    if (m < 1) throw RangeError("b(m) needs m >= 1");
    Block blk;
    for (int i = 1; i <= m; ++i) blk.push_back(L(i));
    return Partition(0, m, {blk});
}

Partition fourblock() { return Partition(2, 2, {{U(1), U(2), L(1), L(2)}}); }
Partition crossline() { return Partition(0, 4, {{L(1), L(3)}, {L(2), L(4)}}); }
Partition positioner() { return Partition(0, 4, {{L(1), L(3)}, {L(2)}, {L(4)}}); }

namespace {

// Corner block on the given indices of both rows, through strands elsewhere.
Partition corner_pattern(int m, const std::set<int>& corner) {
    Block big;
    for (int i : corner) {
        big.push_back(U(i));
        big.push_back(L(i));
    }
    std::vector<Block> blocks{big};
    for (int i = 1; i <= m; ++i)
        if (!corner.count(i)) blocks.push_back({U(i), L(i)});
    return Partition(m, m, std::move(blocks));
}

}  // namespace

Partition pi(int m) {
    if (m < 2) throw RangeError("pi(m) needs m >= 2");
    return corner_pattern(m, {1, 2, m - 1, m});
}

Partition sigma(int m) {
    if (m < 2) throw RangeError("sigma(m) needs m >= 2");
    return corner_pattern(m, {1, m});
}

Partition tau(int m) {
    if (m < 2) throw RangeError("tau(m) needs m >= 2");
    std::vector<Block> blocks{{U(1), U(m)}, {L(1), L(m)}};
    for (int i = 2; i < m; ++i) blocks.push_back({U(i), L(i)});
    return Partition(m, m, std::move(blocks));
}

bool is_noncrossing(const Partition& p) {
    const int k = p.upper_arity(), l = p.lower_arity();
    // Boundary walk: lower row left to right, then upper row right to left.
    auto walk = [&](Point pt) { return pt.upper ? l + (k - pt.index) : pt.index - 1; };
    std::vector<std::vector<int>> pos;
    for (const auto& blk : p.blocks()) {
        std::vector<int> v;
        v.reserve(blk.size());
        for (Point pt : blk) v.push_back(walk(pt));
        std::sort(v.begin(), v.end());
        pos.push_back(std::move(v));
    }
    // Two blocks cross iff their walk positions alternate a,b,a,b somewhere.
    for (std::size_t a = 0; a < pos.size(); ++a)
        for (std::size_t bj = a + 1; bj < pos.size(); ++bj) {
            std::size_t ia = 0, ib = 0;
            int transitions = 0, last = -1;
            while (ia < pos[a].size() || ib < pos[bj].size()) {
                int tag;
                if (ib >= pos[bj].size() || (ia < pos[a].size() && pos[a][ia] < pos[bj][ib])) {
                    tag = 0;
                    ++ia;
                } else {
                    tag = 1;
                    ++ib;
                }
                if (last != -1 && tag != last) ++transitions;
                last = tag;
            }
            if (transitions >= 3) return false;
        }
    return true;
}

bool has_block_grading(const Partition& p, int m) {
    if (m < 1) throw RangeError("block grading needs a modulus m >= 1");
    for (const auto& blk : p.blocks()) {
        int d = 0;
        for (Point pt : blk) d += pt.upper ? 1 : -1;
        if (((d % m) + m) % m != 0) return false;
    }
    return true;
}

bool all_singletons(const Partition& p) {
    for (const auto& blk : p.blocks())
        if (blk.size() != 1) return false;
    return true;
}

}  // namespace pcalc
