#include "pcalc/linear.hpp"

#include <algorithm>
#include <cctype>

namespace pcalc {

namespace {

void require_square(const RationalMatrix& u, const char* who) {
    if (u.rows < 1 || u.rows != u.cols)
        throw ShapeError(std::string(who) + ": the matrix must be square and nonempty");
}

std::uint64_t pow_checked(int base, int exp, const char* who) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (r > (1ULL << 62) / (std::uint64_t)base)
            throw BoundExceeded(std::string(who) + ": index space overflow");
        r *= (std::uint64_t)base;
    }
    return r;
}

// Flat index -> labels 1..n, first position most significant.
void decode(std::uint64_t flat, int n, int len, std::vector<int>& out) {
    out.assign(len, 1);
    for (int i = len - 1; i >= 0; --i) {
        out[i] = (int)(flat % n) + 1;
        flat /= n;
    }
}

// Advance a label tuple in lexicographic order; false after the last one.
bool advance(std::vector<int>& t, int n) {
    int pos = (int)t.size() - 1;
    while (pos >= 0 && t[pos] == n) {
        t[pos] = 1;
        --pos;
    }
    if (pos < 0) return false;
    ++t[pos];
    return true;
}

struct BlockIndexLists {
    std::vector<std::vector<int>> upper, lower;
    explicit BlockIndexLists(const Partition& p)
        : upper(p.blocks().size()), lower(p.blocks().size()) {
        for (std::size_t bi = 0; bi < p.blocks().size(); ++bi)
            for (Point pt : p.blocks()[bi])
                (pt.upper ? upper : lower)[bi].push_back(pt.index);
    }
};

Rational summed_side(const BlockIndexLists& bl, const RationalMatrix& u,
                     const std::vector<int>& alpha, const std::vector<int>& beta,
                     bool sum_over_upper) {
    const int n = u.rows;
    Rational side = 1;
    for (std::size_t bi = 0; bi < bl.upper.size(); ++bi) {
        const auto& forced = sum_over_upper ? bl.lower[bi] : bl.upper[bi];
        const auto& summed = sum_over_upper ? bl.upper[bi] : bl.lower[bi];
        const auto& fixed_labels = sum_over_upper ? beta : alpha;
        if (!forced.empty()) {
            const int v = fixed_labels[forced[0] - 1];
            for (int x : forced)
                if (fixed_labels[x - 1] != v) return 0;
            for (int x : summed) {
                const Rational& f = sum_over_upper ? u.at(v - 1, alpha[x - 1] - 1)
                                                   : u.at(beta[x - 1] - 1, v - 1);
                if (f.is_zero()) return 0;
                side *= f;
            }
        } else {
            Rational s = 0;
            for (int v = 1; v <= n; ++v) {
                Rational term = 1;
                for (int x : summed) {
                    const Rational& f = sum_over_upper ? u.at(v - 1, alpha[x - 1] - 1)
                                                       : u.at(beta[x - 1] - 1, v - 1);
                    if (f.is_zero()) {
                        term = 0;
                        break;
                    }
                    term *= f;
                }
                if (!term.is_zero()) s += term;
            }
            if (s.is_zero()) return 0;
            side *= s;
        }
    }
    return side;
}

}  // namespace

RationalMatrix identity_matrix(int n) {
    if (n < 1) throw RangeError("identity_matrix: n must be at least 1");
    RationalMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RationalMatrix matmul(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols != b.rows) throw ShapeError("matmul: inner dimensions differ");
    RationalMatrix m(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int t = 0; t < a.cols; ++t) {
            if (a.at(i, t) == 0) continue;
            for (int j = 0; j < b.cols; ++j) m.at(i, j) += a.at(i, t) * b.at(t, j);
        }
    return m;
}

RationalMatrix transpose(const RationalMatrix& a) {
    RationalMatrix m(a.cols, a.rows);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) m.at(j, i) = a.at(i, j);
    return m;
}

namespace {

struct Token {
    std::string text;
    std::size_t pos;
};

std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        if (std::isspace((unsigned char)s[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < s.size() && !std::isspace((unsigned char)s[j])) ++j;
        out.push_back({s.substr(i, j - i), i});
        i = j;
    }
    return out;
}

boost::multiprecision::cpp_int parse_int(const std::string& text, std::size_t pos) {
    std::size_t i = (text.size() > 1 && (text[0] == '+' || text[0] == '-')) ? 1 : 0;
    if (i == text.size()) throw SyntaxError("matrix: expected an integer", pos);
    for (std::size_t j = i; j < text.size(); ++j)
        if (!std::isdigit((unsigned char)text[j]))
            throw SyntaxError("matrix: bad integer '" + text + "'", pos);
    return boost::multiprecision::cpp_int(text);
}

}  // namespace

RationalMatrix parse_matrix(const std::string& text) {
    const std::vector<Token> toks = tokenize(text);
    std::size_t idx = 0;
    auto need = [&](const char* what) -> const Token& {
        if (idx >= toks.size())
            throw SyntaxError(std::string("matrix: missing ") + what, text.size());
        return toks[idx++];
    };

    const Token& header = need("header");
    if (header.text != "n")
        throw SyntaxError("matrix: the header line must start with 'n'", header.pos);
    const Token& rt = need("row count");
    const Token& ct = need("column count");
    boost::multiprecision::cpp_int rbig = parse_int(rt.text, rt.pos);
    boost::multiprecision::cpp_int cbig = parse_int(ct.text, ct.pos);
    if (rbig < 1 || rbig > 4096) throw SyntaxError("matrix: bad row count", rt.pos);
    if (cbig < 1 || cbig > 4096) throw SyntaxError("matrix: bad column count", ct.pos);
    RationalMatrix m((int)rbig, (int)cbig);

    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) {
            const Token& t = need("matrix entry");
            std::size_t slash = t.text.find('/');
            if (slash == std::string::npos) {
                m.at(i, j) = Rational(parse_int(t.text, t.pos));
            } else {
                boost::multiprecision::cpp_int num =
                    parse_int(t.text.substr(0, slash), t.pos);
                boost::multiprecision::cpp_int den =
                    parse_int(t.text.substr(slash + 1), t.pos + slash + 1);
                if (den == 0) throw SyntaxError("matrix: zero denominator", t.pos);
                m.at(i, j) = Rational(num) / Rational(den);
            }
        }
    if (idx != toks.size())
        throw SyntaxError("matrix: trailing input '" + toks[idx].text + "'", toks[idx].pos);
    return m;
}

std::string to_text(const RationalMatrix& m) {
    std::string out = "n " + std::to_string(m.rows) + " " + std::to_string(m.cols) + "\n";
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) {
            if (j) out += " ";
            out += m.at(i, j).str();
        }
        out += "\n";
    }
    return out;
}

CheckOutcome check_relation(const Partition& p, const RationalMatrix& u) {
    require_square(u, "check_relation");
    const int n = u.rows, k = p.upper_arity(), l = p.lower_arity();
    BlockIndexLists bl(p);
    std::vector<int> alpha(k, 1);
    while (true) {
        std::vector<int> beta(l, 1);
        while (true) {
            Rational lhs = summed_side(bl, u, alpha, beta, true);
            Rational rhs = summed_side(bl, u, alpha, beta, false);
            if (lhs != rhs) return {false, alpha, beta, lhs, rhs};
            if (!advance(beta, n)) break;
        }
        if (!advance(alpha, n)) break;
    }
    return {};
}

CheckOutcome check_intertwiner(const Partition& p, const RationalMatrix& u) {
    require_square(u, "check_intertwiner");
    const int n = u.rows, k = p.upper_arity(), l = p.lower_arity();
    const std::uint64_t ncols = pow_checked(n, k, "check_intertwiner");
    const std::uint64_t nrows = pow_checked(n, l, "check_intertwiner");
    if (ncols > (1u << 22) || nrows > (1u << 22))
        throw BoundExceeded("check_intertwiner: index space too large");
    SparseTensorMap t = t_map(p, n);
    // Decode every entry's words once; the scan below only multiplies.
    std::vector<std::vector<int>> row_words(t.entries.size()), col_words(t.entries.size());
    std::vector<std::vector<std::size_t>> rowmap(nrows), colmap(ncols);
    for (std::size_t e = 0; e < t.entries.size(); ++e) {
        auto [r, c] = t.entries[e];
        decode(r, n, l, row_words[e]);
        decode(c, n, k, col_words[e]);
        rowmap[r].push_back(e);
        colmap[c].push_back(e);
    }

    std::vector<int> alpha, beta;
    for (std::uint64_t af = 0; af < ncols; ++af) {
        decode(af, n, k, alpha);
        for (std::uint64_t bf = 0; bf < nrows; ++bf) {
            decode(bf, n, l, beta);
            Rational lhs = 0, rhs = 0;
            for (std::size_t e : rowmap[bf]) {
                Rational term = 1;
                for (int i = 0; i < k; ++i) {
                    const Rational& f = u.at(col_words[e][i] - 1, alpha[i] - 1);
                    if (f.is_zero()) {
                        term = 0;
                        break;
                    }
                    term *= f;
                }
                if (!term.is_zero()) lhs += term;
            }
            for (std::size_t e : colmap[af]) {
                Rational term = 1;
                for (int j = 0; j < l; ++j) {
                    const Rational& f = u.at(beta[j] - 1, row_words[e][j] - 1);
                    if (f.is_zero()) {
                        term = 0;
                        break;
                    }
                    term *= f;
                }
                if (!term.is_zero()) rhs += term;
            }
            if (lhs != rhs) return {false, alpha, beta, lhs, rhs};
        }
    }
    return {};
}

ShadowOutcome coproduct_shadow_check(const Partition& p, const RationalMatrix& u,
                                     const RationalMatrix& v) {
    if (!check_relation(p, u).holds || !check_relation(p, v).holds)
        return ShadowOutcome::Skipped;
    return check_relation(p, matmul(u, v)).holds ? ShadowOutcome::Holds : ShadowOutcome::Fails;
}

bool antipode_shadow_check(const Partition& p, const RationalMatrix& u) {
    return check_relation(p, u).holds == check_relation(involute(p), transpose(u)).holds;
}

SparseTensorMap t_map(const Partition& p, int n) {
    if (n < 1) throw RangeError("t_map: n must be at least 1");
    const int k = p.upper_arity(), l = p.lower_arity();
    pow_checked(n, k, "t_map");
    pow_checked(n, l, "t_map");
    const int nb = (int)p.blocks().size();
    const std::uint64_t count = pow_checked(n, nb, "t_map");
    if (count > (1ULL << 26)) throw BoundExceeded("t_map: too many entries");

    std::vector<int> lower_block(l), upper_block(k);
    for (int j = 1; j <= l; ++j) lower_block[j - 1] = p.block_of(L(j));
    for (int i = 1; i <= k; ++i) upper_block[i - 1] = p.block_of(U(i));

    SparseTensorMap out{n, k, l, {}};
    out.entries.reserve(count);
    std::vector<int> v(nb, 1);
    while (true) {
        std::uint64_t row = 0, col = 0;
        for (int j = 0; j < l; ++j) row = row * n + (std::uint64_t)(v[lower_block[j]] - 1);
        for (int i = 0; i < k; ++i) col = col * n + (std::uint64_t)(v[upper_block[i]] - 1);
        out.entries.push_back({row, col});
        if (!advance(v, n)) break;
    }
    std::sort(out.entries.begin(), out.entries.end());
    return out;
}

SparseTensorMap kron(const SparseTensorMap& a, const SparseTensorMap& b) {
    if (a.n != b.n) throw ShapeError("kron: label sizes differ");
    const std::uint64_t row_base = pow_checked(a.n, b.lower_arity, "kron");
    const std::uint64_t col_base = pow_checked(a.n, b.upper_arity, "kron");
    SparseTensorMap out{a.n, a.upper_arity + b.upper_arity, a.lower_arity + b.lower_arity, {}};
    out.entries.reserve(a.entries.size() * b.entries.size());

    std::vector<std::pair<std::size_t, std::size_t>> groups;
    for (std::size_t i = 0; i < b.entries.size();) {
        std::size_t j = i;
        while (j < b.entries.size() && b.entries[j].first == b.entries[i].first) ++j;
        groups.push_back({i, j});
        i = j;
    }
    // Row-major over (a row group, b row group), column-major inside: the
    // output comes out sorted without a final sort.
    for (std::size_t ia = 0; ia < a.entries.size();) {
        std::size_t ja = ia;
        while (ja < a.entries.size() && a.entries[ja].first == a.entries[ia].first) ++ja;
        for (auto [gs, ge] : groups)
            for (std::size_t x = ia; x < ja; ++x)
                for (std::size_t y = gs; y < ge; ++y)
                    out.entries.push_back(
                        {a.entries[x].first * row_base + b.entries[y].first,
                         a.entries[x].second * col_base + b.entries[y].second});
        ia = ja;
    }
    return out;
}

SparseTensorMap transpose_map(const SparseTensorMap& a) {
    SparseTensorMap out{a.n, a.lower_arity, a.upper_arity, {}};
    out.entries.reserve(a.entries.size());
    for (auto [r, c] : a.entries) out.entries.push_back({c, r});
    std::sort(out.entries.begin(), out.entries.end());
    return out;
}

bool compose_matches(const Partition& bottom, const Partition& top, int n) {
    ComposeOutcome c = compose(bottom, top);
    SparseTensorMap tb = t_map(bottom, n), tt = t_map(top, n), tr = t_map(c.result, n);

    const std::uint64_t mid = pow_checked(n, bottom.upper_arity(), "compose_matches");
    std::vector<std::vector<std::size_t>> bottom_by_col(mid), top_by_row(mid);
    for (std::size_t i = 0; i < tb.entries.size(); ++i)
        bottom_by_col[tb.entries[i].second].push_back(i);
    for (std::size_t i = 0; i < tt.entries.size(); ++i)
        top_by_row[tt.entries[i].first].push_back(i);

    std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> counts;
    for (std::uint64_t m = 0; m < mid; ++m)
        for (std::size_t ib : bottom_by_col[m])
            for (std::size_t it : top_by_row[m])
                counts[{tb.entries[ib].first, tt.entries[it].second}]++;

    const std::uint64_t expected = pow_checked(n, c.removed_loops, "compose_matches");
    if (counts.size() != tr.entries.size()) return false;
    for (auto [rc, cnt] : counts)
        if (cnt != expected) return false;
    for (const auto& e : tr.entries)
        if (!counts.count(e)) return false;
    return true;
}

RationalMatrix right_inverse_witness(const Partition& p, const RationalMatrix& u) {
    if (p.upper_arity() != 0 || p.lower_arity() < 1)
        throw PreconditionError("right_inverse_witness needs a nonempty lower-only partition");
    require_square(u, "right_inverse_witness");
    const int first = p.block_of(L(1));
    if (p.blocks()[first].size() != 2)
        throw Unsupported("right_inverse_witness: the block of the first point must be a pair");
    if (!check_relation(p, u).holds)
        throw PreconditionError("right_inverse_witness: the matrix does not satisfy the relation");

    const int n = u.rows;
    Rational factor = 1;
    int next = 0;
    for (std::size_t bi = 0; bi < p.blocks().size(); ++bi) {
        if ((int)bi == first) continue;
        const int lab = (next++ % n) + 1;
        Rational s = 0;
        for (int v = 1; v <= n; ++v) {
            Rational term = 1;
            for (std::size_t e = 0; e < p.blocks()[bi].size(); ++e)
                term *= u.at(lab - 1, v - 1);
            s += term;
        }
        factor *= s;
    }

    RationalMatrix t(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t.at(i, j) = u.at(j, i) * factor;
    if (matmul(u, t) != identity_matrix(n))
        throw VerificationFailed("right_inverse_witness: u * t is not the identity");
    return t;
}

}  // namespace pcalc
