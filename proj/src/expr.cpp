#include "pcalc/expr.hpp"

#include <cctype>
#include <map>

namespace pcalc {

namespace {

// The circled-times sign in UTF-8.
const std::string kOtimes = "\xe2\x8a\x97";

struct Token {
    enum class Kind { Name, Int, PartitionLiteral, LParen, RParen, Comma, Semi, Star, Tilde, Otimes, End };
    Kind kind;
    std::string text;
    long value = 0;      // Kind::Int
    Partition literal;   // Kind::PartitionLiteral
    std::size_t pos = 0;
};

// A partition literal starts at "P(" and runs through its block list: one
// "{...}" group per block, consumed while the next non-space byte is '{'.
// "P(0,0):" with no blocks is valid, so zero groups are accepted.
std::size_t literal_end(const std::string& s, std::size_t start) {
    std::size_t i = start;
    while (i < s.size() && s[i] != ')') ++i;
    if (i == s.size()) throw SyntaxError("unterminated partition literal", start);
    ++i;  // past ')'
    while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
    if (i < s.size() && (s[i] == ':' || s[i] == '#')) ++i;
    for (;;) {
        std::size_t probe = i;
        while (probe < s.size() && std::isspace((unsigned char)s[probe])) ++probe;
        if (probe == s.size() || s[probe] != '{') return i;
        i = probe;
        while (i < s.size() && s[i] != '}') ++i;
        if (i == s.size()) throw SyntaxError("unterminated block in partition literal", probe);
        ++i;  // past '}'
    }
}

std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace((unsigned char)c)) {
            ++i;
            continue;
        }
        Token t;
        t.pos = i;
        if (s.compare(i, kOtimes.size(), kOtimes) == 0) {
            t.kind = Token::Kind::Otimes;
            t.text = kOtimes;
            i += kOtimes.size();
        } else if (c == 'P' && i + 1 < s.size() && s[i + 1] == '(') {
            std::size_t end = literal_end(s, i);
            t.kind = Token::Kind::PartitionLiteral;
            t.text = s.substr(i, end - i);
            try {
                t.literal = Partition::from_text(t.text);
            } catch (const SyntaxError& e) {
                throw SyntaxError(e.what(), i + e.position);
            }
            i = end;
        } else if (std::isdigit((unsigned char)c)) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
            t.kind = Token::Kind::Int;
            t.text = s.substr(i, j - i);
            if (t.text.size() > 9) throw SyntaxError("integer too large", i);
            t.value = std::stol(t.text);
            i = j;
        } else if (std::isalpha((unsigned char)c) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum((unsigned char)s[j]) || s[j] == '_')) ++j;
            t.kind = Token::Kind::Name;
            t.text = s.substr(i, j - i);
            i = j;
        } else {
            switch (c) {
                case '(': t.kind = Token::Kind::LParen; break;
                case ')': t.kind = Token::Kind::RParen; break;
                case ',': t.kind = Token::Kind::Comma; break;
                case ';': t.kind = Token::Kind::Semi; break;
                case '*': t.kind = Token::Kind::Star; break;
                case '~': t.kind = Token::Kind::Tilde; break;
                default:
                    throw SyntaxError(std::string("unexpected character '") + c + "'", i);
            }
            t.text = c;
            ++i;
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.kind = Token::Kind::End;
    end.pos = s.size();
    out.push_back(end);
    return out;
}

// Argument shapes: p = partition expression, i = integer.
const std::map<std::string, std::string> kCallShapes = {
    {"id", "i"},      {"b", "i"},        {"pi", "i"},      {"sigma", "i"},
    {"tau", "i"},     {"nest", "ppi"},   {"mult", "pii"},  {"pdouble", "pi"},
    {"sdouble", "pi"}, {"rot", "pp"},    {"wrot", "pp"},
};

bool is_zero_arg_name(const std::string& n) {
    return n == "id" || n == "empty" || n == "up1" || n == "down1" || n == "pair" ||
           n == "copair" || n == "fourblock" || n == "crossline" || n == "positioner";
}

struct Parser {
    const std::vector<Token>& toks;
    std::size_t at = 0;

    const Token& peek() const { return toks[at]; }
    Token take() { return toks[at++]; }

    [[noreturn]] void fail(const std::string& expected) const {
        const Token& t = peek();
        std::string got = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
        throw SyntaxError("expected " + expected + ", got " + got, t.pos);
    }

    void expect(Token::Kind k, const std::string& what) {
        if (peek().kind != k) fail(what);
        ++at;
    }

    Expr parse_compose() {
        Expr e = parse_tensor();
        while (peek().kind == Token::Kind::Semi) {
            ++at;
            Expr rhs = parse_tensor();
            Expr node;
            node.kind = Expr::Kind::Compose;
            node.args.push_back(std::move(e));
            node.args.push_back(std::move(rhs));
            e = std::move(node);
        }
        return e;
    }

    Expr parse_tensor() {
        Expr e = parse_postfix();
        while (peek().kind == Token::Kind::Otimes ||
               (peek().kind == Token::Kind::Name && peek().text == "ox")) {
            ++at;
            Expr rhs = parse_postfix();
            Expr node;
            node.kind = Expr::Kind::Tensor;
            node.args.push_back(std::move(e));
            node.args.push_back(std::move(rhs));
            e = std::move(node);
        }
        return e;
    }

    Expr parse_postfix() {
        Expr e = parse_atom();
        for (;;) {
            if (peek().kind == Token::Kind::Star) {
                ++at;
                Expr node;
                node.kind = Expr::Kind::Involute;
                node.args.push_back(std::move(e));
                e = std::move(node);
            } else if (peek().kind == Token::Kind::Tilde) {
                ++at;
                Expr node;
                node.kind = Expr::Kind::Reflect;
                node.args.push_back(std::move(e));
                e = std::move(node);
            } else {
                return e;
            }
        }
    }

    Expr parse_atom() {
        const Token& t = peek();
        if (t.kind == Token::Kind::LParen) {
            ++at;
            Expr e = parse_compose();
            expect(Token::Kind::RParen, "')'");
            return e;
        }
        if (t.kind == Token::Kind::PartitionLiteral) {
            Expr e;
            e.kind = Expr::Kind::Literal;
            e.literal = take().literal;
            return e;
        }
        if (t.kind == Token::Kind::Name && t.text != "ox") {
            Token name = take();
            if (peek().kind == Token::Kind::LParen) return parse_call(name);
            if (!is_zero_arg_name(name.text))
                throw SyntaxError("unknown name '" + name.text + "'", name.pos);
            Expr e;
            e.kind = Expr::Kind::Name;
            e.name = name.text;
            return e;
        }
        fail("a partition expression");
    }

    Expr parse_call(const Token& name) {
        auto shape = kCallShapes.find(name.text);
        if (shape == kCallShapes.end())
            throw SyntaxError("unknown call '" + name.text + "'", name.pos);
        expect(Token::Kind::LParen, "'('");
        Expr e;
        e.kind = Expr::Kind::Call;
        e.name = name.text;
        for (std::size_t i = 0; i < shape->second.size(); ++i) {
            if (i > 0) expect(Token::Kind::Comma, "','");
            if (shape->second[i] == 'i') {
                if (peek().kind != Token::Kind::Int) fail("an integer");
                e.ints.push_back((int)take().value);
            } else {
                e.args.push_back(parse_compose());
            }
        }
        expect(Token::Kind::RParen, "')'");
        return e;
    }
};

Partition named(const std::string& n) {
    if (n == "id") return identity(1);
    if (n == "empty") return identity(0);
    if (n == "up1") return up1();
    if (n == "down1") return down1();
    if (n == "pair") return pair();
    if (n == "copair") return copair();
    if (n == "fourblock") return fourblock();
    if (n == "crossline") return crossline();
    return positioner();
}

Partition eval_node(const Expr& e, TraceBuilder& tb) {
    switch (e.kind) {
        case Expr::Kind::Literal: return e.literal;
        case Expr::Kind::Name: return named(e.name);
        case Expr::Kind::Tensor: {
            Partition a = eval_node(e.args[0], tb);
            Partition b = eval_node(e.args[1], tb);
            return tb.tensor_step(a, b);
        }
        case Expr::Kind::Compose: {
            Partition below = eval_node(e.args[0], tb);
            Partition above = eval_node(e.args[1], tb);
            return tb.compose_step(below, above);
        }
        case Expr::Kind::Involute: return tb.involute_step(eval_node(e.args[0], tb));
        case Expr::Kind::Reflect: return tb.reflect_step(eval_node(e.args[0], tb));
        case Expr::Kind::Call: break;
    }
    if (e.name == "id") return identity(e.ints[0]);
    if (e.name == "b") return b(e.ints[0]);
    if (e.name == "pi") return pi(e.ints[0]);
    if (e.name == "sigma") return sigma(e.ints[0]);
    if (e.name == "tau") return tau(e.ints[0]);

    std::vector<Partition> ps;
    for (const Expr& a : e.args) ps.push_back(eval_node(a, tb));
    Constructed c;
    if (e.name == "nest") c = nest(ps[0], ps[1], e.ints[0]);
    else if (e.name == "mult") c = multi_nest(ps[0], e.ints[0], e.ints[1]);
    else if (e.name == "pdouble") c = partial_doubling(ps[0], e.ints[0]);
    else if (e.name == "sdouble") c = shifted_doubling(ps[0], e.ints[0]);
    else if (e.name == "rot") c = line_rotate(ps[0], ps[1]);
    else c = weak_line_rotate(ps[0], ps[1]);
    tb.absorb(c);
    return c.result;
}

}  // namespace

Expr parse_expression(const std::string& text) {
    std::vector<Token> toks = tokenize(text);
    Parser p{toks};
    Expr e = p.parse_compose();
    if (p.peek().kind != Token::Kind::End) p.fail("end of input");
    return e;
}

Constructed evaluate(const Expr& e) {
    TraceBuilder tb;
    Partition r = eval_node(e, tb);
    return tb.finish(std::move(r));
}

Constructed eval_expression(const std::string& text) { return evaluate(parse_expression(text)); }

}  // namespace pcalc
