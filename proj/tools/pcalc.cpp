// Command-line front end for the partition calculus engine.
//
// Exit codes: 0 on success (for `check`, verdict HOLDS), 1 when a check
// fails or the two checkers disagree, 2 on any engine error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pcalc/closure.hpp"
#include "pcalc/expr.hpp"
#include "pcalc/linear.hpp"

using namespace pcalc;
using nlohmann::json;

namespace {

// Splits a generator list on commas that sit outside parentheses and
// braces, so literals and calls can appear in one --gen value.
std::vector<std::string> split_top_level(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(' || c == '{') ++depth;
        if (c == ')' || c == '}') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

RationalMatrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open matrix file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_matrix(buf.str());
}

json trace_json(const ConstructionTrace& trace) {
    json steps = json::array();
    for (const TraceStep& s : trace.steps) {
        json step{{"op", s.op}, {"result", s.result.to_text()}, {"loops", s.removed_loops}};
        json ops = json::array();
        for (const Partition& p : s.operands) ops.push_back(p.to_text());
        step["operands"] = std::move(ops);
        step["notes"] = s.notes;
        steps.push_back(std::move(step));
    }
    return steps;
}

json closure_json(const ClosureResult& res) {
    json j;
    j["config"] = {{"max_total_points", res.config.max_total_points},
                   {"max_elements", res.config.max_elements},
                   {"involutive", res.config.involutive},
                   {"semantic_rules", res.config.semantic_rules}};
    json gens = json::array();
    for (const Partition& g : res.generators) gens.push_back(g.to_text());
    j["generators"] = std::move(gens);
    json members = json::array();
    for (const Partition& m : res.members) members.push_back(m.to_text());
    j["members"] = std::move(members);
    json origin = json::object();
    for (const auto& [p, d] : res.origin) {
        json inputs = json::array();
        for (const Partition& q : d.inputs) inputs.push_back(q.to_text());
        origin[p.to_text()] = {{"op", d.op},
                               {"inputs", std::move(inputs)},
                               {"loops", d.removed_loops},
                               {"rule", d.rule},
                               {"citation", d.citation}};
    }
    j["origin"] = std::move(origin);
    json firings = json::array();
    for (const RuleFiring& f : res.firings) {
        json added = json::array();
        for (const Partition& p : f.added) added.push_back(p.to_text());
        firings.push_back({{"rule", f.rule},
                           {"citation", f.citation},
                           {"trigger", f.trigger.to_text()},
                           {"added", std::move(added)},
                           {"hypothesis_held", f.hypothesis_held}});
    }
    j["firings"] = std::move(firings);
    j["saturated"] = res.saturated;
    j["bound_hit"] = res.bound_hit;
    return j;
}

ClosureResult closure_from_json(const json& j) {
    ClosureResult res;
    res.config.max_total_points = j.at("config").at("max_total_points").get<int>();
    res.config.max_elements = j.at("config").at("max_elements").get<std::size_t>();
    res.config.involutive = j.at("config").at("involutive").get<bool>();
    res.config.semantic_rules = j.at("config").at("semantic_rules").get<bool>();
    for (const auto& g : j.at("generators"))
        res.generators.push_back(Partition::from_text(g.get<std::string>()));
    for (const auto& m : j.at("members"))
        res.members.insert(Partition::from_text(m.get<std::string>()));
    for (const auto& [text, d] : j.at("origin").items()) {
        Derivation der;
        der.op = d.at("op").get<std::string>();
        for (const auto& i : d.at("inputs"))
            der.inputs.push_back(Partition::from_text(i.get<std::string>()));
        der.removed_loops = d.at("loops").get<int>();
        der.rule = d.value("rule", "");
        der.citation = d.value("citation", "");
        res.origin[Partition::from_text(text)] = std::move(der);
    }
    res.saturated = j.value("saturated", false);
    res.bound_hit = j.value("bound_hit", false);
    return res;
}

std::string case_tag(const OrthoClassification& c, OrthoCase oc) {
    std::string tag = case_letter(oc);
    if (oc == OrthoCase::E_AllPairs) tag += "(" + std::to_string(c.pair_interval) + ")";
    return tag;
}

std::string render_check(const CheckOutcome& c) {
    if (c.holds) return "HOLDS";
    std::string out = "FAILS alpha=(";
    for (std::size_t i = 0; i < c.alpha.size(); ++i)
        out += (i ? "," : "") + std::to_string(c.alpha[i]);
    out += ") beta=(";
    for (std::size_t i = 0; i < c.beta.size(); ++i)
        out += (i ? "," : "") + std::to_string(c.beta[i]);
    out += ") lhs=" + c.lhs.str() + " rhs=" + c.rhs.str();
    return out;
}

json check_json(const CheckOutcome& c) {
    return {{"verdict", c.holds ? "HOLDS" : "FAILS"}, {"alpha", c.alpha}, {"beta", c.beta},
            {"lhs", c.lhs.str()},                     {"rhs", c.rhs.str()}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pcalc: two-row partition calculus"};
    app.require_subcommand(1);
    std::string format = "text";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "structured"}));

    auto* eval_cmd = app.add_subcommand("eval", "evaluate an expression to canonical form");
    std::string eval_expr;
    eval_cmd->add_option("expr", eval_expr, "partition expression")->required();

    auto* classify_cmd = app.add_subcommand("classify", "orthogonality consequences of a line");
    std::string classify_expr, positioner_expr = "positioner";
    classify_cmd->add_option("expr", classify_expr)->required();
    classify_cmd->add_option("--positioner", positioner_expr,
                             "witness named for the even-gap conclusion");

    auto* closure_cmd = app.add_subcommand("closure", "generate a category slice");
    std::vector<std::string> gen_args;
    int max_points = 8;
    std::size_t max_elements = 200000;
    bool bs = false, semantic = false;
    std::string out_path;
    closure_cmd->add_option("--gen", gen_args, "generator expressions, comma separated")
        ->required();
    closure_cmd->add_option("--max-points", max_points, "point bound per member")->required();
    closure_cmd->add_option("--max-elements", max_elements, "member cap");
    closure_cmd->add_flag("--bs", bs, "close under involution, seeding pair and copair");
    closure_cmd->add_flag("--semantic", semantic, "run the semantic rule pack");
    closure_cmd->add_option("--out", out_path, "write the structured report to a file");

    auto* member_cmd = app.add_subcommand("member", "look a partition up in a closure report");
    std::string member_expr, member_in;
    member_cmd->add_option("expr", member_expr)->required();
    member_cmd->add_option("--in", member_in, "closure report file")->required();

    auto* enum_cmd = app.add_subcommand("enumerate", "count partitions under a predicate");
    std::string pred_arg = "all", points_arg;
    bool list_members = false;
    enum_cmd->add_option("--pred", pred_arg, "all, nc, or ncm:<m>");
    enum_cmd->add_option("--points", points_arg, "upper,lower arities")->required();
    enum_cmd->add_flag("--list", list_members, "print every member");

    auto* check_cmd = app.add_subcommand("check", "test a matrix against a partition relation");
    std::string check_expr, matrix_path;
    bool use_intertwiner = false, check_both = false;
    check_cmd->add_option("--p", check_expr, "partition expression")->required();
    check_cmd->add_option("--matrix", matrix_path, "matrix file")->required();
    check_cmd->add_flag("--intertwiner", use_intertwiner, "use the tensor-map checker");
    check_cmd->add_flag("--both", check_both, "run both checkers and compare");

    auto* tmap_cmd = app.add_subcommand("tmap", "dump the 0/1 tensor map of a partition");
    std::string tmap_expr;
    int tmap_n = 2;
    tmap_cmd->add_option("--p", tmap_expr)->required();
    tmap_cmd->add_option("--n", tmap_n, "index range size")->required();

    auto* wit_cmd = app.add_subcommand("witness-inverse", "right inverse from a pair block");
    std::string wit_expr, wit_matrix;
    wit_cmd->add_option("--p", wit_expr)->required();
    wit_cmd->add_option("--matrix", wit_matrix)->required();

    CLI11_PARSE(app, argc, argv);
    const bool structured = format == "structured";

    try {
        if (eval_cmd->parsed()) {
            Constructed c = eval_expression(eval_expr);
            if (structured) {
                json j{{"result", c.result.to_text()},
                       {"loops", c.removed_loops},
                       {"trace", trace_json(c.trace)}};
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << c.result.to_text() << "\n"
                          << "loops=" << c.removed_loops << "\n";
            }
        } else if (classify_cmd->parsed()) {
            Partition p = eval_expression(classify_expr).result;
            OrthoClassification c = classify_orthogonality(p);
            Partition witness = eval_expression(positioner_expr).result;
            bool names_witness = c.conclusion == OrthoConclusion::ImpliesEvenGapWitness;
            if (structured) {
                json cases = json::array();
                for (OrthoCase oc : c.cases) cases.push_back(case_tag(c, oc));
                json j{{"cases", cases},
                       {"conclusion", conclusion_text(c)},
                       {"pair_interval", c.pair_interval},
                       {"rotation", c.rotation},
                       {"reason", c.reason}};
                if (names_witness) j["witness"] = witness.to_text();
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "cases=[";
                for (std::size_t i = 0; i < c.cases.size(); ++i)
                    std::cout << (i ? "," : "") << case_tag(c, c.cases[i]);
                std::cout << "] conclusion=" << conclusion_text(c) << "\n"
                          << "reason: " << c.reason << "\n";
                if (names_witness) std::cout << "witness: " << witness.to_text() << "\n";
            }
        } else if (closure_cmd->parsed()) {
            std::vector<Partition> gens;
            for (const std::string& chunk : gen_args)
                for (const std::string& g : split_top_level(chunk))
                    gens.push_back(eval_expression(g).result);
            ClosureConfig cfg;
            cfg.max_total_points = max_points;
            cfg.max_elements = max_elements;
            cfg.involutive = bs;
            cfg.semantic_rules = semantic;
            ClosureResult res = closure(gens, cfg);
            if (!out_path.empty()) {
                std::ofstream out(out_path);
                if (!out) throw PreconditionError("cannot write report: " + out_path);
                out << closure_json(res).dump(2) << "\n";
            }
            if (structured) {
                std::cout << closure_json(res).dump(2) << "\n";
            } else {
                std::cout << "members=" << res.members.size()
                          << " saturated=" << (res.saturated ? "yes" : "no")
                          << " bound_hit=" << (res.bound_hit ? "yes" : "no") << "\n";
                for (const RuleFiring& f : res.firings)
                    std::cout << "fired " << f.rule << " on " << f.trigger.to_text() << " adding "
                              << f.added.size() << "\n";
                for (const Partition& m : res.members) std::cout << m.to_text() << "\n";
            }
        } else if (member_cmd->parsed()) {
            Partition p = eval_expression(member_expr).result;
            std::ifstream in(member_in);
            if (!in) throw PreconditionError("cannot open report: " + member_in);
            ClosureResult res = closure_from_json(json::parse(in));
            Membership m = member_of(res, p);
            if (structured) {
                json j{{"found", m.found}};
                if (m.found) {
                    j["trace"] = trace_json(m.trace);
                    j["citations"] = m.citations;
                }
                std::cout << j.dump(2) << "\n";
            } else if (m.found) {
                std::cout << "Member\n" << to_text(m.trace);
                for (const std::string& c : m.citations) std::cout << "cited " << c << "\n";
            } else {
                std::cout << "NotFoundWithinBounds max_points="
                          << res.config.max_total_points << "\n";
            }
        } else if (enum_cmd->parsed()) {
            int k = 0, l = 0;
            if (std::sscanf(points_arg.c_str(), "%d,%d", &k, &l) != 2)
                throw SyntaxError("expected --points k,l", 0);
            Pred pred = Pred::All;
            int modulus = 0;
            if (pred_arg == "nc") {
                pred = Pred::Noncrossing;
            } else if (pred_arg.rfind("ncm:", 0) == 0) {
                pred = Pred::NCm;
                modulus = std::stoi(pred_arg.substr(4));
            } else if (pred_arg != "all") {
                throw SyntaxError("unknown predicate: " + pred_arg, 0);
            }
            std::vector<Partition> ps = enumerate_partitions(pred, k, l, modulus);
            if (structured) {
                json j{{"count", ps.size()}};
                if (list_members) {
                    json members = json::array();
                    for (const Partition& p : ps) members.push_back(p.to_text());
                    j["members"] = std::move(members);
                }
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "count=" << ps.size() << "\n";
                if (list_members)
                    for (const Partition& p : ps) std::cout << p.to_text() << "\n";
            }
        } else if (check_cmd->parsed()) {
            Partition p = eval_expression(check_expr).result;
            RationalMatrix u = load_matrix(matrix_path);
            if (check_both) {
                CheckOutcome a = check_relation(p, u);
                CheckOutcome b = check_intertwiner(p, u);
                bool agree = a.holds == b.holds && a.alpha == b.alpha && a.beta == b.beta &&
                             a.lhs == b.lhs && a.rhs == b.rhs;
                if (structured) {
                    json j{{"relation", check_json(a)},
                           {"intertwiner", check_json(b)},
                           {"agree", agree}};
                    std::cout << j.dump(2) << "\n";
                } else {
                    std::cout << "relation: " << render_check(a) << "\n"
                              << "intertwiner: " << render_check(b) << "\n"
                              << (agree ? "AGREE" : "DISAGREE") << "\n";
                }
                return (agree && a.holds) ? 0 : 1;
            }
            CheckOutcome c = use_intertwiner ? check_intertwiner(p, u) : check_relation(p, u);
            if (structured)
                std::cout << check_json(c).dump(2) << "\n";
            else
                std::cout << render_check(c) << "\n";
            return c.holds ? 0 : 1;
        } else if (tmap_cmd->parsed()) {
            Partition p = eval_expression(tmap_expr).result;
            SparseTensorMap t = t_map(p, tmap_n);
            std::uint64_t rows = 1, cols = 1;
            for (int i = 0; i < t.lower_arity; ++i) rows *= (std::uint64_t)t.n;
            for (int i = 0; i < t.upper_arity; ++i) cols *= (std::uint64_t)t.n;
            if (structured) {
                json entries = json::array();
                for (const auto& [r, c] : t.entries) entries.push_back({r, c});
                json j{{"n", t.n},       {"rows", rows},        {"cols", cols},
                       {"entries", entries}};
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "n=" << t.n << " rows=" << rows << " cols=" << cols << "\n";
                for (const auto& [r, c] : t.entries)
                    std::cout << r << " " << c << " 1\n";
            }
        } else if (wit_cmd->parsed()) {
            Partition p = eval_expression(wit_expr).result;
            RationalMatrix u = load_matrix(wit_matrix);
            RationalMatrix t = right_inverse_witness(p, u);
            if (structured)
                std::cout << json{{"t", to_text(t)}}.dump(2) << "\n";
            else
                std::cout << to_text(t);
        }
    } catch (const SyntaxError& e) {
        std::cerr << "syntax error at byte " << e.position << ": " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
