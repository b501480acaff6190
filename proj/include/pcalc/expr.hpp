#pragma once

// Expression language over partitions: catalogue names, embedded literals,
// construction calls, postfix involution `*` and reflection `~`, infix
// tensor (`ox` or the UTF-8 circled-times sign) and composition `;`.
// Precedence from tightest to loosest: postfix, tensor, composition; both
// infix operators associate to the left.  `a ; b` composes with a drawn
// below b, so `copair ; pair` evaluates to the empty partition with one
// removed loop.

#include <string>
#include <vector>

#include "pcalc/constructions.hpp"

namespace pcalc {

struct Expr {
    enum class Kind { Literal, Name, Call, Tensor, Compose, Involute, Reflect };
    Kind kind = Kind::Name;
    Partition literal;        // Kind::Literal
    std::string name;         // Kind::Name, Kind::Call
    std::vector<Expr> args;   // partition-valued children, evaluation order
    std::vector<int> ints;    // integer arguments of a call
};

// Names taking no arguments: id, empty, up1, down1, pair, copair, fourblock,
// crossline, positioner.  Calls: id(m), b(m), pi(m), sigma(m), tau(m),
// nest(p, q, gap), mult(p, s, m), pdouble(p, s), sdouble(p, s), rot(p, q),
// wrot(p, q).  Literals use the partition text grammar and may appear
// anywhere an atom may.  Errors carry the byte offset of the offending
// token in the original input.
Expr parse_expression(const std::string& text);

// Evaluates the tree, accumulating removed loops over every composition,
// the ones inside construction calls included.  The trace records each
// combinatorial step in evaluation order.
Constructed evaluate(const Expr& e);

// parse_expression followed by evaluate.
Constructed eval_expression(const std::string& text);

}  // namespace pcalc
