#pragma once

// Exact rational linear model for partitions: a matrix u satisfies the
// relation of p when summing u-entries over block-constant labelings gives
// the same value from both rows.  The same condition is checked a second
// way through explicit sparse 0/1 tensor maps, which also verify that
// tensor, composition and involution of partitions match Kronecker
// product, matrix product (up to a power of n per removed loop) and
// transposition of their maps.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pcalc/partition.hpp"

namespace pcalc {

using Rational = boost::multiprecision::cpp_rational;

struct RationalMatrix {
    int rows = 0, cols = 0;
    std::vector<Rational> entries;  // row-major

    RationalMatrix() = default;
    RationalMatrix(int r, int c) : rows(r), cols(c), entries((std::size_t)r * c) {}
    Rational& at(int r, int c) { return entries[(std::size_t)r * cols + c]; }
    const Rational& at(int r, int c) const { return entries[(std::size_t)r * cols + c]; }
    bool operator==(const RationalMatrix&) const = default;
};

RationalMatrix identity_matrix(int n);
RationalMatrix matmul(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix transpose(const RationalMatrix& a);

// Text format: header "n <rows> <cols>", then row-major entries, each an
// integer or numerator/denominator.  Errors carry the byte offset.
RationalMatrix parse_matrix(const std::string& text);
std::string to_text(const RationalMatrix& m);

// Relation check.  alpha runs over upper labels (length k), beta over
// lower labels (length l), both with values in 1..n.  On failure the first
// counterexample in (alpha outer, beta inner) lexicographic order is
// reported with both exact values.
struct CheckOutcome {
    bool holds = true;
    std::vector<int> alpha, beta;
    Rational lhs, rhs;
};

// Evaluates both sides blockwise: a block with lower points forces the
// summation label on its upper points (or kills the term when the lower
// labels disagree); a row-pure block on the summed side contributes a full
// label sum.
CheckOutcome check_relation(const Partition& p, const RationalMatrix& u);

// Same condition computed as the intertwiner equation T_p u^(x k) =
// u^(x l) T_p, walking explicit sparse row and column maps of T_p.  Scans
// in the same order as check_relation, so the two agree on the first
// counterexample as well.
CheckOutcome check_intertwiner(const Partition& p, const RationalMatrix& u);

// If u and v both satisfy the relation of p, their matrix product must as
// well; anything else is reported as Skipped.
enum class ShadowOutcome { Holds, Fails, Skipped };
ShadowOutcome coproduct_shadow_check(const Partition& p, const RationalMatrix& u,
                                     const RationalMatrix& v);

// Transposing the matrix matches swapping the rows of the partition: the
// two relation checks must agree.
bool antipode_shadow_check(const Partition& p, const RationalMatrix& u);

// Sparse 0/1 matrix of a partition: entry (row, col) is present iff the
// labeling given by the row (lower tuple) and column (upper tuple) is
// constant on every block.  Tuples flatten big-endian: the first point is
// the most significant digit, digit values run 0..n-1 for labels 1..n.
struct SparseTensorMap {
    int n = 0;
    int upper_arity = 0, lower_arity = 0;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> entries;  // sorted (row, col)
    bool operator==(const SparseTensorMap&) const = default;
};

SparseTensorMap t_map(const Partition& p, int n);

// Kronecker product, already sorted; matches t_map of the tensor product.
SparseTensorMap kron(const SparseTensorMap& a, const SparseTensorMap& b);

// Swaps rows and columns; matches t_map of the involution.
SparseTensorMap transpose_map(const SparseTensorMap& a);

// True iff the matrix product of the two maps equals n^(removed loops)
// times the map of compose(bottom, top), entry for entry.
bool compose_matches(const Partition& bottom, const Partition& top, int n);

// Explicit right inverse for a matrix satisfying the relation of a
// lower-only partition whose first point sits in a two-point block: labels
// the remaining blocks cyclically, then t_ij = u_ji * prod over those
// blocks B of sum_v u(label(B), v)^|B|.  The product u*t is verified to be
// the identity (VerificationFailed otherwise).  Throws Unsupported when
// the first point's block is not a pair, PreconditionError when p is not
// lower-only or u does not satisfy the relation.
RationalMatrix right_inverse_witness(const Partition& p, const RationalMatrix& u);

}  // namespace pcalc
