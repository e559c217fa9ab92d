#pragma once

// Skew-symmetric exchange matrices with entries in F_d, their mutation and
// the rank-3 finite-mutation-type classification.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "quiverbelt/cycfield.hpp"

namespace qb {

class ExchangeMatrix {
public:
    ExchangeMatrix() = default;
    // Zero matrix of the given rank at field level `level`.
    ExchangeMatrix(int rank, int level);
    // Entries row by row; lifted to the lcm of their levels. Throws
    // InvalidArgument unless the matrix is skew-symmetric.
    static ExchangeMatrix from_rows(const std::vector<std::vector<FieldElem>>& rows);

    int rank() const { return r_; }
    int level() const { return level_; }
    const FieldElem& at(int i, int j) const { return e_[i * r_ + j]; }
    // Sets b_ij and b_ji = -b_ij.
    void set(int i, int j, const FieldElem& v);

    ExchangeMatrix permuted(const std::vector<int>& p) const;  // entry (i,j) = old (p[i],p[j])
    ExchangeMatrix operator-() const;
    ExchangeMatrix lifted(int new_level) const;
    bool operator==(const ExchangeMatrix& o) const;
    bool operator!=(const ExchangeMatrix& o) const { return !(*this == o); }

    // Exact serialisation in index order.
    std::string raw_key() const;
    // Lexicographically smallest raw_key over all simultaneous permutations.
    std::string canonical_key() const;
    std::string pretty() const;

private:
    int r_ = 0;
    int level_ = 2;
    std::vector<FieldElem> e_;
};

// 0-based index k.
ExchangeMatrix mutate(const ExchangeMatrix& B, int k);
bool is_acyclic(const ExchangeMatrix& B);
FieldElem markov_constant(const ExchangeMatrix& B);

// Indices with only outgoing (source) or only incoming (sink) arrows.
std::vector<int> sources(const ExchangeMatrix& B);
std::vector<int> sinks(const ExchangeMatrix& B);

// |a| = 2cos(k pi / l) with 0 <= k/l <= 1 in lowest terms, if a has that form
// at its own level.
struct CosineForm {
    long k;
    long l;
};
std::optional<CosineForm> cosine_form(const FieldElem& a);

// Standard matrices.
ExchangeMatrix markov_matrix();
// Path quiver 1 -> 2 -> 3 with weights 2cos(pi t1), 2cos(pi t2); t = p/q.
ExchangeMatrix spherical_matrix(long p1, long q1, long p2, long q2);
// Cyclic matrix with one weight 2 and two weights 2cos(pi/d).
ExchangeMatrix infinite_region_matrix(int d);
// Acyclic matrix with weights 2cos(pi t_i) for the affine triple of level d.
ExchangeMatrix affine_triple_matrix(int d);

// Parses "cos(a/b)", "-cos(a/b)" (meaning +-2cos(a pi/b)) or a rational.
FieldElem parse_weight(const std::string& s);
// Rows separated by ';', entries by ',' or whitespace. Alternatively three
// upper-triangle entries "b12,b13,b23".
ExchangeMatrix parse_matrix(const std::string& s);

struct MutationClass {
    std::vector<ExchangeMatrix> members;  // canonical representatives, BFS order
    bool closed = false;
};
MutationClass mutation_class(const ExchangeMatrix& B, int budget = 512);

enum class ClassTag { FiniteType, Affine, MarkovClass, MutationInfinite };
const char* class_tag_name(ClassTag t);

struct ClassificationResult {
    ClassTag tag = ClassTag::MutationInfinite;
    // FiniteType: the matched pair t1 = p1/q1, t2 = p2/q2.
    long p1 = 0, q1 = 0, p2 = 0, q2 = 0;
    // Affine: level d and the normal-form angle triple in units of pi/d.
    int d = 0;
    std::array<int, 3> triple{0, 0, 0};
    FieldElem markov;          // C of the input matrix
    std::string reason;        // certificate or normal form description
    int class_size = 0;
    bool class_closed = false;
};

ClassificationResult classify(const ExchangeMatrix& B, int budget = 512);

}  // namespace qb
