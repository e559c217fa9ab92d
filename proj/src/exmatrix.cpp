#include "quiverbelt/exmatrix.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

namespace qb {

ExchangeMatrix::ExchangeMatrix(int rank, int level)
    : r_(rank), level_(level), e_(rank * rank, FieldElem::zero(level)) {
    if (rank < 1) throw Error(ErrorCode::InvalidArgument, "matrix rank must be positive");
}

ExchangeMatrix ExchangeMatrix::from_rows(const std::vector<std::vector<FieldElem>>& rows) {
    int r = static_cast<int>(rows.size());
    long L = 2;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != r)
            throw Error(ErrorCode::InvalidArgument, "exchange matrix must be square");
        for (const auto& x : row) L = lcm_l(L, x.level());
    }
    ExchangeMatrix B(r, static_cast<int>(L));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) B.e_[i * r + j] = rows[i][j].lift(static_cast<int>(L));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            if (B.at(i, j) != -B.at(j, i))
                throw Error(ErrorCode::InvalidArgument, "exchange matrix must be skew-symmetric");
    return B;
}

void ExchangeMatrix::set(int i, int j, const FieldElem& v) {
    if (v.level() != level_) {
        long L = lcm_l(level_, v.level());
        if (L != level_) *this = lifted(static_cast<int>(L));
    }
    FieldElem x = v.lift(level_);
    e_[i * r_ + j] = x;
    e_[j * r_ + i] = -x;
}

ExchangeMatrix ExchangeMatrix::permuted(const std::vector<int>& p) const {
    ExchangeMatrix B(*this);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < r_; ++j) B.e_[i * r_ + j] = at(p[i], p[j]);
    return B;
}

ExchangeMatrix ExchangeMatrix::operator-() const {
    ExchangeMatrix B(*this);
    for (auto& x : B.e_) x = -x;
    return B;
}

ExchangeMatrix ExchangeMatrix::lifted(int new_level) const {
    if (new_level == level_) return *this;
    ExchangeMatrix B(*this);
    B.level_ = new_level;
    for (auto& x : B.e_) x = x.lift(new_level);
    return B;
}

bool ExchangeMatrix::operator==(const ExchangeMatrix& o) const {
    if (r_ != o.r_) return false;
    for (size_t i = 0; i < e_.size(); ++i)
        if (e_[i] != o.e_[i]) return false;
    return true;
}

std::string ExchangeMatrix::raw_key() const {
    std::string s;
    for (int i = 0; i < r_; ++i)
        for (int j = i + 1; j < r_; ++j) {
            s += at(i, j).to_string();
            s += ';';
        }
    return s;
}

std::string ExchangeMatrix::canonical_key() const {
    std::vector<int> p(r_);
    std::iota(p.begin(), p.end(), 0);
    std::string best;
    bool first = true;
    do {
        std::string k = permuted(p).raw_key();
        if (first || k < best) best = k;
        first = false;
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

std::string ExchangeMatrix::pretty() const {
    std::ostringstream os;
    for (int i = 0; i < r_; ++i) {
        os << "[";
        for (int j = 0; j < r_; ++j) {
            if (j) os << ", ";
            os << at(i, j).pretty();
        }
        os << "]";
        if (i + 1 < r_) os << "\n";
    }
    return os.str();
}

ExchangeMatrix mutate(const ExchangeMatrix& B, int k) {
    int r = B.rank();
    if (k < 0 || k >= r) throw Error(ErrorCode::InvalidArgument, "mutation index out of range");
    ExchangeMatrix M(r, B.level());
    std::vector<FieldElem> absk(r);
    for (int i = 0; i < r; ++i) absk[i] = B.at(i, k).abs();
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            if (i == k || j == k) {
                M.set(i, j, -B.at(i, j));
                continue;
            }
            // b_ik |b_kj| + |b_ik| b_kj, with |b_kj| = |b_jk|.
            FieldElem t = B.at(i, k) * absk[j] + absk[i] * B.at(k, j);
            M.set(i, j, B.at(i, j) + t.scaled(Rational(1, 2)));
        }
    return M;
}

bool is_acyclic(const ExchangeMatrix& B) {
    int r = B.rank();
    if (r < 3) return true;
    // Directed 3-cycle in the sign digraph; rank is at most 3 here.
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b)
            for (int c = 0; c < r; ++c) {
                if (a == b || b == c || a == c) continue;
                if (B.at(a, b).sign() > 0 && B.at(b, c).sign() > 0 && B.at(c, a).sign() > 0) return false;
            }
    return true;
}

FieldElem markov_constant(const ExchangeMatrix& B) {
    if (B.rank() != 3) throw Error(ErrorCode::InvalidArgument, "Markov constant needs rank 3");
    const FieldElem &x = B.at(0, 1), &y = B.at(1, 2), &z = B.at(0, 2);
    FieldElem sq = x * x + y * y + z * z;
    FieldElem prod = (x * y * z).abs();
    return is_acyclic(B) ? sq + prod : sq - prod;
}

std::vector<int> sources(const ExchangeMatrix& B) {
    std::vector<int> out;
    for (int i = 0; i < B.rank(); ++i) {
        bool any = false, ok = true;
        for (int j = 0; j < B.rank(); ++j) {
            int s = B.at(i, j).sign();
            if (s < 0) ok = false;
            if (s > 0) any = true;
        }
        if (ok && any) out.push_back(i);
    }
    return out;
}

std::vector<int> sinks(const ExchangeMatrix& B) { return sources(-B); }

std::optional<CosineForm> cosine_form(const FieldElem& a) {
    FieldElem x = a.abs();
    if (x.is_rational()) {
        Rational q = x.rational_value();
        if (q == 2) return CosineForm{0, 1};
        if (q == 1) return CosineForm{1, 3};
        if (q == 0) return CosineForm{1, 2};
        return std::nullopt;
    }
    int L = a.level();
    // 2cos is decreasing on [0, pi]; |a| is nonnegative so k <= L/2 suffices.
    for (long k = 1; 2 * k <= L; ++k)
        if (cos_multiple(L, k) == x) {
            long g = std::gcd(k, static_cast<long>(L));
            return CosineForm{k / g, L / g};
        }
    return std::nullopt;
}

ExchangeMatrix markov_matrix() {
    ExchangeMatrix B(3, 2);
    B.set(0, 1, FieldElem::rational(2, 2));
    B.set(0, 2, FieldElem::rational(2, -2));
    B.set(1, 2, FieldElem::rational(2, 2));
    return B;
}

static FieldElem cos_pi_fraction(long p, long q) {
    long g = std::gcd(p, q);
    p /= g;
    q /= g;
    if (q == 1) return FieldElem::rational(2, p % 2 ? -2 : 2);
    return cos_multiple(static_cast<int>(q), p);
}

ExchangeMatrix spherical_matrix(long p1, long q1, long p2, long q2) {
    FieldElem a = cos_pi_fraction(p1, q1), b = cos_pi_fraction(p2, q2);
    FieldElem z = FieldElem::zero(2);
    return ExchangeMatrix::from_rows({{z, a, z}, {-a, z, b}, {z, -b, z}});
}

ExchangeMatrix infinite_region_matrix(int d) {
    FieldElem two = FieldElem::rational(d, 2), c = cos_multiple(d, 1), z = FieldElem::zero(d);
    return ExchangeMatrix::from_rows({{z, two, -c}, {-two, z, c}, {c, -c, z}});
}

ExchangeMatrix affine_triple_matrix(int d) {
    if (d < 2) throw Error(ErrorCode::InvalidArgument, "affine level must be at least 2");
    int n = d / 2;
    std::array<int, 3> t = d % 2 ? std::array<int, 3>{n, n, 1} : std::array<int, 3>{n - 1, n, 1};
    FieldElem z = FieldElem::zero(d);
    FieldElem c1 = cos_multiple(d, t[0]), c2 = cos_multiple(d, t[1]), c3 = cos_multiple(d, t[2]);
    return ExchangeMatrix::from_rows({{z, c3, c2}, {-c3, z, c1}, {-c2, -c1, z}});
}

static std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\n");
    return s.substr(a, b - a + 1);
}

FieldElem parse_weight(const std::string& raw) {
    std::string s = trim(raw);
    if (s.empty()) throw Error(ErrorCode::ParseError, "empty matrix entry");
    bool neg = false;
    std::string body = s;
    if (body[0] == '-' || body[0] == '+') {
        neg = body[0] == '-';
        body = trim(body.substr(1));
    }
    FieldElem v;
    if (body.rfind("cos(", 0) == 0 && body.back() == ')') {
        std::string inner = body.substr(4, body.size() - 5);
        long p = 0, q = 1;
        auto slash = inner.find('/');
        try {
            if (slash == std::string::npos) {
                p = std::stol(inner);
            } else {
                p = std::stol(inner.substr(0, slash));
                q = std::stol(inner.substr(slash + 1));
            }
        } catch (const std::exception&) {
            throw Error(ErrorCode::ParseError, "bad cosine argument: " + s);
        }
        if (q <= 0) throw Error(ErrorCode::ParseError, "bad cosine denominator: " + s);
        v = cos_pi_fraction(p, q);
    } else {
        Rational q;
        if (q.set_str(body, 10) != 0) throw Error(ErrorCode::ParseError, "bad matrix entry: " + s);
        q.canonicalize();
        v = FieldElem::rational(2, q);
    }
    return neg ? -v : v;
}

ExchangeMatrix parse_matrix(const std::string& s) {
    std::vector<std::vector<std::string>> rows;
    std::stringstream rs(s);
    std::string row;
    while (std::getline(rs, row, ';')) {
        if (trim(row).empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        int depth = 0;
        for (char ch : row) {
            if (ch == '(') ++depth;
            if (ch == ')') --depth;
            if (depth == 0 && (ch == ',' || ch == ' ' || ch == '\t')) {
                if (!trim(cell).empty()) cells.push_back(cell);
                cell.clear();
            } else {
                cell += ch;
            }
        }
        if (!trim(cell).empty()) cells.push_back(cell);
        rows.push_back(cells);
    }
    if (rows.size() == 1 && rows[0].size() == 3) {
        FieldElem b12 = parse_weight(rows[0][0]), b13 = parse_weight(rows[0][1]),
                  b23 = parse_weight(rows[0][2]);
        FieldElem z = FieldElem::zero(2);
        return ExchangeMatrix::from_rows({{z, b12, b13}, {-b12, z, b23}, {-b13, -b23, z}});
    }
    std::vector<std::vector<FieldElem>> m;
    for (const auto& r : rows) {
        std::vector<FieldElem> mr;
        for (const auto& c : r) mr.push_back(parse_weight(c));
        m.push_back(mr);
    }
    if (m.empty()) throw Error(ErrorCode::ParseError, "empty matrix");
    try {
        return ExchangeMatrix::from_rows(m);
    } catch (const Error& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

MutationClass mutation_class(const ExchangeMatrix& B, int budget) {
    if (budget < 1) throw Error(ErrorCode::InvalidArgument, "budget must be positive");
    MutationClass out;
    std::unordered_set<std::string> seen;
    std::deque<ExchangeMatrix> queue;
    seen.insert(B.canonical_key());
    out.members.push_back(B);
    queue.push_back(B);
    while (!queue.empty()) {
        ExchangeMatrix cur = queue.front();
        queue.pop_front();
        for (int k = 0; k < cur.rank(); ++k) {
            ExchangeMatrix nb = mutate(cur, k);
            if (!seen.insert(nb.canonical_key()).second) continue;
            if (static_cast<int>(out.members.size()) >= budget) return out;
            out.members.push_back(nb);
            queue.push_back(nb);
        }
    }
    out.closed = true;
    return out;
}

const char* class_tag_name(ClassTag t) {
    switch (t) {
        case ClassTag::FiniteType: return "FiniteType";
        case ClassTag::Affine: return "Affine";
        case ClassTag::MarkovClass: return "MarkovClass";
        case ClassTag::MutationInfinite: return "MutationInfinite";
    }
    return "Unknown";
}

static bool same_class_member(const std::vector<ExchangeMatrix>& members, const ExchangeMatrix& nf) {
    for (const auto& s : {nf, -nf}) {
        for (const auto& m : members) {
            long L = lcm_l(m.level(), s.level());
            if (m.lifted(static_cast<int>(L)).canonical_key() == s.lifted(static_cast<int>(L)).canonical_key())
                return true;
        }
    }
    return false;
}

ClassificationResult classify(const ExchangeMatrix& B, int budget) {
    if (B.rank() != 3) throw Error(ErrorCode::InvalidArgument, "classification needs rank 3");
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (!cosine_form(B.at(i, j)))
                throw Error(ErrorCode::NotCosineForm,
                            "entry b" + std::to_string(i + 1) + std::to_string(j + 1) + " = " +
                                B.at(i, j).pretty() + " is not of the form 2cos(k pi/l)");

    ClassificationResult res;
    res.markov = markov_constant(B);
    const FieldElem four = FieldElem::rational(B.level(), 4);

    std::unordered_set<std::string> seen;
    std::deque<ExchangeMatrix> queue;
    std::vector<ExchangeMatrix> members;
    std::optional<ExchangeMatrix> acyclic_rep;
    seen.insert(B.canonical_key());
    queue.push_back(B);
    members.push_back(B);
    auto inspect = [&](const ExchangeMatrix& M) -> bool {
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                const FieldElem& x = M.at(i, j);
                if (compare(x.abs(), FieldElem::rational(x.level(), 2)) > 0) {
                    res.reason = "class contains an entry of absolute value > 2";
                    return false;
                }
                if (!cosine_form(x)) {
                    res.reason = "class contains an entry not of the form 2cos(k pi/l)";
                    return false;
                }
            }
        if (is_acyclic(M)) {
            if (compare(markov_constant(M), four) > 0) {
                res.reason = "acyclic member with Markov constant > 4";
                return false;
            }
            if (!acyclic_rep) acyclic_rep = M;
        }
        return true;
    };
    bool closed = true;
    if (!inspect(B)) {
        res.tag = ClassTag::MutationInfinite;
        res.class_size = 1;
        return res;
    }
    while (!queue.empty()) {
        ExchangeMatrix cur = queue.front();
        queue.pop_front();
        for (int k = 0; k < 3; ++k) {
            ExchangeMatrix nb = mutate(cur, k);
            if (!seen.insert(nb.canonical_key()).second) continue;
            if (!inspect(nb)) {
                res.tag = ClassTag::MutationInfinite;
                res.class_size = static_cast<int>(members.size()) + 1;
                return res;
            }
            if (static_cast<int>(members.size()) >= budget) {
                closed = false;
                break;
            }
            members.push_back(nb);
            queue.push_back(nb);
        }
        if (!closed) break;
    }
    res.class_size = static_cast<int>(members.size());
    res.class_closed = closed;
    if (!closed) {
        throw Error(ErrorCode::SearchBudgetExceeded,
                    "mutation class not closed within " + std::to_string(budget) +
                        " matrices and no certificate of infiniteness found");
    }
    if (!acyclic_rep) {
        res.tag = ClassTag::MarkovClass;
        res.reason = "finite mutation class without acyclic member";
        return res;
    }
    FieldElem C = markov_constant(*acyclic_rep);
    int cmp = compare(C, FieldElem::rational(C.level(), 4));
    if (cmp < 0) {
        static const long pairs[5][4] = {{1, 3, 1, 3}, {1, 3, 1, 4}, {1, 3, 1, 5}, {1, 3, 2, 5}, {1, 5, 2, 5}};
        for (const auto& p : pairs) {
            ExchangeMatrix nf = spherical_matrix(p[0], p[1], p[2], p[3]);
            ExchangeMatrix nf_swapped = spherical_matrix(p[2], p[3], p[0], p[1]);
            if (same_class_member(members, nf) || same_class_member(members, nf_swapped)) {
                res.tag = ClassTag::FiniteType;
                res.p1 = p[0];
                res.q1 = p[1];
                res.p2 = p[2];
                res.q2 = p[3];
                res.reason = "mutation-equivalent to the path normal form (" + std::to_string(p[0]) + "/" +
                             std::to_string(p[1]) + ", " + std::to_string(p[2]) + "/" +
                             std::to_string(p[3]) + ")";
                return res;
            }
        }
        // Finite class with C < 4 but no listed normal form; cannot happen for
        // finite classes, so report the discrepancy.
        res.tag = ClassTag::FiniteType;
        res.reason = "finite class with C < 4 not matching any listed normal form";
        return res;
    }
    // cmp == 0: an acyclic member with C > 4 was excluded above.
    long d = 1;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            auto cf = cosine_form(acyclic_rep->at(i, j));
            d = lcm_l(d, cf->l);
        }
    res.tag = ClassTag::Affine;
    res.d = static_cast<int>(d);
    int n = res.d / 2;
    res.triple = res.d % 2 ? std::array<int, 3>{n, n, 1} : std::array<int, 3>{n - 1, n, 1};
    if (same_class_member(members, affine_triple_matrix(res.d)))
        res.reason = "mutation-equivalent to the affine normal form of level " + std::to_string(res.d);
    else
        res.reason = "C = 4 but the affine normal form of level " + std::to_string(res.d) + " is not in the class";
    return res;
}

}  // namespace qb
