// Formula representation: the temporal layer (hold, concatenation, window,
// boolean connectives) and the quality layer on top of it (counting,
// aggregation, boolean combinations of quality atoms).
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qtwtl/errors.hpp"

namespace qtwtl {

enum class Cmp { Ne, Lt, Gt, Le, Ge };
enum class Agg { Min, Max, Avg };

const char* to_symbol(Cmp c);   // "!=", "<", ">", "<=", ">="
const char* to_symbol(Agg a);   // "min", "max", "avg"
bool compare(Cmp c, double x, double bound);

// ---------------------------------------------------------------------------
// Temporal layer.
//
// Nodes are immutable and shared; progression allocates new nodes and reuses
// untouched subtrees. True/False are first-class because rewriting produces
// them; Or is first-class because progressing a window produces it. There is
// no implication node: the parser rewrites `a -> b` into `!a || b`.
// ---------------------------------------------------------------------------

enum class TKind { True, False, Hold, Not, And, Or, Concat, Within };

class TemporalFormula;
using TemporalPtr = std::shared_ptr<const TemporalFormula>;

class TemporalFormula {
public:
    TKind kind;

    // Hold: duration >= 0; negated holds check absence of the proposition.
    int duration = 0;
    bool negated = false;
    std::string prop;

    // Children: lhs for Not/Within, lhs+rhs for And/Or/Concat.
    TemporalPtr lhs;
    TemporalPtr rhs;

    // Within window; invariant hi >= lo, both >= 0.
    int lo = 0;
    int hi = 0;

    explicit TemporalFormula(TKind k) : kind(k) {}
};

TemporalPtr t_true();
TemporalPtr t_false();
TemporalPtr hold(int duration, std::string prop, bool negated = false);
TemporalPtr t_not(TemporalPtr f);
TemporalPtr t_and(TemporalPtr a, TemporalPtr b);
TemporalPtr t_or(TemporalPtr a, TemporalPtr b);
TemporalPtr t_concat(TemporalPtr a, TemporalPtr b);
// Throws SemanticError when hi < lo or either bound is negative.
TemporalPtr within(TemporalPtr f, int lo, int hi);

bool equal(const TemporalFormula& a, const TemporalFormula& b);
bool equal(const TemporalPtr& a, const TemporalPtr& b);
std::size_t node_count(const TemporalFormula& f);
std::string to_string(const TemporalFormula& f);
std::string to_string(const TemporalPtr& f);

// ---------------------------------------------------------------------------
// Quality layer.
// ---------------------------------------------------------------------------

enum class QKind { Temporal, Count, Aggregate, Combo };
enum class BoolOp { And, Or, Implies, Not };

class QualityFormula;
using QualityPtr = std::shared_ptr<const QualityFormula>;

class QualityFormula {
public:
    QKind kind;

    TemporalPtr phi;     // Temporal, Count
    Cmp cmp = Cmp::Ge;   // Count, Aggregate
    double bound = 0.0;  // Count, Aggregate
    Agg sigma = Agg::Avg;
    std::string param;   // Aggregate

    BoolOp op = BoolOp::And;               // Combo
    std::vector<QualityPtr> operands;      // Combo: n-ary for And/Or,
                                           // exactly 2 for Implies, 1 for Not

    explicit QualityFormula(QKind k) : kind(k) {}
};

QualityPtr q_temporal(TemporalPtr phi);
QualityPtr q_count(TemporalPtr phi, Cmp cmp, double bound);
QualityPtr q_aggregate(Agg sigma, std::string param, Cmp cmp, double bound);
QualityPtr q_and(std::vector<QualityPtr> ops);
QualityPtr q_or(std::vector<QualityPtr> ops);
QualityPtr q_implies(QualityPtr a, QualityPtr b);
QualityPtr q_not(QualityPtr a);

bool equal(const QualityFormula& a, const QualityFormula& b);
bool equal(const QualityPtr& a, const QualityPtr& b);
std::string to_string(const QualityFormula& f);
std::string to_string(const QualityPtr& f);

// Eliminates derived temporal operators. Surface implications are already
// rewritten while parsing (the temporal layer cannot represent them), so on
// any parseable tree this is the identity; it exists as the normalization
// point and is idempotent by construction.
QualityPtr desugar(const QualityPtr& f);
TemporalPtr desugar(const TemporalPtr& f);

// Shortest decimal form that round-trips: "8", "2.7", "0.75".
std::string format_number(double v);

} // namespace qtwtl
