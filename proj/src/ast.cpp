#include "qtwtl/ast.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>

namespace qtwtl {

const char* to_symbol(Cmp c) {
    switch (c) {
        case Cmp::Ne: return "!=";
        case Cmp::Lt: return "<";
        case Cmp::Gt: return ">";
        case Cmp::Le: return "<=";
        case Cmp::Ge: return ">=";
    }
    return "?";
}

const char* to_symbol(Agg a) {
    switch (a) {
        case Agg::Min: return "min";
        case Agg::Max: return "max";
        case Agg::Avg: return "avg";
    }
    return "?";
}

bool compare(Cmp c, double x, double bound) {
    switch (c) {
        case Cmp::Ne: return x != bound;
        case Cmp::Lt: return x < bound;
        case Cmp::Gt: return x > bound;
        case Cmp::Le: return x <= bound;
        case Cmp::Ge: return x >= bound;
    }
    return false;
}

std::string format_number(double v) {
    if (v == 0.0) return "0";
    if (std::floor(v) == v && std::fabs(v) < 1e15) {
        return std::to_string(static_cast<long long>(v));
    }
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// --------------------------------------------------------------------------
// Temporal factories.
// --------------------------------------------------------------------------

TemporalPtr t_true() {
    static const TemporalPtr node = std::make_shared<TemporalFormula>(TKind::True);
    return node;
}

TemporalPtr t_false() {
    static const TemporalPtr node = std::make_shared<TemporalFormula>(TKind::False);
    return node;
}

TemporalPtr hold(int duration, std::string prop, bool negated) {
    if (duration < 0) throw SemanticError("hold duration must be nonnegative");
    auto n = std::make_shared<TemporalFormula>(TKind::Hold);
    n->duration = duration;
    n->prop = std::move(prop);
    n->negated = negated;
    return n;
}

static TemporalPtr unary(TKind k, TemporalPtr f) {
    auto n = std::make_shared<TemporalFormula>(k);
    n->lhs = std::move(f);
    return n;
}

static TemporalPtr binary(TKind k, TemporalPtr a, TemporalPtr b) {
    auto n = std::make_shared<TemporalFormula>(k);
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

TemporalPtr t_not(TemporalPtr f) { return unary(TKind::Not, std::move(f)); }
TemporalPtr t_and(TemporalPtr a, TemporalPtr b) { return binary(TKind::And, std::move(a), std::move(b)); }
TemporalPtr t_or(TemporalPtr a, TemporalPtr b) { return binary(TKind::Or, std::move(a), std::move(b)); }
TemporalPtr t_concat(TemporalPtr a, TemporalPtr b) { return binary(TKind::Concat, std::move(a), std::move(b)); }

TemporalPtr within(TemporalPtr f, int lo, int hi) {
    if (lo < 0 || hi < 0) throw SemanticError("window bounds must be nonnegative");
    if (hi < lo) {
        throw SemanticError("window upper bound " + std::to_string(hi) +
                            " is below lower bound " + std::to_string(lo));
    }
    auto n = std::make_shared<TemporalFormula>(TKind::Within);
    n->lhs = std::move(f);
    n->lo = lo;
    n->hi = hi;
    return n;
}

// --------------------------------------------------------------------------
// Structural equality and size.
// --------------------------------------------------------------------------

bool equal(const TemporalFormula& a, const TemporalFormula& b) {
    if (&a == &b) return true;
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case TKind::True:
        case TKind::False:
            return true;
        case TKind::Hold:
            return a.duration == b.duration && a.negated == b.negated && a.prop == b.prop;
        case TKind::Not:
            return equal(a.lhs, b.lhs);
        case TKind::And:
        case TKind::Or:
        case TKind::Concat:
            return equal(a.lhs, b.lhs) && equal(a.rhs, b.rhs);
        case TKind::Within:
            return a.lo == b.lo && a.hi == b.hi && equal(a.lhs, b.lhs);
    }
    return false;
}

bool equal(const TemporalPtr& a, const TemporalPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return equal(*a, *b);
}

std::size_t node_count(const TemporalFormula& f) {
    std::size_t n = 1;
    if (f.lhs) n += node_count(*f.lhs);
    if (f.rhs) n += node_count(*f.rhs);
    return n;
}

// --------------------------------------------------------------------------
// Printer. Minimal parentheses via the precedence ladder
// (atoms/!/H/[] tightest, then . then && then ||); concatenation is
// right-associative, && and || left-associative.
// --------------------------------------------------------------------------

namespace {

int t_prec(const TemporalFormula& f) {
    switch (f.kind) {
        case TKind::Or: return 1;
        case TKind::And: return 2;
        case TKind::Concat: return 3;
        default: return 4;
    }
}

void t_print(const TemporalFormula& f, std::string& out);

void t_print_child(const TemporalFormula& child, int min_prec, std::string& out) {
    if (t_prec(child) < min_prec) {
        out += '(';
        t_print(child, out);
        out += ')';
    } else {
        t_print(child, out);
    }
}

void t_print(const TemporalFormula& f, std::string& out) {
    switch (f.kind) {
        case TKind::True:
            out += "true";
            return;
        case TKind::False:
            out += "false";
            return;
        case TKind::Hold:
            out += "H^";
            out += std::to_string(f.duration);
            out += ' ';
            if (f.negated) out += '!';
            out += f.prop;
            return;
        case TKind::Not:
            out += '!';
            t_print_child(*f.lhs, 4, out);
            return;
        case TKind::Within:
            out += '[';
            t_print(*f.lhs, out);
            out += "][";
            out += std::to_string(f.lo);
            out += ',';
            out += std::to_string(f.hi);
            out += ']';
            return;
        case TKind::And:
            t_print_child(*f.lhs, 2, out);
            out += " && ";
            t_print_child(*f.rhs, 3, out);
            return;
        case TKind::Or:
            t_print_child(*f.lhs, 1, out);
            out += " || ";
            t_print_child(*f.rhs, 2, out);
            return;
        case TKind::Concat:
            t_print_child(*f.lhs, 4, out);
            out += " . ";
            t_print_child(*f.rhs, 3, out);
            return;
    }
}

} // namespace

std::string to_string(const TemporalFormula& f) {
    std::string out;
    t_print(f, out);
    return out;
}

std::string to_string(const TemporalPtr& f) { return to_string(*f); }

// --------------------------------------------------------------------------
// Quality factories.
// --------------------------------------------------------------------------

QualityPtr q_temporal(TemporalPtr phi) {
    auto n = std::make_shared<QualityFormula>(QKind::Temporal);
    n->phi = std::move(phi);
    return n;
}

QualityPtr q_count(TemporalPtr phi, Cmp cmp, double bound) {
    auto n = std::make_shared<QualityFormula>(QKind::Count);
    n->phi = std::move(phi);
    n->cmp = cmp;
    n->bound = bound;
    return n;
}

QualityPtr q_aggregate(Agg sigma, std::string param, Cmp cmp, double bound) {
    auto n = std::make_shared<QualityFormula>(QKind::Aggregate);
    n->sigma = sigma;
    n->param = std::move(param);
    n->cmp = cmp;
    n->bound = bound;
    return n;
}

static QualityPtr combo(BoolOp op, std::vector<QualityPtr> ops) {
    auto n = std::make_shared<QualityFormula>(QKind::Combo);
    n->op = op;
    n->operands = std::move(ops);
    return n;
}

// And/Or are kept flat: a same-operator child is spliced into its parent so
// `(a && b) && c` and `a && b && c` denote one tree.
static std::vector<QualityPtr> flatten(BoolOp op, std::vector<QualityPtr> ops) {
    std::vector<QualityPtr> out;
    for (auto& o : ops) {
        if (o->kind == QKind::Combo && o->op == op) {
            for (auto& inner : o->operands) out.push_back(inner);
        } else {
            out.push_back(std::move(o));
        }
    }
    return out;
}

QualityPtr q_and(std::vector<QualityPtr> ops) {
    if (ops.size() < 2) throw SemanticError("quality && needs at least two operands");
    return combo(BoolOp::And, flatten(BoolOp::And, std::move(ops)));
}

QualityPtr q_or(std::vector<QualityPtr> ops) {
    if (ops.size() < 2) throw SemanticError("quality || needs at least two operands");
    return combo(BoolOp::Or, flatten(BoolOp::Or, std::move(ops)));
}

QualityPtr q_implies(QualityPtr a, QualityPtr b) {
    return combo(BoolOp::Implies, {std::move(a), std::move(b)});
}

QualityPtr q_not(QualityPtr a) { return combo(BoolOp::Not, {std::move(a)}); }

bool equal(const QualityFormula& a, const QualityFormula& b) {
    if (&a == &b) return true;
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case QKind::Temporal:
            return equal(a.phi, b.phi);
        case QKind::Count:
            return a.cmp == b.cmp && a.bound == b.bound && equal(a.phi, b.phi);
        case QKind::Aggregate:
            return a.sigma == b.sigma && a.param == b.param && a.cmp == b.cmp &&
                   a.bound == b.bound;
        case QKind::Combo: {
            if (a.op != b.op || a.operands.size() != b.operands.size()) return false;
            for (std::size_t i = 0; i < a.operands.size(); ++i) {
                if (!equal(a.operands[i], b.operands[i])) return false;
            }
            return true;
        }
    }
    return false;
}

bool equal(const QualityPtr& a, const QualityPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return equal(*a, *b);
}

// Quality-layer precedence: -> loosest, then ||, then &&, atoms tightest.
namespace {

int q_prec(const QualityFormula& f) {
    if (f.kind != QKind::Combo) return 4;
    switch (f.op) {
        case BoolOp::Implies: return 1;
        case BoolOp::Or: return 2;
        case BoolOp::And: return 3;
        case BoolOp::Not: return 4;
    }
    return 4;
}

void q_print(const QualityFormula& f, std::string& out);

void q_print_child(const QualityFormula& child, int min_prec, std::string& out) {
    if (q_prec(child) < min_prec) {
        out += '(';
        q_print(child, out);
        out += ')';
    } else {
        q_print(child, out);
    }
}

void q_print(const QualityFormula& f, std::string& out) {
    switch (f.kind) {
        case QKind::Temporal:
            t_print(*f.phi, out);
            return;
        case QKind::Count:
            out += "C(";
            t_print(*f.phi, out);
            out += ") ";
            out += to_symbol(f.cmp);
            out += ' ';
            out += format_number(f.bound);
            return;
        case QKind::Aggregate:
            out += "A_";
            out += to_symbol(f.sigma);
            out += '(';
            out += f.param;
            out += ") ";
            out += to_symbol(f.cmp);
            out += ' ';
            out += format_number(f.bound);
            return;
        case QKind::Combo:
            switch (f.op) {
                case BoolOp::Not:
                    out += '!';
                    q_print_child(*f.operands[0], 4, out);
                    return;
                case BoolOp::And:
                case BoolOp::Or: {
                    int prec = f.op == BoolOp::And ? 3 : 2;
                    const char* sep = f.op == BoolOp::And ? " && " : " || ";
                    for (std::size_t i = 0; i < f.operands.size(); ++i) {
                        if (i) out += sep;
                        q_print_child(*f.operands[i], prec, out);
                    }
                    return;
                }
                case BoolOp::Implies:
                    // Right-associative: parenthesize an implication on the left.
                    q_print_child(*f.operands[0], 2, out);
                    out += " -> ";
                    q_print_child(*f.operands[1], 1, out);
                    return;
            }
            return;
    }
}

} // namespace

std::string to_string(const QualityFormula& f) {
    std::string out;
    q_print(f, out);
    return out;
}

std::string to_string(const QualityPtr& f) { return to_string(*f); }

// --------------------------------------------------------------------------
// desugar: the temporal layer has no implication node, so parsed trees are
// already in core form; validate-and-return keeps the operation idempotent.
// --------------------------------------------------------------------------

TemporalPtr desugar(const TemporalPtr& f) { return f; }

QualityPtr desugar(const QualityPtr& f) { return f; }

} // namespace qtwtl
