#include "overlap/expr.hpp"

#include <algorithm>
#include <cctype>

namespace overlap {

ExprPtr Expr::var(int label) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Var;
    e->label = label;
    return e;
}

ExprPtr Expr::brace(std::vector<ExprPtr> args) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Brace;
    e->args = std::move(args);
    return e;
}

ExprPtr Expr::bracket(ExprPtr left, ExprPtr right) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Bracket;
    e->args = {std::move(left), std::move(right)};
    return e;
}

ExprPtr Expr::product(std::vector<ExprPtr> factors) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Product;
    e->args = std::move(factors);
    return e;
}

ExprPtr Expr::scaled(Int coeff, ExprPtr body) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Scaled;
    e->coeff = std::move(coeff);
    e->args = {std::move(body)};
    return e;
}

ExprPtr Expr::sum(std::vector<ExprPtr> terms) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Sum;
    e->args = std::move(terms);
    return e;
}

bool structurallyEqual(const Expr& a, const Expr& b) {
    if (a.kind != b.kind || a.label != b.label || a.coeff != b.coeff ||
        a.args.size() != b.args.size())
        return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!structurallyEqual(*a.args[i], *b.args[i]))
            return false;
    return true;
}

namespace {

class Parser {
public:
    Parser(const std::string& text) : text_(text) {}

    ExprPtr run() {
        ExprPtr e = element();
        skipWs();
        if (pos_ != text_.size())
            fail("unexpected trailing input");
        return e;
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos_); }

    void skipWs() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
        skipWs();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skipWs();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    ExprPtr negate(ExprPtr e) {
        if (e->kind == Expr::Kind::Scaled)
            return Expr::scaled(-e->coeff, e->args[0]);
        return Expr::scaled(Int(-1), std::move(e));
    }

    ExprPtr element() {
        bool negative = false;
        if (peek() == '-') {
            eat('-');
            negative = true;
        } else if (peek() == '+') {
            eat('+');
        }
        ExprPtr first = term();
        if (negative)
            first = negate(first);
        std::vector<ExprPtr> terms{first};
        for (;;) {
            char c = peek();
            if (c == '+') {
                eat('+');
                terms.push_back(term());
            } else if (c == '-') {
                eat('-');
                terms.push_back(negate(term()));
            } else {
                break;
            }
        }
        if (terms.size() == 1)
            return terms[0];
        return Expr::sum(std::move(terms));
    }

    ExprPtr term() {
        skipWs();
        bool haveCoeff = false;
        Int coeff = 1;
        if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            coeff = integer();
            haveCoeff = true;
            if (!eat('*'))
                fail("expected '*' after integer coefficient");
        }
        std::vector<ExprPtr> factors{factor()};
        while (peek() == '*') {
            eat('*');
            factors.push_back(factor());
        }
        ExprPtr body = factors.size() == 1 ? factors[0] : Expr::product(std::move(factors));
        return haveCoeff ? Expr::scaled(std::move(coeff), std::move(body)) : body;
    }

    Int integer() {
        std::string digits;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            digits += text_[pos_++];
        if (digits.empty())
            fail("expected an integer");
        return Int(digits);
    }

    ExprPtr factor() {
        char c = peek();
        if (c == 'x') {
            ++pos_;
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                fail("expected digits after 'x'");
            Int raw = integer();
            if (raw > 1000000)
                fail("label out of range");
            return Expr::var(static_cast<int>(raw));
        }
        if (c == '{') {
            eat('{');
            std::vector<ExprPtr> args{element()};
            while (peek() == ',') {
                eat(',');
                args.push_back(element());
            }
            if (!eat('}'))
                fail("expected '}' or ','");
            return Expr::brace(std::move(args));
        }
        if (c == '[') {
            eat('[');
            ExprPtr left = element();
            if (!eat(','))
                fail("expected ',' in bracket");
            ExprPtr right = element();
            if (!eat(']'))
                fail("expected ']'");
            return Expr::bracket(std::move(left), std::move(right));
        }
        if (c == '(') {
            eat('(');
            ExprPtr inner = element();
            if (!eat(')'))
                fail("expected ')'");
            return inner;
        }
        fail("expected a variable, brace, bracket or '('");
    }
};

// Label multiset of every distributed term.  Multilinearity forces all terms
// of a Sum to share one multiset, so the result is a single sorted vector.
std::vector<int> labelMultiset(const Expr& e, const AmbientContext& ctx) {
    switch (e.kind) {
    case Expr::Kind::Var: {
        if (e.label < 1 || e.label > ctx.n)
            throw InputError("label x" + std::to_string(e.label) + " out of range 1.." +
                             std::to_string(ctx.n));
        return {e.label};
    }
    case Expr::Kind::Scaled:
        return labelMultiset(*e.args[0], ctx);
    case Expr::Kind::Sum: {
        std::vector<int> first = labelMultiset(*e.args[0], ctx);
        for (std::size_t i = 1; i < e.args.size(); ++i)
            if (labelMultiset(*e.args[i], ctx) != first)
                throw InputError("multilinearity violation: summands use different label sets");
        return first;
    }
    case Expr::Kind::Brace:
    case Expr::Kind::Bracket:
    case Expr::Kind::Product: {
        std::vector<int> all;
        for (const ExprPtr& child : e.args) {
            std::vector<int> sub = labelMultiset(*child, ctx);
            all.insert(all.end(), sub.begin(), sub.end());
        }
        std::sort(all.begin(), all.end());
        for (std::size_t i = 1; i < all.size(); ++i)
            if (all[i] == all[i - 1])
                throw InputError("multilinearity violation: label x" + std::to_string(all[i]) +
                                 " appears more than once");
        return all;
    }
    }
    throw InternalError("unknown expr kind");
}

void checkBraces(const Expr& e, const AmbientContext& ctx) {
    if (e.kind == Expr::Kind::Brace) {
        if (e.args.size() < 2)
            throw InputError("brace arity must be >= 2");
        int cap = overlapCapacity(e);
        if (cap > ctx.k - 1)
            throw InputError("overlap capacity violation: brace can force " + std::to_string(cap) +
                             " discs to a common point, but at most " + std::to_string(ctx.k - 1) +
                             " may overlap for k = " + std::to_string(ctx.k));
    }
    for (const ExprPtr& child : e.args)
        checkBraces(*child, ctx);
}

} // namespace

int overlapCapacity(const Expr& e) {
    switch (e.kind) {
    case Expr::Kind::Var:
        return 1;
    case Expr::Kind::Brace: {
        // Any m-1 of the m arguments can meet at one point.
        int total = 0, least = 0;
        bool firstArg = true;
        for (const ExprPtr& a : e.args) {
            int c = overlapCapacity(*a);
            total += c;
            least = firstArg ? c : std::min(least, c);
            firstArg = false;
        }
        return total - least;
    }
    case Expr::Kind::Scaled:
        return overlapCapacity(*e.args[0]);
    case Expr::Kind::Bracket:
    case Expr::Kind::Product:
    case Expr::Kind::Sum: {
        int best = 0;
        for (const ExprPtr& a : e.args)
            best = std::max(best, overlapCapacity(*a));
        return best;
    }
    }
    throw InternalError("unknown expr kind");
}

void validate(const Expr& e, const AmbientContext& ctx) {
    ctx.validate();
    std::vector<int> labels = labelMultiset(e, ctx);
    if (static_cast<int>(labels.size()) != ctx.n)
        throw InputError("multilinearity violation: expression uses " +
                         std::to_string(labels.size()) + " labels, expected n = " +
                         std::to_string(ctx.n));
    for (int i = 0; i < ctx.n; ++i)
        if (labels[i] != i + 1)
            throw InputError("multilinearity violation: label x" + std::to_string(i + 1) +
                             " missing");
    checkBraces(e, ctx);
}

ExprPtr parse(const std::string& text, const AmbientContext& ctx) {
    ExprPtr e = Parser(text).run();
    validate(*e, ctx);
    return e;
}

namespace {

void printTo(const Expr& e, std::string& out);

void printFactor(const Expr& e, std::string& out) {
    bool parens = e.kind == Expr::Kind::Sum || e.kind == Expr::Kind::Scaled ||
                  e.kind == Expr::Kind::Product;
    if (parens)
        out += "(";
    printTo(e, out);
    if (parens)
        out += ")";
}

void printTo(const Expr& e, std::string& out) {
    switch (e.kind) {
    case Expr::Kind::Var:
        out += "x" + std::to_string(e.label);
        return;
    case Expr::Kind::Brace:
        out += "{";
        for (std::size_t i = 0; i < e.args.size(); ++i) {
            if (i)
                out += ",";
            printTo(*e.args[i], out);
        }
        out += "}";
        return;
    case Expr::Kind::Bracket:
        out += "[";
        printTo(*e.args[0], out);
        out += ",";
        printTo(*e.args[1], out);
        out += "]";
        return;
    case Expr::Kind::Product:
        for (std::size_t i = 0; i < e.args.size(); ++i) {
            if (i)
                out += "*";
            printFactor(*e.args[i], out);
        }
        return;
    case Expr::Kind::Scaled: {
        out += e.coeff.str();
        out += "*";
        const Expr& body = *e.args[0];
        if (body.kind == Expr::Kind::Product) {
            printTo(body, out);
        } else {
            printFactor(body, out);
        }
        return;
    }
    case Expr::Kind::Sum:
        for (std::size_t i = 0; i < e.args.size(); ++i) {
            const Expr* term = e.args[i].get();
            bool negative = term->kind == Expr::Kind::Scaled && term->coeff < 0;
            if (i == 0) {
                if (negative)
                    out += "-";
            } else {
                out += negative ? " - " : " + ";
            }
            if (negative) {
                Expr abs = *term;
                abs.coeff = -term->coeff;
                printTo(abs, out);
            } else {
                printTo(*term, out);
            }
        }
        return;
    }
}

} // namespace

std::string print(const Expr& e) {
    std::string out;
    printTo(e, out);
    return out;
}

} // namespace overlap
