#include "lipform/parse.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <numbers>
#include <vector>

#include "lipform/errors.hpp"

namespace lipform {

namespace {

class Parser {
public:
    Parser(const std::string& src, int arity) : src_(src), arity_(arity) {}

    ExprPtr parse()
    {
        ExprPtr e = expr();
        skip_ws();
        if (pos_ != src_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    const std::string& src_;
    int arity_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const
    {
        throw config_error("expression parse error at offset " + std::to_string(pos_) + ": " +
                           msg + " in \"" + src_ + "\"");
    }

    void skip_ws()
    {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool consume(char c)
    {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek()
    {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    ExprPtr expr()
    {
        ExprPtr left = term();
        for (;;) {
            if (consume('+'))
                left = make_binary(Op::Add, left, term());
            else if (consume('-'))
                left = make_binary(Op::Sub, left, term());
            else
                return left;
        }
    }

    ExprPtr term()
    {
        ExprPtr left = unary();
        for (;;) {
            if (consume('*'))
                left = make_binary(Op::Mul, left, unary());
            else if (consume('/'))
                left = make_binary(Op::Div, left, unary());
            else
                return left;
        }
    }

    ExprPtr unary()
    {
        if (consume('-')) return make_unary(Op::Neg, unary());
        if (consume('+')) return unary();
        return power();
    }

    ExprPtr power()
    {
        ExprPtr base = atom();
        if (!consume('^')) return base;
        skip_ws();
        size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected nonnegative integer exponent after '^'");
        const int k = std::stoi(src_.substr(start, pos_ - start));
        if (k == 0) return make_const(1.0);
        ExprPtr acc = base;
        for (int i = 1; i < k; ++i) acc = make_binary(Op::Mul, acc, base);
        return acc;
    }

    ExprPtr atom()
    {
        skip_ws();
        if (pos_ >= src_.size()) fail("unexpected end of input");
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (c == '(') {
            ++pos_;
            ExprPtr e = expr();
            if (!consume(')')) fail("expected ')'");
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        fail(std::string("unexpected character '") + c + "'");
    }

    ExprPtr number()
    {
        const char* begin = src_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) fail("malformed number");
        pos_ += static_cast<size_t>(end - begin);
        return make_const(v);
    }

    ExprPtr identifier()
    {
        size_t start = pos_;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                      src_[pos_] == '_'))
            ++pos_;
        const std::string name = src_.substr(start, pos_ - start);
        if (name == "pi") return make_const(std::numbers::pi);
        if (name.size() >= 2 && name[0] == 'x' &&
            std::all_of(name.begin() + 1, name.end(),
                        [](char d) { return std::isdigit(static_cast<unsigned char>(d)); })) {
            const int idx = std::stoi(name.substr(1));
            if (idx < 1 || idx > arity_)
                fail("coordinate " + name + " out of range for arity " + std::to_string(arity_));
            return make_coord(idx - 1);
        }
        if (!consume('(')) fail("unknown identifier '" + name + "'");
        std::vector<ExprPtr> args;
        if (!consume(')')) {
            args.push_back(expr());
            while (consume(',')) args.push_back(expr());
            if (!consume(')')) fail("expected ')' after arguments of " + name);
        }
        return call(name, std::move(args));
    }

    double const_arg(const ExprPtr& e, const std::string& fn) const
    {
        if (min_arity(*e) != 0)
            throw config_error("argument of " + fn + " must be constant in \"" + src_ + "\"");
        return eval(*e, std::span<const double>{});
    }

    ExprPtr call(const std::string& name, std::vector<ExprPtr> args)
    {
        auto need = [&](size_t n) {
            if (args.size() != n)
                fail(name + " expects " + std::to_string(n) + " arguments, got " +
                     std::to_string(args.size()));
        };
        if (name == "abs") { need(1); return make_unary(Op::Abs, args[0]); }
        if (name == "sin") { need(1); return make_unary(Op::Sin, args[0]); }
        if (name == "cos") { need(1); return make_unary(Op::Cos, args[0]); }
        if (name == "sqrt") { need(1); return make_unary(Op::Sqrt, args[0]); }
        if (name == "min") { need(2); return make_binary(Op::Min, args[0], args[1]); }
        if (name == "max") { need(2); return make_binary(Op::Max, args[0], args[1]); }
        if (name == "atan2") { need(2); return make_binary(Op::Atan2, args[0], args[1]); }
        if (name == "bump") {
            if (args.size() == 3)
                return make_bump(args[0], const_arg(args[1], "bump"), const_arg(args[2], "bump"));
            if (args.size() == 2) {
                // Isotropic form: product of univariate bumps over all coordinates.
                const double c = const_arg(args[0], "bump");
                const double r = const_arg(args[1], "bump");
                ExprPtr acc = make_bump(make_coord(0), c, r);
                for (int j = 1; j < arity_; ++j)
                    acc = make_binary(Op::Mul, acc, make_bump(make_coord(j), c, r));
                return acc;
            }
            fail("bump expects (center,radius) or (expr,center,radius)");
        }
        if (name == "pwl") {
            if (args.size() < 3 || args.size() % 2 == 0)
                fail("pwl expects (expr, x0,y0, x1,y1, ...)");
            std::vector<double> breaks;
            for (size_t i = 1; i < args.size(); ++i) breaks.push_back(const_arg(args[i], "pwl"));
            return make_pwl(args[0], std::move(breaks));
        }
        fail("unknown function '" + name + "'");
    }
};

}  // namespace

ScalarField parse_expression(const std::string& src, int arity)
{
    if (arity < 1) throw usage_error("parse_expression: arity must be >= 1");
    Parser p(src, arity);
    try {
        return ScalarField(arity, p.parse());
    } catch (const usage_error& e) {
        throw config_error(std::string(e.what()) + " in \"" + src + "\"");
    }
}

}  // namespace lipform
