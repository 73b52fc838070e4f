#include "motzeta/multipoly.hpp"

#include "motzeta/errors.hpp"

#include <algorithm>
#include <cctype>

namespace motzeta {

MultiPoly MultiPoly::constant(int n_vars, const Integer& c)
{
    MultiPoly p(n_vars);
    p.add_term(Exponents(static_cast<std::size_t>(n_vars), 0), c);
    return p;
}

MultiPoly MultiPoly::variable(int n_vars, int index)
{
    MultiPoly p(n_vars);
    Exponents e(static_cast<std::size_t>(n_vars), 0);
    e[static_cast<std::size_t>(index)] = 1;
    p.add_term(e, 1);
    return p;
}

int MultiPoly::total_degree() const
{
    int d = 0;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (int k : e)
            s += k;
        d = std::max(d, s);
    }
    return d;
}

MultiPoly MultiPoly::widened(int n_vars) const
{
    if (n_vars < n_vars_)
        throw std::invalid_argument("cannot drop variables");
    MultiPoly out(n_vars);
    for (const auto& [e, c] : terms_) {
        Exponents wide = e;
        wide.resize(static_cast<std::size_t>(n_vars), 0);
        out.add_term(wide, c);
    }
    return out;
}

void MultiPoly::add_term(const Exponents& e, const Integer& c)
{
    if (c == 0)
        return;
    auto& slot = terms_[e];
    slot += c;
    if (slot == 0)
        terms_.erase(e);
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& rhs)
{
    if (rhs.n_vars_ > n_vars_)
        *this = widened(rhs.n_vars_);
    const MultiPoly r = rhs.n_vars_ < n_vars_ ? rhs.widened(n_vars_) : rhs;
    for (const auto& [e, c] : r.terms_)
        add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& rhs)
{
    return *this += -rhs;
}

MultiPoly operator*(const MultiPoly& lhs, const MultiPoly& rhs)
{
    MultiPoly out(std::max(lhs.n_vars_, rhs.n_vars_));
    for (const auto& [e1, c1] : lhs.terms_)
        for (const auto& [e2, c2] : rhs.terms_) {
            MultiPoly::Exponents e(static_cast<std::size_t>(out.n_vars_), 0);
            for (std::size_t i = 0; i < e1.size(); ++i)
                e[i] += e1[i];
            for (std::size_t i = 0; i < e2.size(); ++i)
                e[i] += e2[i];
            out.add_term(e, c1 * c2);
        }
    return out;
}

MultiPoly MultiPoly::operator-() const
{
    MultiPoly out = *this;
    for (auto& [e, c] : out.terms_)
        c = -c;
    return out;
}

MultiPoly MultiPoly::pow(unsigned e) const
{
    MultiPoly result = constant(n_vars_, 1);
    for (unsigned i = 0; i < e; ++i)
        result = result * *this;
    return result;
}

Rational MultiPoly::evaluate(const std::vector<Rational>& point) const
{
    Rational total = 0;
    for (const auto& [e, c] : terms_) {
        Rational t(c);
        for (std::size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k)
                t *= point.at(i);
        total += t;
    }
    return total;
}

std::string MultiPoly::to_string() const
{
    if (terms_.empty())
        return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0)
                continue;
            if (!mono.empty())
                mono += "*";
            mono += "x" + std::to_string(i + 1);
            if (e[i] > 1)
                mono += "^" + std::to_string(e[i]);
        }
        const Integer mag = abs(c);
        std::string piece = mono.empty() ? mag.get_str() : (mag == 1 ? mono : mag.get_str() + "*" + mono);
        if (out.empty())
            out = (c < 0 ? "-" : "") + piece;
        else
            out += (c < 0 ? " - " : " + ") + piece;
    }
    return out;
}

namespace {

// Grammar:
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' digits)?
//   primary := digits | 'x' digits | '(' expr ')'
class Parser {
public:
    explicit Parser(const std::string& text) : s_(text) {}

    MultiPoly parse()
    {
        MultiPoly p = expr();
        skip();
        if (pos_ != s_.size())
            throw ParseError("unexpected character '" + std::string(1, s_[pos_]) + "'", pos_);
        return p;
    }

    int max_var() const { return max_var_; }

private:
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string digits()
    {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        return s_.substr(start, pos_ - start);
    }

    MultiPoly expr()
    {
        MultiPoly p = term();
        while (true) {
            if (accept('+'))
                p += term();
            else if (accept('-'))
                p -= term();
            else
                return p;
        }
    }

    MultiPoly term()
    {
        MultiPoly p = unary();
        while (accept('*'))
            p = p * unary();
        return p;
    }

    MultiPoly unary()
    {
        if (accept('-'))
            return -unary();
        if (accept('+'))
            return unary();
        return power();
    }

    MultiPoly power()
    {
        MultiPoly base = primary();
        if (!accept('^'))
            return base;
        skip();
        const std::size_t at = pos_;
        const std::string d = digits();
        if (d.empty())
            throw ParseError("expected exponent after '^'", at);
        if (d.size() > 3)
            throw ParseError("exponent too large", at);
        return base.pow(static_cast<unsigned>(std::stoul(d)));
    }

    MultiPoly primary()
    {
        skip();
        if (pos_ >= s_.size())
            throw ParseError("unexpected end of input", pos_);
        const std::size_t at = pos_;
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::string d = digits();
            return MultiPoly::constant(0, Integer(d));
        }
        if (c == 'x') {
            ++pos_;
            const std::string d = digits();
            if (d.empty() || d.size() > 3 || std::stoi(d) < 1)
                throw ParseError("expected variable index after 'x'", at);
            const int index = std::stoi(d);
            max_var_ = std::max(max_var_, index);
            return MultiPoly::variable(index, index - 1);
        }
        if (c == '(') {
            ++pos_;
            MultiPoly p = expr();
            if (!accept(')'))
                throw ParseError("expected ')'", pos_);
            return p;
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "'", at);
    }

    const std::string& s_;
    std::size_t pos_ = 0;
    int max_var_ = 0;
};

} // namespace

MultiPoly parse_poly(const std::string& text, int min_vars)
{
    Parser parser(text);
    MultiPoly p = parser.parse();
    return p.widened(std::max({parser.max_var(), min_vars, p.n_vars()}));
}

} // namespace motzeta
