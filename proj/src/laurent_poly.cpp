#include "motzeta/laurent_poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace motzeta {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, unsigned long e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    while (e) {
        if (e & 1)
            r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        e >>= 1;
    }
    return r;
}

} // namespace

LaurentPoly::LaurentPoly(long constant)
{
    if (constant != 0)
        coeffs_.emplace_back(constant);
}

LaurentPoly::LaurentPoly(const Integer& constant)
{
    if (constant != 0)
        coeffs_.push_back(constant);
}

LaurentPoly LaurentPoly::monomial(const Integer& coefficient, int exponent)
{
    LaurentPoly p;
    if (coefficient != 0) {
        p.low_ = exponent;
        p.coeffs_.push_back(coefficient);
    }
    return p;
}

LaurentPoly LaurentPoly::from_terms(const std::vector<Term>& terms)
{
    LaurentPoly p;
    if (terms.empty())
        return p;
    int lo = terms.front().first, hi = lo;
    for (const auto& [e, c] : terms) {
        lo = std::min(lo, e);
        hi = std::max(hi, e);
    }
    p.low_ = lo;
    p.coeffs_.assign(static_cast<std::size_t>(hi - lo + 1), Integer(0));
    for (const auto& [e, c] : terms)
        p.coeffs_[static_cast<std::size_t>(e - lo)] += c;
    p.normalize();
    return p;
}

Integer LaurentPoly::coefficient(int exponent) const
{
    if (is_zero() || exponent < low_ || exponent > max_exponent())
        return 0;
    return coeffs_[static_cast<std::size_t>(exponent - low_)];
}

std::vector<LaurentPoly::Term> LaurentPoly::terms() const
{
    std::vector<Term> out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0)
            out.emplace_back(low_ + static_cast<int>(i), coeffs_[i]);
    return out;
}

std::size_t LaurentPoly::term_count() const
{
    return static_cast<std::size_t>(
        std::count_if(coeffs_.begin(), coeffs_.end(), [](const Integer& c) { return c != 0; }));
}

void LaurentPoly::normalize()
{
    auto first = std::find_if(coeffs_.begin(), coeffs_.end(), [](const Integer& c) { return c != 0; });
    if (first == coeffs_.end()) {
        coeffs_.clear();
        low_ = 0;
        return;
    }
    while (coeffs_.back() == 0)
        coeffs_.pop_back();
    const auto skip = first - coeffs_.begin();
    if (skip > 0) {
        coeffs_.erase(coeffs_.begin(), first);
        low_ += static_cast<int>(skip);
    }
}

void LaurentPoly::reserve_range(int low, int high)
{
    if (coeffs_.empty()) {
        low_ = low;
        coeffs_.assign(static_cast<std::size_t>(high - low + 1), Integer(0));
        return;
    }
    if (low < low_) {
        coeffs_.insert(coeffs_.begin(), static_cast<std::size_t>(low_ - low), Integer(0));
        low_ = low;
    }
    if (high > max_exponent())
        coeffs_.resize(static_cast<std::size_t>(high - low_ + 1), Integer(0));
}

void LaurentPoly::add_shifted(const LaurentPoly& rhs, int shift)
{
    if (rhs.is_zero())
        return;
    if (&rhs == this) {
        LaurentPoly copy = rhs;
        add_shifted(copy, shift);
        return;
    }
    reserve_range(rhs.low_ + shift, rhs.max_exponent() + shift);
    const auto offset = static_cast<std::size_t>(rhs.low_ + shift - low_);
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i)
        coeffs_[offset + i] += rhs.coeffs_[i];
    normalize();
}

void LaurentPoly::subtract_shifted(const LaurentPoly& rhs, int shift)
{
    if (rhs.is_zero())
        return;
    if (&rhs == this) {
        LaurentPoly copy = rhs;
        subtract_shifted(copy, shift);
        return;
    }
    reserve_range(rhs.low_ + shift, rhs.max_exponent() + shift);
    const auto offset = static_cast<std::size_t>(rhs.low_ + shift - low_);
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i)
        coeffs_[offset + i] -= rhs.coeffs_[i];
    normalize();
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& rhs)
{
    add_shifted(rhs, 0);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& rhs)
{
    subtract_shifted(rhs, 0);
    return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Integer& rhs)
{
    if (rhs == 0) {
        coeffs_.clear();
        low_ = 0;
        return *this;
    }
    for (auto& c : coeffs_)
        c *= rhs;
    return *this;
}

LaurentPoly operator*(const LaurentPoly& lhs, const LaurentPoly& rhs)
{
    LaurentPoly out;
    if (lhs.is_zero() || rhs.is_zero())
        return out;
    out.low_ = lhs.low_ + rhs.low_;
    out.coeffs_.assign(lhs.coeffs_.size() + rhs.coeffs_.size() - 1, Integer(0));
    for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) {
        if (lhs.coeffs_[i] == 0)
            continue;
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j)
            mpz_addmul(out.coeffs_[i + j].get_mpz_t(), lhs.coeffs_[i].get_mpz_t(), rhs.coeffs_[j].get_mpz_t());
    }
    out.normalize();
    return out;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& rhs)
{
    *this = *this * rhs;
    return *this;
}

LaurentPoly LaurentPoly::operator-() const
{
    LaurentPoly out = *this;
    for (auto& c : out.coeffs_)
        c = -c;
    return out;
}

LaurentPoly LaurentPoly::shifted(int k) const
{
    LaurentPoly out = *this;
    if (!out.is_zero())
        out.low_ += k;
    return out;
}

LaurentPoly LaurentPoly::pow(unsigned e) const
{
    LaurentPoly result(1L), base = *this;
    while (e) {
        if (e & 1U)
            result *= base;
        e >>= 1U;
        if (e)
            base *= base;
    }
    return result;
}

LaurentPoly LaurentPoly::divided_by_one_minus_power(int c) const
{
    if (c == 0)
        throw std::invalid_argument("division by 1 - L^0");
    if (is_zero())
        return {};
    // Work with ascending recurrence for c > 0 and descending for c < 0.
    const int span = std::abs(c);
    const int len = static_cast<int>(coeffs_.size());
    if (len <= span)
        throw std::domain_error("Laurent polynomial not divisible by 1 - L^" + std::to_string(c));
    std::vector<Integer> q(static_cast<std::size_t>(len - span), Integer(0));
    if (c > 0) {
        // N = Q - L^c Q  =>  Q_k = N_k + Q_{k-c}
        for (int k = 0; k < len - span; ++k) {
            q[static_cast<std::size_t>(k)] = coeffs_[static_cast<std::size_t>(k)];
            if (k >= span)
                q[static_cast<std::size_t>(k)] += q[static_cast<std::size_t>(k - span)];
        }
        for (int k = len - span; k < len; ++k) {
            Integer r = coeffs_[static_cast<std::size_t>(k)];
            if (k - span >= 0)
                r += q[static_cast<std::size_t>(k - span)];
            if (k < len - span)
                r -= q[static_cast<std::size_t>(k)];
            if (r != 0)
                throw std::domain_error("Laurent polynomial not divisible by 1 - L^" + std::to_string(c));
        }
        LaurentPoly out;
        out.low_ = low_;
        out.coeffs_ = std::move(q);
        out.normalize();
        return out;
    }
    // c < 0: N = Q - L^{-s} Q with Q spanning [low + s, high]; Q_k = N_k + Q_{k+s}.
    for (int k = len - 1; k >= span; --k) {
        const auto qi = static_cast<std::size_t>(k - span);
        q[qi] = coeffs_[static_cast<std::size_t>(k)];
        if (k + span < len)
            q[qi] += q[static_cast<std::size_t>(k)];
    }
    for (int k = 0; k < span; ++k) {
        Integer r = coeffs_[static_cast<std::size_t>(k)];
        if (k + span < len)
            r += q[static_cast<std::size_t>(k)];
        if (r != 0)
            throw std::domain_error("Laurent polynomial not divisible by 1 - L^" + std::to_string(c));
    }
    LaurentPoly out;
    out.low_ = low_ + span;
    out.coeffs_ = std::move(q);
    out.normalize();
    return out;
}

Integer LaurentPoly::eval_at_one() const
{
    Integer s = 0;
    for (const auto& c : coeffs_)
        s += c;
    return s;
}

Rational LaurentPoly::eval_at(const Integer& q) const
{
    if (q < 2)
        throw std::invalid_argument("evaluation point must be at least 2");
    if (is_zero())
        return 0;
    // Horner on the polynomial part, then divide by q^{-low} if needed.
    Integer acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * q + *it;
    Rational r(acc);
    Integer scale;
    if (low_ >= 0) {
        mpz_pow_ui(scale.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(low_));
        r *= Rational(scale);
    } else {
        mpz_pow_ui(scale.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(-low_));
        r /= Rational(scale);
    }
    r.canonicalize();
    return r;
}

std::uint64_t LaurentPoly::eval_mod(std::uint64_t u, std::uint64_t u_inverse, std::uint64_t modulus) const
{
    if (is_zero())
        return 0;
    std::uint64_t acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        const std::uint64_t c = mpz_fdiv_ui(it->get_mpz_t(), modulus);
        acc = (mulmod(acc, u, modulus) + c) % modulus;
    }
    if (low_ >= 0)
        return mulmod(acc, powmod(u, static_cast<unsigned long>(low_), modulus), modulus);
    return mulmod(acc, powmod(u_inverse, static_cast<unsigned long>(-low_), modulus), modulus);
}

std::string LaurentPoly::to_string(std::string_view symbol) const
{
    if (is_zero())
        return "0";
    std::string out;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        const Integer& c = coeffs_[i];
        if (c == 0)
            continue;
        const int e = low_ + static_cast<int>(i);
        Integer mag = abs(c);
        if (first)
            out += (c < 0 ? "-" : "");
        else
            out += (c < 0 ? " - " : " + ");
        first = false;
        if (e == 0) {
            out += mag.get_str();
            continue;
        }
        if (mag != 1)
            out += mag.get_str() + "*";
        out += symbol;
        if (e != 1)
            out += "^" + std::to_string(e);
    }
    return out;
}

} // namespace motzeta
