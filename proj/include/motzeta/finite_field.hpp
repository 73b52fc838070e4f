#pragma once

#include "motzeta/numbers.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace motzeta {

/// Largest field size for which Zech tables are built.
inline constexpr std::uint32_t kMaxFieldSize = 1U << 23;

/// F_q with q = p^r in Zech-logarithm form: element 0 is zero and element
/// k >= 1 is g^(k-1) for a fixed generator g of the multiplicative group.
class FiniteField {
public:
    using Elem = std::uint32_t;

    /// Throws std::invalid_argument if p is not prime, ResourceLimit if p^r
    /// exceeds kMaxFieldSize.
    FiniteField(std::uint32_t p, int r = 1);

    /// Shared, lazily built instance.
    static std::shared_ptr<const FiniteField> get(std::uint32_t p, int r = 1);

    std::uint32_t characteristic() const noexcept { return p_; }
    int degree() const noexcept { return r_; }
    std::uint32_t size() const noexcept { return q_; }

    Elem add(Elem a, Elem b) const noexcept
    {
        if (a == 0)
            return b;
        if (b == 0)
            return a;
        // g^i + g^j = g^i (1 + g^(j-i))
        std::uint32_t d = b >= a ? b - a : b + order_ - a;
        const Elem z = zech_[d];
        return z == 0 ? 0 : mul(a, z);
    }
    Elem mul(Elem a, Elem b) const noexcept
    {
        if (a == 0 || b == 0)
            return 0;
        std::uint32_t s = (a - 1) + (b - 1);
        if (s >= order_)
            s -= order_;
        return s + 1;
    }
    Elem neg(Elem a) const noexcept { return mul(a, minus_one_); }
    Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }
    /// a must be nonzero.
    Elem inv(Elem a) const noexcept { return a == 1 ? 1 : order_ - (a - 1) + 1; }
    Elem div(Elem a, Elem b) const noexcept { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t e) const noexcept;

    Elem from_integer(const Integer& c) const;
    Elem from_small(std::int64_t c) const;

    /// All x with x^e = c, in increasing element order.
    void roots(Elem c, std::uint64_t e, std::vector<Elem>& out) const;

private:
    std::uint32_t p_;
    int r_;
    std::uint32_t q_;
    std::uint32_t order_;
    Elem minus_one_ = 1;
    std::vector<Elem> zech_;
    std::vector<Elem> small_;
};

bool is_prime(std::uint64_t n);

} // namespace motzeta
