#include "motzeta/finite_field.hpp"

#include "motzeta/errors.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

namespace motzeta {

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

namespace {

using Poly = std::vector<std::uint32_t>; // coefficients over F_p, low degree first

std::vector<std::uint64_t> prime_factors(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0)
                n /= d;
        }
    if (n > 1)
        out.push_back(n);
    return out;
}

/// a * b mod (x^r - sum tail_i x^i), where modulus is monic of degree r given by its low coefficients.
Poly mulmod(const Poly& a, const Poly& b, const Poly& modulus, std::uint32_t p)
{
    const std::size_t r = modulus.size();
    std::vector<std::uint64_t> prod(2 * r - 1, 0);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
    for (std::size_t k = 2 * r - 1; k-- > r;) {
        const std::uint64_t top = prod[k];
        if (top == 0)
            continue;
        prod[k] = 0;
        // x^r = -sum modulus_i x^i
        for (std::size_t i = 0; i < r; ++i)
            prod[k - r + i] = (prod[k - r + i] + (p - modulus[i]) % p * top) % p;
    }
    return Poly(prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(r));
}

Poly powmod(Poly base, std::uint64_t e, const Poly& modulus, std::uint32_t p)
{
    Poly result(modulus.size(), 0);
    result[0] = 1;
    while (e) {
        if (e & 1)
            result = mulmod(result, base, modulus, p);
        base = mulmod(base, base, modulus, p);
        e >>= 1;
    }
    return result;
}

/// Low coefficients of a monic degree-r polynomial for which x generates F_{p^r}^*.
Poly primitive_modulus(std::uint32_t p, int r, std::uint64_t q)
{
    const auto factors = prime_factors(q - 1);
    const auto n = static_cast<std::size_t>(r);
    Poly modulus(n, 0);
    Poly one(n, 0);
    one[0] = 1;
    while (true) {
        bool ok = modulus[0] != 0;
        if (ok) {
            Poly x(n, 0);
            if (n == 1)
                x[0] = (p - modulus[0]) % p;
            else
                x[1] = 1;
            ok = powmod(x, q - 1, modulus, p) == one;
            for (std::size_t i = 0; ok && i < factors.size(); ++i)
                ok = powmod(x, (q - 1) / factors[i], modulus, p) != one;
        }
        if (ok)
            return modulus;
        std::size_t i = 0;
        while (i < n && ++modulus[i] == p)
            modulus[i++] = 0;
        if (i == n)
            throw std::logic_error("no primitive polynomial found");
    }
}

} // namespace

FiniteField::FiniteField(std::uint32_t p, int r) : p_(p), r_(r)
{
    if (!is_prime(p) || r < 1)
        throw std::invalid_argument("field characteristic must be prime and degree positive");
    std::uint64_t q = 1;
    for (int i = 0; i < r; ++i) {
        q *= p;
        if (q > kMaxFieldSize)
            throw ResourceLimit("field of size " + std::to_string(p) + "^" + std::to_string(r) +
                                " exceeds the table limit " + std::to_string(kMaxFieldSize));
    }
    q_ = static_cast<std::uint32_t>(q);
    order_ = q_ - 1;
    const Poly modulus = primitive_modulus(p, r, q);
    const auto n = static_cast<std::size_t>(r);

    // Walk the powers of the generator, recording base-p encodings.
    std::vector<std::uint32_t> power_code(order_);
    std::vector<std::uint32_t> log_of_code(q_, 0);
    std::vector<std::uint32_t> digits(n, 0);
    digits[0] = 1;
    std::vector<std::uint32_t> place(n, 1);
    for (std::size_t i = 1; i < n; ++i)
        place[i] = place[i - 1] * p;
    for (std::uint32_t k = 0; k < order_; ++k) {
        std::uint32_t code = 0;
        for (std::size_t i = 0; i < n; ++i)
            code += digits[i] * place[i];
        power_code[k] = code;
        log_of_code[code] = k;
        if (n == 1) {
            digits[0] = static_cast<std::uint32_t>(std::uint64_t{digits[0]} * ((p - modulus[0]) % p) % p);
            continue;
        }
        const std::uint32_t top = digits[n - 1];
        for (std::size_t i = n - 1; i > 0; --i)
            digits[i] = digits[i - 1];
        digits[0] = 0;
        if (top != 0)
            for (std::size_t i = 0; i < n; ++i)
                digits[i] = static_cast<std::uint32_t>((digits[i] + std::uint64_t{p - modulus[i]} % p * top) % p);
    }
    auto element_of_code = [&](std::uint32_t code) -> Elem { return code == 0 ? 0 : log_of_code[code] + 1; };
    zech_.resize(order_);
    for (std::uint32_t k = 0; k < order_; ++k) {
        const std::uint32_t code = power_code[k];
        const std::uint32_t low = code % p;
        const std::uint32_t plus_one = code - low + (low + 1) % p;
        zech_[k] = element_of_code(plus_one);
    }
    small_.resize(p);
    for (std::uint32_t c = 0; c < p; ++c)
        small_[c] = element_of_code(c);
    minus_one_ = small_[p - 1];
}

std::shared_ptr<const FiniteField> FiniteField::get(std::uint32_t p, int r)
{
    static std::mutex mutex;
    static std::map<std::pair<std::uint32_t, int>, std::shared_ptr<const FiniteField>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[{p, r}];
    if (!slot)
        slot = std::make_shared<const FiniteField>(p, r);
    return slot;
}

FiniteField::Elem FiniteField::pow(Elem a, std::uint64_t e) const noexcept
{
    if (e == 0)
        return 1;
    if (a == 0)
        return 0;
    const auto k = static_cast<std::uint64_t>(a - 1) * (e % order_) % order_;
    return static_cast<Elem>(k) + 1;
}

FiniteField::Elem FiniteField::from_integer(const Integer& c) const
{
    return small_[mpz_fdiv_ui(c.get_mpz_t(), p_)];
}

FiniteField::Elem FiniteField::from_small(std::int64_t c) const
{
    const std::int64_t r = c % static_cast<std::int64_t>(p_);
    return small_[static_cast<std::size_t>(r < 0 ? r + p_ : r)];
}

void FiniteField::roots(Elem c, std::uint64_t e, std::vector<Elem>& out) const
{
    out.clear();
    if (e == 0) {
        if (c == 1)
            for (Elem x = 0; x < q_; ++x)
                out.push_back(x);
        return;
    }
    if (c == 0) {
        out.push_back(0);
        return;
    }
    const std::uint64_t n = order_;
    const std::uint64_t L = c - 1;
    const std::uint64_t g = std::gcd(e % n == 0 ? n : e % n, n);
    if (L % g != 0)
        return;
    const std::uint64_t n_g = n / g;
    // k * (e/g) = L/g mod n/g
    std::int64_t old_r = static_cast<std::int64_t>((e / g) % n_g), r = static_cast<std::int64_t>(n_g);
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        const std::int64_t quot = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - quot * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - quot * s);
    }
    const std::int64_t inv = ((old_s % static_cast<std::int64_t>(n_g)) + static_cast<std::int64_t>(n_g)) %
                              static_cast<std::int64_t>(n_g);
    const std::uint64_t k0 =
        n_g == 1 ? 0 : static_cast<std::uint64_t>((static_cast<unsigned __int128>(L / g) * static_cast<std::uint64_t>(inv)) % n_g);
    for (std::uint64_t t = 0; t < g; ++t)
        out.push_back(static_cast<Elem>(k0 + t * n_g) + 1);
    std::sort(out.begin(), out.end());
}

} // namespace motzeta
