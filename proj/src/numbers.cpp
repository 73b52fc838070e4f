#include "motzeta/numbers.hpp"

#include "motzeta/errors.hpp"

#include <limits>
#include <stdexcept>

namespace motzeta {

Rational parse_rational(const std::string& text)
{
    const auto slash = text.find('/');
    auto parse_int = [&](const std::string& s) {
        Integer z;
        if (s.empty() || z.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0)
            throw ParseError("invalid rational '" + text + "'");
        return z;
    };
    if (slash == std::string::npos)
        return Rational(parse_int(text));
    Integer den = parse_int(text.substr(slash + 1));
    if (den == 0)
        throw ParseError("zero denominator in '" + text + "'");
    return make_rational(parse_int(text.substr(0, slash)), den);
}

std::string to_string(const Rational& r)
{
    if (r.get_den() == 1)
        return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Integer floor_of(const Rational& r)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

Integer ceil_of(const Rational& r)
{
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

std::int64_t to_int64(const Integer& z)
{
    if (!z.fits_slong_p())
        throw std::overflow_error("integer " + z.get_str() + " does not fit in 64 bits");
    return z.get_si();
}

} // namespace motzeta
