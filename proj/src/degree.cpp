#include "flts/degree.hpp"

#include <cctype>
#include <ostream>

#include "flts/errors.hpp"

namespace flts {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

mpz_class mpz_from(std::string_view digits) {
    return mpz_class(std::string(digits), 10);
}

}  // namespace

Degree Degree::one() { return Degree(mpq_class(1)); }

Degree Degree::from_mpq(mpq_class v) {
    v.canonicalize();
    if (sgn(v) < 0 || v > 1)
        throw ValidationError("degree out of range [0,1]: " + v.get_str());
    return Degree(std::move(v));
}

Degree Degree::ratio(long num, unsigned long den) {
    if (den == 0) throw ValidationError("degree with zero denominator");
    return from_mpq(mpq_class(num, den));
}

Degree Degree::parse(std::string_view text) {
    auto malformed = [&] {
        return ValidationError("malformed degree literal: '" + std::string(text) + "'");
    };
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        std::string_view num = text.substr(0, slash), den = text.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) throw malformed();
        mpz_class d = mpz_from(den);
        if (sgn(d) == 0) throw ValidationError("degree with zero denominator: '" + std::string(text) + "'");
        return from_mpq(mpq_class(mpz_from(num), d));
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view ip = text.substr(0, dot), fp = text.substr(dot + 1);
        if (!all_digits(ip) || !all_digits(fp)) throw malformed();
        mpz_class scale = 1;
        for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
        return from_mpq(mpq_class(mpz_from(ip) * scale + mpz_from(fp), scale));
    }
    if (!all_digits(text)) throw malformed();
    return from_mpq(mpq_class(mpz_from(text)));
}

std::string Degree::fraction_str() const { return v_.get_str(); }

std::string Degree::str() const {
    const mpz_class& num = v_.get_num();
    const mpz_class& den = v_.get_den();
    if (den == 1) return num.get_str();

    // Decimal form exists iff den = 2^a * 5^b; then num/den = scaled/10^k, k = max(a,b).
    mpz_class rest = den;
    unsigned long twos = 0, fives = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), 2)) { rest /= 2; ++twos; }
    while (mpz_divisible_ui_p(rest.get_mpz_t(), 5)) { rest /= 5; ++fives; }
    if (rest != 1) return fraction_str();

    unsigned long k = std::max(twos, fives);
    mpz_class pow10 = 1;
    for (unsigned long i = 0; i < k; ++i) pow10 *= 10;
    mpz_class scaled = num * (pow10 / den);  // exact: den | 10^k
    mpz_class ip = scaled / pow10, fp = scaled % pow10;
    std::string frac = fp.get_str();
    frac.insert(0, k - frac.size(), '0');
    while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
    return ip.get_str() + "." + frac;
}

std::ostream& operator<<(std::ostream& os, const Degree& d) { return os << d.str(); }

}  // namespace flts
