#ifndef FLTS_DEGREE_HPP
#define FLTS_DEGREE_HPP

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace flts {

// An exact rational truth degree in [0,1].
//
// All arithmetic in the library goes through this type; there is no floating
// point anywhere in the semantics. Construction enforces the range invariant.
class Degree {
public:
    Degree() : v_(0) {}  // zero

    static Degree zero() { return Degree(); }
    static Degree one();

    // num/den with den != 0; throws ValidationError if the value leaves [0,1].
    static Degree ratio(long num, unsigned long den = 1);

    // Accepts "0.45", "1", "7/10"; throws ValidationError on malformed text or
    // an out-of-range value.
    static Degree parse(std::string_view text);

    // Wraps an already-canonical rational; throws ValidationError if out of range.
    static Degree from_mpq(mpq_class v);

    const mpq_class& value() const { return v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }

    // Canonical text: terminating decimal when the reduced denominator is
    // 2^a*5^b ("0.45"), otherwise a reduced fraction ("5/7"). parse() inverts
    // this exactly.
    std::string str() const;
    // Always the reduced fraction, e.g. "9/20"; integers render as "0"/"1".
    std::string fraction_str() const;

    friend bool operator==(const Degree& a, const Degree& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Degree& a, const Degree& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

private:
    explicit Degree(mpq_class v) : v_(std::move(v)) {}
    mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Degree& d);

}  // namespace flts

#endif
