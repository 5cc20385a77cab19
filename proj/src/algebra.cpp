#include "flts/algebra.hpp"

#include "flts/errors.hpp"

namespace flts {

TNormKind tnorm_from_name(std::string_view name) {
    if (name == "godel") return TNormKind::Goedel;
    if (name == "lukasiewicz") return TNormKind::Lukasiewicz;
    if (name == "product") return TNormKind::Product;
    throw ValidationError("unknown t-norm '" + std::string(name) +
                          "' (expected godel, lukasiewicz, or product)");
}

std::string tnorm_name(TNormKind kind) {
    switch (kind) {
        case TNormKind::Goedel: return "godel";
        case TNormKind::Lukasiewicz: return "lukasiewicz";
        case TNormKind::Product: return "product";
    }
    throw ValidationError("invalid t-norm kind");
}

Degree tnorm(TNormKind kind, const Degree& x, const Degree& y) {
    switch (kind) {
        case TNormKind::Goedel:
            return x <= y ? x : y;
        case TNormKind::Lukasiewicz: {
            mpq_class s = x.value() + y.value() - 1;
            return sgn(s) <= 0 ? Degree::zero() : Degree::from_mpq(std::move(s));
        }
        case TNormKind::Product:
            return Degree::from_mpq(x.value() * y.value());
    }
    throw ValidationError("invalid t-norm kind");
}

Degree residuum(TNormKind kind, const Degree& x, const Degree& y) {
    switch (kind) {
        case TNormKind::Goedel:
            return x <= y ? Degree::one() : y;
        case TNormKind::Lukasiewicz: {
            mpq_class s = 1 - x.value() + y.value();
            return s >= 1 ? Degree::one() : Degree::from_mpq(std::move(s));
        }
        case TNormKind::Product:
            // x > y >= 0 implies x > 0, so the division is safe.
            return x <= y ? Degree::one() : Degree::from_mpq(y.value() / x.value());
    }
    throw ValidationError("invalid t-norm kind");
}

Degree baaz_delta(const Degree& x) {
    return x.is_one() ? Degree::one() : Degree::zero();
}

}  // namespace flts
