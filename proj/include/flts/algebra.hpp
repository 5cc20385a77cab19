#ifndef FLTS_ALGEBRA_HPP
#define FLTS_ALGEBRA_HPP

#include <string>
#include <string_view>

#include "flts/degree.hpp"

namespace flts {

// The three standard left-continuous t-norms on [0,1].
enum class TNormKind {
    Goedel,        // min{x,y}
    Lukasiewicz,   // max{0, x+y-1}
    Product,       // x*y
};

// Accepts "godel", "lukasiewicz", "product"; throws ValidationError otherwise.
TNormKind tnorm_from_name(std::string_view name);
std::string tnorm_name(TNormKind kind);

Degree tnorm(TNormKind kind, const Degree& x, const Degree& y);

// The residuum of the t-norm: the largest z with tnorm(x,z) <= y.
//   Goedel:       x <= y ? 1 : y
//   Lukasiewicz:  min{1, 1-x+y}
//   Product:      x <= y ? 1 : y/x
Degree residuum(TNormKind kind, const Degree& x, const Degree& y);

// Baaz projection: 1 if x = 1, else 0.
Degree baaz_delta(const Degree& x);

}  // namespace flts

#endif
