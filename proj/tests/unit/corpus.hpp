#pragma once

// The test corpus: Q, quadratic fields with |d| <= 40, cyclotomic fields of
// conductor 5..40 and a few cyclic or biquadratic subfields.

#include <set>
#include <string>
#include <vector>

#include "zetakit/arith.hpp"
#include "zetakit/fields.hpp"

namespace corpus {

inline std::vector<std::string> descriptors(zetakit::u64 max_conductor = 40) {
    std::vector<std::string> out{"Q"};
    for (zetakit::i64 d = -static_cast<zetakit::i64>(max_conductor); d <= static_cast<zetakit::i64>(max_conductor); ++d)
        if (d != 1 && zetakit::is_fundamental_discriminant(d)) out.push_back("quad:" + std::to_string(d));
    for (zetakit::u64 n = 3; n <= max_conductor; ++n)
        if (n % 4 != 2 && n > 4) out.push_back("cyclo:" + std::to_string(n));
    for (const char* c : {"chars:7:2", "chars:13:2", "chars:13:3", "chars:13:4", "chars:15:2,4"}) out.push_back(c);
    return out;
}

inline std::vector<zetakit::AbelianField> fields(zetakit::u64 max_conductor = 40) {
    std::vector<zetakit::AbelianField> out;
    for (const auto& d : descriptors(max_conductor)) out.push_back(zetakit::parse_field(d));
    return out;
}

}  // namespace corpus
