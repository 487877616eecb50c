#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace folcoh {

// Exact rational coefficient field. cpp_rational keeps values in lowest
// terms with a positive denominator, which is exactly the canonical form
// reports rely on.
using Scalar = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

// Parses "p", "-p" or "p/q" (q > 0 after normalization). Anything else throws.
inline Scalar scalar_from_string(const std::string& text) {
    if (text.empty())
        throw std::invalid_argument("empty rational literal");
    std::size_t slash = text.find('/');
    auto parse_int = [](const std::string& s) -> Integer {
        if (s.empty() || s == "-" || s == "+")
            throw std::invalid_argument("bad integer literal '" + s + "'");
        std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        for (std::size_t i = start; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i])))
                throw std::invalid_argument("bad integer literal '" + s + "'");
        return Integer(s);
    };
    if (slash == std::string::npos)
        return Scalar(parse_int(text));
    Integer num = parse_int(text.substr(0, slash));
    Integer den = parse_int(text.substr(slash + 1));
    if (den == 0)
        throw std::invalid_argument("zero denominator in '" + text + "'");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Scalar(num, den);
}

inline std::string scalar_to_string(const Scalar& s) {
    return s.str();
}

} // namespace folcoh
