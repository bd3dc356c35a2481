#ifndef COMMGRAPH_RATIONAL_HPP
#define COMMGRAPH_RATIONAL_HPP

#include <gmpxx.h>
#include <Eigen/Core>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace commgraph {

// Exact rational scalar. mpq_class is kept canonical by GMP itself:
// gcd(|num|, den) = 1 and den >= 1, with 0 represented as 0/1.
using Rational = mpq_class;
using Integer = mpz_class;

inline const Rational& rat_zero() {
    static const Rational z(0);
    return z;
}

inline Rational rat(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

// "p/q" or "p"; also tolerates a leading '+'.
inline std::optional<Rational> parse_rational(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return std::nullopt;
    std::string t(s);
    mpq_class r;
    if (r.set_str(t, 10) != 0) return std::nullopt;
    if (r.get_den() == 0) return std::nullopt;
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

// lcm of denominators, used to scale rows to integers before
// fraction-free elimination.
inline Integer denominator_lcm(const std::vector<Rational>& v) {
    Integer l = 1;
    for (const auto& r : v) {
        Integer d = r.get_den();
        l = l / gcd(l, d) * d;
    }
    return l;
}

// scale a rational vector to the canonical primitive integer vector with
// positive leading sign (content 1); zero vectors pass through
template <class Vec>
void make_primitive_integer(Vec& v) {
    Integer l = 1;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        Integer d = v(i).get_den();
        l = l / gcd(l, d) * d;
    }
    Integer g = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        Rational t = v(i) * Rational(l);
        g = gcd(g, Integer(t.get_num()));
    }
    if (g == 0) return;
    int sign = 0;
    for (Eigen::Index i = 0; i < v.size() && sign == 0; ++i)
        if (v(i) != 0) sign = v(i) > 0 ? 1 : -1;
    Rational f = Rational(l) / Rational(sign < 0 ? -g : g);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v(i) *= f;
        v(i).canonicalize();
    }
}

} // namespace commgraph

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
    typedef mpq_class Real;
    typedef mpq_class NonInteger;
    typedef mpq_class Nested;
    typedef mpq_class Literal;

    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }

    enum {
        IsInteger = 0,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 6,
        AddCost = 150,
        MulCost = 100
    };
};

} // namespace Eigen

#endif // COMMGRAPH_RATIONAL_HPP
