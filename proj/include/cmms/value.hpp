#ifndef CMMS_VALUE_HPP
#define CMMS_VALUE_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace cmms {

/// Exact rational number, always kept in lowest terms with a positive
/// denominator. Utilities, maximin shares and ratios are all Values; nothing
/// in the library ever rounds.
class Value {
public:
    using Rep = boost::multiprecision::cpp_rational;

    Value() = default;
    Value(std::int64_t n) : v_(n) {} // NOLINT: implicit from integers is intended
    Value(std::int64_t num, std::int64_t den);
    explicit Value(Rep r) : v_(std::move(r)) {}

    /// Parses "p", "p/q" or "-p/q" (decimal). Throws InvalidInput.
    static Value parse(std::string_view text);

    /// "p" for integers, "p/q" otherwise.
    std::string str() const;

    boost::multiprecision::cpp_int numerator() const { return boost::multiprecision::numerator(v_); }
    boost::multiprecision::cpp_int denominator() const { return boost::multiprecision::denominator(v_); }
    bool is_integer() const { return denominator() == 1; }
    bool is_zero() const { return v_ == 0; }
    bool is_negative() const { return v_ < 0; }
    int sign() const { return v_.sign(); }

    const Rep& rep() const { return v_; }
    double to_double() const { return v_.convert_to<double>(); }

    Value& operator+=(const Value& o) { v_ += o.v_; return *this; }
    Value& operator-=(const Value& o) { v_ -= o.v_; return *this; }
    Value& operator*=(const Value& o) { v_ *= o.v_; return *this; }
    Value& operator/=(const Value& o);

    friend Value operator+(Value a, const Value& b) { return a += b; }
    friend Value operator-(Value a, const Value& b) { return a -= b; }
    friend Value operator*(Value a, const Value& b) { return a *= b; }
    friend Value operator/(Value a, const Value& b) { return a /= b; }
    friend Value operator-(const Value& a) { return Value(Rep(-a.v_)); }

    friend bool operator==(const Value& a, const Value& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Value& a, const Value& b) {
        if (a.v_ < b.v_) return std::strong_ordering::less;
        if (a.v_ > b.v_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

private:
    Rep v_{0};
};

std::ostream& operator<<(std::ostream& os, const Value& v);

Value min(const Value& a, const Value& b);
Value max(const Value& a, const Value& b);

} // namespace cmms

#endif // CMMS_VALUE_HPP
