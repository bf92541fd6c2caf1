#include "cmms/value.hpp"

#include <cctype>
#include <ostream>

#include "cmms/errors.hpp"

namespace cmms {

namespace {

boost::multiprecision::cpp_int parse_integer(std::string_view text, std::string_view whole) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        negative = text[i] == '-';
        ++i;
    }
    if (i == text.size()) throw InvalidInput("malformed rational '" + std::string(whole) + "'");
    boost::multiprecision::cpp_int out = 0;
    for (; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            throw InvalidInput("malformed rational '" + std::string(whole) + "'");
        out = out * 10 + (text[i] - '0');
    }
    return negative ? boost::multiprecision::cpp_int(-out) : out;
}

} // namespace

Value::Value(std::int64_t num, std::int64_t den) {
    if (den == 0) throw InvalidInput("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    v_ = Rep(num, den);
}

Value& Value::operator/=(const Value& o) {
    if (o.v_ == 0) throw InvalidInput("division by zero");
    v_ /= o.v_;
    return *this;
}

Value Value::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Value(Rep(parse_integer(text, text)));
    auto num = parse_integer(text.substr(0, slash), text);
    auto den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
    return Value(Rep(num, den));
}

std::string Value::str() const {
    if (is_integer()) return numerator().str();
    return numerator().str() + "/" + denominator().str();
}

std::ostream& operator<<(std::ostream& os, const Value& v) { return os << v.str(); }

Value min(const Value& a, const Value& b) { return b < a ? b : a; }
Value max(const Value& a, const Value& b) { return a < b ? b : a; }

} // namespace cmms
