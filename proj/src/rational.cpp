#include "bg/rational.hpp"

#include "bg/error.hpp"

#include <cctype>

namespace bg {

Rational parse_rational(const std::string& text) {
    std::size_t slash = text.find('/');
    auto digits = [](const std::string& s, bool sign_ok) {
        std::size_t i = 0;
        if (sign_ok && i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    std::string num = text.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!digits(num, true) || !digits(den, false)) throw input_error("malformed rational '" + text + "'");
    if (num[0] == '+') num.erase(0, 1);
    Integer d(den);
    if (d == 0) throw input_error("zero denominator in '" + text + "'");
    Rational r(Integer(num), d);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) {
    Rational c(r);
    c.canonicalize();
    return c.get_str();
}

Rational make_rational(std::int64_t num, std::int64_t den) {
    Rational r(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
    r.canonicalize();
    return r;
}

int bit_length(std::uint64_t n) {
    int b = 0;
    while (n) {
        ++b;
        n >>= 1;
    }
    return b;
}

} // namespace bg
