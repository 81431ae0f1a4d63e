#include "ordref/rational.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace ordref {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Integer pow10(long e) {
    Integer r = 1;
    for (long i = 0; i < e; ++i) r *= 10;
    return r;
}

// Boost reads a leading 0 as an octal prefix.
Integer decimal_integer(std::string_view digits) {
    while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
    return Integer{std::string(digits)};
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = trim(text);
    auto fail = [&]() -> Rational {
        throw std::invalid_argument("not an exact rational: '" + std::string(text) + "'");
    };
    if (s.empty()) return fail();

    bool neg = false;
    if (s.front() == '-' || s.front() == '+') {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) return fail();
        Integer d = decimal_integer(den);
        if (d == 0) return fail();
        Rational r(decimal_integer(num), d);
        return neg ? Rational(-r) : r;
    }

    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        auto tail = s.substr(e + 1);
        bool eneg = false;
        if (!tail.empty() && (tail.front() == '-' || tail.front() == '+')) {
            eneg = tail.front() == '-';
            tail.remove_prefix(1);
        }
        if (!all_digits(tail) || tail.size() > 6) return fail();
        exponent = std::stol(std::string(tail));
        if (eneg) exponent = -exponent;
        s = s.substr(0, e);
    }

    std::string digits;
    long scale = 0;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        auto ip = s.substr(0, dot), fp = s.substr(dot + 1);
        if (ip.empty() && fp.empty()) return fail();
        if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) return fail();
        digits = std::string(ip) + std::string(fp);
        scale = static_cast<long>(fp.size());
    } else {
        if (!all_digits(s)) return fail();
        digits = std::string(s);
    }

    Integer num = decimal_integer(digits);
    long shift = exponent - scale;
    Rational r = shift >= 0 ? Rational(num * pow10(shift)) : Rational(num, pow10(-shift));
    return neg ? Rational(-r) : r;
}

std::string to_string(const Rational& r) {
    return r.str();
}

std::string to_decimal(const Rational& r, int digits) {
    Rational a = r < 0 ? Rational(-r) : r;
    Integer scale = pow10(digits);
    Rational scaled = a * scale + Rational(1, 2);
    Integer q = numerator(scaled) / denominator(scaled);
    std::string s = q.str();
    if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
    std::string out = s.substr(0, s.size() - digits);
    std::string fr = s.substr(s.size() - digits);
    while (!fr.empty() && fr.back() == '0') fr.pop_back();
    if (!fr.empty()) out += "." + fr;
    if (r < 0 && out != "0") out.insert(0, "-");
    return out;
}

double to_double(const Rational& r) {
    return r.convert_to<double>();
}

}  // namespace ordref
