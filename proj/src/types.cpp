#include "zetalab/types.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>
#include <string>

#include "zetalab/errors.hpp"

namespace zetalab {

void require_finite(Complex s, std::string_view what) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
        throw DomainError(std::string(what) + " must be finite");
    }
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    num_ = g == 0 ? 0 : num / g;
    den_ = g == 0 ? 1 : den / g;
}

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
    std::int64_t v = 0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    if (!text.empty() && text.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || first == last) {
        throw DomainError("expected a rational r/q, got '" + std::string(whole) + "'");
    }
    return v;
}

std::string strip(std::string_view text) {
    std::string out;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    }
    return out;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
    const std::string s = strip(text);
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(parse_int(s, text), 1);
    return Rational(parse_int(std::string_view(s).substr(0, slash), text),
                    parse_int(std::string_view(s).substr(slash + 1), text));
}

std::string Rational::str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

Complex parse_complex(std::string_view text) {
    const std::string s = strip(text);
    auto fail = [&] { return DomainError("cannot parse complex number '" + std::string(text) + "'"); };
    if (s.empty()) throw fail();

    auto to_double = [&](const std::string& part) {
        if (part.empty() || part == "+") return 1.0;
        if (part == "-") return -1.0;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(part, &used);
        } catch (const std::exception&) {
            throw fail();
        }
        if (used != part.size()) throw fail();
        return v;
    };

    if (s.back() != 'i' && s.back() != 'j') return {to_double(s), 0.0};

    const std::string body = s.substr(0, s.size() - 1);
    // Split at the last sign that is not part of an exponent and not leading.
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) return {0.0, to_double(body)};
    return {to_double(body.substr(0, split)), to_double(body.substr(split))};
}

}  // namespace zetalab
