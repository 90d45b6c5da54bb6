#include "koszul/scalar.hpp"

#include <cctype>

namespace koszul {

namespace {

bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::string trimmed(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

bool is_integer_literal(const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

Integer parse_integer(const std::string& s) {
    if (!is_integer_literal(s)) throw Error("not an integer: '" + s + "'");
    return Integer(s[0] == '+' ? s.substr(1) : s);
}

}  // namespace

Ring Ring::prime_field(std::int64_t p) {
    if (!is_prime(p)) throw Error("GF(p) needs a prime p, got " + std::to_string(p));
    if (p > (std::int64_t(1) << 31)) throw Error("modulus too large");
    return {RingKind::PrimeField, p};
}

Ring Ring::parse(std::string_view text) {
    std::string t = trimmed(text);
    if (t == "Z" || t == "ZZ" || t == "integers") return integers();
    if (t == "Q" || t == "QQ" || t == "rationals") return rationals();
    std::string digits;
    if (t.rfind("GF(", 0) == 0 && t.back() == ')')
        digits = t.substr(3, t.size() - 4);
    else if (t.rfind("GF", 0) == 0)
        digits = t.substr(2);
    if (!digits.empty() && is_integer_literal(digits) && digits[0] != '-')
        return prime_field(std::stoll(digits));
    throw Error("unknown ring '" + t + "' (expected Z, Q or GF(p))");
}

std::string Ring::name() const {
    switch (kind) {
        case RingKind::Integers: return "Z";
        case RingKind::Rationals: return "Q";
        case RingKind::PrimeField: return "GF(" + std::to_string(p) + ")";
    }
    return "?";
}

Fp Fp::inverse_with(std::int64_t p) const {
    if (p == 0) {
        if (v_ == 1 || v_ == -1) return Fp(static_cast<int>(v_));
        throw Error("inverse of a modulus-free residue");
    }
    Fp a(v_, p);
    if (a.v_ == 0) throw Error("division by zero in GF(" + std::to_string(p) + ")");
    // extended Euclid
    std::int64_t t = 0, nt = 1, r = p, nr = a.v_;
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    return Fp(t, p);
}

Integer ScalarTraits<Integer>::parse(std::string_view text, const Ring&) {
    return parse_integer(trimmed(text));
}

Rational ScalarTraits<Rational>::parse(std::string_view text, const Ring&) {
    std::string t = trimmed(text);
    auto slash = t.find('/');
    if (slash == std::string::npos) return Rational(parse_integer(t));
    Integer num = parse_integer(trimmed(t.substr(0, slash)));
    Integer den = parse_integer(trimmed(t.substr(slash + 1)));
    if (den.is_zero()) throw Error("zero denominator in '" + t + "'");
    return Rational(num, den);
}

Fp ScalarTraits<Fp>::parse(std::string_view text, const Ring& r) {
    std::string t = trimmed(text);
    auto slash = t.find('/');
    if (slash == std::string::npos) {
        Integer v = parse_integer(t) % r.p;
        return Fp(static_cast<long long>(v), r.p);
    }
    Integer num = parse_integer(trimmed(t.substr(0, slash))) % r.p;
    Integer den = parse_integer(trimmed(t.substr(slash + 1))) % r.p;
    Fp d(static_cast<long long>(den), r.p);
    if (d.is_zero()) throw Error("denominator vanishes in " + r.name());
    return Fp(static_cast<long long>(num), r.p) / d;
}

}  // namespace koszul
