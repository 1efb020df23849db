#include "occ/numeric.hpp"

#include "occ/errors.hpp"

#include <algorithm>
#include <sstream>

namespace occ {

std::string rat_str(const Rat& q) {
    std::ostringstream os;
    os << numerator(q);
    if (denominator(q) != 1) os << "/" << denominator(q);
    return os.str();
}

namespace {

// GMP's string constructor auto-detects base (leading 0 means octal),
// so decimal integers go through this strict parser instead.
Int parse_int_dec(std::string s, const std::string& orig) {
    std::string sign;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        if (s[0] == '-') sign = "-";
        s.erase(0, 1);
    }
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw DomainError("malformed rational literal: " + orig);
    auto nz = s.find_first_not_of('0');
    s = (nz == std::string::npos) ? "0" : s.substr(nz);
    return Int(sign + s);
}

}  // namespace

Rat parse_rat(const std::string& text) {
    if (text.empty()) throw DomainError("empty rational literal");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        Int num = parse_int_dec(text.substr(0, slash), text);
        Int den = parse_int_dec(text.substr(slash + 1), text);
        if (den == 0) throw DomainError("zero denominator: " + text);
        return Rat(num, den);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rat(parse_int_dec(text, text));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    size_t frac_len = text.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+")
        throw DomainError("malformed rational literal: " + text);
    Int den = 1;
    for (size_t i = 0; i < frac_len; ++i) den *= 10;
    return Rat(parse_int_dec(digits, text), den);
}

std::string real_str(const Real& x, unsigned digits) {
    return x.str(digits, std::ios_base::dec);
}

BinomialTable::BinomialTable(long max_n) {
    if (max_n < 0) throw DomainError("binomial table size must be nonnegative");
    fact_.resize(static_cast<size_t>(max_n) + 1);
    fact_[0] = 1;
    for (long i = 1; i <= max_n; ++i) fact_[i] = fact_[i - 1] * i;
}

const Int& BinomialTable::factorial(long n) const {
    return fact_.at(static_cast<size_t>(n));
}

Int BinomialTable::choose(long n, long k) const {
    if (k < 0 || n < 0 || k > n) return 0;
    return fact_.at(n) / (fact_.at(k) * fact_.at(n - k));
}

Int binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    Int num = 1;
    for (long i = 0; i < k; ++i) {
        num *= (n - i);
        num /= (i + 1);  // exact at every step: product of j consecutive integers
    }
    return num;
}

Rat rat_pow(const Rat& base, unsigned exp) {
    Rat out = 1;
    Rat b = base;
    while (exp) {
        if (exp & 1u) out *= b;
        b *= b;
        exp >>= 1u;
    }
    return out;
}

}  // namespace occ
