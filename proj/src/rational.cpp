#include "sgtree/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace sgt {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

Rational parse_decimal(std::string_view s, std::string_view whole) {
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    long exp10 = 0;
    auto epos = s.find_first_of("eE");
    if (epos != std::string_view::npos) {
        auto es = s.substr(epos + 1);
        bool eneg = false;
        if (!es.empty() && (es.front() == '-' || es.front() == '+')) {
            eneg = es.front() == '-';
            es.remove_prefix(1);
        }
        if (!all_digits(es) || es.size() > 6) throw std::invalid_argument("bad rational: " + std::string(whole));
        exp10 = std::stol(std::string(es));
        if (eneg) exp10 = -exp10;
        s = s.substr(0, epos);
    }
    auto dot = s.find('.');
    std::string digits;
    if (dot == std::string_view::npos) {
        if (!all_digits(s)) throw std::invalid_argument("bad rational: " + std::string(whole));
        digits = std::string(s);
    } else {
        auto ip = s.substr(0, dot);
        auto fp = s.substr(dot + 1);
        if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
            throw std::invalid_argument("bad rational: " + std::string(whole));
        digits = std::string(ip) + std::string(fp);
        exp10 -= static_cast<long>(fp.size());
    }
    BigInt num(digits);
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    Rational r = exp10 >= 0 ? Rational(num * scale) : Rational(num, scale);
    r.canonicalize();
    return neg ? Rational(-r) : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto s = trim(text);
    if (s.empty()) throw std::invalid_argument("empty rational");
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return parse_decimal(s, text);
    auto ps = trim(s.substr(0, slash));
    auto qs = trim(s.substr(slash + 1));
    bool neg = false;
    if (!ps.empty() && (ps.front() == '-' || ps.front() == '+')) {
        neg = ps.front() == '-';
        ps.remove_prefix(1);
    }
    if (!all_digits(ps) || !all_digits(qs)) throw std::invalid_argument("bad rational: " + std::string(text));
    BigInt p{std::string(ps)}, q{std::string(qs)};
    if (q == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
    Rational r(p, q);
    r.canonicalize();
    return neg ? Rational(-r) : r;
}

std::vector<Rational> parse_rational_list(std::string_view text) {
    std::vector<Rational> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        out.push_back(parse_rational(piece));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string join(const std::vector<Rational>& xs, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += sep;
        out += to_string(xs[i]);
    }
    return out;
}

double to_double(const Rational& q) { return q.get_d(); }

std::vector<Rational> canonical(std::vector<Rational> xs) {
    for (auto& x : xs) x.canonicalize();
    return xs;
}

}  // namespace sgt
