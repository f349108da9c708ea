#include "tropint/arith.hpp"

#include <sstream>
#include <stdexcept>

namespace tropint {

std::string rat_to_string(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

Rat parse_rational(const std::string& text) {
    auto bad = [&]() { return std::invalid_argument("malformed rational: '" + text + "'"); };
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw bad();
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int p(s.substr(0, slash));
        Int q(s.substr(slash + 1));
        if (q == 0) throw bad();
        return Rat(p) / Rat(q);
    } catch (const std::runtime_error&) {
        throw bad();
    }
}

template <typename T>
static T dot_impl(const std::vector<T>& a, const std::vector<T>& b) {
    T acc = 0;
    for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

Rat dot(const QVec& a, const QVec& b) { return dot_impl(a, b); }
Int dot(const ZVec& a, const ZVec& b) { return dot_impl(a, b); }

Rat dot(const ZVec& a, const QVec& b) {
    Rat acc = 0;
    for (size_t i = 0; i < a.size(); ++i) acc += Rat(a[i]) * b[i];
    return acc;
}

bool is_zero(const ZVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

bool is_zero(const QVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

template <typename T>
static std::vector<T> zip(const std::vector<T>& a, const std::vector<T>& b, int sign) {
    std::vector<T> out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = sign > 0 ? T(a[i] + b[i]) : T(a[i] - b[i]);
    return out;
}

ZVec add(const ZVec& a, const ZVec& b) { return zip(a, b, 1); }
QVec add(const QVec& a, const QVec& b) { return zip(a, b, 1); }
ZVec sub(const ZVec& a, const ZVec& b) { return zip(a, b, -1); }
QVec sub(const QVec& a, const QVec& b) { return zip(a, b, -1); }

ZVec scale(const Int& c, const ZVec& v) {
    ZVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
    return out;
}

QVec scale(const Rat& c, const QVec& v) {
    QVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
    return out;
}

ZVec negate(const ZVec& v) { return scale(Int(-1), v); }
QVec negate(const QVec& v) { return scale(Rat(-1), v); }

QVec to_rational(const ZVec& v) {
    QVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = Rat(v[i]);
    return out;
}

Int content(const ZVec& v) {
    Int g = 0;
    for (const auto& x : v) g = boost::multiprecision::gcd(g, x);
    return g;
}

ZVec primitive(const ZVec& v) {
    Int g = content(v);
    if (g == 0 || g == 1) return v;
    ZVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
    return out;
}

ZVec primitive(const QVec& v) {
    Int lcm = 1;
    for (const auto& x : v) lcm = boost::multiprecision::lcm(lcm, denominator(x));
    ZVec w(v.size());
    for (size_t i = 0; i < v.size(); ++i) w[i] = numerator(v[i]) * (lcm / denominator(v[i]));
    return primitive(w);
}

template <typename T>
static bool lex_less_impl(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

bool lex_less(const ZVec& a, const ZVec& b) { return lex_less_impl(a, b); }
bool lex_less(const QVec& a, const QVec& b) { return lex_less_impl(a, b); }

std::string vec_to_string(const QVec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += rat_to_string(v[i]);
    }
    return s + ")";
}

std::string vec_to_string(const ZVec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += v[i].str();
    }
    return s + ")";
}

}  // namespace tropint
