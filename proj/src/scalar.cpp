#include "nctorus/scalar.hpp"

#include <cmath>

namespace nct {

const char* var_name(Var v) {
    switch (v) {
        case Var::pi: return "pi";
        case Var::tau1: return "tau1";
        case Var::tau2: return "tau2";
        case Var::xi1: return "xi1";
        case Var::xi2: return "xi2";
        case Var::r: return "r";
        case Var::u: return "u";
    }
    return "?";
}

std::optional<Var> var_from_name(const std::string& name) {
    for (int i = 0; i < kNumVars; ++i) {
        Var v = static_cast<Var>(i);
        if (name == var_name(v)) return v;
    }
    return std::nullopt;
}

Rational PiValue::rational_part() const {
    Rational sum = 0;
    for (const auto& [p, c] : by_pi_power) {
        if (p != 0) throw calc_error("eval result carries a power of pi; not a plain rational");
        sum += c;
    }
    return sum;
}

double PiValue::to_double() const {
    constexpr double kPi = 3.14159265358979323846264338327950288;
    double sum = 0.0;
    for (const auto& [p, c] : by_pi_power) sum += nct::to_double(c) * std::pow(kPi, p);
    return sum;
}

ScalarPoly::ScalarPoly(const Rational& c) {
    if (c != 0) terms_[ScalarMono{}] = c;
}

ScalarPoly::ScalarPoly(const Rational& c, const ScalarMono& m) {
    if (c != 0) terms_[m] = c;
}

ScalarPoly ScalarPoly::variable(Var v, int exp) {
    ScalarMono m;
    m.set(v, exp);
    return ScalarPoly(Rational(1), m);
}

ScalarPoly ScalarPoly::tau_abs_sq() {
    return variable(Var::tau1, 2) + variable(Var::tau2, 2);
}

ScalarPoly ScalarPoly::leading_shape() {
    ScalarPoly s = variable(Var::xi1, 2);
    s += Rational(2) * (variable(Var::tau1) * variable(Var::xi1) * variable(Var::xi2));
    s += tau_abs_sq() * variable(Var::xi2, 2);
    return s;
}

bool ScalarPoly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first == ScalarMono{};
}

Rational ScalarPoly::coeff(const ScalarMono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void ScalarPoly::add_term(const ScalarMono& m, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

ScalarPoly ScalarPoly::operator+(const ScalarPoly& o) const {
    ScalarPoly out = *this;
    out += o;
    return out;
}

ScalarPoly& ScalarPoly::operator+=(const ScalarPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

ScalarPoly ScalarPoly::operator-(const ScalarPoly& o) const { return *this + (-o); }

ScalarPoly ScalarPoly::operator-() const {
    ScalarPoly out;
    for (const auto& [m, c] : terms_) out.terms_[m] = -c;
    return out;
}

ScalarPoly ScalarPoly::operator*(const ScalarPoly& o) const {
    ScalarPoly out;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) out.add_term(ma * mb, ca * cb);
    return out;
}

ScalarPoly ScalarPoly::scaled(const Rational& c) const {
    ScalarPoly out;
    if (c == 0) return out;
    for (const auto& [m, k] : terms_) out.terms_[m] = k * c;
    return out;
}

ScalarPoly operator*(const Rational& c, const ScalarPoly& p) { return p.scaled(c); }

ScalarPoly ScalarPoly::derivative(Var v) const {
    ScalarPoly out;
    const int vi = static_cast<int>(v);
    for (const auto& [m, c] : terms_) {
        if (m.e[vi] == 0) continue;
        ScalarMono d = m;
        d.e[vi] -= 1;
        out.add_term(d, c * m.e[vi]);
    }
    return out;
}

ScalarPoly ScalarPoly::substituted(const std::map<Var, Rational>& point) const {
    ScalarPoly out;
    for (const auto& [m, c] : terms_) {
        Rational k = c;
        ScalarMono rest = m;
        for (const auto& [v, val] : point) {
            int p = m.exp(v);
            if (p == 0) continue;
            if (p < 0) {
                if (val == 0) throw calc_error(std::string("division by zero substituting ") + var_name(v));
                for (int i = 0; i < -p; ++i) k /= val;
            } else {
                for (int i = 0; i < p; ++i) k *= val;
            }
            rest.set(v, 0);
        }
        out.add_term(rest, k);
    }
    return out;
}

PiValue ScalarPoly::eval(const std::map<Var, Rational>& point) const {
    PiValue out;
    for (const auto& [m, c] : terms_) {
        Rational k = c;
        for (int i = 1; i < kNumVars; ++i) {  // pi handled separately
            int p = m.e[i];
            if (p == 0) continue;
            Var v = static_cast<Var>(i);
            auto it = point.find(v);
            if (it == point.end())
                throw calc_error(std::string("unbound variable in eval: ") + var_name(v));
            if (p < 0) {
                if (it->second == 0)
                    throw calc_error(std::string("division by zero: ") + var_name(v) + " = 0");
                for (int j = 0; j < -p; ++j) k /= it->second;
            } else {
                for (int j = 0; j < p; ++j) k *= it->second;
            }
        }
        auto [it, fresh] = out.by_pi_power.emplace(m.e[0], k);
        if (!fresh) {
            it->second += k;
            if (it->second == 0) out.by_pi_power.erase(it);
        }
    }
    return out;
}

ScalarPoly ScalarPoly::xi_slice(int e1, int e2) const {
    ScalarPoly out;
    for (const auto& [m, c] : terms_) {
        if (m.exp(Var::xi1) != e1 || m.exp(Var::xi2) != e2) continue;
        ScalarMono rest = m;
        rest.set(Var::xi1, 0);
        rest.set(Var::xi2, 0);
        out.add_term(rest, c);
    }
    return out;
}

}  // namespace nct
