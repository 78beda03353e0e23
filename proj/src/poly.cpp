#include "lgcalc/poly.hpp"

#include <ostream>
#include <sstream>

namespace lg {

Poly Poly::constant(RingPtr ring, const Rational& c) {
    Poly p(std::move(ring));
    if (!c.is_zero()) p.terms_.emplace(Exps(p.ring_->nvars(), 0), c);
    return p;
}

Poly Poly::monomial(RingPtr ring, const Exps& exps, const Rational& c) {
    Poly p(std::move(ring));
    if (exps.size() != p.ring_->nvars()) throw Error("poly: exponent vector length mismatch");
    if (!c.is_zero()) p.terms_.emplace(exps, c);
    return p;
}

Poly Poly::variable(RingPtr ring, std::size_t index) {
    if (index >= ring->nvars()) throw Error("poly: variable index out of range");
    Exps e(ring->nvars(), 0);
    e[index] = 1;
    return monomial(std::move(ring), e, 1);
}

Poly Poly::variable(RingPtr ring, const std::string& name) {
    std::size_t i = ring->var_index(name);
    return variable(std::move(ring), i);
}

Rational Poly::constant_term() const {
    check_ring();
    return coefficient(Exps(ring_->nvars(), 0));
}

Rational Poly::coefficient(const Exps& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

long Poly::degree() const {
    if (terms_.empty()) return -1;
    return static_cast<long>(total_degree(terms_.rbegin()->first));
}

void Poly::add_term(const Exps& e, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly r(ring_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    require_same_ring(ring_, o.ring_, "poly addition");
    Poly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    require_same_ring(ring_, o.ring_, "poly subtraction");
    Poly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    require_same_ring(ring_, o.ring_, "poly multiplication");
    Poly r(ring_);
    const std::size_t n = ring_->nvars();
    Exps sum(n);
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            for (std::size_t i = 0; i < n; ++i) sum[i] = ea[i] + eb[i];
            r.add_term(sum, ca * cb);
        }
    return r;
}

Poly Poly::scaled(const Rational& c) const {
    Poly r(ring_);
    if (c.is_zero()) return r;
    for (const auto& [e, t] : terms_) r.terms_.emplace(e, t * c);
    return r;
}

Poly Poly::pow(unsigned n) const {
    check_ring();
    Poly acc = Poly::constant(ring_, 1);
    Poly base = *this;
    while (n > 0) {  // binary exponentiation
        if (n & 1u) acc = acc * base;
        base = base * base;
        n >>= 1u;
    }
    return acc;
}

Poly Poly::partial(std::size_t index) const {
    check_ring();
    if (index >= ring_->nvars()) throw Error("poly: partial index out of range");
    Poly r(ring_);
    for (const auto& [e, c] : terms_) {
        if (e[index] == 0) continue;
        Exps d = e;
        d[index] -= 1;
        r.add_term(d, c * Rational(static_cast<long>(e[index])));
    }
    return r;
}

Poly Poly::substitute(const std::vector<Poly>& images) const {
    check_ring();
    if (images.size() != ring_->nvars()) throw Error("poly: substitute image count mismatch");
    RingPtr target = images.empty() ? ring_ : images[0].ring();
    for (const auto& im : images) require_same_ring(target, im.ring(), "substitute images");
    Poly r = Poly::zero(target);
    for (const auto& [e, c] : terms_) {
        Poly term = Poly::constant(target, c);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) term = term * images[i].pow(e[i]);
        r = r + term;
    }
    return r;
}

Poly Poly::rename(RingPtr target, const std::vector<std::size_t>& var_map) const {
    check_ring();
    if (var_map.size() != ring_->nvars()) throw Error("poly: rename map length mismatch");
    for (std::size_t m : var_map)
        if (m >= target->nvars()) throw Error("poly: rename target index out of range");
    Poly r(target);
    Exps e2(target->nvars());
    for (const auto& [e, c] : terms_) {
        e2.assign(target->nvars(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) e2[var_map[i]] += e[i];
        r.add_term(e2, c);
    }
    return r;
}

RchargeDegree Poly::rcharge_degree() const {
    check_ring();
    if (!ring_->rcharge_weights) throw Error("poly: ring has no rcharge weights");
    if (terms_.empty()) return RchargeDegree::zero();
    const auto& w = *ring_->rcharge_weights;
    bool first = true;
    long deg = 0;
    for (const auto& [e, c] : terms_) {
        long d = 0;
        for (std::size_t i = 0; i < e.size(); ++i) d += static_cast<long>(e[i]) * w[i];
        if (first) {
            deg = d;
            first = false;
        } else if (d != deg) {
            return RchargeDegree::inhomogeneous();
        }
    }
    return RchargeDegree::homogeneous(deg);
}

Rational Poly::qh_weight_of(const Exps& e) const {
    check_ring();
    if (!ring_->qh_weights) throw Error("poly: ring has no qh weights");
    const auto& w = *ring_->qh_weights;
    Rational d = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
        d += w[i] * Rational(static_cast<long>(e[i]));
    return d;
}

std::optional<Rational> Poly::qh_degree() const {
    check_ring();
    if (!ring_->qh_weights) return std::nullopt;
    if (terms_.empty()) return Rational(0);
    bool first = true;
    Rational deg = 0;
    for (const auto& [e, c] : terms_) {
        Rational d = qh_weight_of(e);
        if (first) {
            deg = d;
            first = false;
        } else if (d != deg) {
            return std::nullopt;
        }
    }
    return deg;
}

std::string Poly::str() const {
    check_ring();
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Print leading (highest deg-lex) terms first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rational a = c;
        if (first) {
            if (a.sign() < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a.sign() < 0 ? " - " : " + ");
            if (a.sign() < 0) a = -a;
        }
        first = false;
        bool has_vars = total_degree(e) > 0;
        if (!a.is_one() || !has_vars) {
            os << a.str();
            if (has_vars) os << "*";
        }
        bool first_var = true;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!first_var) os << "*";
            first_var = false;
            os << ring_->variables[i];
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

bool poly_less(const Poly& a, const Poly& b) {
    auto ia = a.terms().begin(), ib = b.terms().begin();
    DegLexLess lt;
    for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
        if (lt(ia->first, ib->first)) return true;
        if (lt(ib->first, ia->first)) return false;
        if (ia->second < ib->second) return true;
        if (ib->second < ia->second) return false;
    }
    return ia == a.terms().end() && ib != b.terms().end();
}

}  // namespace lg
