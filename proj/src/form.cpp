#include "lgcalc/form.hpp"

#include <sstream>

namespace lg {

int merge_sign(FormMask a, FormMask b) {
    // Count pairs (i in a, j in b) with i > j; each contributes one transposition.
    int inversions = 0;
    FormMask bb = b;
    while (bb) {
        int j = __builtin_ctzll(bb);
        bb &= bb - 1;
        inversions += mask_popcount(a >> (j + 1));
    }
    return (inversions % 2 == 0) ? 1 : -1;
}

Form Form::from_poly(const Poly& p) {
    Form f(p.ring());
    f.add_component(0, p);
    return f;
}

Form Form::d_generator(RingPtr ring, std::size_t index) {
    if (index >= ring->nvars()) throw Error("form: generator index out of range");
    Form f(ring);
    f.add_component(FormMask(1) << index, Poly::constant(ring, 1));
    return f;
}

Form Form::component(const Poly& p, FormMask mask) {
    Form f(p.ring());
    f.add_component(mask, p);
    return f;
}

Poly Form::coefficient(FormMask mask) const {
    auto it = comps_.find(mask);
    return it == comps_.end() ? Poly::zero(ring_) : it->second;
}

Form Form::degree_part(int k) const {
    Form f(ring_);
    for (const auto& [m, p] : comps_)
        if (mask_popcount(m) == k) f.add_component(m, p);
    return f;
}

int Form::top_degree() const {
    int top = -1;
    for (const auto& [m, p] : comps_) top = std::max(top, mask_popcount(m));
    return top;
}

void Form::add_component(FormMask mask, const Poly& p) {
    if (!ring_) ring_ = p.ring();
    require_same_ring(ring_, p.ring(), "form component");
    if (ring_->nvars() < 64 && (mask >> ring_->nvars()) != 0)
        throw Error("form: mask uses indices outside the ring");
    if (p.is_zero()) return;
    auto it = comps_.find(mask);
    if (it == comps_.end()) {
        comps_.emplace(mask, p);
    } else {
        Poly s = it->second + p;
        if (s.is_zero())
            comps_.erase(it);
        else
            it->second = std::move(s);
    }
}

Form Form::operator-() const {
    Form f(ring_);
    for (const auto& [m, p] : comps_) f.comps_.emplace(m, -p);
    return f;
}

Form Form::operator+(const Form& o) const {
    require_same_ring(ring_, o.ring_, "form addition");
    Form f = *this;
    for (const auto& [m, p] : o.comps_) f.add_component(m, p);
    return f;
}

Form Form::operator-(const Form& o) const {
    require_same_ring(ring_, o.ring_, "form subtraction");
    Form f = *this;
    for (const auto& [m, p] : o.comps_) f.add_component(m, -p);
    return f;
}

Form Form::scaled(const Rational& c) const {
    Form f(ring_);
    if (c.is_zero()) return f;
    for (const auto& [m, p] : comps_) f.comps_.emplace(m, p.scaled(c));
    return f;
}

Form Form::mul_poly(const Poly& p) const {
    require_same_ring(ring_, p.ring(), "form poly multiplication");
    Form f(ring_);
    for (const auto& [m, q] : comps_) f.add_component(m, q * p);
    return f;
}

std::string Form::str() const {
    if (comps_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, p] : comps_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << p.str() << ")";
        FormMask mm = m;
        while (mm) {
            int i = __builtin_ctzll(mm);
            mm &= mm - 1;
            os << " dy[" << ring_->variables[static_cast<std::size_t>(i)] << "]";
        }
    }
    return os.str();
}

Form wedge(const Form& a, const Form& b) {
    require_same_ring(a.ring(), b.ring(), "wedge");
    Form f(a.ring());
    for (const auto& [ma, pa] : a.components())
        for (const auto& [mb, pb] : b.components()) {
            if (ma & mb) continue;  // repeated generator kills the term
            int s = merge_sign(ma, mb);
            Poly prod = pa * pb;
            f.add_component(ma | mb, s > 0 ? prod : -prod);
        }
    return f;
}

Form exterior_d(const Poly& p) {
    Form f(p.ring());
    for (std::size_t i = 0; i < p.ring()->nvars(); ++i)
        f.add_component(FormMask(1) << i, p.partial(i));
    return f;
}

Form exterior_d(const Form& f) {
    Form r(f.ring());
    for (const auto& [m, p] : f.components()) {
        Form dp = exterior_d(p);  // a 1-form
        for (const auto& [mi, q] : dp.components()) {
            if (mi & m) continue;
            int s = merge_sign(mi, m);
            r.add_component(mi | m, s > 0 ? q : -q);
        }
    }
    return r;
}

}  // namespace lg
