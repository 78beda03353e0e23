#include "lgcalc/mf.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace lg {

// ---------------------------------------------------------------------------
// PolyMatrix

PolyMatrix::PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols),
      data_(rows * cols, Poly::zero(ring_)) {
    if (!ring_) throw Error("matrix: null ring");
}

PolyMatrix PolyMatrix::identity(const RingPtr& ring, std::size_t n) {
    return scalar(ring, Poly::constant(ring, Rational(1)), n);
}

PolyMatrix PolyMatrix::scalar(const RingPtr& ring, const Poly& p, std::size_t n) {
    PolyMatrix m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, p);
    return m;
}

const Poly& PolyMatrix::at(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw Error("matrix: index out of range");
    return data_[r * cols_ + c];
}

void PolyMatrix::set(std::size_t r, std::size_t c, Poly value) {
    if (r >= rows_ || c >= cols_) throw Error("matrix: index out of range");
    require_same_ring(ring_, value.ring(), "matrix entry");
    data_[r * cols_ + c] = std::move(value);
}

bool PolyMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Poly& p) { return p.is_zero(); });
}

Poly PolyMatrix::trace() const {
    if (rows_ != cols_) throw Error("matrix: trace of non-square matrix");
    Poly t = Poly::zero(ring_);
    for (std::size_t i = 0; i < rows_; ++i) t = t + at(i, i);
    return t;
}

PolyMatrix PolyMatrix::transpose() const {
    PolyMatrix m(ring_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) m.set(c, r, at(r, c));
    return m;
}

PolyMatrix PolyMatrix::scaled(const Rational& c) const {
    PolyMatrix m = *this;
    for (auto& p : m.data_) p = p.scaled(c);
    return m;
}

PolyMatrix PolyMatrix::mul_poly(const Poly& p) const {
    PolyMatrix m = *this;
    for (auto& q : m.data_) q = q * p;
    return m;
}

PolyMatrix PolyMatrix::substitute(const std::vector<Poly>& images) const {
    if (images.empty()) throw Error("matrix: substitution needs at least one image");
    PolyMatrix m(images[0].ring(), rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) m.set(r, c, at(r, c).substitute(images));
    return m;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix: shape mismatch in +");
    PolyMatrix m = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = m.data_[i] + o.data_[i];
    return m;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& o) const { return *this + (-o); }

PolyMatrix PolyMatrix::operator-() const { return scaled(Rational(-1)); }

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
    require_same_ring(ring_, o.ring_, "matrix product");
    if (cols_ != o.rows_) throw Error("matrix: shape mismatch in product");
    PolyMatrix m(ring_, rows_, o.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < o.cols_; ++c) {
            Poly acc = Poly::zero(ring_);
            for (std::size_t k = 0; k < cols_; ++k) acc = acc + at(r, k) * o.at(k, c);
            m.set(r, c, std::move(acc));
        }
    return m;
}

bool PolyMatrix::operator==(const PolyMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

std::string PolyMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t r = 0; r < rows_; ++r) {
        if (r) os << "; ";
        for (std::size_t c = 0; c < cols_; ++c) {
            if (c) os << ", ";
            os << at(r, c).str();
        }
    }
    os << "]";
    return os.str();
}

PolyMatrix kron(const PolyMatrix& a, const PolyMatrix& b) {
    require_same_ring(a.ring(), b.ring(), "kronecker product");
    PolyMatrix m(a.ring(), a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ra = 0; ra < a.rows(); ++ra)
        for (std::size_t ca = 0; ca < a.cols(); ++ca) {
            if (a.at(ra, ca).is_zero()) continue;
            for (std::size_t rb = 0; rb < b.rows(); ++rb)
                for (std::size_t cb = 0; cb < b.cols(); ++cb)
                    m.set(ra * b.rows() + rb, ca * b.cols() + cb, a.at(ra, ca) * b.at(rb, cb));
        }
    return m;
}

// ---------------------------------------------------------------------------
// Curved algebras and factorizations

CurvedAlgebra make_curved_algebra(RingPtr ring, Poly potential) {
    if (!ring) throw Error("curved algebra: null ring");
    require_same_ring(ring, potential.ring(), "curved algebra potential");
    if (ring->grading == Grading::Z) {
        auto d = potential.rcharge_degree();
        if (d.kind == RchargeDegree::Inhomogeneous ||
            (d.kind == RchargeDegree::Homogeneous && d.degree != 2))
            throw Error("curved algebra: potential must have charge 2 under Z grading");
    }
    return CurvedAlgebra{std::move(ring), std::move(potential)};
}

bool MatrixFactorization::operator==(const MatrixFactorization& o) const {
    return same_ring(algebra.ring, o.algebra.ring) && algebra.potential == o.algebra.potential &&
           rank_ev == o.rank_ev && rank_od == o.rank_od && d_od == o.d_od && d_ev == o.d_ev &&
           degrees_ev == o.degrees_ev && degrees_od == o.degrees_od;
}

MFPtr make_mf(CurvedAlgebra algebra, PolyMatrix d_od, PolyMatrix d_ev,
              std::optional<std::vector<long>> degrees_ev,
              std::optional<std::vector<long>> degrees_od) {
    MatrixFactorization m;
    m.rank_od = d_od.rows();
    m.rank_ev = d_od.cols();
    if (d_ev.rows() != m.rank_ev || d_ev.cols() != m.rank_od)
        throw Error("factorization: d_ev must be rank_ev x rank_od");
    require_same_ring(algebra.ring, d_od.ring(), "factorization d_od");
    require_same_ring(algebra.ring, d_ev.ring(), "factorization d_ev");
    if (degrees_ev && degrees_ev->size() != m.rank_ev)
        throw Error("factorization: even degree list has wrong length");
    if (degrees_od && degrees_od->size() != m.rank_od)
        throw Error("factorization: odd degree list has wrong length");
    if (degrees_ev.has_value() != degrees_od.has_value())
        throw Error("factorization: give internal degrees for both parities or neither");
    m.algebra = std::move(algebra);
    m.d_od = std::move(d_od);
    m.d_ev = std::move(d_ev);
    m.degrees_ev = std::move(degrees_ev);
    m.degrees_od = std::move(degrees_od);
    return std::make_shared<const MatrixFactorization>(std::move(m));
}

void ValidationReport::fail(std::string witness) {
    ok = false;
    failures.push_back(std::move(witness));
}

namespace {

void check_product(const PolyMatrix& prod, const Poly& w, const char* name,
                   ValidationReport& rep) {
    for (std::size_t r = 0; r < prod.rows(); ++r)
        for (std::size_t c = 0; c < prod.cols(); ++c) {
            const Poly& got = prod.at(r, c);
            const Poly want = (r == c) ? w : Poly::zero(w.ring());
            if (!(got == want)) {
                std::ostringstream os;
                os << name << "[" << r << "][" << c << "] = " << got.str() << ", expected "
                   << want.str();
                rep.fail(os.str());
            }
        }
}

void check_homogeneity(const PolyMatrix& block, const std::vector<long>& tgt,
                       const std::vector<long>& src, const char* name, ValidationReport& rep) {
    for (std::size_t r = 0; r < block.rows(); ++r)
        for (std::size_t c = 0; c < block.cols(); ++c) {
            const Poly& e = block.at(r, c);
            auto d = e.rcharge_degree();
            if (d.kind == RchargeDegree::Zero) continue;
            const long want = src[c] - tgt[r] + 1;
            if (d.kind == RchargeDegree::Inhomogeneous || d.degree != want) {
                std::ostringstream os;
                os << name << "[" << r << "][" << c << "] = " << e.str()
                   << " is not charge-homogeneous of degree " << want;
                rep.fail(os.str());
            }
        }
}

}  // namespace

ValidationReport validate_mf(const MatrixFactorization& m) {
    ValidationReport rep;
    if (m.d_od.rows() != m.rank_od || m.d_od.cols() != m.rank_ev)
        rep.fail("d_od has the wrong shape");
    if (m.d_ev.rows() != m.rank_ev || m.d_ev.cols() != m.rank_od)
        rep.fail("d_ev has the wrong shape");
    if (!same_ring(m.algebra.ring, m.d_od.ring()) || !same_ring(m.algebra.ring, m.d_ev.ring()))
        rep.fail("factorization blocks live over a different ring than the potential");
    if (!rep.ok) return rep;

    const Poly& w = m.algebra.potential;
    check_product(m.d_ev * m.d_od, w, "d_ev*d_od", rep);
    check_product(m.d_od * m.d_ev, w, "d_od*d_ev", rep);

    if (m.algebra.ring->grading == Grading::Z) {
        auto d = w.rcharge_degree();
        if (d.kind == RchargeDegree::Inhomogeneous ||
            (d.kind == RchargeDegree::Homogeneous && d.degree != 2))
            rep.fail("potential is not charge-homogeneous of degree 2");
    }
    if (m.degrees_ev && m.degrees_od) {
        if (m.degrees_ev->size() != m.rank_ev || m.degrees_od->size() != m.rank_od) {
            rep.fail("internal degree lists have the wrong length");
            return rep;
        }
        if (!m.algebra.ring->rcharge_weights) {
            rep.fail("internal degrees given but the ring carries no charge weights");
            return rep;
        }
        check_homogeneity(m.d_od, *m.degrees_od, *m.degrees_ev, "d_od", rep);
        check_homogeneity(m.d_ev, *m.degrees_ev, *m.degrees_od, "d_ev", rep);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Morphisms

namespace {

void require_same_brane(const MFPtr& a, const MFPtr& b, const char* where) {
    if (!a || !b) throw Error(std::string("morphism: null factorization in ") + where);
    if (a == b) return;
    if (!(*a == *b)) throw Error(std::string("morphism: brane mismatch in ") + where);
}

void require_shape(const PolyMatrix& m, std::size_t r, std::size_t c, const char* name) {
    if (m.rows() != r || m.cols() != c)
        throw Error(std::string("morphism: block ") + name + " has the wrong shape");
}

}  // namespace

Morphism Morphism::even(MFPtr source, MFPtr target, PolyMatrix b_ee, PolyMatrix b_oo) {
    if (!source || !target) throw Error("morphism: null factorization");
    require_shape(b_ee, target->rank_ev, source->rank_ev, "ev->ev");
    require_shape(b_oo, target->rank_od, source->rank_od, "od->od");
    const RingPtr& ring = source->algebra.ring;
    Morphism f;
    f.b_eo = PolyMatrix(ring, target->rank_ev, source->rank_od);
    f.b_oe = PolyMatrix(ring, target->rank_od, source->rank_ev);
    f.b_ee = std::move(b_ee);
    f.b_oo = std::move(b_oo);
    f.parity = Parity::Even;
    f.source = std::move(source);
    f.target = std::move(target);
    return f;
}

Morphism Morphism::odd(MFPtr source, MFPtr target, PolyMatrix b_eo, PolyMatrix b_oe) {
    if (!source || !target) throw Error("morphism: null factorization");
    require_shape(b_eo, target->rank_ev, source->rank_od, "od->ev");
    require_shape(b_oe, target->rank_od, source->rank_ev, "ev->od");
    const RingPtr& ring = source->algebra.ring;
    Morphism f;
    f.b_ee = PolyMatrix(ring, target->rank_ev, source->rank_ev);
    f.b_oo = PolyMatrix(ring, target->rank_od, source->rank_od);
    f.b_eo = std::move(b_eo);
    f.b_oe = std::move(b_oe);
    f.parity = Parity::Odd;
    f.source = std::move(source);
    f.target = std::move(target);
    return f;
}

Morphism Morphism::identity(MFPtr m) {
    const RingPtr& ring = m->algebra.ring;
    return even(m, m, PolyMatrix::identity(ring, m->rank_ev),
                PolyMatrix::identity(ring, m->rank_od));
}

Morphism Morphism::zero(MFPtr source, MFPtr target, Parity parity) {
    const RingPtr& ring = source->algebra.ring;
    if (parity == Parity::Even) {
        PolyMatrix ee(ring, target->rank_ev, source->rank_ev);
        PolyMatrix oo(ring, target->rank_od, source->rank_od);
        return even(std::move(source), std::move(target), std::move(ee), std::move(oo));
    }
    PolyMatrix eo(ring, target->rank_ev, source->rank_od);
    PolyMatrix oe(ring, target->rank_od, source->rank_ev);
    return odd(std::move(source), std::move(target), std::move(eo), std::move(oe));
}

bool Morphism::is_zero() const {
    return b_ee.is_zero() && b_oo.is_zero() && b_eo.is_zero() && b_oe.is_zero();
}

Morphism Morphism::scaled(const Rational& c) const {
    Morphism f = *this;
    f.b_ee = f.b_ee.scaled(c);
    f.b_oo = f.b_oo.scaled(c);
    f.b_eo = f.b_eo.scaled(c);
    f.b_oe = f.b_oe.scaled(c);
    return f;
}

Morphism Morphism::operator+(const Morphism& o) const {
    require_same_brane(source, o.source, "morphism sum");
    require_same_brane(target, o.target, "morphism sum");
    if (parity != o.parity) throw Error("morphism: parity mismatch in sum");
    Morphism f = *this;
    f.b_ee = f.b_ee + o.b_ee;
    f.b_oo = f.b_oo + o.b_oo;
    f.b_eo = f.b_eo + o.b_eo;
    f.b_oe = f.b_oe + o.b_oe;
    return f;
}

Morphism Morphism::operator-(const Morphism& o) const { return *this + o.scaled(Rational(-1)); }

bool Morphism::operator==(const Morphism& o) const {
    return parity == o.parity && *source == *o.source && *target == *o.target &&
           b_ee == o.b_ee && b_oo == o.b_oo && b_eo == o.b_eo && b_oe == o.b_oe;
}

Morphism hom_diff(const Morphism& f) {
    const MatrixFactorization& m = *f.source;
    const MatrixFactorization& n = *f.target;
    if (f.parity == Parity::Even) {
        // d(f) = d_N f - f d_M, an odd map.
        PolyMatrix oe = n.d_od * f.b_ee - f.b_oo * m.d_od;
        PolyMatrix eo = n.d_ev * f.b_oo - f.b_ee * m.d_ev;
        return Morphism::odd(f.source, f.target, std::move(eo), std::move(oe));
    }
    // d(f) = d_N f + f d_M, an even map.
    PolyMatrix ee = n.d_ev * f.b_oe + f.b_eo * m.d_od;
    PolyMatrix oo = n.d_od * f.b_eo + f.b_oe * m.d_ev;
    return Morphism::even(f.source, f.target, std::move(ee), std::move(oo));
}

Morphism compose(const Morphism& g, const Morphism& f) {
    require_same_brane(f.target, g.source, "composition");
    Morphism h;
    h.source = f.source;
    h.target = g.target;
    h.parity = (g.parity == f.parity) ? Parity::Even : Parity::Odd;
    h.b_ee = g.b_ee * f.b_ee + g.b_eo * f.b_oe;
    h.b_eo = g.b_ee * f.b_eo + g.b_eo * f.b_oo;
    h.b_oe = g.b_oe * f.b_ee + g.b_oo * f.b_oe;
    h.b_oo = g.b_oe * f.b_eo + g.b_oo * f.b_oo;
    return h;
}

// ---------------------------------------------------------------------------
// Tensor product

namespace {

void paste(PolyMatrix& dest, std::size_t r0, std::size_t c0, const PolyMatrix& src) {
    for (std::size_t r = 0; r < src.rows(); ++r)
        for (std::size_t c = 0; c < src.cols(); ++c)
            if (!src.at(r, c).is_zero()) dest.set(r0 + r, c0 + c, src.at(r, c));
}

}  // namespace

MFPtr tensor_mf(const MFPtr& m, const MFPtr& n) {
    require_same_ring(m->algebra.ring, n->algebra.ring, "tensor product");
    const RingPtr& ring = m->algebra.ring;
    const std::size_t ae = m->rank_ev, ao = m->rank_od, be = n->rank_ev, bo = n->rank_od;
    const std::size_t rank_ev = ae * be + ao * bo;
    const std::size_t rank_od = ao * be + ae * bo;

    // d(m(x)n) = d_M m (x) n + (-1)^{|m|} m (x) d_N n, in generator order
    // ev = (ev.ev, od.od), od = (od.ev, ev.od).
    PolyMatrix d_od(ring, rank_od, rank_ev);
    paste(d_od, 0, 0, kron(m->d_od, PolyMatrix::identity(ring, be)));
    paste(d_od, 0, ae * be, -kron(PolyMatrix::identity(ring, ao), n->d_ev));
    paste(d_od, ao * be, 0, kron(PolyMatrix::identity(ring, ae), n->d_od));
    paste(d_od, ao * be, ae * be, kron(m->d_ev, PolyMatrix::identity(ring, bo)));

    PolyMatrix d_ev(ring, rank_ev, rank_od);
    paste(d_ev, 0, 0, kron(m->d_ev, PolyMatrix::identity(ring, be)));
    paste(d_ev, 0, ao * be, kron(PolyMatrix::identity(ring, ae), n->d_ev));
    paste(d_ev, ae * be, 0, -kron(PolyMatrix::identity(ring, ao), n->d_od));
    paste(d_ev, ae * be, ao * be, kron(m->d_od, PolyMatrix::identity(ring, bo)));

    CurvedAlgebra alg = make_curved_algebra(ring, m->algebra.potential + n->algebra.potential);

    std::optional<std::vector<long>> deg_ev, deg_od;
    if (m->degrees_ev && n->degrees_ev) {
        deg_ev.emplace();
        deg_od.emplace();
        for (std::size_t i = 0; i < ae; ++i)
            for (std::size_t j = 0; j < be; ++j)
                deg_ev->push_back((*m->degrees_ev)[i] + (*n->degrees_ev)[j]);
        for (std::size_t i = 0; i < ao; ++i)
            for (std::size_t j = 0; j < bo; ++j)
                deg_ev->push_back((*m->degrees_od)[i] + (*n->degrees_od)[j]);
        for (std::size_t i = 0; i < ao; ++i)
            for (std::size_t j = 0; j < be; ++j)
                deg_od->push_back((*m->degrees_od)[i] + (*n->degrees_ev)[j]);
        for (std::size_t i = 0; i < ae; ++i)
            for (std::size_t j = 0; j < bo; ++j)
                deg_od->push_back((*m->degrees_ev)[i] + (*n->degrees_od)[j]);
    }
    return make_mf(std::move(alg), std::move(d_od), std::move(d_ev), std::move(deg_ev),
                   std::move(deg_od));
}

// ---------------------------------------------------------------------------
// Ext in a bounded slice

namespace {

std::vector<Exps> monomials_up_to(std::size_t nvars, unsigned bound) {
    std::vector<Exps> out;
    Exps cur(nvars, 0);
    // Lexicographic enumeration of all exponent vectors with total degree <= bound.
    auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
        if (i + 1 == nvars) {
            for (unsigned e = 0; e <= left; ++e) {
                cur[i] = e;
                out.push_back(cur);
            }
            cur[i] = 0;
            return;
        }
        for (unsigned e = 0; e <= left; ++e) {
            cur[i] = e;
            self(self, i + 1, left - e);
        }
        cur[i] = 0;
    };
    if (nvars == 0) {
        out.push_back({});
        return out;
    }
    rec(rec, 0, bound);
    std::sort(out.begin(), out.end(), DegLexLess{});
    return out;
}

struct BlockShape {
    // Which of the four blocks, plus its dimensions.
    enum Which { EE, OO, EO, OE } which;
    std::size_t rows, cols;
};

std::vector<BlockShape> blocks_for(const MatrixFactorization& m, const MatrixFactorization& n,
                                   Parity p) {
    if (p == Parity::Even)
        return {{BlockShape::EE, n.rank_ev, m.rank_ev}, {BlockShape::OO, n.rank_od, m.rank_od}};
    return {{BlockShape::EO, n.rank_ev, m.rank_od}, {BlockShape::OE, n.rank_od, m.rank_ev}};
}

const PolyMatrix& block_of(const Morphism& f, BlockShape::Which w) {
    switch (w) {
        case BlockShape::EE: return f.b_ee;
        case BlockShape::OO: return f.b_oo;
        case BlockShape::EO: return f.b_eo;
        default: return f.b_oe;
    }
}

/** Coordinates: (block, row, col, monomial) for one parity and degree bound. */
struct SliceCoords {
    std::vector<BlockShape> blocks;
    std::vector<Exps> monos;
    std::map<Exps, std::size_t, DegLexLess> mono_index;
    std::vector<std::size_t> block_offset;
    std::size_t dim = 0;

    SliceCoords(const MatrixFactorization& m, const MatrixFactorization& n, Parity p,
                unsigned bound) {
        blocks = blocks_for(m, n, p);
        monos = monomials_up_to(m.algebra.ring->nvars(), bound);
        for (std::size_t i = 0; i < monos.size(); ++i) mono_index.emplace(monos[i], i);
        for (const auto& b : blocks) {
            block_offset.push_back(dim);
            dim += b.rows * b.cols * monos.size();
        }
    }

    std::size_t index(std::size_t blk, std::size_t r, std::size_t c, std::size_t mono) const {
        const auto& b = blocks[blk];
        return block_offset[blk] + (r * b.cols + c) * monos.size() + mono;
    }

    QVector vectorize(const Morphism& f) const {
        QVector v(dim, Rational(0));
        for (std::size_t blk = 0; blk < blocks.size(); ++blk) {
            const PolyMatrix& mat = block_of(f, blocks[blk].which);
            for (std::size_t r = 0; r < mat.rows(); ++r)
                for (std::size_t c = 0; c < mat.cols(); ++c)
                    for (const auto& [e, coeff] : mat.at(r, c).terms()) {
                        auto it = mono_index.find(e);
                        if (it == mono_index.end())
                            throw Error("ext: morphism exceeds the degree slice");
                        v[index(blk, r, c, it->second)] = coeff;
                    }
        }
        return v;
    }

    Morphism devectorize(const QVector& v, const MFPtr& m, const MFPtr& n, Parity p) const {
        const RingPtr& ring = m->algebra.ring;
        PolyMatrix b0(ring, blocks[0].rows, blocks[0].cols);
        PolyMatrix b1(ring, blocks[1].rows, blocks[1].cols);
        for (std::size_t blk = 0; blk < blocks.size(); ++blk) {
            PolyMatrix& mat = blk == 0 ? b0 : b1;
            for (std::size_t r = 0; r < blocks[blk].rows; ++r)
                for (std::size_t c = 0; c < blocks[blk].cols; ++c) {
                    Poly entry = Poly::zero(ring);
                    for (std::size_t k = 0; k < monos.size(); ++k) {
                        const Rational& coeff = v[index(blk, r, c, k)];
                        if (!coeff.is_zero()) entry.add_term(monos[k], coeff);
                    }
                    mat.set(r, c, std::move(entry));
                }
        }
        if (p == Parity::Even) return Morphism::even(m, n, std::move(b0), std::move(b1));
        return Morphism::odd(m, n, std::move(b0), std::move(b1));
    }
};

unsigned max_entry_degree(const PolyMatrix& m) {
    long d = 0;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) d = std::max(d, m.at(r, c).degree());
    return static_cast<unsigned>(d);
}

/** hom_diff as an exact matrix slice_p(bound) -> slice_{1-p}(bound + step). */
QMatrix diff_matrix(const MFPtr& m, const MFPtr& n, Parity p, const SliceCoords& dom,
                    const SliceCoords& cod) {
    QMatrix a(cod.dim, dom.dim);
    for (std::size_t blk = 0; blk < dom.blocks.size(); ++blk) {
        const auto& bs = dom.blocks[blk];
        for (std::size_t r = 0; r < bs.rows; ++r)
            for (std::size_t c = 0; c < bs.cols; ++c)
                for (std::size_t k = 0; k < dom.monos.size(); ++k) {
                    Morphism unit = Morphism::zero(m, n, p);
                    PolyMatrix blockmat(m->algebra.ring, bs.rows, bs.cols);
                    blockmat.set(r, c, Poly::monomial(m->algebra.ring, dom.monos[k], Rational(1)));
                    switch (bs.which) {
                        case BlockShape::EE: unit.b_ee = std::move(blockmat); break;
                        case BlockShape::OO: unit.b_oo = std::move(blockmat); break;
                        case BlockShape::EO: unit.b_eo = std::move(blockmat); break;
                        case BlockShape::OE: unit.b_oe = std::move(blockmat); break;
                    }
                    QVector col = cod.vectorize(hom_diff(unit));
                    const std::size_t j = dom.index(blk, r, c, k);
                    for (std::size_t i = 0; i < cod.dim; ++i)
                        if (!col[i].is_zero()) a.at(i, j) = col[i];
                }
    }
    return a;
}

}  // namespace

std::vector<Morphism> ext_basis(const MFPtr& m, const MFPtr& n, Parity parity,
                                unsigned degree_bound) {
    require_same_ring(m->algebra.ring, n->algebra.ring, "ext");
    if (!(m->algebra.potential == n->algebra.potential))
        throw Error("ext: factorizations have different potentials");

    const unsigned step = std::max(
        std::max(max_entry_degree(m->d_od), max_entry_degree(m->d_ev)),
        std::max(max_entry_degree(n->d_od), max_entry_degree(n->d_ev)));
    const unsigned big = degree_bound + step;

    SliceCoords dom(*m, *n, parity, degree_bound);
    SliceCoords cod(*m, *n, flip(parity), big);
    if (dom.dim == 0) return {};

    // Closed morphisms: exact kernel (images are fully captured at bound+step).
    std::vector<QVector> closed = kernel_basis(diff_matrix(m, n, parity, dom, cod));
    if (closed.empty()) return {};

    // Exact morphisms hitting the slice: image of the opposite-parity slice.
    SliceCoords pre(*m, *n, flip(parity), degree_bound);
    SliceCoords post(*m, *n, parity, big);
    QMatrix bmat = diff_matrix(m, n, flip(parity), pre, post);
    std::vector<QVector> image;
    for (std::size_t j = 0; j < bmat.cols(); ++j) {
        QVector col(bmat.rows());
        bool nonzero = false;
        for (std::size_t i = 0; i < bmat.rows(); ++i) {
            col[i] = bmat.at(i, j);
            nonzero = nonzero || !col[i].is_zero();
        }
        if (nonzero) image.push_back(std::move(col));
    }

    // Pad kernel vectors into the larger slice so both live in one space.
    std::vector<QVector> closed_padded;
    closed_padded.reserve(closed.size());
    for (const auto& v : closed) {
        QVector w(post.dim, Rational(0));
        for (std::size_t blk = 0; blk < dom.blocks.size(); ++blk)
            for (std::size_t r = 0; r < dom.blocks[blk].rows; ++r)
                for (std::size_t c = 0; c < dom.blocks[blk].cols; ++c)
                    for (std::size_t k = 0; k < dom.monos.size(); ++k) {
                        const Rational& x = v[dom.index(blk, r, c, k)];
                        if (x.is_zero()) continue;
                        w[post.index(blk, r, c, post.mono_index.at(dom.monos[k]))] = x;
                    }
        closed_padded.push_back(std::move(w));
    }

    std::vector<std::size_t> reps = quotient_representatives(image, closed_padded);
    std::vector<Morphism> out;
    out.reserve(reps.size());
    for (std::size_t i : reps) out.push_back(dom.devectorize(closed[i], m, n, parity));
    return out;
}

}  // namespace lg
