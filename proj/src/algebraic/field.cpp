#include "algapprox/algebraic.hpp"
#include "algapprox/error.hpp"

namespace algapprox {

NumberField::NumberField(const IntPoly& min_poly) : min_poly_(min_poly), modulus_(monic(to_rat(min_poly))) {}

FieldPtr NumberField::create(const IntPoly& min_poly) {
    if (min_poly.degree() < 1) throw Error(ErrorCode::DegenerateInput, "field of a constant polynomial");
    return FieldPtr(new NumberField(min_poly));
}

FieldElem NumberField::elem(const RatPoly& h) const {
    RatPoly r = rem(h, modulus_);
    RatVec c(degree(), Rat(0));
    for (std::size_t i = 0; i < r.size(); ++i) c[i] = r[i];
    return FieldElem(shared_from_this(), std::move(c));
}

FieldElem NumberField::from_rat(const Rat& v) const { return elem(RatPoly::constant(v)); }

FieldElem NumberField::gen() const { return elem(RatPoly::x()); }

FieldElem NumberField::apply(const RatPoly& h, const FieldElem& x) const {
    return elem(compose_mod(h, x.to_poly(), modulus_));
}

FieldElem::FieldElem(FieldPtr field, RatVec coords) : field_(std::move(field)), coords_(std::move(coords)) {
    coords_.resize(field_->degree(), Rat(0));
}

bool FieldElem::is_zero() const {
    for (const auto& c : coords_)
        if (c != 0) return false;
    return true;
}

bool FieldElem::is_rational() const {
    for (std::size_t i = 1; i < coords_.size(); ++i)
        if (coords_[i] != 0) return false;
    return true;
}

namespace {

void same_field(const FieldElem& a, const FieldElem& b) {
    if (a.field() != b.field() && a.field()->modulus() != b.field()->modulus())
        throw Error(ErrorCode::DegenerateInput, "elements of different fields");
}

}  // namespace

FieldElem& FieldElem::operator+=(const FieldElem& o) {
    same_field(*this, o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& o) {
    same_field(*this, o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
}

FieldElem operator-(const FieldElem& a) {
    FieldElem r = a;
    for (auto& c : r.coords_) c = -c;
    return r;
}

FieldElem operator*(const FieldElem& a, const FieldElem& b) {
    same_field(a, b);
    return a.field_->elem(a.to_poly() * b.to_poly());
}

FieldElem operator*(const Rat& s, const FieldElem& a) {
    FieldElem r = a;
    for (auto& c : r.coords_) c *= s;
    return r;
}

bool operator==(const FieldElem& a, const FieldElem& b) { return a.coords_ == b.coords_; }

FieldElem FieldElem::inverse() const {
    if (is_zero()) throw Error(ErrorCode::DegenerateInput, "inverse of zero");
    // extended Euclid: s*h + t*f = 1
    RatPoly r0 = field_->modulus(), r1 = to_poly();
    RatPoly s0, s1 = RatPoly::constant(1);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        RatPoly s = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (r0.degree() != 0) throw Error(ErrorCode::DegenerateInput, "element is not invertible");
    return field_->elem(s0 * Rat(1 / r0[0]));
}

FieldElem FieldElem::pow(unsigned k) const {
    FieldElem r = field_->one();
    FieldElem b = *this;
    while (k) {
        if (k & 1u) r = r * b;
        k >>= 1u;
        if (k) b = b * b;
    }
    return r;
}

ComplexBall FieldElem::evaluate(const ComplexBall& xi) const { return eval_ball(to_poly(), xi); }

}  // namespace algapprox
