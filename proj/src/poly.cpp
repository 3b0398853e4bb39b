#include "strengthlab/poly.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace strengthlab {

Poly::Poly(FieldRef fld, uint32_t nvars) : fld_(std::move(fld)), n_(nvars) {}

Poly Poly::constant(FieldRef fld, uint32_t nvars, FieldElem c) {
    Poly p(std::move(fld), nvars);
    if (c.v != 0) p.terms_[Expo(nvars, 0)] = c;
    return p;
}

Poly Poly::variable(FieldRef fld, uint32_t nvars, uint32_t i) {
    if (i >= nvars) throw std::invalid_argument("variable index out of range");
    Poly p(std::move(fld), nvars);
    Expo e(nvars, 0);
    e[i] = 1;
    p.terms_[e] = p.fld_->one();
    return p;
}

Poly Poly::monomial(FieldRef fld, uint32_t nvars, const Expo& e, FieldElem c) {
    if (e.size() != nvars) throw std::invalid_argument("exponent vector length mismatch");
    Poly p(std::move(fld), nvars);
    if (c.v != 0) p.terms_[e] = c;
    return p;
}

uint32_t Poly::degree() const {
    uint32_t d = 0;
    for (const auto& [e, c] : terms_)
        d = std::max<uint32_t>(d, std::accumulate(e.begin(), e.end(), 0u));
    return d;
}

bool Poly::is_homogeneous(uint32_t* deg_out) const {
    bool first = true;
    uint32_t d = 0;
    for (const auto& [e, c] : terms_) {
        uint32_t td = std::accumulate(e.begin(), e.end(), 0u);
        if (first) {
            d = td;
            first = false;
        } else if (td != d) {
            return false;
        }
    }
    if (deg_out) *deg_out = d;
    return true;
}

FieldElem Poly::coeff(const Expo& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? fld_->zero() : it->second;
}

void Poly::add_term(const Expo& e, FieldElem c) {
    if (e.size() != n_) throw std::invalid_argument("exponent vector length mismatch");
    if (c.v == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_[e] = c;
    } else {
        it->second = fld_->add(it->second, c);
        if (it->second.v == 0) terms_.erase(it);
    }
}

Poly Poly::add(const Poly& o) const {
    if (n_ != o.n_) throw std::invalid_argument("variable count mismatch");
    Poly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

Poly Poly::sub(const Poly& o) const { return add(o.neg()); }

Poly Poly::neg() const {
    Poly r = *this;
    for (auto& [e, c] : r.terms_) c = fld_->neg(c);
    return r;
}

Poly Poly::mul(const Poly& o) const {
    if (n_ != o.n_) throw std::invalid_argument("variable count mismatch");
    Poly r(fld_, n_);
    Expo e(n_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            for (uint32_t i = 0; i < n_; ++i) e[i] = static_cast<uint16_t>(e1[i] + e2[i]);
            r.add_term(e, fld_->mul(c1, c2));
        }
    return r;
}

Poly Poly::scale(FieldElem c) const {
    Poly r(fld_, n_);
    if (c.v == 0) return r;
    r.terms_ = terms_;
    for (auto& [e, x] : r.terms_) x = fld_->mul(x, c);
    return r;
}

bool Poly::operator==(const Poly& o) const {
    return n_ == o.n_ && terms_ == o.terms_ && fld_->same_spec(*o.fld_);
}

FieldElem Poly::eval(const std::vector<FieldElem>& point) const {
    if (point.size() != n_) throw std::invalid_argument("evaluation point length mismatch");
    FieldElem acc = fld_->zero();
    for (const auto& [e, c] : terms_) {
        FieldElem t = c;
        for (uint32_t i = 0; i < n_; ++i)
            if (e[i]) t = fld_->mul(t, fld_->pow(point[i], e[i]));
        acc = fld_->add(acc, t);
    }
    return acc;
}

Poly Poly::derivative(uint32_t var) const {
    if (var >= n_) throw std::invalid_argument("variable index out of range");
    Poly r(fld_, n_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Expo e2 = e;
        e2[var] -= 1;
        r.add_term(e2, fld_->mul(c, fld_->from_int(e[var])));
    }
    return r;
}

Poly Poly::compose_linear(const std::vector<std::vector<FieldElem>>& M, uint32_t m) const {
    if (M.size() != n_) throw std::invalid_argument("substitution matrix row count mismatch");
    for (const auto& row : M)
        if (row.size() != m) throw std::invalid_argument("substitution matrix column count mismatch");
    // images of the variables as degree-1 polynomials in the new variables
    std::vector<Poly> image;
    image.reserve(n_);
    for (uint32_t i = 0; i < n_; ++i) {
        Poly li(fld_, m);
        for (uint32_t j = 0; j < m; ++j)
            if (M[i][j].v != 0) {
                Expo e(m, 0);
                e[j] = 1;
                li.add_term(e, M[i][j]);
            }
        image.push_back(std::move(li));
    }
    Poly r(fld_, m);
    for (const auto& [e, c] : terms_) {
        Poly t = Poly::constant(fld_, m, c);
        for (uint32_t i = 0; i < n_; ++i)
            for (uint16_t k = 0; k < e[i]; ++k) t = t.mul(image[i]);
        r = r.add(t);
    }
    return r;
}

Poly Poly::lift(uint32_t new_nvars, uint32_t offset) const {
    if (offset + n_ > new_nvars) throw std::invalid_argument("lift window out of range");
    Poly r(fld_, new_nvars);
    for (const auto& [e, c] : terms_) {
        Expo e2(new_nvars, 0);
        for (uint32_t i = 0; i < n_; ++i) e2[offset + i] = e[i];
        r.terms_[e2] = c;
    }
    return r;
}

Poly Poly::eval_block(uint32_t offset, const std::vector<FieldElem>& vals) const {
    uint32_t blk = static_cast<uint32_t>(vals.size());
    if (offset + blk > n_) throw std::invalid_argument("substitution block out of range");
    Poly r(fld_, n_ - blk);
    Expo e2(n_ - blk);
    for (const auto& [e, c] : terms_) {
        FieldElem cc = c;
        for (uint32_t i = 0; i < blk; ++i)
            if (e[offset + i]) cc = fld_->mul(cc, fld_->pow(vals[i], e[offset + i]));
        if (cc.v == 0) continue;
        for (uint32_t i = 0; i < offset; ++i) e2[i] = e[i];
        for (uint32_t i = offset + blk; i < n_; ++i) e2[i - blk] = e[i];
        r.add_term(e2, cc);
    }
    return r;
}

Poly Poly::embedded(const Embedding& emb) const {
    Poly r(std::make_shared<const Field>(emb.to()), n_);
    for (const auto& [e, c] : terms_) r.terms_[e] = emb.map(c);
    return r;
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) s += " + ";
        first = false;
        std::string mono;
        for (uint32_t i = 0; i < n_; ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "x" + std::to_string(i);
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        std::string cs = fld_->elem_to_string(c);
        if (mono.empty())
            s += cs;
        else if (c == fld_->one())
            s += mono;
        else
            s += cs + "*" + mono;
    }
    return s;
}

HomogeneousPoly::HomogeneousPoly(FieldRef fld, uint32_t nvars, uint32_t degree)
    : p_(std::move(fld), nvars), d_(degree) {
    if (nvars < 1) throw std::invalid_argument("form needs at least one variable");
}

HomogeneousPoly::HomogeneousPoly(Poly p, uint32_t degree) : p_(std::move(p)), d_(degree) {
    for (const auto& [e, c] : p_.terms()) {
        uint32_t td = std::accumulate(e.begin(), e.end(), 0u);
        if (td != d_) throw std::invalid_argument("polynomial is not homogeneous of the declared degree");
    }
}

void HomogeneousPoly::add_term(const Expo& e, FieldElem c) {
    uint32_t td = std::accumulate(e.begin(), e.end(), 0u);
    if (td != d_) throw std::invalid_argument("term degree does not match form degree");
    p_.add_term(e, c);
}

HomogeneousPoly HomogeneousPoly::add(const HomogeneousPoly& o) const {
    if (d_ != o.d_) throw std::invalid_argument("degree mismatch");
    return HomogeneousPoly(p_.add(o.p_), d_);
}

HomogeneousPoly HomogeneousPoly::sub(const HomogeneousPoly& o) const {
    if (d_ != o.d_) throw std::invalid_argument("degree mismatch");
    return HomogeneousPoly(p_.sub(o.p_), d_);
}

HomogeneousPoly HomogeneousPoly::mul(const HomogeneousPoly& o) const {
    return HomogeneousPoly(p_.mul(o.p_), d_ + o.d_);
}

}  // namespace strengthlab
