#include "strengthlab/multilinear.hpp"

#include <algorithm>
#include <stdexcept>

namespace strengthlab {

IndexPartition IndexPartition::from_I(const std::vector<uint32_t>& I, uint32_t d) {
    IndexPartition p;
    p.I = I;
    std::sort(p.I.begin(), p.I.end());
    if (p.I.empty()) throw std::invalid_argument("partition side I must be nonempty");
    if (std::adjacent_find(p.I.begin(), p.I.end()) != p.I.end())
        throw std::invalid_argument("partition side I has repeated indices");
    if (p.I.back() >= d) throw std::invalid_argument("partition index out of range");
    size_t at = 0;
    for (uint32_t f = 0; f < d; ++f) {
        if (at < p.I.size() && p.I[at] == f)
            ++at;
        else
            p.J.push_back(f);
    }
    if (p.J.empty()) throw std::invalid_argument("partition side J must be nonempty");
    return p;
}

MultilinearForm::MultilinearForm(FieldRef fld, std::vector<uint32_t> shape)
    : fld_(std::move(fld)), shape_(std::move(shape)) {
    if (shape_.empty()) throw std::invalid_argument("form needs at least one factor");
    size_t total = 1;
    for (auto n : shape_) {
        if (n == 0) throw std::invalid_argument("factor dimension must be positive");
        total *= n;
        if (total > (size_t(1) << 22)) throw std::invalid_argument("tensor exceeds dense size cap 2^22");
    }
    coeffs_.assign(total, fld_->zero());
}

size_t MultilinearForm::flat(const std::vector<uint32_t>& idx) const {
    if (idx.size() != shape_.size()) throw std::invalid_argument("index arity mismatch");
    size_t f = 0;
    for (size_t a = 0; a < shape_.size(); ++a) {
        if (idx[a] >= shape_[a]) throw std::out_of_range("tensor index out of shape");
        f = f * shape_[a] + idx[a];
    }
    return f;
}

std::vector<uint32_t> MultilinearForm::unflat(size_t flat_idx) const {
    std::vector<uint32_t> idx(shape_.size());
    for (size_t a = shape_.size(); a-- > 0;) {
        idx[a] = static_cast<uint32_t>(flat_idx % shape_[a]);
        flat_idx /= shape_[a];
    }
    return idx;
}

bool MultilinearForm::is_zero() const {
    for (auto c : coeffs_)
        if (c.v != 0) return false;
    return true;
}

MultilinearForm MultilinearForm::add(const MultilinearForm& other) const {
    if (shape_ != other.shape_) throw std::invalid_argument("shape mismatch");
    MultilinearForm r = *this;
    for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = fld_->add(coeffs_[i], other.coeffs_[i]);
    return r;
}

MultilinearForm MultilinearForm::sub(const MultilinearForm& other) const {
    if (shape_ != other.shape_) throw std::invalid_argument("shape mismatch");
    MultilinearForm r = *this;
    for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = fld_->sub(coeffs_[i], other.coeffs_[i]);
    return r;
}

MultilinearForm MultilinearForm::scale(FieldElem c) const {
    MultilinearForm r = *this;
    for (auto& x : r.coeffs_) x = fld_->mul(x, c);
    return r;
}

bool MultilinearForm::operator==(const MultilinearForm& other) const {
    return shape_ == other.shape_ && coeffs_ == other.coeffs_ && fld_->same_spec(*other.fld_);
}

MultilinearForm MultilinearForm::embedded(const Embedding& emb) const {
    if (!emb.from().same_spec(*fld_)) throw std::invalid_argument("embedding source mismatch");
    MultilinearForm r(std::make_shared<const Field>(emb.to()), shape_);
    for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_mut()[i] = emb.map(coeffs_[i]);
    return r;
}

FieldElem eval(const MultilinearForm& P, const std::vector<std::vector<FieldElem>>& vectors) {
    const Field& k = P.field();
    const auto& shape = P.shape();
    if (vectors.size() != shape.size()) throw std::invalid_argument("one vector per factor required");
    for (size_t a = 0; a < shape.size(); ++a)
        if (vectors[a].size() != shape[a]) throw std::invalid_argument("vector length mismatch");
    FieldElem acc = k.zero();
    const auto& coeffs = P.coeffs();
    std::vector<uint32_t> idx(shape.size(), 0);
    for (size_t f = 0; f < coeffs.size(); ++f) {
        if (coeffs[f].v != 0) {
            FieldElem term = coeffs[f];
            for (size_t a = 0; a < shape.size(); ++a) term = k.mul(term, vectors[a][idx[a]]);
            acc = k.add(acc, term);
        }
        // odometer increment
        for (size_t a = shape.size(); a-- > 0;) {
            if (++idx[a] < shape[a]) break;
            idx[a] = 0;
        }
    }
    return acc;
}

MultilinearForm outer_product(const MultilinearForm& P_I, const MultilinearForm& P_J,
                              const IndexPartition& part) {
    uint32_t d = static_cast<uint32_t>(part.I.size() + part.J.size());
    if (P_I.order() != part.I.size() || P_J.order() != part.J.size())
        throw std::invalid_argument("factor order does not match partition");
    std::vector<uint32_t> shape(d);
    for (size_t t = 0; t < part.I.size(); ++t) shape[part.I[t]] = P_I.shape()[t];
    for (size_t t = 0; t < part.J.size(); ++t) shape[part.J[t]] = P_J.shape()[t];
    const Field& k = P_I.field();
    MultilinearForm R(P_I.field_ref(), shape);
    std::vector<uint32_t> sub_i(part.I.size()), sub_j(part.J.size());
    for (size_t f = 0; f < R.total_size(); ++f) {
        auto idx = R.unflat(f);
        for (size_t t = 0; t < part.I.size(); ++t) sub_i[t] = idx[part.I[t]];
        for (size_t t = 0; t < part.J.size(); ++t) sub_j[t] = idx[part.J[t]];
        FieldElem c = k.mul(P_I.coeff(sub_i), P_J.coeff(sub_j));
        if (c.v != 0) R.coeffs_mut()[f] = c;
    }
    return R;
}

MultilinearForm restrict_factor(const MultilinearForm& P, uint32_t factor,
                                const std::vector<std::vector<FieldElem>>& basis) {
    const Field& k = P.field();
    if (factor >= P.order()) throw std::invalid_argument("factor index out of range");
    uint32_t n = P.shape()[factor];
    if (basis.empty() || basis.size() > n) throw std::invalid_argument("bad subspace basis size");
    Mat bm(static_cast<uint32_t>(basis.size()), n);
    for (uint32_t r = 0; r < basis.size(); ++r) {
        if (basis[r].size() != n) throw std::invalid_argument("basis vector length mismatch");
        for (uint32_t c = 0; c < n; ++c) bm.at(r, c) = basis[r][c];
    }
    if (rank_of(k, bm) != basis.size())
        throw std::invalid_argument("restriction basis is linearly dependent");

    std::vector<uint32_t> new_shape = P.shape();
    new_shape[factor] = static_cast<uint32_t>(basis.size());
    MultilinearForm R(P.field_ref(), new_shape);
    for (size_t f = 0; f < R.total_size(); ++f) {
        auto idx = R.unflat(f);
        uint32_t b = idx[factor];
        FieldElem acc = k.zero();
        auto full_idx = idx;
        for (uint32_t t = 0; t < n; ++t) {
            if (basis[b][t].v == 0) continue;
            full_idx[factor] = t;
            acc = k.add(acc, k.mul(basis[b][t], P.coeff(full_idx)));
        }
        R.coeffs_mut()[f] = acc;
    }
    return R;
}

IdealMembership ideal_membership(const MultilinearForm& P, const TensorIdealGens& gens) {
    const Field& k = P.field();
    const auto& shape = P.shape();
    uint32_t d = P.order();

    // cofactor layout: for each generator, a dense block over its J-slots
    struct GenInfo {
        IndexPartition part;
        size_t cof_size;
    };
    std::vector<GenInfo> info;
    size_t total_cols = 0;
    for (const auto& g : gens.gens) {
        GenInfo gi{IndexPartition::from_I(g.I, d), 1};
        for (size_t t = 0; t < gi.part.I.size(); ++t)
            if (g.form.shape()[t] != shape[gi.part.I[t]])
                throw std::invalid_argument("generator shape mismatch");
        for (auto j : gi.part.J) gi.cof_size *= shape[j];
        total_cols += gi.cof_size;
        info.push_back(std::move(gi));
    }

    Mat A(static_cast<uint32_t>(P.total_size()), static_cast<uint32_t>(total_cols));
    size_t col0 = 0;
    std::vector<uint32_t> sub_i, sub_j;
    for (size_t gi = 0; gi < gens.gens.size(); ++gi) {
        const auto& part = info[gi].part;
        const auto& G = gens.gens[gi].form;
        sub_i.resize(part.I.size());
        sub_j.resize(part.J.size());
        for (size_t f = 0; f < P.total_size(); ++f) {
            auto idx = P.unflat(f);
            for (size_t t = 0; t < part.I.size(); ++t) sub_i[t] = idx[part.I[t]];
            FieldElem gcoef = G.coeff(sub_i);
            if (gcoef.v == 0) continue;
            for (size_t t = 0; t < part.J.size(); ++t) sub_j[t] = idx[part.J[t]];
            size_t jflat = 0;
            for (size_t t = 0; t < part.J.size(); ++t)
                jflat = jflat * shape[part.J[t]] + sub_j[t];
            A.at(static_cast<uint32_t>(f), static_cast<uint32_t>(col0 + jflat)) = gcoef;
        }
        col0 += info[gi].cof_size;
    }

    auto sol = solve(k, A, P.coeffs());
    IdealMembership out;
    if (!sol) return out;
    out.member = true;
    col0 = 0;
    for (size_t gi = 0; gi < gens.gens.size(); ++gi) {
        const auto& part = info[gi].part;
        std::vector<uint32_t> jshape;
        for (auto j : part.J) jshape.push_back(shape[j]);
        MultilinearForm Q(P.field_ref(), jshape);
        for (size_t t = 0; t < info[gi].cof_size; ++t) Q.coeffs_mut()[t] = (*sol)[col0 + t];
        out.cofactors.push_back(std::move(Q));
        col0 += info[gi].cof_size;
    }
    return out;
}

TensorIdealGens kernel_of_restriction(FieldRef fld, const std::vector<uint32_t>& shape,
                                      uint32_t factor,
                                      const std::vector<std::vector<FieldElem>>& basis) {
    const Field& k = *fld;
    if (factor >= shape.size()) throw std::invalid_argument("factor index out of range");
    uint32_t n = shape[factor];
    Mat bm(static_cast<uint32_t>(basis.size()), n);
    for (uint32_t r = 0; r < basis.size(); ++r) {
        if (basis[r].size() != n) throw std::invalid_argument("basis vector length mismatch");
        for (uint32_t c = 0; c < n; ++c) bm.at(r, c) = basis[r][c];
    }
    if (rank_of(k, bm) != basis.size())
        throw std::invalid_argument("restriction basis is linearly dependent");

    TensorIdealGens out;
    for (const auto& ell : nullspace(k, bm)) {
        MultilinearForm L(fld, {n});
        for (uint32_t t = 0; t < n; ++t) L.coeffs_mut()[t] = ell[t];
        out.gens.push_back({{factor}, std::move(L)});
    }
    return out;
}

}  // namespace strengthlab
