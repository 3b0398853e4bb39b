#include "strengthlab/detkernel.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <stdexcept>

#include "strengthlab/polyring.hpp"

namespace strengthlab {

MatrixFamily::MatrixFamily(FieldRef f, uint32_t r, uint32_t c, uint32_t nv)
    : fld(std::move(f)), rows(r), cols(c), nvars(nv) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("matrix family needs positive size");
    entries.assign(size_t(rows) * cols, Poly(fld, nvars));
}

Mat MatrixFamily::eval(const std::vector<FieldElem>& point) const {
    Mat m(rows, cols);
    for (uint32_t r = 0; r < rows; ++r)
        for (uint32_t c = 0; c < cols; ++c) m.at(r, c) = at(r, c).eval(point);
    return m;
}

MatrixFamily MatrixFamily::embedded(const Embedding& emb) const {
    MatrixFamily out(std::make_shared<const Field>(emb.to()), rows, cols, nvars);
    for (size_t i = 0; i < entries.size(); ++i) out.entries[i] = entries[i].embedded(emb);
    return out;
}

MatrixFamily flatten_family(const MultilinearForm& P, uint32_t pivot, uint32_t kernel_factor) {
    uint32_t d = P.order();
    if (d < 3) throw std::invalid_argument("flattening needs at least three factors");
    if (pivot >= d || kernel_factor >= d || pivot == kernel_factor)
        throw std::invalid_argument("bad flattening factor indices");
    const auto& shape = P.shape();

    std::vector<uint32_t> w_factors;
    for (uint32_t a = 0; a < d; ++a)
        if (a != pivot && a != kernel_factor) w_factors.push_back(a);
    std::vector<uint32_t> offset(w_factors.size(), 0);
    uint32_t nvars = 0;
    for (size_t t = 0; t < w_factors.size(); ++t) {
        offset[t] = nvars;
        nvars += shape[w_factors[t]];
    }

    MatrixFamily fam(P.field_ref(), shape[pivot], shape[kernel_factor], nvars);
    for (size_t f = 0; f < P.total_size(); ++f) {
        FieldElem c = P.coeffs()[f];
        if (c.v == 0) continue;
        auto idx = P.unflat(f);
        Expo e(nvars, 0);
        for (size_t t = 0; t < w_factors.size(); ++t) e[offset[t] + idx[w_factors[t]]] = 1;
        fam.at(idx[pivot], idx[kernel_factor]).add_term(e, c);
    }
    return fam;
}

void ExteriorElement::add(uint32_t mask, FieldElem c) {
    if (std::popcount(mask) != int(degree)) throw std::invalid_argument("mask size mismatch");
    if (mask >= (1u << n)) throw std::invalid_argument("mask out of range");
    if (c.v == 0) return;
    auto it = comps.find(mask);
    if (it == comps.end()) {
        comps[mask] = c;
    } else {
        it->second = fld->add(it->second, c);
        if (it->second.v == 0) comps.erase(it);
    }
}

ExteriorElement wedge(FieldRef fld, const std::vector<std::vector<FieldElem>>& vectors) {
    const Field& k = *fld;
    if (vectors.empty()) throw std::invalid_argument("wedge of nothing");
    uint32_t n = static_cast<uint32_t>(vectors[0].size());
    uint32_t r = static_cast<uint32_t>(vectors.size());
    for (const auto& v : vectors)
        if (v.size() != n) throw std::invalid_argument("wedge vector length mismatch");
    ExteriorElement out(fld, n, r);
    if (r > n) return out;
    // coefficient of e_S is the maximal minor on the columns S
    std::vector<uint32_t> cols(r);
    std::function<void(uint32_t, uint32_t)> rec = [&](uint32_t start, uint32_t picked) {
        if (picked == r) {
            Mat m(r, r);
            for (uint32_t i = 0; i < r; ++i)
                for (uint32_t j = 0; j < r; ++j) m.at(i, j) = vectors[i][cols[j]];
            FieldElem dv = det(k, m);
            if (dv.v != 0) {
                uint32_t mask = 0;
                for (auto c : cols) mask |= (1u << c);
                out.add(mask, dv);
            }
            return;
        }
        for (uint32_t c = start; c + (r - picked) <= n; ++c) {
            cols[picked] = c;
            rec(c + 1, picked + 1);
        }
    };
    rec(0, 0);
    return out;
}

namespace {

// exterior element with polynomial coefficients, for contraction against
// pulled-back covector families
struct PolyExterior {
    uint32_t n = 0;
    uint32_t degree = 0;
    std::map<uint32_t, Poly> comps;
};

PolyExterior contract_poly(const std::vector<Poly>& phi, const PolyExterior& alpha) {
    PolyExterior out{alpha.n, alpha.degree - 1, {}};
    for (const auto& [mask, coef] : alpha.comps) {
        uint32_t pos = 0;
        for (uint32_t i = 0; i < alpha.n; ++i) {
            if (!(mask & (1u << i))) continue;
            if (!phi[i].is_zero()) {
                Poly term = phi[i].mul(coef);
                if (pos % 2 == 1) term = term.neg();
                uint32_t rest = mask & ~(1u << i);
                auto it = out.comps.find(rest);
                if (it == out.comps.end())
                    out.comps.emplace(rest, std::move(term));
                else
                    it->second = it->second.add(term);
            }
            ++pos;
        }
    }
    for (auto it = out.comps.begin(); it != out.comps.end();)
        it = it->second.is_zero() ? out.comps.erase(it) : std::next(it);
    return out;
}

bool vanishes_on_locus(const Poly& h, const std::vector<Poly>& locus_gens) {
    if (h.is_zero()) return true;
    if (locus_gens.empty()) return false;
    return truncated_ideal_membership(h, locus_gens, h.degree()).member;
}

}  // namespace

Poly family_minor(const MatrixFamily& fam, const std::vector<uint32_t>& rows,
                  const std::vector<uint32_t>& cols) {
    size_t m = rows.size();
    if (m == 0 || m != cols.size()) throw std::invalid_argument("bad minor index sets");
    if (m == 1) return fam.at(rows[0], cols[0]);
    Poly acc(fam.fld, fam.nvars);
    std::vector<uint32_t> sub_rows(rows.begin() + 1, rows.end());
    for (size_t j = 0; j < m; ++j) {
        const Poly& pivot = fam.at(rows[0], cols[j]);
        if (pivot.is_zero()) continue;
        std::vector<uint32_t> sub_cols;
        for (size_t t = 0; t < m; ++t)
            if (t != j) sub_cols.push_back(cols[t]);
        Poly term = pivot.mul(family_minor(fam, sub_rows, sub_cols));
        if (j % 2 == 1) term = term.neg();
        acc = acc.add(term);
    }
    return acc;
}

ExteriorElement contract(const std::vector<FieldElem>& phi, const ExteriorElement& alpha) {
    if (alpha.degree == 0) throw std::invalid_argument("cannot contract a degree-0 element");
    if (phi.size() != alpha.n) throw std::invalid_argument("covector length mismatch");
    const Field& k = *alpha.fld;
    ExteriorElement out(alpha.fld, alpha.n, alpha.degree - 1);
    for (const auto& [mask, coef] : alpha.comps) {
        uint32_t pos = 0;
        for (uint32_t i = 0; i < alpha.n; ++i) {
            if (!(mask & (1u << i))) continue;
            if (phi[i].v != 0) {
                FieldElem term = k.mul(phi[i], coef);
                if (pos % 2 == 1) term = k.neg(term);
                out.add(mask & ~(1u << i), term);
            }
            ++pos;
        }
    }
    return out;
}

bool minors_vanish(const MatrixFamily& fam, uint32_t r_plus_1,
                   const std::vector<Poly>& locus_gens) {
    if (r_plus_1 > fam.rows || r_plus_1 > fam.cols) return true;  // no minors of that size
    if (r_plus_1 == 0) throw std::invalid_argument("minor size must be positive");
    std::vector<uint32_t> rows(r_plus_1), cols(r_plus_1);
    std::function<bool(uint32_t, uint32_t)> pick_cols = [&](uint32_t start, uint32_t picked) {
        if (picked == r_plus_1)
            return vanishes_on_locus(family_minor(fam, rows, cols), locus_gens);
        for (uint32_t c = start; c + (r_plus_1 - picked) <= fam.cols; ++c) {
            cols[picked] = c;
            if (!pick_cols(c + 1, picked + 1)) return false;
        }
        return true;
    };
    std::function<bool(uint32_t, uint32_t)> pick_rows = [&](uint32_t start, uint32_t picked) {
        if (picked == r_plus_1) return pick_cols(0, 0);
        for (uint32_t r = start; r + (r_plus_1 - picked) <= fam.rows; ++r) {
            rows[picked] = r;
            if (!pick_rows(r + 1, picked + 1)) return false;
        }
        return true;
    };
    return pick_rows(0, 0);
}

KappaResult kappa(const MatrixFamily& fam, uint32_t r,
                  const std::vector<std::vector<FieldElem>>& phis, const ExteriorElement& alpha,
                  const std::vector<Poly>& locus_gens) {
    if (alpha.n != fam.cols) throw std::invalid_argument("exterior element lives on the source space");
    if (alpha.degree != r + 1) throw std::invalid_argument("exterior element must have degree r+1");
    if (phis.size() != r) throw std::invalid_argument("need exactly r covectors");
    for (const auto& phi : phis)
        if (phi.size() != fam.rows) throw std::invalid_argument("covector length mismatch");

    // pull back each covector through the family: (f^v phi)_j = sum_i phi_i f_ij
    std::vector<std::vector<Poly>> pulled;
    for (const auto& phi : phis) {
        std::vector<Poly> row;
        row.reserve(fam.cols);
        for (uint32_t j = 0; j < fam.cols; ++j) {
            Poly acc(fam.fld, fam.nvars);
            for (uint32_t i = 0; i < fam.rows; ++i)
                if (phi[i].v != 0) acc = acc.add(fam.at(i, j).scale(phi[i]));
            row.push_back(std::move(acc));
        }
        pulled.push_back(std::move(row));
    }

    PolyExterior cur{alpha.n, alpha.degree, {}};
    for (const auto& [mask, c] : alpha.comps)
        cur.comps.emplace(mask, Poly::constant(fam.fld, fam.nvars, c));
    // iota_{psi_1} ... iota_{psi_r} alpha applies psi_r first
    for (size_t t = phis.size(); t-- > 0;) cur = contract_poly(pulled[t], cur);

    KappaResult out;
    out.section.assign(fam.cols, Poly(fam.fld, fam.nvars));
    for (const auto& [mask, coef] : cur.comps) {
        uint32_t i = static_cast<uint32_t>(std::countr_zero(mask));
        out.section[i] = coef;
    }
    out.minors_vanish = minors_vanish(fam, r + 1, locus_gens);
    return out;
}

KernelSections kernel_sections(const MatrixFamily& fam, const std::vector<FieldElem>& x0,
                               const std::vector<Poly>& locus_gens) {
    const Field& k = *fam.fld;
    if (x0.size() != fam.nvars) throw std::invalid_argument("base point length mismatch");
    for (const auto& g : locus_gens)
        if (g.eval(x0).v != 0) throw std::invalid_argument("base point is not on the declared locus");

    Mat A = fam.eval(x0);
    std::vector<uint32_t> pivot_cols;
    Mat Ared = A;
    uint32_t r = row_reduce(k, Ared, &pivot_cols);

    // scan the finite base for the maximal rank stratum when that is feasible
    uint64_t points = 1;
    bool enumerable = true;
    for (uint32_t i = 0; i < fam.nvars; ++i) {
        points *= k.size();
        if (points > 2'000'000) {
            enumerable = false;
            break;
        }
    }
    if (enumerable) {
        std::vector<FieldElem> pt(fam.nvars, k.zero());
        uint32_t maxr = 0;
        for (uint64_t it = 0; it < points && maxr <= r; ++it) {
            uint64_t v = it;
            for (uint32_t i = 0; i < fam.nvars; ++i) {
                pt[i] = k.element(v % k.size());
                v /= k.size();
            }
            bool on_locus = true;
            for (const auto& g : locus_gens)
                if (g.eval(pt).v != 0) {
                    on_locus = false;
                    break;
                }
            if (on_locus) maxr = std::max(maxr, rank_of(k, fam.eval(pt)));
        }
        if (r < maxr)
            throw std::domain_error(
                "base point has rank below the family's maximal rank; pick a generic point");
    }

    if (!minors_vanish(fam, r + 1, locus_gens))
        throw std::domain_error("(r+1)-minors do not vanish on the declared base locus");

    KernelSections out;
    out.rank_at_x0 = r;
    auto K = nullspace(k, A);
    if (K.empty()) return out;

    // splitting of the source: kernel basis K plus the pivot coordinate
    // vectors W1; f(x0) maps W1 isomorphically onto W2 = im f(x0)
    std::vector<std::vector<FieldElem>> w1;
    for (auto c : pivot_cols) {
        std::vector<FieldElem> e(fam.cols, k.zero());
        e[c] = k.one();
        w1.push_back(std::move(e));
    }
    std::vector<std::vector<FieldElem>> w2;
    for (auto c : pivot_cols) {
        std::vector<FieldElem> img(fam.rows, k.zero());
        for (uint32_t i = 0; i < fam.rows; ++i) img[i] = A.at(i, c);
        w2.push_back(std::move(img));
    }

    // complete W2 to a basis of the target with standard vectors
    std::vector<std::vector<FieldElem>> target_basis = w2;
    for (uint32_t i = 0; i < fam.rows && target_basis.size() < fam.rows; ++i) {
        std::vector<FieldElem> e(fam.rows, k.zero());
        e[i] = k.one();
        Mat probe(static_cast<uint32_t>(target_basis.size()) + 1, fam.rows);
        for (uint32_t rr = 0; rr < target_basis.size(); ++rr)
            for (uint32_t cc = 0; cc < fam.rows; ++cc) probe.at(rr, cc) = target_basis[rr][cc];
        for (uint32_t cc = 0; cc < fam.rows; ++cc)
            probe.at(static_cast<uint32_t>(target_basis.size()), cc) = e[cc];
        if (rank_of(k, probe) == target_basis.size() + 1) target_basis.push_back(std::move(e));
    }

    // dual covectors of the W2 block: rows of the inverse of the basis matrix
    // whose columns are the basis vectors
    std::vector<std::vector<FieldElem>> phis;
    {
        Mat aug(fam.rows, 2 * fam.rows);
        for (uint32_t i = 0; i < fam.rows; ++i)
            for (uint32_t j = 0; j < fam.rows; ++j) {
                aug.at(i, j) = target_basis[j][i];
                aug.at(i, fam.rows + j) = (i == j) ? k.one() : k.zero();
            }
        if (row_reduce(k, aug) != fam.rows) throw std::logic_error("target basis not invertible");
        for (uint32_t t = 0; t < r; ++t) {
            std::vector<FieldElem> phi(fam.rows);
            for (uint32_t j = 0; j < fam.rows; ++j) phi[j] = aug.at(t, fam.rows + j);
            phis.push_back(std::move(phi));
        }
    }

    for (const auto& kv : K) {
        auto vecs = w1;
        vecs.push_back(kv);
        ExteriorElement alpha = wedge(fam.fld, vecs);
        auto res = kappa(fam, r, phis, alpha, locus_gens);
        // the construction guarantees fam * s = 0 on the locus; verify
        for (uint32_t i = 0; i < fam.rows; ++i) {
            Poly acc(fam.fld, fam.nvars);
            for (uint32_t j = 0; j < fam.cols; ++j)
                acc = acc.add(fam.at(i, j).mul(res.section[j]));
            if (!vanishes_on_locus(acc, locus_gens))
                throw std::logic_error("kernel section fails the family identity");
        }
        out.sections.push_back(std::move(res.section));
    }

    // sections at x0 must span the kernel exactly
    Mat S(static_cast<uint32_t>(out.sections.size()), fam.cols);
    for (uint32_t i = 0; i < out.sections.size(); ++i)
        for (uint32_t j = 0; j < fam.cols; ++j) S.at(i, j) = out.sections[i][j].eval(x0);
    if (rank_of(k, S) != out.sections.size())
        throw std::logic_error("kernel sections degenerate at the base point");
    return out;
}

}  // namespace strengthlab
