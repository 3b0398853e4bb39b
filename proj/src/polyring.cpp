#include "strengthlab/polyring.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace strengthlab {

FieldElem MultigradedComponent::eval_groups(
    const std::vector<std::vector<FieldElem>>& points) const {
    if (points.size() != group_sizes.size())
        throw std::invalid_argument("one point per group required");
    std::vector<FieldElem> concat;
    for (size_t g = 0; g < points.size(); ++g) {
        if (points[g].size() != group_sizes[g])
            throw std::invalid_argument("group point length mismatch");
        concat.insert(concat.end(), points[g].begin(), points[g].end());
    }
    return component.eval(concat);
}

Mat HessianForm::eval(const std::vector<FieldElem>& x) const {
    Mat m(n, n);
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j) m.at(i, j) = at(i, j).eval(x);
    return m;
}

FieldElem binom_mod(const Field& k, uint64_t n, uint64_t r) {
    if (r > n) return k.zero();
    uint32_t p = k.p();
    FieldElem acc = k.one();
    while (n > 0 || r > 0) {
        uint64_t nd = n % p, rd = r % p;
        if (rd > nd) return k.zero();
        // C(nd, rd) with nd < p: numerator/denominator both invertible
        FieldElem num = k.one(), den = k.one();
        for (uint64_t i = 0; i < rd; ++i) {
            num = k.mul(num, k.from_int(static_cast<int64_t>(nd - i)));
            den = k.mul(den, k.from_int(static_cast<int64_t>(i + 1)));
        }
        acc = k.mul(acc, k.mul(num, k.inv(den)));
        n /= p;
        r /= p;
    }
    return acc;
}

std::pair<FieldElem, bool> multinomial_mod(const Field& k, const std::vector<uint32_t>& parts) {
    uint64_t total = std::accumulate(parts.begin(), parts.end(), uint64_t(0));
    FieldElem acc = k.one();
    uint64_t rem = total;
    for (auto part : parts) {
        acc = k.mul(acc, binom_mod(k, rem, part));
        rem -= part;
    }
    return {acc, acc.v == 0};
}

HomogeneousPoly taylor_shift_component(const HomogeneousPoly& f,
                                       const std::vector<FieldElem>& v0, uint32_t order) {
    const Field& k = f.field();
    uint32_t n = f.nvars(), d = f.degree();
    if (v0.size() != n) throw std::invalid_argument("shift point length mismatch");
    if (order > d) throw std::invalid_argument("taylor component order exceeds degree");
    HomogeneousPoly out(f.field_ref(), n, order);

    Expo beta(n, 0);
    std::function<void(const Expo&, FieldElem, uint32_t, uint32_t)> rec =
        [&](const Expo& alpha, FieldElem c, uint32_t i, uint32_t picked) {
            if (i == n) {
                if (picked == order) out.add_term(beta, c);
                return;
            }
            uint32_t remaining_max = 0;
            for (uint32_t t = i; t < n; ++t) remaining_max += alpha[t];
            if (picked + remaining_max < order) return;
            for (uint16_t b = 0; b <= alpha[i] && picked + b <= order; ++b) {
                FieldElem term = k.mul(c, binom_mod(k, alpha[i], b));
                if (term.v == 0) continue;
                if (alpha[i] > b) term = k.mul(term, k.pow(v0[i], alpha[i] - b));
                if (term.v == 0) continue;
                beta[i] = b;
                rec(alpha, term, i + 1, picked + b);
                beta[i] = 0;
            }
        };
    for (const auto& [alpha, c] : f.poly().terms()) rec(alpha, c, 0, 0);
    return out;
}

MultigradedComponent multidegree_component(const HomogeneousPoly& f,
                                           const std::vector<uint32_t>& multidegree) {
    const Field& k = f.field();
    uint32_t n = f.nvars(), d = f.degree();
    uint32_t p = static_cast<uint32_t>(multidegree.size());
    if (p == 0) throw std::invalid_argument("empty multidegree");
    if (std::accumulate(multidegree.begin(), multidegree.end(), 0u) != d)
        throw std::invalid_argument("multidegree must sum to the form degree");

    MultigradedComponent out{std::vector<uint32_t>(p, n), multidegree,
                             Poly(f.field_ref(), p * n)};

    std::vector<uint32_t> rem(multidegree.begin(), multidegree.end());
    Expo expo(p * n, 0);
    // distribute each variable's exponent across the p groups
    std::function<void(const Expo&, FieldElem, uint32_t)> over_vars;
    std::function<void(const Expo&, FieldElem, uint32_t, uint32_t, uint32_t)> over_groups =
        [&](const Expo& alpha, FieldElem c, uint32_t i, uint32_t g, uint32_t left) {
            if (g == p - 1) {
                if (left > rem[g]) return;
                expo[g * n + i] = static_cast<uint16_t>(left);
                rem[g] -= left;
                over_vars(alpha, c, i + 1);
                rem[g] += left;
                expo[g * n + i] = 0;
                return;
            }
            for (uint32_t b = 0; b <= std::min(left, rem[g]); ++b) {
                FieldElem cc = k.mul(c, binom_mod(k, left, b));
                if (cc.v == 0) continue;
                expo[g * n + i] = static_cast<uint16_t>(b);
                rem[g] -= b;
                over_groups(alpha, cc, i, g + 1, left - b);
                rem[g] += b;
                expo[g * n + i] = 0;
            }
        };
    over_vars = [&](const Expo& alpha, FieldElem c, uint32_t i) {
        if (i == n) {
            bool full = true;
            for (auto r : rem) full = full && (r == 0);
            if (full) out.component.add_term(expo, c);
            return;
        }
        over_groups(alpha, c, i, 0, alpha[i]);
    };
    for (const auto& [alpha, c] : f.poly().terms()) over_vars(alpha, c, 0);
    return out;
}

MultilinearForm mixed_derivative(const HomogeneousPoly& f,
                                 const std::vector<uint32_t>& group_sizes,
                                 const std::vector<FieldElem>& v0,
                                 const std::vector<uint32_t>& I) {
    uint32_t n_total = std::accumulate(group_sizes.begin(), group_sizes.end(), 0u);
    if (n_total != f.nvars())
        throw std::invalid_argument("group sizes do not cover the variable set");
    if (I.empty()) throw std::invalid_argument("mixed derivative needs a nonempty index set");
    std::vector<uint32_t> Is = I;
    std::sort(Is.begin(), Is.end());
    if (std::adjacent_find(Is.begin(), Is.end()) != Is.end())
        throw std::invalid_argument("repeated group index");
    if (Is.back() >= group_sizes.size()) throw std::invalid_argument("group index out of range");
    uint32_t m = static_cast<uint32_t>(Is.size());
    if (m > f.degree()) throw std::invalid_argument("mixed derivative order exceeds degree");

    std::vector<uint32_t> offset(group_sizes.size(), 0);
    for (size_t g = 1; g < group_sizes.size(); ++g) offset[g] = offset[g - 1] + group_sizes[g - 1];

    HomogeneousPoly shifted = taylor_shift_component(f, v0, m);

    std::vector<uint32_t> shape;
    for (auto g : Is) shape.push_back(group_sizes[g]);
    MultilinearForm out(f.field_ref(), shape);

    std::vector<uint32_t> idx(m);
    for (const auto& [e, c] : shifted.poly().terms()) {
        // per-group degree pattern: exactly 1 on each group of I, 0 elsewhere
        bool ok = true;
        size_t at = 0;
        for (uint32_t g = 0; g < group_sizes.size() && ok; ++g) {
            uint32_t deg = 0;
            int pos = -1;
            for (uint32_t t = 0; t < group_sizes[g]; ++t) {
                if (e[offset[g] + t]) {
                    deg += e[offset[g] + t];
                    pos = static_cast<int>(t);
                }
            }
            bool in_I = at < Is.size() && Is[at] == g;
            if (in_I) {
                if (deg != 1)
                    ok = false;
                else
                    idx[at] = static_cast<uint32_t>(pos);
                ++at;
            } else if (deg != 0) {
                ok = false;
            }
        }
        if (ok) out.set_coeff(idx, c);
    }
    return out;
}

HessianForm hessian(const HomogeneousPoly& f) {
    uint32_t n = f.nvars(), d = f.degree();
    if (d < 2) throw std::invalid_argument("hessian needs degree >= 2");
    const Field& k = f.field();
    HessianForm H;
    H.n = n;
    H.entries.assign(size_t(n) * n, HomogeneousPoly(f.field_ref(), n, d - 2));
    for (const auto& [e, c] : f.poly().terms()) {
        for (uint32_t i = 0; i < n; ++i) {
            if (e[i] == 0) continue;
            FieldElem ci = k.mul(c, k.from_int(e[i]));
            if (ci.v == 0) continue;
            Expo e1 = e;
            e1[i] -= 1;
            for (uint32_t j = 0; j < n; ++j) {
                if (e1[j] == 0) continue;
                FieldElem cij = k.mul(ci, k.from_int(e1[j]));
                if (cij.v == 0) continue;
                Expo e2 = e1;
                e2[j] -= 1;
                H.entries[size_t(i) * n + j].add_term(e2, cij);
            }
        }
    }
    return H;
}

HomogeneousPoly directional_derivative(const HomogeneousPoly& f,
                                       const std::vector<FieldElem>& v) {
    uint32_t n = f.nvars(), d = f.degree();
    if (d < 1) throw std::invalid_argument("derivative needs degree >= 1");
    if (v.size() != n) throw std::invalid_argument("direction length mismatch");
    const Field& k = f.field();
    HomogeneousPoly out(f.field_ref(), n, d - 1);
    for (const auto& [e, c] : f.poly().terms()) {
        for (uint32_t i = 0; i < n; ++i) {
            if (e[i] == 0 || v[i].v == 0) continue;
            FieldElem ci = k.mul(k.mul(c, k.from_int(e[i])), v[i]);
            if (ci.v == 0) continue;
            Expo e1 = e;
            e1[i] -= 1;
            out.add_term(e1, ci);
        }
    }
    return out;
}

std::vector<HomogeneousPoly> polar_map(const HomogeneousPoly& f) {
    uint32_t n = f.nvars(), d = f.degree();
    if (d < 2) throw std::invalid_argument("polar map needs degree >= 2");
    std::vector<HomogeneousPoly> out;
    out.reserve(n);
    for (uint32_t i = 0; i < n; ++i)
        out.emplace_back(f.poly().derivative(i), d - 1);
    return out;
}

Poly bidegree_component_vx(const HomogeneousPoly& f, uint32_t a, uint32_t b) {
    if (a + b != f.degree()) throw std::invalid_argument("bidegree must sum to the form degree");
    return multidegree_component(f, {a, b}).component;
}

Poly vandermonde_combination(const HomogeneousPoly& f, const VandermondeExtract& ex) {
    const Field& k = f.field();
    uint32_t n = f.nvars();
    Poly acc(f.field_ref(), 2 * n);
    // x_i -> lambda * v_i + x_i over the doubled variable set
    for (const auto& [c, lambda] : ex.combo) {
        std::vector<std::vector<FieldElem>> M(n, std::vector<FieldElem>(2 * n, k.zero()));
        for (uint32_t i = 0; i < n; ++i) {
            M[i][i] = lambda;
            M[i][n + i] = k.one();
        }
        acc = acc.add(f.poly().compose_linear(M, 2 * n).scale(c));
    }
    return acc;
}

std::vector<FieldElem> default_lambdas(const FieldRef& fld, uint32_t d) {
    if (fld->size() < uint64_t(d) + 1)
        throw std::invalid_argument("field too small to supply " + std::to_string(d + 1) +
                                    " distinct scalars");
    std::vector<FieldElem> lambdas;
    for (uint32_t i = 0; i <= d; ++i) lambdas.push_back(fld->element(i));
    return lambdas;
}

VandermondeExtract vandermonde_extract(const HomogeneousPoly& f,
                                       const std::vector<FieldElem>& lambdas) {
    const Field& k = f.field();
    uint32_t d = f.degree();
    if (d < 2) throw std::invalid_argument("extraction needs degree >= 2");
    for (size_t i = 0; i < lambdas.size(); ++i)
        for (size_t j = i + 1; j < lambdas.size(); ++j)
            if (lambdas[i] == lambdas[j]) throw std::invalid_argument("repeated lambda value");

    VandermondeExtract out;
    if (lambdas.size() == size_t(d) + 1) {
        // rows n = 0..d: sum_i c_i lambda_i^n = [n == 2]
        Mat M(d + 1, d + 1);
        std::vector<FieldElem> rhs(d + 1, k.zero());
        rhs[2] = k.one();
        for (uint32_t i = 0; i <= d; ++i) {
            FieldElem pw = k.one();
            for (uint32_t nn = 0; nn <= d; ++nn) {
                M.at(nn, i) = pw;
                pw = k.mul(pw, lambdas[i]);
            }
        }
        auto sol = solve(k, M, rhs);
        if (!sol) throw std::logic_error("vandermonde system unsolvable with distinct scalars");
        for (uint32_t i = 0; i <= d; ++i) out.combo.emplace_back((*sol)[i], lambdas[i]);
        return out;
    }

    // even-component variant: {0} plus (d-1)/2 nonzero scalars with distinct squares
    if (d % 2 == 1 && lambdas.size() == size_t(d + 1) / 2) {
        if (k.p() == 2) throw std::invalid_argument("even-component variant needs char != 2");
        std::vector<FieldElem> nz;
        bool has_zero = false;
        for (auto l : lambdas) {
            if (k.is_zero(l))
                has_zero = true;
            else
                nz.push_back(l);
        }
        if (!has_zero || nz.size() != size_t(d - 1) / 2)
            throw std::invalid_argument("even-component variant needs the scalar 0 plus (d-1)/2 nonzero scalars");
        for (size_t i = 0; i < nz.size(); ++i)
            for (size_t j = i + 1; j < nz.size(); ++j)
                if (k.mul(nz[i], nz[i]) == k.mul(nz[j], nz[j]))
                    throw std::invalid_argument("nonzero scalars must have distinct squares");
        uint32_t m = static_cast<uint32_t>(nz.size()) + 1;  // unknowns: a_0 and one per pair
        Mat M(m, m);
        std::vector<FieldElem> rhs(m, k.zero());
        // even rows n = 0, 2, ..., d-1
        for (uint32_t row = 0; row < m; ++row) {
            uint32_t nn = 2 * row;
            M.at(row, 0) = (nn == 0) ? k.one() : k.zero();
            for (uint32_t i = 0; i < nz.size(); ++i) M.at(row, i + 1) = k.pow(nz[i], nn);
            if (nn == 2) rhs[row] = k.one();
        }
        auto sol = solve(k, M, rhs);
        if (!sol) throw std::logic_error("even-component vandermonde system unsolvable");
        FieldElem half = k.inv(k.from_int(2));
        out.even_variant = true;
        out.combo.emplace_back((*sol)[0], k.zero());
        for (uint32_t i = 0; i < nz.size(); ++i) {
            FieldElem ch = k.mul((*sol)[i + 1], half);
            out.combo.emplace_back(ch, nz[i]);
            out.combo.emplace_back(ch, k.neg(nz[i]));
        }
        return out;
    }
    throw std::invalid_argument("need d+1 distinct scalars, or the 0-plus-(d-1)/2 even variant for odd d");
}

TruncatedMembership truncated_ideal_membership(const Poly& h, const std::vector<Poly>& gens,
                                               uint32_t degree_bound) {
    const Field& k = h.field();
    uint32_t n = h.nvars();
    if (h.degree() > degree_bound)
        throw std::invalid_argument("target degree exceeds the truncation bound");

    // monomial basis of degree <= degree_bound
    std::map<Expo, uint32_t> row_of;
    std::vector<Expo> rows;
    {
        Expo e(n, 0);
        std::function<void(uint32_t, uint32_t)> gen = [&](uint32_t i, uint32_t left) {
            if (i == n) {
                row_of[e] = static_cast<uint32_t>(rows.size());
                rows.push_back(e);
                return;
            }
            for (uint16_t v = 0; v <= left; ++v) {
                e[i] = v;
                gen(i + 1, left - v);
            }
            e[i] = 0;
        };
        gen(0, degree_bound);
    }

    struct Col {
        uint32_t gen_idx;
        Expo mono;
    };
    std::vector<Col> cols;
    for (uint32_t gi = 0; gi < gens.size(); ++gi) {
        const Poly& g = gens[gi];
        if (g.nvars() != n) throw std::invalid_argument("generator variable count mismatch");
        if (g.is_zero()) continue;
        uint32_t dg = g.degree();
        if (dg > degree_bound) continue;
        Expo e(n, 0);
        std::function<void(uint32_t, uint32_t)> gen = [&](uint32_t i, uint32_t left) {
            if (i == n) {
                cols.push_back({gi, e});
                return;
            }
            for (uint16_t v = 0; v <= left; ++v) {
                e[i] = v;
                gen(i + 1, left - v);
            }
            e[i] = 0;
        };
        gen(0, degree_bound - dg);
    }

    Mat A(static_cast<uint32_t>(rows.size()), static_cast<uint32_t>(cols.size()));
    for (uint32_t ci = 0; ci < cols.size(); ++ci) {
        const Poly& g = gens[cols[ci].gen_idx];
        for (const auto& [e, c] : g.terms()) {
            Expo shifted(n);
            for (uint32_t i = 0; i < n; ++i)
                shifted[i] = static_cast<uint16_t>(e[i] + cols[ci].mono[i]);
            A.at(row_of.at(shifted), ci) = c;
        }
    }
    std::vector<FieldElem> rhs(rows.size(), k.zero());
    for (const auto& [e, c] : h.terms()) rhs[row_of.at(e)] = c;

    TruncatedMembership out;
    auto sol = solve(k, A, rhs);
    if (!sol) return out;
    out.member = true;
    out.cofactors.assign(gens.size(), Poly(h.field_ref(), n));
    for (uint32_t ci = 0; ci < cols.size(); ++ci)
        if ((*sol)[ci].v != 0) out.cofactors[cols[ci].gen_idx].add_term(cols[ci].mono, (*sol)[ci]);
    return out;
}

}  // namespace strengthlab
