#pragma once

#include <optional>
#include <utility>

#include "strengthlab/linalg.hpp"
#include "strengthlab/multilinear.hpp"
#include "strengthlab/poly.hpp"

namespace strengthlab {

/// Component of f(v_1 + ... + v_p) of a fixed multidegree, as a polynomial
/// over the concatenated group variables.
struct MultigradedComponent {
    std::vector<uint32_t> group_sizes;
    std::vector<uint32_t> multidegree;
    Poly component;

    FieldElem eval_groups(const std::vector<std::vector<FieldElem>>& points) const;
};

/// Symmetric matrix of degree-(d-2) forms: entry (i,j) pairs the i-th and
/// j-th first-group slots of the (1,1,d-2) component, which coincides with
/// the literal second partial d_i d_j f.
struct HessianForm {
    uint32_t n = 0;
    std::vector<HomogeneousPoly> entries;  // row-major n*n

    const HomogeneousPoly& at(uint32_t i, uint32_t j) const { return entries[size_t(i) * n + j]; }
    Mat eval(const std::vector<FieldElem>& x) const;
};

/// Data of a linear combination sum_i c_i * f(lambda_i v + x) whose bidegree
/// decomposition in (v, x) collapses to the (2, d-2) component.
struct VandermondeExtract {
    bool even_variant = false;
    std::vector<std::pair<FieldElem, FieldElem>> combo;  // (coefficient, lambda)
};

struct TruncatedMembership {
    bool member = false;
    std::vector<Poly> cofactors;  // one per generator
};

/// C(n, k) mod p by Lucas' theorem; exact for any n, k.
FieldElem binom_mod(const Field& k_field, uint64_t n, uint64_t k);
/// d! / (n_1! ... n_p!) mod p; second value is true when p divides it.
std::pair<FieldElem, bool> multinomial_mod(const Field& k, const std::vector<uint32_t>& parts);

/// Degree-n graded component of f(v + v0) as a function of v.
HomogeneousPoly taylor_shift_component(const HomogeneousPoly& f,
                                       const std::vector<FieldElem>& v0, uint32_t order);

/// Component of f(v_1 + ... + v_p) of the given multidegree; all groups are
/// copies of the variable space of f.
MultigradedComponent multidegree_component(const HomogeneousPoly& f,
                                           const std::vector<uint32_t>& multidegree);

/// Mixed derivative at v0 with respect to a declared splitting of the
/// variables into groups: the multilinear part of the |I|-th shift component
/// that is linear in each group of I and constant across the rest.
MultilinearForm mixed_derivative(const HomogeneousPoly& f,
                                 const std::vector<uint32_t>& group_sizes,
                                 const std::vector<FieldElem>& v0,
                                 const std::vector<uint32_t>& I);

HessianForm hessian(const HomogeneousPoly& f);

HomogeneousPoly directional_derivative(const HomogeneousPoly& f,
                                       const std::vector<FieldElem>& v);

/// (d_1 f, ..., d_n f): the gradient map x -> df|_x.
std::vector<HomogeneousPoly> polar_map(const HomogeneousPoly& f);

/// General variant: d+1 distinct scalars. Even variant (d odd, char != 2):
/// (d-1)/2 nonzero scalars with distinct squares plus the scalar 0.
VandermondeExtract vandermonde_extract(const HomogeneousPoly& f,
                                       const std::vector<FieldElem>& lambdas);

/// 0, 1, ..., d as field scalars; throws when the field is too small.
std::vector<FieldElem> default_lambdas(const FieldRef& fld, uint32_t d);

/// The combination sum c_i f(lambda_i v + x) over 2n variables (v first).
Poly vandermonde_combination(const HomogeneousPoly& f, const VandermondeExtract& ex);

/// f^{(a,b)}(v, x) as a polynomial over 2n variables (v group first).
Poly bidegree_component_vx(const HomogeneousPoly& f, uint32_t a, uint32_t b);

/// Membership of h in span{ g * m : g in gens, m monomial, deg(g m) <= D }.
/// Sound and complete for witnesses within the degree bound.
TruncatedMembership truncated_ideal_membership(const Poly& h, const std::vector<Poly>& gens,
                                               uint32_t degree_bound);

}  // namespace strengthlab
